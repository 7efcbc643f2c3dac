use super::activation::tansig;
use super::{Input, Parametric};
use crate::ORDER;

/// Elman hidden size, matching the perceptron's hidden layer.
pub const ELMAN_HIDDEN: usize = 2;

/// Two-layer recurrent net: the tansig hidden layer also sees its own
/// previous output through `w_rec`. `context` is that previous output.
#[derive(Debug, Clone, PartialEq)]
pub struct ElmanNet {
    pub w_in: [[f64; ORDER]; ELMAN_HIDDEN],
    pub w_rec: [[f64; ELMAN_HIDDEN]; ELMAN_HIDDEN],
    pub b1: [f64; ELMAN_HIDDEN],
    pub w2: [f64; ELMAN_HIDDEN],
    pub b2: f64,
    pub context: [f64; ELMAN_HIDDEN],
}

impl ElmanNet {
    pub fn zeros() -> Self {
        Self {
            w_in: [[0.0; ORDER]; ELMAN_HIDDEN],
            w_rec: [[0.0; ELMAN_HIDDEN]; ELMAN_HIDDEN],
            b1: [0.0; ELMAN_HIDDEN],
            w2: [0.0; ELMAN_HIDDEN],
            b2: 0.0,
            context: [0.0; ELMAN_HIDDEN],
        }
    }

    pub fn reset_context(&mut self) {
        self.context = [0.0; ELMAN_HIDDEN];
    }

    pub fn hidden(&self, x: &Input, context: &[f64; ELMAN_HIDDEN]) -> [f64; ELMAN_HIDDEN] {
        let mut h = [0.0; ELMAN_HIDDEN];
        for (j, hj) in h.iter_mut().enumerate() {
            let mut s = self.b1[j];
            for i in 0..ORDER {
                s += self.w_in[j][i] * x[i];
            }
            for k in 0..ELMAN_HIDDEN {
                s += self.w_rec[j][k] * context[k];
            }
            *hj = tansig(s);
        }
        h
    }

    pub fn output_from_hidden(&self, h: &[f64; ELMAN_HIDDEN]) -> f64 {
        let mut y = self.b2;
        for j in 0..ELMAN_HIDDEN {
            y += self.w2[j] * h[j];
        }
        y
    }

    /// Predicts and advances the stored context.
    pub fn step(&mut self, x: &Input) -> f64 {
        let (y, next) = elman_predict(self, x);
        self.context = next;
        y
    }
}

/// One time step from the stored context; returns the output and the
/// context for the next step.
pub fn elman_predict(net: &ElmanNet, x: &Input) -> (f64, [f64; ELMAN_HIDDEN]) {
    let h = net.hidden(x, &net.context);
    (net.output_from_hidden(&h), h)
}

impl Parametric for ElmanNet {
    const N_PARAMS: usize =
        ELMAN_HIDDEN * ORDER + ELMAN_HIDDEN * ELMAN_HIDDEN + ELMAN_HIDDEN + ELMAN_HIDDEN + 1;

    fn params(&self) -> Vec<f64> {
        let mut p = Vec::with_capacity(Self::N_PARAMS);
        for row in &self.w_in {
            p.extend_from_slice(row);
        }
        for row in &self.w_rec {
            p.extend_from_slice(row);
        }
        p.extend_from_slice(&self.b1);
        p.extend_from_slice(&self.w2);
        p.push(self.b2);
        p
    }

    fn set_params(&mut self, p: &[f64]) {
        assert_eq!(p.len(), Self::N_PARAMS);
        let mut it = p.iter().copied();
        for row in &mut self.w_in {
            for w in row.iter_mut() {
                *w = it.next().unwrap();
            }
        }
        for row in &mut self.w_rec {
            for w in row.iter_mut() {
                *w = it.next().unwrap();
            }
        }
        for b in &mut self.b1 {
            *b = it.next().unwrap();
        }
        for w in &mut self.w2 {
            *w = it.next().unwrap();
        }
        self.b2 = it.next().unwrap();
    }
}
