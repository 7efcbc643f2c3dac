use super::activation::tansig;
use super::{Input, Parametric};
use crate::ORDER;

pub const MLP_HIDDEN: usize = 2;

/// 10-2-1 perceptron: tansig hidden layer, linear output.
#[derive(Debug, Clone, PartialEq)]
pub struct MlpNet {
    pub w1: [[f64; ORDER]; MLP_HIDDEN],
    pub b1: [f64; MLP_HIDDEN],
    pub w2: [f64; MLP_HIDDEN],
    pub b2: f64,
}

impl MlpNet {
    pub fn zeros() -> Self {
        Self {
            w1: [[0.0; ORDER]; MLP_HIDDEN],
            b1: [0.0; MLP_HIDDEN],
            w2: [0.0; MLP_HIDDEN],
            b2: 0.0,
        }
    }

    /// Hidden-layer outputs.
    pub fn hidden(&self, x: &Input) -> [f64; MLP_HIDDEN] {
        let mut h = [0.0; MLP_HIDDEN];
        for (j, hj) in h.iter_mut().enumerate() {
            let mut s = self.b1[j];
            for i in 0..ORDER {
                s += self.w1[j][i] * x[i];
            }
            *hj = tansig(s);
        }
        h
    }

    pub fn output_from_hidden(&self, h: &[f64; MLP_HIDDEN]) -> f64 {
        let mut y = self.b2;
        for j in 0..MLP_HIDDEN {
            y += self.w2[j] * h[j];
        }
        y
    }
}

/// `w2 · tansig(w1·x + b1) + b2`
pub fn mlp_predict(net: &MlpNet, x: &Input) -> f64 {
    net.output_from_hidden(&net.hidden(x))
}

impl Parametric for MlpNet {
    const N_PARAMS: usize = MLP_HIDDEN * ORDER + MLP_HIDDEN + MLP_HIDDEN + 1;

    fn params(&self) -> Vec<f64> {
        let mut p = Vec::with_capacity(Self::N_PARAMS);
        for row in &self.w1 {
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
        for row in &mut self.w1 {
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
