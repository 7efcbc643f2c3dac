//! Levenberg-Marquardt on the regularized objective
//! `F = β·Σr² + α·Σw²`, with residuals `r_t = y_t - target_t`.

use super::linalg::{gram, jt_vec, sum_sq, Cholesky};
use super::trainset::TrainSet;
use crate::predictors::{ElmanNet, MlpNet, Parametric, ELMAN_HIDDEN, MLP_HIDDEN};
use crate::{Error, Result, ORDER};

pub const MU_INIT: f64 = 1e-3;
pub const MU_INC: f64 = 10.0;
pub const MU_DEC: f64 = 0.1;
pub const MU_MIN: f64 = 1e-20;
pub const MU_MAX: f64 = 1e10;

#[derive(Debug, Clone, PartialEq)]
pub struct LmState {
    pub mu: f64,
    pub mu_inc: f64,
    pub mu_dec: f64,
    pub alpha: f64,
    pub beta: f64,
    /// Accepted steps so far.
    pub epoch: usize,
}

impl Default for LmState {
    fn default() -> Self {
        Self {
            mu: MU_INIT,
            mu_inc: MU_INC,
            mu_dec: MU_DEC,
            alpha: 0.0,
            beta: 1.0,
            epoch: 0,
        }
    }
}

impl LmState {
    pub fn objective(&self, e_d: f64, e_w: f64) -> f64 {
        self.beta * e_d + self.alpha * e_w
    }
}

/// A network the LM trainer can fit.
pub trait LmModel: Parametric + Clone {
    /// Residuals over the whole set, evaluated exactly.
    fn residuals(&self, ts: &TrainSet) -> Vec<f64>;

    /// Residuals and the row-major `M x N_PARAMS` Jacobian used for the step.
    fn residuals_and_jacobian(&self, ts: &TrainSet) -> (Vec<f64>, Vec<f64>);
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum StepOutcome {
    Accepted { before: f64, after: f64 },
    /// Damping reached [`MU_MAX`] without finding a decrease.
    MuCeiling,
}

/// One outer LM iteration: retries with growing damping until `F` decreases.
pub fn lm_epoch<M: LmModel>(net: &mut M, ts: &TrainSet, st: &mut LmState) -> Result<StepOutcome> {
    let p = M::N_PARAMS;
    let w = net.params();
    let (r, jac) = net.residuals_and_jacobian(ts);
    let before = st.objective(sum_sq(&r), sum_sq(&w));
    if !before.is_finite() {
        return Err(Error::SingularNormalEquations);
    }
    let jtj = gram(&jac, r.len(), p);
    let jtr = jt_vec(&jac, &r, p);
    let grad: Vec<f64> = (0..p).map(|k| st.beta * jtr[k] + st.alpha * w[k]).collect();

    let mut trial_net = net.clone();
    let mut solved_any = false;
    loop {
        let mut a: Vec<f64> = jtj.iter().map(|v| st.beta * v).collect();
        for k in 0..p {
            a[k * p + k] += st.alpha + st.mu;
        }
        // A factorization lost to roundoff counts as a rejected step: more
        // damping restores definiteness.
        if let Ok(chol) = Cholesky::factor(&a, p) {
            solved_any = true;
            let delta = chol.solve(&grad);
            let trial: Vec<f64> = w.iter().zip(&delta).map(|(wi, di)| wi - di).collect();
            trial_net.set_params(&trial);
            let after = st.objective(sum_sq(&trial_net.residuals(ts)), sum_sq(&trial));
            if after < before {
                *net = trial_net;
                st.mu = (st.mu * st.mu_dec).max(MU_MIN);
                st.epoch += 1;
                return Ok(StepOutcome::Accepted { before, after });
            }
        }
        st.mu *= st.mu_inc;
        if st.mu > MU_MAX {
            st.mu = MU_MAX;
            if !solved_any {
                return Err(Error::SingularNormalEquations);
            }
            return Ok(StepOutcome::MuCeiling);
        }
    }
}

impl LmModel for MlpNet {
    fn residuals(&self, ts: &TrainSet) -> Vec<f64> {
        ts.inputs
            .iter()
            .zip(&ts.targets)
            .map(|(x, t)| crate::predictors::mlp_predict(self, x) - t)
            .collect()
    }

    fn residuals_and_jacobian(&self, ts: &TrainSet) -> (Vec<f64>, Vec<f64>) {
        let p = Self::N_PARAMS;
        let mut r = Vec::with_capacity(ts.len());
        let mut jac = vec![0.0; ts.len() * p];
        for (t, (x, target)) in ts.inputs.iter().zip(&ts.targets).enumerate() {
            let h = self.hidden(x);
            r.push(self.output_from_hidden(&h) - target);
            let row = &mut jac[t * p..(t + 1) * p];
            let b1_at = MLP_HIDDEN * ORDER;
            let w2_at = b1_at + MLP_HIDDEN;
            for j in 0..MLP_HIDDEN {
                let d = self.w2[j] * (1.0 - h[j] * h[j]);
                for i in 0..ORDER {
                    row[j * ORDER + i] = d * x[i];
                }
                row[b1_at + j] = d;
                row[w2_at + j] = h[j];
            }
            row[p - 1] = 1.0;
        }
        (r, jac)
    }
}

/// Hidden-state contexts seen by each row when the set is run in order from a
/// zero context.
pub fn elman_contexts(net: &ElmanNet, ts: &TrainSet) -> Vec<[f64; ELMAN_HIDDEN]> {
    let mut ctx = [0.0; ELMAN_HIDDEN];
    ts.inputs
        .iter()
        .map(|x| {
            let used = ctx;
            ctx = net.hidden(x, &used);
            used
        })
        .collect()
}

/// Residuals with the contexts held fixed, the function whose exact
/// derivative is the truncated Jacobian.
pub fn elman_residuals_with_contexts(
    net: &ElmanNet,
    ts: &TrainSet,
    contexts: &[[f64; ELMAN_HIDDEN]],
) -> Vec<f64> {
    ts.inputs
        .iter()
        .zip(&ts.targets)
        .zip(contexts)
        .map(|((x, t), c)| net.output_from_hidden(&net.hidden(x, c)) - t)
        .collect()
}

impl LmModel for ElmanNet {
    fn residuals(&self, ts: &TrainSet) -> Vec<f64> {
        let mut ctx = [0.0; ELMAN_HIDDEN];
        ts.inputs
            .iter()
            .zip(&ts.targets)
            .map(|(x, t)| {
                let h = self.hidden(x, &ctx);
                ctx = h;
                self.output_from_hidden(&h) - t
            })
            .collect()
    }

    // Truncated at depth 1: the context is a constant input to each row.
    fn residuals_and_jacobian(&self, ts: &TrainSet) -> (Vec<f64>, Vec<f64>) {
        let p = Self::N_PARAMS;
        let rec_at = ELMAN_HIDDEN * ORDER;
        let b1_at = rec_at + ELMAN_HIDDEN * ELMAN_HIDDEN;
        let w2_at = b1_at + ELMAN_HIDDEN;
        let mut r = Vec::with_capacity(ts.len());
        let mut jac = vec![0.0; ts.len() * p];
        let mut ctx = [0.0; ELMAN_HIDDEN];
        for (t, (x, target)) in ts.inputs.iter().zip(&ts.targets).enumerate() {
            let h = self.hidden(x, &ctx);
            r.push(self.output_from_hidden(&h) - target);
            let row = &mut jac[t * p..(t + 1) * p];
            for j in 0..ELMAN_HIDDEN {
                let d = self.w2[j] * (1.0 - h[j] * h[j]);
                for i in 0..ORDER {
                    row[j * ORDER + i] = d * x[i];
                }
                for k in 0..ELMAN_HIDDEN {
                    row[rec_at + j * ELMAN_HIDDEN + k] = d * ctx[k];
                }
                row[b1_at + j] = d;
                row[w2_at + j] = h[j];
            }
            row[p - 1] = 1.0;
            ctx = h;
        }
        (r, jac)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::StreamRng;

    fn random_set(rng: &mut StreamRng, m: usize) -> TrainSet {
        TrainSet {
            inputs: (0..m)
                .map(|_| std::array::from_fn(|_| rng.uniform(-1.0, 1.0)))
                .collect(),
            targets: (0..m).map(|_| rng.uniform(-1.0, 1.0)).collect(),
        }
    }

    fn random_params<M: Parametric>(net: &mut M, rng: &mut StreamRng) {
        let p: Vec<f64> = (0..M::N_PARAMS).map(|_| rng.uniform(-1.0, 1.0)).collect();
        net.set_params(&p);
    }

    #[test]
    fn mlp_residual_paths_agree() {
        let mut rng = StreamRng::new(4);
        let ts = random_set(&mut rng, 30);
        let mut net = MlpNet::zeros();
        random_params(&mut net, &mut rng);
        assert_eq!(net.residuals(&ts), net.residuals_and_jacobian(&ts).0);
    }

    #[test]
    fn elman_residual_paths_agree() {
        let mut rng = StreamRng::new(5);
        let ts = random_set(&mut rng, 30);
        let mut net = ElmanNet::zeros();
        random_params(&mut net, &mut rng);
        let r = net.residuals(&ts);
        assert_eq!(r, net.residuals_and_jacobian(&ts).0);
        let ctx = elman_contexts(&net, &ts);
        assert_eq!(r, elman_residuals_with_contexts(&net, &ts, &ctx));
        assert_eq!(ctx[0], [0.0; ELMAN_HIDDEN]);
    }

    #[test]
    fn accepted_steps_decrease_objective() {
        let mut rng = StreamRng::new(6);
        let ts = random_set(&mut rng, 60);
        let mut net = MlpNet::zeros();
        random_params(&mut net, &mut rng);
        let mut st = LmState::default();
        for _ in 0..20 {
            match lm_epoch(&mut net, &ts, &mut st).unwrap() {
                StepOutcome::Accepted { before, after } => assert!(after < before),
                StepOutcome::MuCeiling => break,
            }
        }
        assert!(st.epoch > 0);
    }

    #[test]
    fn non_finite_start_is_singular() {
        let ts = TrainSet {
            inputs: vec![[f64::NAN; ORDER]],
            targets: vec![0.0],
        };
        let mut net = MlpNet::zeros();
        let mut st = LmState::default();
        assert!(matches!(
            lm_epoch(&mut net, &ts, &mut st),
            Err(Error::SingularNormalEquations)
        ));
    }
}
