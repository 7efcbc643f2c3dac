//! Gauss-Newton approximation to Bayesian regularization: re-estimates the
//! weight-decay and data weights from the effective number of parameters.

use super::lm::LmState;

/// Statistics at the current weights feeding one update.
#[derive(Debug, Clone, Copy)]
pub struct RegStats {
    /// Sum of squared residuals.
    pub e_d: f64,
    /// Sum of squared weights.
    pub e_w: f64,
    /// Trace of the inverse Hessian of the regularized objective,
    /// `(2βJᵀJ + 2αI)⁻¹`.
    pub trace_h_inv: f64,
    pub n_params: usize,
    pub n_samples: usize,
}

/// Effective parameter count `k - 2α·tr(H⁻¹)`, clamped to `[0, k]`.
pub fn effective_params(alpha: f64, trace_h_inv: f64, n_params: usize) -> f64 {
    let k = n_params as f64;
    (k - 2.0 * alpha * trace_h_inv).clamp(0.0, k)
}

/// Updates `alpha` and `beta` in place and returns γ.
///
/// `α' = γ / (2 E_W)`, `β' = (N - γ) / (2 E_D)`. A zero `E_W` keeps α; a
/// non-positive numerator or `E_D` keeps β, since the trainer needs β > 0.
pub fn bayes_reg_update(st: &mut LmState, stats: RegStats) -> f64 {
    let gamma = effective_params(st.alpha, stats.trace_h_inv, stats.n_params);
    if stats.e_w > 0.0 {
        st.alpha = gamma / (2.0 * stats.e_w);
    }
    let dof = stats.n_samples as f64 - gamma;
    if dof > 0.0 && stats.e_d > 0.0 {
        st.beta = dof / (2.0 * stats.e_d);
    } else {
        log::debug!("bayesian update kept beta: N - gamma = {dof}, E_D = {}", stats.e_d);
    }
    gamma
}

#[cfg(test)]
mod tests {
    use super::*;

    fn state(alpha: f64) -> LmState {
        LmState {
            alpha,
            ..LmState::default()
        }
    }

    #[test]
    fn zero_trace_gives_full_count() {
        assert_eq!(effective_params(3.0, 0.0, 25), 25.0);
    }

    #[test]
    fn hand_computed_update() {
        // γ = 4 - 2·1·1 = 2; α' = 2 / (2·1) = 1; β' = (10 - 2) / (2·1) = 4
        let mut st = state(1.0);
        let gamma = bayes_reg_update(
            &mut st,
            RegStats { e_d: 1.0, e_w: 1.0, trace_h_inv: 1.0, n_params: 4, n_samples: 10 },
        );
        assert_eq!(gamma, 2.0);
        assert_eq!(st.alpha, 1.0);
        assert_eq!(st.beta, 4.0);
    }

    #[test]
    fn gamma_clamped_at_zero() {
        assert_eq!(effective_params(10.0, 1.0, 4), 0.0);
        let mut st = state(10.0);
        let gamma = bayes_reg_update(
            &mut st,
            RegStats { e_d: 1.0, e_w: 2.0, trace_h_inv: 1.0, n_params: 4, n_samples: 10 },
        );
        assert_eq!(gamma, 0.0);
        assert_eq!(st.alpha, 0.0);
        assert_eq!(st.beta, 5.0);
    }

    #[test]
    fn zero_weight_energy_keeps_alpha() {
        let mut st = state(0.7);
        bayes_reg_update(
            &mut st,
            RegStats { e_d: 1.0, e_w: 0.0, trace_h_inv: 0.1, n_params: 4, n_samples: 10 },
        );
        assert_eq!(st.alpha, 0.7);
    }

    #[test]
    fn alpha_never_negative() {
        for tr in [0.0, 0.5, 1.0, 100.0] {
            let mut st = state(2.0);
            bayes_reg_update(
                &mut st,
                RegStats { e_d: 0.3, e_w: 0.2, trace_h_inv: tr, n_params: 25, n_samples: 190 },
            );
            assert!(st.alpha >= 0.0);
            assert!(st.beta > 0.0);
        }
    }
}
