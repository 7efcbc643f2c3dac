/// Hyperbolic tangent sigmoid. `tanh` saturates to ±1 instead of
/// overflowing, unlike the `2/(1+exp(-2x)) - 1` form.
#[inline]
pub fn tansig(x: f64) -> f64 {
    x.tanh()
}

/// Derivative of [`tansig`] expressed through its output.
#[inline]
pub fn tansig_deriv_from_output(y: f64) -> f64 {
    1.0 - y * y
}

/// Gaussian radial basis `exp(-n^2)`.
#[inline]
pub fn radbas(n: f64) -> f64 {
    (-(n * n)).exp()
}
