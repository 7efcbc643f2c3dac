use super::activation::radbas;
use super::Input;

/// `radbas(HALF_WIDTH) = 0.5`: a neuron with bias `HALF_WIDTH / spread`
/// outputs one half at distance `spread` from its center.
pub const HALF_WIDTH: f64 = 0.8326;

pub const DEFAULT_SPREAD: f64 = 0.22;
pub const DEFAULT_MAX_NEURONS: usize = 20;

/// Gaussian layer with one shared bias, then a linear output neuron.
#[derive(Debug, Clone, PartialEq)]
pub struct RbfNet {
    pub centers: Vec<Input>,
    pub bias: f64,
    pub lin_w: Vec<f64>,
    pub lin_b: f64,
    pub spread: f64,
}

impl RbfNet {
    /// Network with no neurons; outputs `lin_b = 0` everywhere.
    pub fn empty(spread: f64) -> Self {
        Self {
            centers: Vec::new(),
            bias: bias_for_spread(spread),
            lin_w: Vec::new(),
            lin_b: 0.0,
            spread,
        }
    }

    pub fn neurons(&self) -> usize {
        self.centers.len()
    }

    /// Activations of every neuron for input `x`.
    pub fn activations(&self, x: &Input) -> Vec<f64> {
        self.centers
            .iter()
            .map(|c| rbf_neuron(c, self.bias, x))
            .collect()
    }
}

pub fn bias_for_spread(spread: f64) -> f64 {
    HALF_WIDTH / spread
}

pub fn euclidean_distance(a: &[f64], b: &[f64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(p, q)| (p - q) * (p - q))
        .sum::<f64>()
        .sqrt()
}

/// `radbas(||center - x|| · bias)`
pub fn rbf_neuron(center: &[f64], bias: f64, x: &[f64]) -> f64 {
    radbas(euclidean_distance(center, x) * bias)
}

/// `lin_b + Σ lin_w[i] · rbf_neuron(centers[i], bias, x)`
pub fn rbf_predict(net: &RbfNet, x: &Input) -> f64 {
    let mut y = net.lin_b;
    for (c, w) in net.centers.iter().zip(&net.lin_w) {
        y += w * rbf_neuron(c, net.bias, x);
    }
    y
}
