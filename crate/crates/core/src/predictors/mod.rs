//! Forward evaluation of the three predictor families and their fusion.
//!
//! Every predictor maps the last [`ORDER`](crate::ORDER) reconstructed
//! samples, oldest first, to a prediction of the next one.

pub mod activation;
pub mod elman;
pub mod fusion;
pub mod mlp;
pub mod rbf;
mod serialize;

pub use activation::{radbas, tansig};
pub use elman::{elman_predict, ElmanNet, ELMAN_HIDDEN};
pub use fusion::{committee_average, fuse, rank, Family, Fused, FusionMode, Ranking};
pub use mlp::{mlp_predict, MlpNet, MLP_HIDDEN};
pub use rbf::{rbf_neuron, rbf_predict, RbfNet};

use crate::ORDER;

/// Predictor input window, oldest sample first.
pub type Input = [f64; ORDER];

/// Members per multi-start committee.
pub const COMMITTEE_SIZE: usize = 5;

/// Flat parameter access for the trainers.
pub trait Parametric {
    const N_PARAMS: usize;
    fn params(&self) -> Vec<f64>;
    fn set_params(&mut self, p: &[f64]);
}

/// The trained predictors of one stream. Families that the active mode does
/// not use stay `None`.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct PredictorBank {
    pub mlp: Option<[MlpNet; COMMITTEE_SIZE]>,
    pub elman: Option<[ElmanNet; COMMITTEE_SIZE]>,
    pub rbf: Option<RbfNet>,
}

impl PredictorBank {
    pub fn has(&self, family: Family) -> bool {
        match family {
            Family::Mlp => self.mlp.is_some(),
            Family::Elman => self.elman.is_some(),
            Family::Rbf => self.rbf.is_some(),
        }
    }

    /// Committee-averaged output of one family. Advances Elman contexts.
    ///
    /// Panics if the family has not been trained.
    pub fn predict_family(&mut self, family: Family, x: &Input) -> f64 {
        match family {
            Family::Mlp => {
                let nets = self.mlp.as_ref().expect("mlp committee not trained");
                let outs: [f64; COMMITTEE_SIZE] = std::array::from_fn(|i| mlp_predict(&nets[i], x));
                committee_average(&outs)
            }
            Family::Elman => {
                let nets = self.elman.as_mut().expect("elman committee not trained");
                let outs: [f64; COMMITTEE_SIZE] = std::array::from_fn(|i| nets[i].step(x));
                committee_average(&outs)
            }
            Family::Rbf => rbf_predict(self.rbf.as_ref().expect("rbf not trained"), x),
        }
    }

    pub fn reset_contexts(&mut self) {
        if let Some(nets) = self.elman.as_mut() {
            nets.iter_mut().for_each(ElmanNet::reset_context);
        }
    }

    /// Versioned little-endian dump of every parameter, for inspection.
    pub fn to_bytes(&self) -> Vec<u8> {
        serialize::write_bank(self)
    }

    pub fn from_bytes(bytes: &[u8]) -> crate::Result<Self> {
        serialize::read_bank(bytes)
    }
}
