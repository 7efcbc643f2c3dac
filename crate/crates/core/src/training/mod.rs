//! Backward training on the previous decoded frame.

pub mod bayes;
pub mod committee;
pub mod linalg;
pub mod lm;
pub mod rbf_greedy;
mod trainset;

pub use bayes::{bayes_reg_update, effective_params, RegStats};
pub use committee::{
    member_rng, train_bank, train_committee, train_lm, train_member, Committee, CommitteeNet,
    TrainConfig, TrainReport, TrainedBank,
};
pub use lm::{lm_epoch, LmModel, LmState, StepOutcome};
pub use rbf_greedy::{rbf_train_greedy, rbf_train_greedy_traced, GreedyTrace};
pub use trainset::{build_trainset, TrainSet};
