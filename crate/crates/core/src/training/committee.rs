//! Multi-start committee training and the per-frame fan-out over families.

use super::bayes::{bayes_reg_update, RegStats};
use super::linalg::{gram, sum_sq, Cholesky};
use super::lm::{lm_epoch, LmModel, LmState, StepOutcome};
use super::rbf_greedy::rbf_train_greedy;
use super::trainset::TrainSet;
use crate::par::Exec;
use crate::predictors::rbf::{DEFAULT_MAX_NEURONS, DEFAULT_SPREAD};
use crate::predictors::{ElmanNet, Family, MlpNet, Parametric, PredictorBank, RbfNet, COMMITTEE_SIZE};
use crate::rng::StreamRng;
use crate::Result;

/// Initial weights are uniform on `[-INIT_RANGE, INIT_RANGE]`.
pub const INIT_RANGE: f64 = 0.5;

#[derive(Debug, Clone, PartialEq)]
pub struct TrainConfig {
    pub epochs: usize,
    pub spread: f64,
    pub max_neurons: usize,
    pub error_goal: f64,
}

impl TrainConfig {
    pub fn with_epochs(epochs: usize) -> Self {
        Self {
            epochs,
            ..Self::default()
        }
    }
}

impl Default for TrainConfig {
    fn default() -> Self {
        Self {
            epochs: 6,
            spread: DEFAULT_SPREAD,
            max_neurons: DEFAULT_MAX_NEURONS,
            error_goal: 0.0,
        }
    }
}

/// Networks trained by multi-start LM.
pub trait CommitteeNet: LmModel + Send + Sync {
    const FAMILY: Family;

    fn initialize(rng: &mut StreamRng) -> Self;
}

fn uniform_init<M: Parametric>(mut net: M, rng: &mut StreamRng) -> M {
    let p: Vec<f64> = (0..M::N_PARAMS)
        .map(|_| rng.uniform(-INIT_RANGE, INIT_RANGE))
        .collect();
    net.set_params(&p);
    net
}

impl CommitteeNet for MlpNet {
    const FAMILY: Family = Family::Mlp;

    fn initialize(rng: &mut StreamRng) -> Self {
        uniform_init(MlpNet::zeros(), rng)
    }
}

impl CommitteeNet for ElmanNet {
    const FAMILY: Family = Family::Elman;

    fn initialize(rng: &mut StreamRng) -> Self {
        uniform_init(ElmanNet::zeros(), rng)
    }
}

/// PRNG stream for one committee member.
pub fn member_rng(seed: u64, frame_index: usize, family: Family, member: usize) -> StreamRng {
    StreamRng::from_parts(&[seed, frame_index as u64, family as u64, member as u64])
}

/// Statistics for the Bayesian update at the current weights. The Hessian
/// of `F` is `2(βJᵀJ + αI)`; its inverse trace is only needed when α > 0.
fn reg_stats<M: LmModel>(net: &M, ts: &TrainSet, st: &LmState) -> Result<RegStats> {
    let p = M::N_PARAMS;
    let w = net.params();
    let (r, jac) = net.residuals_and_jacobian(ts);
    let trace_h_inv = if st.alpha > 0.0 {
        let mut a: Vec<f64> = gram(&jac, r.len(), p).iter().map(|v| st.beta * v).collect();
        for k in 0..p {
            a[k * p + k] += st.alpha;
        }
        0.5 * Cholesky::factor(&a, p)?.trace_inverse()
    } else {
        0.0
    };
    Ok(RegStats {
        e_d: sum_sq(&r),
        e_w: sum_sq(&w),
        trace_h_inv,
        n_params: p,
        n_samples: r.len(),
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct TrainReport {
    pub state: LmState,
    /// Objective after each accepted step, at the α, β used for that step.
    pub objective: Vec<f64>,
    pub hit_mu_ceiling: bool,
}

/// Runs up to `epochs` LM iterations, re-estimating α and β after each
/// accepted step when `bayesian` is set.
pub fn train_lm<M: LmModel>(
    net: &mut M,
    ts: &TrainSet,
    epochs: usize,
    bayesian: bool,
) -> Result<TrainReport> {
    let mut report = TrainReport {
        state: LmState::default(),
        objective: Vec::with_capacity(epochs),
        hit_mu_ceiling: false,
    };
    for _ in 0..epochs {
        match lm_epoch(net, ts, &mut report.state)? {
            StepOutcome::Accepted { after, .. } => {
                report.objective.push(after);
                if bayesian {
                    // an ill-conditioned Hessian leaves α and β where they are
                    match reg_stats(net, ts, &report.state) {
                        Ok(stats) => {
                            bayes_reg_update(&mut report.state, stats);
                        }
                        Err(e) => log::debug!("skipping regularization update: {e}"),
                    }
                }
            }
            StepOutcome::MuCeiling => {
                report.hit_mu_ceiling = true;
                break;
            }
        }
    }
    Ok(report)
}

/// One committee member: seeded initialization, then Bayesian-regularized
/// LM. A member whose training fails falls back to its initialization.
pub fn train_member<M: CommitteeNet>(
    ts: &TrainSet,
    epochs: usize,
    seed: u64,
    frame_index: usize,
    member: usize,
) -> (M, bool) {
    let init = M::initialize(&mut member_rng(seed, frame_index, M::FAMILY, member));
    let mut net = init.clone();
    match train_lm(&mut net, ts, epochs, true) {
        Ok(_) => (net, true),
        Err(e) => {
            log::warn!(
                "{} member {member} failed on frame {frame_index}: {e}; using its initialization",
                M::FAMILY.name()
            );
            (init, false)
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Committee<M> {
    pub nets: [M; COMMITTEE_SIZE],
    /// `trained[i]` is false when member `i` fell back to its initialization.
    pub trained: [bool; COMMITTEE_SIZE],
}

impl<M> Committee<M> {
    pub fn all_failed(&self) -> bool {
        self.trained.iter().all(|ok| !ok)
    }
}

fn assemble<M>(members: Vec<(M, bool)>) -> Committee<M> {
    let trained: [bool; COMMITTEE_SIZE] = std::array::from_fn(|i| members[i].1);
    let nets: Vec<M> = members.into_iter().map(|(n, _)| n).collect();
    Committee {
        nets: nets.try_into().ok().expect("committee size"),
        trained,
    }
}

/// Trains the five members of one family. Deterministic in
/// `(ts, epochs, seed, frame_index)` whatever `exec` is.
pub fn train_committee<M: CommitteeNet>(
    ts: &TrainSet,
    epochs: usize,
    seed: u64,
    frame_index: usize,
    exec: Exec,
) -> Committee<M> {
    let members = exec.map((0..COMMITTEE_SIZE).collect(), |i| {
        train_member::<M>(ts, epochs, seed, frame_index, i)
    });
    assemble(members)
}

enum Task {
    Mlp(usize),
    Elman(usize),
    Rbf,
}

enum Output {
    Mlp(MlpNet, bool),
    Elman(ElmanNet, bool),
    Rbf(RbfNet),
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct TrainedBank {
    pub mlp: Option<Committee<MlpNet>>,
    pub elman: Option<Committee<ElmanNet>>,
    pub rbf: Option<RbfNet>,
}

impl TrainedBank {
    /// Installs into `bank`. A committee whose members all failed leaves the
    /// previous committee of that family in place.
    pub fn install(self, bank: &mut PredictorBank) {
        if let Some(c) = self.mlp {
            if !c.all_failed() || bank.mlp.is_none() {
                bank.mlp = Some(c.nets);
            }
        }
        if let Some(c) = self.elman {
            if !c.all_failed() || bank.elman.is_none() {
                bank.elman = Some(c.nets);
            }
        }
        if let Some(r) = self.rbf {
            bank.rbf = Some(r);
        }
        bank.reset_contexts();
    }
}

/// Trains every requested family on one frame, fanning members and families
/// out over `exec`. Results are assembled in fixed family/member order.
pub fn train_bank(
    families: &[Family],
    ts: &TrainSet,
    cfg: &TrainConfig,
    seed: u64,
    frame_index: usize,
    exec: Exec,
) -> TrainedBank {
    let mut tasks = Vec::new();
    for &f in families {
        match f {
            Family::Mlp => tasks.extend((0..COMMITTEE_SIZE).map(Task::Mlp)),
            Family::Elman => tasks.extend((0..COMMITTEE_SIZE).map(Task::Elman)),
            Family::Rbf => tasks.push(Task::Rbf),
        }
    }
    let outputs = exec.map(tasks, |task| match task {
        Task::Mlp(i) => {
            let (n, ok) = train_member::<MlpNet>(ts, cfg.epochs, seed, frame_index, i);
            Output::Mlp(n, ok)
        }
        Task::Elman(i) => {
            let (n, ok) = train_member::<ElmanNet>(ts, cfg.epochs, seed, frame_index, i);
            Output::Elman(n, ok)
        }
        Task::Rbf => Output::Rbf(rbf_train_greedy(ts, cfg.spread, cfg.max_neurons, cfg.error_goal)),
    });

    let mut mlp = Vec::new();
    let mut elman = Vec::new();
    let mut out = TrainedBank::default();
    for o in outputs {
        match o {
            Output::Mlp(n, ok) => mlp.push((n, ok)),
            Output::Elman(n, ok) => elman.push((n, ok)),
            Output::Rbf(r) => out.rbf = Some(r),
        }
    }
    if !mlp.is_empty() {
        out.mlp = Some(assemble(mlp));
    }
    if !elman.is_empty() {
        out.elman = Some(assemble(elman));
    }
    out
}
