//! Greedy RBF construction: grow the network one neuron at a time, each time
//! adding the training input whose neuron, after a least-squares refit of
//! the output layer, leaves the smallest squared error.

use super::linalg::Cholesky;
use super::trainset::TrainSet;
use crate::predictors::rbf::{bias_for_spread, rbf_neuron};
use crate::predictors::RbfNet;

/// Added to the diagonal of the output-layer normal equations so duplicate
/// or collinear activations stay solvable.
pub const RIDGE: f64 = 1e-10;

#[derive(Debug, Clone)]
pub struct GreedyTrace {
    /// `sse[n]` is the training SSE with `n` neurons; `sse[0]` is the empty
    /// network (output 0).
    pub sse: Vec<f64>,
    /// Training-row index of each chosen center, in order of addition.
    pub chosen: Vec<usize>,
}

pub fn rbf_train_greedy(ts: &TrainSet, spread: f64, max_neurons: usize, error_goal: f64) -> RbfNet {
    rbf_train_greedy_traced(ts, spread, max_neurons, error_goal).0
}

pub fn rbf_train_greedy_traced(
    ts: &TrainSet,
    spread: f64,
    max_neurons: usize,
    error_goal: f64,
) -> (RbfNet, GreedyTrace) {
    let m = ts.len();
    let bias = bias_for_spread(spread);
    let y = &ts.targets;

    // phi[t * m + c]: activation of a neuron centered on input c at row t
    let mut phi = vec![0.0; m * m];
    for t in 0..m {
        for c in 0..m {
            phi[t * m + c] = rbf_neuron(&ts.inputs[c], bias, &ts.inputs[t]);
        }
    }
    let column = |c: usize, t: usize| phi[t * m + c];

    // Inner products among the constant column (index None) and candidates.
    let mut g_cc = vec![0.0; m * m];
    for t in 0..m {
        let row = &phi[t * m..(t + 1) * m];
        for a in 0..m {
            let ra = row[a];
            for b in 0..=a {
                g_cc[a * m + b] += ra * row[b];
            }
        }
    }
    for a in 0..m {
        for b in 0..a {
            g_cc[b * m + a] = g_cc[a * m + b];
        }
    }
    let col_sum: Vec<f64> = (0..m).map(|c| (0..m).map(|t| column(c, t)).sum()).collect();
    let col_y: Vec<f64> = (0..m).map(|c| (0..m).map(|t| column(c, t) * y[t]).sum()).collect();
    let sum_y: f64 = y.iter().sum();

    let sse_of = |centers: &[usize], coef: &[f64]| -> f64 {
        (0..m)
            .map(|t| {
                let mut out = coef[0];
                for (k, &c) in centers.iter().enumerate() {
                    out += coef[k + 1] * column(c, t);
                }
                let e = y[t] - out;
                e * e
            })
            .sum()
    };

    let mut chosen: Vec<usize> = Vec::new();
    let mut coef = vec![0.0];
    let mut sse = y.iter().map(|v| v * v).sum::<f64>();
    let mut trace = GreedyTrace {
        sse: vec![sse],
        chosen: Vec::new(),
    };
    let mut used = vec![false; m];

    while chosen.len() < max_neurons.min(m) && sse > error_goal {
        let n = chosen.len() + 2;
        let mut best: Option<(f64, usize, Vec<f64>)> = None;
        for cand in (0..m).filter(|&c| !used[c]) {
            let basis: Vec<Option<usize>> = std::iter::once(None)
                .chain(chosen.iter().map(|&c| Some(c)))
                .chain(std::iter::once(Some(cand)))
                .collect();
            let mut a = vec![0.0; n * n];
            let mut rhs = vec![0.0; n];
            for (i, bi) in basis.iter().enumerate() {
                rhs[i] = match bi {
                    None => sum_y,
                    Some(c) => col_y[*c],
                };
                for (j, bj) in basis.iter().enumerate() {
                    a[i * n + j] = match (bi, bj) {
                        (None, None) => m as f64,
                        (None, Some(c)) | (Some(c), None) => col_sum[*c],
                        (Some(p), Some(q)) => g_cc[p * m + q],
                    };
                }
                a[i * n + i] += RIDGE;
            }
            let mut centers = chosen.clone();
            centers.push(cand);
            let (cand_sse, cand_coef) = match Cholesky::factor(&a, n) {
                Ok(ch) => {
                    let x = ch.solve(&rhs);
                    (sse_of(&centers, &x), x)
                }
                Err(_) => (f64::INFINITY, Vec::new()),
            };
            // Never worse than keeping the previous fit with a zero weight.
            let (cand_sse, cand_coef) = if cand_sse <= sse {
                (cand_sse, cand_coef)
            } else {
                let mut padded = coef.clone();
                padded.push(0.0);
                (sse, padded)
            };
            if best.as_ref().is_none_or(|(s, _, _)| cand_sse < *s) {
                best = Some((cand_sse, cand, cand_coef));
            }
        }
        let Some((best_sse, cand, best_coef)) = best else {
            break;
        };
        used[cand] = true;
        chosen.push(cand);
        coef = best_coef;
        sse = best_sse;
        trace.sse.push(sse);
        trace.chosen.push(cand);
    }

    let net = RbfNet {
        centers: chosen.iter().map(|&c| ts.inputs[c]).collect(),
        bias,
        lin_w: coef[1..].to_vec(),
        lin_b: coef[0],
        spread,
    };
    (net, trace)
}
