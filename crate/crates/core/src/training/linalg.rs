//! Dense symmetric positive-definite solves for the small normal equations
//! (at most a few dozen unknowns) met in training. Row-major storage,
//! plain loops in a fixed order, no fused multiply-add.

use crate::{Error, Result};

/// Lower-triangular Cholesky factor of an `n x n` SPD matrix.
#[derive(Debug, Clone)]
pub struct Cholesky {
    n: usize,
    l: Vec<f64>,
}

impl Cholesky {
    pub fn factor(a: &[f64], n: usize) -> Result<Self> {
        debug_assert_eq!(a.len(), n * n);
        let mut l = vec![0.0; n * n];
        for i in 0..n {
            for j in 0..=i {
                let mut s = a[i * n + j];
                for k in 0..j {
                    s -= l[i * n + k] * l[j * n + k];
                }
                if i == j {
                    if !s.is_finite() || s <= 0.0 {
                        return Err(Error::SingularNormalEquations);
                    }
                    l[i * n + i] = s.sqrt();
                } else {
                    l[i * n + j] = s / l[j * n + j];
                }
            }
        }
        Ok(Self { n, l })
    }

    pub fn solve(&self, b: &[f64]) -> Vec<f64> {
        let n = self.n;
        let mut y = b.to_vec();
        for i in 0..n {
            let mut s = y[i];
            for k in 0..i {
                s -= self.l[i * n + k] * y[k];
            }
            y[i] = s / self.l[i * n + i];
        }
        for i in (0..n).rev() {
            let mut s = y[i];
            for k in i + 1..n {
                s -= self.l[k * n + i] * y[k];
            }
            y[i] = s / self.l[i * n + i];
        }
        y
    }

    /// `trace(A^-1) = ||L^-1||_F^2`.
    pub fn trace_inverse(&self) -> f64 {
        let n = self.n;
        let mut total = 0.0;
        let mut col = vec![0.0; n];
        for e in 0..n {
            // forward solve L z = e_e; z is zero above e
            col.iter_mut().for_each(|v| *v = 0.0);
            for i in e..n {
                let mut s = if i == e { 1.0 } else { 0.0 };
                for k in e..i {
                    s -= self.l[i * n + k] * col[k];
                }
                col[i] = s / self.l[i * n + i];
            }
            total += col[e..].iter().map(|v| v * v).sum::<f64>();
        }
        total
    }
}

/// `J^T J` for a row-major `m x p` Jacobian.
pub fn gram(j: &[f64], m: usize, p: usize) -> Vec<f64> {
    let mut g = vec![0.0; p * p];
    for row in j.chunks_exact(p).take(m) {
        for a in 0..p {
            let ra = row[a];
            for b in 0..=a {
                g[a * p + b] += ra * row[b];
            }
        }
    }
    for a in 0..p {
        for b in 0..a {
            g[b * p + a] = g[a * p + b];
        }
    }
    g
}

/// `J^T r`.
pub fn jt_vec(j: &[f64], r: &[f64], p: usize) -> Vec<f64> {
    let mut out = vec![0.0; p];
    for (row, &ri) in j.chunks_exact(p).zip(r) {
        for a in 0..p {
            out[a] += row[a] * ri;
        }
    }
    out
}

pub fn sum_sq(v: &[f64]) -> f64 {
    v.iter().map(|x| x * x).sum()
}
