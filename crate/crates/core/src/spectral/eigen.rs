//! Cyclic Jacobi eigenvalues and grouped spectra.

use serde::{Deserialize, Serialize};

use super::matrix::{IntMatrix, SymMatrix};
use crate::scalar::Real;

pub const EIGEN_TOLERANCE: f64 = 1e-12;
pub const GROUP_TOLERANCE: f64 = 1e-8;
const MAX_SWEEPS: usize = 100;

/// Descending eigenvalues with multiplicity groups.
///
/// `annotations` is either empty or parallel to `groups`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Spectrum<T = f64> {
    pub values: Vec<T>,
    pub groups: Vec<(T, usize)>,
    pub annotations: Vec<String>,
}

impl<T: Real> Spectrum<T> {
    /// Sorts descending and merges neighbours closer than `group_tol`.
    pub fn from_values(mut values: Vec<T>, group_tol: T) -> Self {
        values.sort_by(|a, b| b.partial_cmp(a).unwrap_or(std::cmp::Ordering::Equal));
        let mut groups: Vec<(T, usize)> = Vec::new();
        let mut sums: Vec<T> = Vec::new();
        let mut last: Option<T> = None;
        for &v in &values {
            match (last, groups.last_mut(), sums.last_mut()) {
                (Some(prev), Some(g), Some(s)) if prev - v <= group_tol => {
                    g.1 += 1;
                    *s = *s + v;
                }
                _ => {
                    groups.push((v, 1));
                    sums.push(v);
                }
            }
            last = Some(v);
        }
        for (g, s) in groups.iter_mut().zip(&sums) {
            g.0 = *s / T::from_usize(g.1).unwrap_or_else(T::one);
        }
        Spectrum { values, groups, annotations: Vec::new() }
    }

    pub fn n(&self) -> usize {
        self.values.len()
    }

    /// `i`-th largest eigenvalue, 1-based.
    pub fn xi(&self, i: usize) -> T {
        self.values[i - 1]
    }

    pub fn count_above(&self, x: T) -> usize {
        self.values.iter().filter(|&&v| v > x).count()
    }

    pub fn count_below(&self, x: T) -> usize {
        self.values.iter().filter(|&&v| v < x).count()
    }
}

/// All eigenvalues of a real symmetric matrix, descending.
///
/// Sweeps stop once the off-diagonal Frobenius norm is at most
/// `tol` times the norm of the input.
pub fn jacobi_eigenvalues<T: Real>(m: &SymMatrix<T>, tol: T) -> Vec<T> {
    let n = m.n();
    let mut a: Vec<T> = m.rows().into_iter().flatten().collect();
    let norm = a.iter().fold(T::zero(), |s, &x| s + x * x).sqrt();
    let two = T::one() + T::one();
    for _ in 0..MAX_SWEEPS {
        let mut off = T::zero();
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    off = off + a[i * n + j] * a[i * n + j];
                }
            }
        }
        if off.sqrt() <= tol * norm {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                let apq = a[p * n + q];
                if apq == T::zero() {
                    continue;
                }
                let theta = (a[q * n + q] - a[p * n + p]) / (two * apq);
                let t = theta.signum() / (theta.abs() + (theta * theta + T::one()).sqrt());
                let c = T::one() / (t * t + T::one()).sqrt();
                let s = t * c;
                for k in 0..n {
                    let (akp, akq) = (a[k * n + p], a[k * n + q]);
                    a[k * n + p] = c * akp - s * akq;
                    a[k * n + q] = s * akp + c * akq;
                }
                for k in 0..n {
                    let (apk, aqk) = (a[p * n + k], a[q * n + k]);
                    a[p * n + k] = c * apk - s * aqk;
                    a[q * n + k] = s * apk + c * aqk;
                }
                a[p * n + q] = T::zero();
                a[q * n + p] = T::zero();
            }
        }
    }
    let mut vals: Vec<T> = (0..n).map(|i| a[i * n + i]).collect();
    vals.sort_by(|x, y| y.partial_cmp(x).unwrap_or(std::cmp::Ordering::Equal));
    vals
}

pub fn spectrum_with<T: Real>(m: &SymMatrix<T>, tol: T, group_tol: T) -> Spectrum<T> {
    Spectrum::from_values(jacobi_eigenvalues(m, tol), group_tol)
}

/// Spectrum of an integer matrix with the default tolerances.
pub fn eigenvalues(m: &IntMatrix) -> Spectrum {
    spectrum_with(&m.to_f64(), EIGEN_TOLERANCE, GROUP_TOLERANCE)
}

/// Whether `small` (order `k`) interlaces `big` (order `n`):
/// `big[n-k+i] <= small[i] <= big[i]` for every `i`, up to `tol`.
pub fn interlaces(big: &[f64], small: &[f64], tol: f64) -> bool {
    let (n, k) = (big.len(), small.len());
    k <= n && (0..k).all(|i| big[n - k + i] - tol <= small[i] && small[i] <= big[i] + tol)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Graph;
    use crate::spectral::matrix::anti_adjacency;

    fn close(a: &[f64], b: &[f64]) -> bool {
        a.len() == b.len() && a.iter().zip(b).all(|(x, y)| (x - y).abs() < 1e-9)
    }

    #[test]
    fn complete_graph() {
        let s = eigenvalues(&anti_adjacency(&Graph::complete(5)).unwrap());
        assert!(close(&s.values, &[4.0, -1.0, -1.0, -1.0, -1.0]));
        assert_eq!(s.groups.len(), 2);
        assert_eq!(s.groups[1].1, 4);
    }

    #[test]
    fn path_and_cycle() {
        let p4 = eigenvalues(&anti_adjacency(&Graph::path(4)).unwrap());
        assert!(close(&p4.values, &[4.0, 1.0, -1.0, -4.0]));
        let c4 = eigenvalues(&anti_adjacency(&Graph::cycle(4)).unwrap());
        assert!(close(&c4.values, &[2.0, 2.0, -2.0, -2.0]));
        assert_eq!(c4.groups.iter().map(|g| g.1).collect::<Vec<_>>(), vec![2, 2]);
    }

    #[test]
    fn single_precision() {
        let m = anti_adjacency(&Graph::path(4)).unwrap().map(|&x| x as f32);
        let v = jacobi_eigenvalues(&m, 1e-6f32);
        assert!((v[0] - 4.0).abs() < 1e-4 && (v[3] + 4.0).abs() < 1e-4);
    }

    #[test]
    fn grouping_json_shape() {
        let s = Spectrum::from_values(vec![-2.0, 1.0, -2.0 + 1e-12], GROUP_TOLERANCE);
        assert_eq!(s.groups.len(), 2);
        let js = serde_json::to_value(&s).unwrap();
        assert!(js["values"].is_array() && js["groups"][1][1] == 2 && js["annotations"].is_array());
    }

    #[test]
    fn interlacing_helper() {
        assert!(interlaces(&[3.0, 1.0, -1.0], &[2.0, 0.0], 1e-12));
        assert!(!interlaces(&[3.0, 1.0, -1.0], &[2.0, 1.5], 1e-12));
    }
}
