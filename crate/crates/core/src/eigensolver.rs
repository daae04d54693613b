//! Cyclic Jacobi diagonalization of dense symmetric matrices.

use alloc::vec;
use alloc::vec::Vec;

use crate::hamiltonian::SymMatrix;
use crate::{Error, Result};

pub const MAX_SWEEPS: usize = 50;

/// Off-diagonal Frobenius norm, relative to the full norm, at which the
/// iteration stops.
pub const OFF_DIAGONAL_TOLERANCE: f64 = 1e-14;

/// Eigenvalues in ascending order with optional eigenvectors.
#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum {
    values: Vec<f64>,
    // column-major: vector k occupies vectors[k*dim .. (k+1)*dim]
    vectors: Option<Vec<f64>>,
}

impl Spectrum {
    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn has_vectors(&self) -> bool {
        self.vectors.is_some()
    }

    /// Unit eigenvector belonging to `values()[k]`.
    pub fn vector(&self, k: usize) -> Option<&[f64]> {
        let d = self.values.len();
        self.vectors
            .as_ref()
            .filter(|_| k < d)
            .map(|v| &v[k * d..(k + 1) * d])
    }
}

/// Diagonalizes `mat` by cyclic-by-rows Jacobi rotations.
pub fn jacobi_eigen(mat: &SymMatrix, want_vectors: bool) -> Result<Spectrum> {
    let n = mat.dim();
    if !mat.is_finite() {
        return Err(Error::InvalidParameter {
            name: "matrix entry",
            value: f64::NAN,
            constraint: "finite",
        });
    }
    let mut a = mat.as_slice().to_vec();
    let mut v = if want_vectors {
        let mut id = vec![0.0; n * n];
        for i in 0..n {
            id[i * n + i] = 1.0;
        }
        Some(id)
    } else {
        None
    };

    let threshold = OFF_DIAGONAL_TOLERANCE * mat.frobenius_norm();
    let mut converged = false;
    for sweep in 0..MAX_SWEEPS {
        let off = off_diagonal_norm(&a, n);
        if off <= threshold {
            converged = true;
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                let apq = a[p * n + q];
                if apq == 0.0 {
                    continue;
                }
                let app = a[p * n + p];
                let aqq = a[q * n + q];
                // Negligible against both diagonal entries: drop it.
                let g = 100.0 * apq.abs();
                if sweep > 3 && app.abs() + g == app.abs() && aqq.abs() + g == aqq.abs() {
                    a[p * n + q] = 0.0;
                    a[q * n + p] = 0.0;
                    continue;
                }
                let theta = 0.5 * (aqq - app) / apq;
                let t = {
                    let t = 1.0 / (theta.abs() + libm::sqrt(theta * theta + 1.0));
                    if theta < 0.0 {
                        -t
                    } else {
                        t
                    }
                };
                let c = 1.0 / libm::sqrt(t * t + 1.0);
                let s = t * c;
                rotate(&mut a, n, p, q, c, s, t);
                if let Some(v) = v.as_mut() {
                    for k in 0..n {
                        let vkp = v[p * n + k];
                        let vkq = v[q * n + k];
                        v[p * n + k] = c * vkp - s * vkq;
                        v[q * n + k] = s * vkp + c * vkq;
                    }
                }
            }
        }
    }
    if !converged && off_diagonal_norm(&a, n) > threshold {
        return Err(Error::NoConvergence { sweeps: MAX_SWEEPS });
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[i * n + i].total_cmp(&a[j * n + j]));
    let values = order.iter().map(|&i| a[i * n + i]).collect();
    let vectors = v.map(|v| {
        let mut sorted = Vec::with_capacity(n * n);
        for &i in &order {
            sorted.extend_from_slice(&v[i * n..(i + 1) * n]);
        }
        sorted
    });
    Ok(Spectrum { values, vectors })
}

fn off_diagonal_norm(a: &[f64], n: usize) -> f64 {
    let mut s = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                s += a[i * n + j] * a[i * n + j];
            }
        }
    }
    libm::sqrt(s)
}

/// Applies `Jᵀ A J` for the rotation in the `(p, q)` plane that zeroes `a_pq`.
fn rotate(a: &mut [f64], n: usize, p: usize, q: usize, c: f64, s: f64, t: f64) {
    let apq = a[p * n + q];
    a[p * n + p] -= t * apq;
    a[q * n + q] += t * apq;
    a[p * n + q] = 0.0;
    a[q * n + p] = 0.0;
    for k in 0..n {
        if k == p || k == q {
            continue;
        }
        let akp = a[k * n + p];
        let akq = a[k * n + q];
        let new_p = c * akp - s * akq;
        let new_q = s * akp + c * akq;
        a[k * n + p] = new_p;
        a[p * n + k] = new_p;
        a[k * n + q] = new_q;
        a[q * n + k] = new_q;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn random_symmetric(n: usize, seed: u64) -> SymMatrix {
        let mut state = seed;
        let mut next = move || {
            state = state
                .wrapping_mul(6_364_136_223_846_793_005)
                .wrapping_add(1_442_695_040_888_963_407);
            (state >> 11) as f64 / (1u64 << 53) as f64 - 0.5
        };
        SymMatrix::from_upper(n, |_, _| next())
    }

    fn residual(m: &SymMatrix, value: f64, vec: &[f64]) -> f64 {
        let n = m.dim();
        let mut r = 0.0;
        for i in 0..n {
            let av: f64 = (0..n).map(|j| m.get(i, j) * vec[j]).sum();
            r += (av - value * vec[i]).powi(2);
        }
        r.sqrt()
    }

    #[test]
    fn diagonal_input_is_sorted() {
        let mut m = SymMatrix::zeros(3);
        m.set(0, 0, 5.0);
        m.set(1, 1, 1.0);
        m.set(2, 2, 3.0);
        let s = jacobi_eigen(&m, false).unwrap();
        assert_eq!(s.values(), &[1.0, 3.0, 5.0]);
        assert!(s.vector(0).is_none());
    }

    #[test]
    fn two_by_two_closed_form() {
        let (a, b, c) = (2.0, -1.5, 0.7);
        let mut m = SymMatrix::zeros(2);
        m.set(0, 0, a);
        m.set(1, 1, b);
        m.set(0, 1, c);
        let s = jacobi_eigen(&m, true).unwrap();
        let mean = 0.5 * (a + b);
        let r = (0.25 * (a - b) * (a - b) + c * c).sqrt();
        assert!((s.values()[0] - (mean - r)).abs() < 1e-15);
        assert!((s.values()[1] - (mean + r)).abs() < 1e-15);
    }

    #[test]
    fn empty_and_zero_matrices() {
        assert!(jacobi_eigen(&SymMatrix::zeros(0), true).unwrap().is_empty());
        let s = jacobi_eigen(&SymMatrix::zeros(4), true).unwrap();
        assert_eq!(s.values(), &[0.0; 4]);
    }

    #[test]
    fn random_matrices_satisfy_eigen_relations() {
        for (n, seed) in [(5usize, 1u64), (17, 2), (30, 3), (64, 4)] {
            let m = random_symmetric(n, seed);
            let s = jacobi_eigen(&m, true).unwrap();
            let norm = m.frobenius_norm();
            assert!(s.values().windows(2).all(|w| w[0] <= w[1]));
            let sum: f64 = s.values().iter().sum();
            assert!((sum - m.trace()).abs() <= 1e-11 * norm);
            for k in 0..n {
                let vk = s.vector(k).unwrap();
                assert!(residual(&m, s.values()[k], vk) <= 1e-9 * norm);
                for l in 0..n {
                    let dot: f64 = vk
                        .iter()
                        .zip(s.vector(l).unwrap())
                        .map(|(x, y)| x * y)
                        .sum();
                    let expected = if k == l { 1.0 } else { 0.0 };
                    assert!((dot - expected).abs() < 1e-10);
                }
            }
        }
    }

    #[test]
    fn non_finite_input_is_rejected() {
        let mut m = SymMatrix::zeros(2);
        m.set(0, 1, f64::INFINITY);
        assert!(jacobi_eigen(&m, false).is_err());
    }
}
