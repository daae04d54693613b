//! Gol'dman–Krivchenkov basis functions
//!
//! ```text
//! ψ_n(x) = C_n x^{γ-1/2} exp(-√B x²/2) ₁F₁(-n; γ; √B x²)
//! C_n²   = 2 B^{γ/2} Γ(n+γ) / (n! Γ(γ)²)
//! ```
//!
//! and finite expansions `Σ a_n ψ_n`. The closed-form matrix elements carry a
//! factor `(-1)^(m+n)`, so they are elements between `(-1)^n ψ_n`; expansions
//! built from eigenvectors absorb that phase.
//!
//! Evaluation goes through the equivalent generalized Laguerre recurrence,
//! which stays accurate where the Kummer polynomial's alternating terms cancel.

use alloc::vec::Vec;

use crate::eigensolver::Spectrum;
use crate::matrix_elements::BasisGamma;
use crate::specfun::log_gamma;
use crate::{Error, Result};

/// Largest supported quantum number.
pub const MAX_QUANTUM_NUMBER: usize = 64;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BasisFunctionSpec {
    pub n: usize,
    pub g: BasisGamma,
}

impl BasisFunctionSpec {
    pub fn new(n: usize, g: BasisGamma) -> Result<Self> {
        if n > MAX_QUANTUM_NUMBER {
            return Err(Error::StateIndex {
                state: n,
                dim: MAX_QUANTUM_NUMBER + 1,
            });
        }
        Ok(BasisFunctionSpec { n, g })
    }

    /// `C_n`, evaluated through log-gamma.
    pub fn normalization(&self) -> Result<f64> {
        let gamma = self.g.gamma();
        let n = self.n as f64;
        let log_c2 = core::f64::consts::LN_2
            + 0.5 * gamma * libm::log(self.g.b_coupling())
            + log_gamma(n + gamma)?.log_abs
            - log_gamma(n + 1.0)?.log_abs
            - 2.0 * log_gamma(gamma)?.log_abs;
        Ok(libm::exp(0.5 * log_c2))
    }
}

/// `ψ_n(x)`.
pub fn eval_basis(spec: &BasisFunctionSpec, x: f64) -> Result<f64> {
    let values = eval_basis_all(&spec.g, spec.n + 1, x)?;
    Ok(values[spec.n])
}

/// `ψ_0(x), …, ψ_{count-1}(x)`.
pub fn eval_basis_all(g: &BasisGamma, count: usize, x: f64) -> Result<Vec<f64>> {
    if !(x > 0.0) {
        return Err(Error::NonPositivePosition(x));
    }
    if count > MAX_QUANTUM_NUMBER + 1 {
        return Err(Error::StateIndex {
            state: count - 1,
            dim: MAX_QUANTUM_NUMBER + 1,
        });
    }
    let gamma = g.gamma();
    let root_b = libm::sqrt(g.b_coupling());
    let z = root_b * x * x;
    // ψ_n = √(2 B^{γ/2} n!/Γ(n+γ)) x^{γ-1/2} e^{-z/2} L_n^{(γ-1)}(z)
    let log_front = 0.5
        * (core::f64::consts::LN_2 + 0.5 * gamma * libm::log(g.b_coupling())
            - log_gamma(gamma)?.log_abs)
        + (gamma - 0.5) * libm::log(x)
        - 0.5 * z;
    let front = libm::exp(log_front);

    let a = gamma - 1.0;
    let mut out = Vec::with_capacity(count);
    let (mut prev, mut cur) = (0.0, 1.0);
    let mut weight = 1.0;
    for k in 0..count {
        if k > 0 {
            let kf = k as f64;
            let next = ((2.0 * kf - 1.0 + a - z) * cur - (kf - 1.0 + a) * prev) / kf;
            prev = cur;
            cur = next;
            weight *= libm::sqrt(kf / (kf - 1.0 + gamma));
        }
        out.push(front * weight * cur);
    }
    Ok(out)
}

/// `Σ a_n ψ_n` in the basis set by `g`.
#[derive(Debug, Clone, PartialEq)]
pub struct ExpandedState {
    pub coefficients: Vec<f64>,
    pub g: BasisGamma,
}

impl ExpandedState {
    pub fn new(coefficients: Vec<f64>, g: BasisGamma) -> Self {
        ExpandedState { coefficients, g }
    }

    /// Eigenvector `k` of an assembled matrix, converted to coefficients of
    /// `ψ_n` and signed so the state's innermost lobe is positive.
    pub fn from_spectrum(spectrum: &Spectrum, k: usize, g: BasisGamma) -> Result<Self> {
        let v = spectrum.vector(k).ok_or(Error::StateIndex {
            state: k,
            dim: spectrum.len(),
        })?;
        let coefficients: Vec<f64> = v
            .iter()
            .enumerate()
            .map(|(n, a)| if n % 2 == 0 { *a } else { -*a })
            .collect();
        let mut state = ExpandedState { coefficients, g };
        state.orient()?;
        Ok(state)
    }

    /// Flips the overall sign so the first lobe reaching 1% of the peak
    /// `|ψ|` is positive.
    pub fn orient(&mut self) -> Result<()> {
        const SAMPLES: usize = 2000;
        let d = self.coefficients.len() as f64;
        let extent =
            libm::sqrt((4.0 * d + 2.0 * self.g.gamma() + 20.0) / libm::sqrt(self.g.b_coupling()));
        let mut values = Vec::with_capacity(SAMPLES);
        for i in 1..=SAMPLES {
            values.push(eval_state(self, extent * i as f64 / SAMPLES as f64)?);
        }
        let peak = values.iter().fold(0.0f64, |m, v| m.max(v.abs()));
        let first = values.iter().find(|v| v.abs() >= 0.01 * peak).copied();
        if first.is_some_and(|v| v < 0.0) {
            self.coefficients.iter_mut().for_each(|a| *a = -*a);
        }
        Ok(())
    }

    pub fn norm_squared(&self) -> f64 {
        self.coefficients.iter().map(|a| a * a).sum()
    }
}

pub fn eval_state(state: &ExpandedState, x: f64) -> Result<f64> {
    let psi = eval_basis_all(&state.g, state.coefficients.len(), x)?;
    Ok(state
        .coefficients
        .iter()
        .zip(&psi)
        .map(|(a, p)| a * p)
        .sum())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::specfun::kummer_poly;

    fn g(a: f64, b: f64) -> BasisGamma {
        BasisGamma::new(a, b).unwrap()
    }

    #[test]
    fn recurrence_matches_kummer_form() {
        for (a, b) in [(0.0, 1.0), (3.0, 2.0), (-0.25, 1.0), (15.75, 4.0)] {
            let g = g(a, b);
            let gamma = g.gamma();
            for n in 0..8 {
                let spec = BasisFunctionSpec::new(n, g).unwrap();
                let c = spec.normalization().unwrap();
                for x in [0.1, 0.7, 1.3, 2.9] {
                    let z = libm::sqrt(b) * x * x;
                    let direct = c
                        * libm::pow(x, gamma - 0.5)
                        * libm::exp(-0.5 * z)
                        * kummer_poly(n, gamma, z).unwrap();
                    let got = eval_basis(&spec, x).unwrap();
                    assert!(
                        (got - direct).abs() <= 1e-12 * (1.0 + direct.abs()),
                        "{n} {x}"
                    );
                }
            }
        }
    }

    #[test]
    fn vanishes_at_origin() {
        let g = g(-0.25, 1.0);
        for n in 0..5 {
            let v = eval_basis(&BasisFunctionSpec::new(n, g).unwrap(), 1e-12).unwrap();
            assert!(v.abs() < 1e-5);
        }
        assert!(eval_basis(&BasisFunctionSpec::new(0, g).unwrap(), 0.0).is_err());
    }

    #[test]
    fn node_counts() {
        let g = g(0.0, 1.0);
        for n in 0..=6 {
            let spec = BasisFunctionSpec::new(n, g).unwrap();
            let mut sign_changes = 0;
            let mut last = eval_basis(&spec, 1e-3).unwrap();
            for i in 2..=8000 {
                let v = eval_basis(&spec, i as f64 * 1e-3).unwrap();
                if v * last < 0.0 {
                    sign_changes += 1;
                }
                last = v;
            }
            assert_eq!(sign_changes, n);
        }
    }

    #[test]
    fn unit_coefficients_select_basis_function() {
        let g = g(3.0, 2.0);
        let mut coefficients = alloc::vec![0.0; 5];
        coefficients[2] = 1.0;
        let state = ExpandedState::new(coefficients, g);
        let spec = BasisFunctionSpec::new(2, g).unwrap();
        for x in [0.3, 1.0, 2.2] {
            assert_eq!(
                eval_state(&state, x).unwrap(),
                eval_basis(&spec, x).unwrap()
            );
        }
    }

    #[test]
    fn quantum_number_limit() {
        assert!(BasisFunctionSpec::new(MAX_QUANTUM_NUMBER + 1, g(0.0, 1.0)).is_err());
    }
}
