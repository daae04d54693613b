//! Problem instances and the D×D variational Hamiltonian.

use alloc::vec;
use alloc::vec::Vec;

use crate::matrix_elements::{h0_diagonal, BasisGamma, SpikeElements};
use crate::specfun::log_gamma;
use crate::{Error, Result};

/// Which radial problem a parameter set describes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Channel {
    /// The half-line problem with `ψ(0) = 0`. Identical to `N = 3, ℓ = 0`.
    Radial,
    /// Angular-momentum channel `ℓ` in `N ≥ 2` dimensions.
    Dimensional { dim: u32, ell: u32 },
}

impl Channel {
    /// Centrifugal term `(ℓ + (N-1)/2)(ℓ + (N-3)/2)` added to `A`.
    pub fn centrifugal(&self) -> f64 {
        match *self {
            Channel::Radial => 0.0,
            Channel::Dimensional { dim, ell } => {
                // (ℓ + N/2 - 1)² - 1/4, written to stay exact at N = 2, ℓ = 0
                let k = f64::from(ell) + 0.5 * f64::from(dim) - 1.0;
                k * k - 0.25
            }
        }
    }
}

/// Couplings of `-d²/dx² + B x² + A/x² + λ/x^α` plus the channel.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OscillatorParams {
    pub a: f64,
    pub b: f64,
    pub lambda: f64,
    pub alpha: f64,
    pub channel: Channel,
}

impl OscillatorParams {
    pub fn new(a: f64, b: f64, lambda: f64, alpha: f64, channel: Channel) -> Result<Self> {
        let p = OscillatorParams {
            a,
            b,
            lambda,
            alpha,
            channel,
        };
        p.validate()?;
        Ok(p)
    }

    /// `A = 0, B = 1` on the half-line: `-d²/dx² + x² + λ/x^α`.
    pub fn spiked(lambda: f64, alpha: f64) -> Result<Self> {
        Self::new(0.0, 1.0, lambda, alpha, Channel::Radial)
    }

    pub fn with_channel(mut self, channel: Channel) -> Result<Self> {
        self.channel = channel;
        self.validate()?;
        Ok(self)
    }

    pub fn validate(&self) -> Result<()> {
        let check = |name, value: f64, ok: bool, constraint| {
            if ok && value.is_finite() {
                Ok(())
            } else {
                Err(Error::InvalidParameter {
                    name,
                    value,
                    constraint,
                })
            }
        };
        check("A", self.a, self.a >= 0.0, ">= 0")?;
        check("B", self.b, self.b > 0.0, "> 0")?;
        check("lambda", self.lambda, self.lambda >= 0.0, ">= 0")?;
        check("alpha", self.alpha, self.alpha > 0.0, "> 0")?;
        if let Channel::Dimensional { dim, .. } = self.channel {
            if dim < 2 {
                return Err(Error::InvalidChannel { dim });
            }
        }
        Ok(())
    }

    /// Basis built from `effective_a + shift`.
    pub fn basis(&self, shift: f64) -> Result<BasisGamma> {
        BasisGamma::new(effective_a(self) + shift, self.b)
    }
}

/// `A` plus the centrifugal term of the channel.
pub fn effective_a(p: &OscillatorParams) -> f64 {
    p.a + p.channel.centrifugal()
}

/// Dense symmetric matrix, stored in full row-major order and mirrored on
/// every write.
#[derive(Debug, Clone, PartialEq)]
pub struct SymMatrix {
    dim: usize,
    entries: Vec<f64>,
}

impl SymMatrix {
    pub fn zeros(dim: usize) -> Self {
        SymMatrix {
            dim,
            entries: vec![0.0; dim * dim],
        }
    }

    /// Builds a matrix from `f(i, j)` evaluated on the upper triangle.
    pub fn from_upper<F: FnMut(usize, usize) -> f64>(dim: usize, mut f: F) -> Self {
        let mut m = SymMatrix::zeros(dim);
        for i in 0..dim {
            for j in i..dim {
                m.set(i, j, f(i, j));
            }
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.entries[i * self.dim + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: f64) {
        self.entries[i * self.dim + j] = value;
        self.entries[j * self.dim + i] = value;
    }

    /// Row-major view of all `dim²` entries.
    pub fn as_slice(&self) -> &[f64] {
        &self.entries
    }

    pub fn trace(&self) -> f64 {
        (0..self.dim).map(|i| self.get(i, i)).sum()
    }

    pub fn frobenius_norm(&self) -> f64 {
        libm::sqrt(self.entries.iter().map(|x| x * x).sum())
    }

    /// Leading `k×k` principal submatrix.
    pub fn leading(&self, k: usize) -> SymMatrix {
        let k = k.min(self.dim);
        SymMatrix::from_upper(k, |i, j| self.get(i, j))
    }

    pub fn is_finite(&self) -> bool {
        self.entries.iter().all(|x| x.is_finite())
    }
}

/// Assembles `H_mn = <m|H₀|n> + λ<m|x^-α|n>` for `m, n < dim`.
///
/// With a shift `A*`, the basis is built from `effective_a + A*` and the
/// compensating term `-A*<m|x^-2|n>` is added, so the operator is unchanged
/// and only the basis moves.
pub fn assemble(p: &OscillatorParams, dim: usize, shift: Option<f64>) -> Result<SymMatrix> {
    p.validate()?;
    if dim < 1 {
        return Err(Error::Dimension(dim));
    }
    let shift = shift.unwrap_or(0.0);
    if !(shift >= 0.0) || !shift.is_finite() {
        return Err(Error::InvalidParameter {
            name: "shift",
            value: shift,
            constraint: "finite and >= 0",
        });
    }
    let g = p.basis(shift)?;
    let spike = SpikeElements::new(&g, p.alpha, dim)?;
    let centrifugal = if shift > 0.0 {
        Some(SpikeElements::new(&g, 2.0, dim)?)
    } else {
        None
    };
    let matrix = SymMatrix::from_upper(dim, |i, j| {
        let mut h = p.lambda * spike.get(i, j);
        if let Some(c) = &centrifugal {
            h -= shift * c.get(i, j);
        }
        if i == j {
            h += h0_diagonal(i, &g);
        }
        h
    });
    debug_assert!(matrix.is_finite());
    Ok(matrix)
}

/// `Γ(γ - α/2) / Γ(γ + offset)` through log-gamma.
fn gamma_ratio(gamma: f64, alpha: f64, offset: f64) -> Result<f64> {
    Ok(libm::exp(
        log_gamma(gamma - 0.5 * alpha)?.log_abs - log_gamma(gamma + offset)?.log_abs,
    ))
}

/// One-function variational energy `H₀₀`.
///
/// Unshifted: `2√B γ + λ B^(α/4) Γ(γ-α/2)/Γ(γ)`.
/// Shifted by `A*`: `√B (2γ - A*/(γ-1)) + λ B^(α/4) Γ(γ-α/2)/Γ(γ)` with `γ`
/// taken from `effective_a + A*`.
pub fn closed_form_d1(p: &OscillatorParams, shift: Option<f64>) -> Result<f64> {
    p.validate()?;
    let shift = shift.unwrap_or(0.0);
    let g = p.basis(shift)?;
    g.check_alpha(p.alpha)?;
    let gamma = g.gamma();
    let sqrt_b = libm::sqrt(p.b);
    let spike = p.lambda * libm::pow(p.b, 0.25 * p.alpha) * gamma_ratio(gamma, p.alpha, 0.0)?;
    if shift == 0.0 {
        return Ok(2.0 * sqrt_b * gamma + spike);
    }
    if gamma <= 1.0 {
        return Err(Error::DivergentElement { alpha: 2.0, gamma });
    }
    Ok(sqrt_b * (2.0 * gamma - shift / (gamma - 1.0)) + spike)
}

/// Both eigenvalues `(E₋, E₊)` of the two-function problem from the secular
/// equation.
pub fn closed_form_d2(p: &OscillatorParams) -> Result<(f64, f64)> {
    p.validate()?;
    let g = p.basis(0.0)?;
    g.check_alpha(p.alpha)?;
    let (gamma, alpha, lambda, b) = (g.gamma(), p.alpha, p.lambda, p.b);
    let r = gamma_ratio(gamma, alpha, 1.0)?;
    let mean = 4.0 * libm::sqrt(b) * (1.0 + gamma)
        + 0.25
            * lambda
            * libm::pow(b, 0.25 * alpha)
            * (alpha * alpha - 2.0 * alpha + 8.0 * gamma)
            * r;
    let disc = 16.0 * b
        + 2.0 * lambda * libm::pow(b, 0.25 * (alpha + 2.0)) * alpha * (alpha - 2.0) * r
        + lambda * lambda / 16.0
            * libm::pow(b, 0.5 * alpha)
            * alpha
            * alpha
            * ((alpha - 2.0) * (alpha - 2.0) + 16.0 * gamma)
            * r
            * r;
    let root = libm::sqrt(libm::fmax(disc, 0.0));
    Ok((0.5 * (mean - root), 0.5 * (mean + root)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dimensional(lambda: f64, alpha: f64, dim: u32, ell: u32) -> OscillatorParams {
        OscillatorParams::new(0.0, 1.0, lambda, alpha, Channel::Dimensional { dim, ell }).unwrap()
    }

    #[test]
    fn effective_coupling_examples() {
        let p = OscillatorParams::spiked(1.0, 1.0).unwrap();
        assert_eq!(effective_a(&p), 0.0);
        assert_eq!(p.basis(0.0).unwrap().gamma(), 1.5);

        let p2 = dimensional(1.0, 1.0, 2, 0);
        assert_eq!(effective_a(&p2), -0.25);
        assert_eq!(p2.basis(0.0).unwrap().gamma(), 1.0);

        let p10 = dimensional(1.0, 1.0, 10, 0);
        assert_eq!(effective_a(&p10), 15.75);
        assert_eq!(p10.basis(0.0).unwrap().gamma(), 5.0);
    }

    #[test]
    fn three_dimensional_s_wave_is_the_radial_problem() {
        let radial = OscillatorParams::new(1.3, 2.0, 4.0, 1.7, Channel::Radial).unwrap();
        let three = radial
            .with_channel(Channel::Dimensional { dim: 3, ell: 0 })
            .unwrap();
        assert_eq!(
            assemble(&radial, 6, None).unwrap(),
            assemble(&three, 6, None).unwrap()
        );
    }

    #[test]
    fn channel_gamma_matches_square_root_form() {
        for dim in 2..=12u32 {
            for ell in 0..4u32 {
                let p =
                    OscillatorParams::new(0.7, 1.0, 1.0, 1.0, Channel::Dimensional { dim, ell })
                        .unwrap();
                let k = f64::from(ell) + f64::from(dim) / 2.0 - 1.0;
                let expected = 1.0 + libm::sqrt(0.7 + k * k);
                let got = p.basis(0.0).unwrap().gamma();
                assert!((got - expected).abs() < 1e-14, "N={dim} ℓ={ell}");
            }
        }
    }

    #[test]
    fn one_by_one_examples() {
        let p = OscillatorParams::spiked(0.001, 2.5).unwrap();
        let h = assemble(&p, 1, None).unwrap();
        assert!((h.get(0, 0) - 3.004_091).abs() < 1e-6);
        let p2 = dimensional(10.0, 1.9, 2, 0);
        let h2 = assemble(&p2, 1, None).unwrap();
        assert!((h2.get(0, 0) - 196.700_853).abs() < 1e-6);
    }

    #[test]
    fn spike_off_is_diagonal() {
        let p = OscillatorParams::new(1.0, 4.0, 0.0, 1.5, Channel::Radial).unwrap();
        let gamma = p.basis(0.0).unwrap().gamma();
        let h = assemble(&p, 3, None).unwrap();
        for i in 0..3 {
            for j in 0..3 {
                let expected = if i == j {
                    2.0 * 2.0 * (2.0 * i as f64 + gamma)
                } else {
                    0.0
                };
                assert_eq!(h.get(i, j), expected);
            }
        }
    }

    #[test]
    fn zero_shift_is_unshifted() {
        let p = dimensional(3.0, 1.9, 2, 0);
        assert_eq!(
            assemble(&p, 8, Some(0.0)).unwrap(),
            assemble(&p, 8, None).unwrap()
        );
    }

    #[test]
    fn closed_form_d1_matches_matrix() {
        for &(lambda, alpha) in &[(1000.0, 2.5), (0.5, 1.0), (10.0, 2.9)] {
            let p = OscillatorParams::spiked(lambda, alpha).unwrap();
            let h = assemble(&p, 1, None).unwrap().get(0, 0);
            let c = closed_form_d1(&p, None).unwrap();
            assert!((h - c).abs() <= 1e-13 * c.abs());
        }
        let p = OscillatorParams::spiked(1000.0, 2.5).unwrap();
        assert!((closed_form_d1(&p, None).unwrap() - 4_094.062_688_452_675).abs() < 1e-9);
        let off = OscillatorParams::new(2.0, 4.0, 0.0, 1.0, Channel::Radial).unwrap();
        assert_eq!(closed_form_d1(&off, None).unwrap(), 2.0 * 2.0 * 2.5);
    }

    #[test]
    fn shifted_d1_matches_matrix() {
        let p = dimensional(7.0, 2.3, 5, 1);
        for &shift in &[0.5, 3.0, 20.0] {
            let h = assemble(&p, 1, Some(shift)).unwrap().get(0, 0);
            let c = closed_form_d1(&p, Some(shift)).unwrap();
            assert!(
                (h - c).abs() <= 1e-13 * c.abs(),
                "shift {shift}: {h} vs {c}"
            );
        }
    }

    #[test]
    fn closed_form_d2_spike_off() {
        let p = OscillatorParams::new(2.0, 4.0, 0.0, 1.0, Channel::Radial).unwrap();
        let (lo, hi) = closed_form_d2(&p).unwrap();
        assert!((lo - 10.0).abs() < 1e-14 && (hi - 18.0).abs() < 1e-14);
    }

    #[test]
    fn divergent_assembly_is_rejected() {
        let p = dimensional(1.0, 2.0, 2, 0);
        assert!(matches!(
            assemble(&p, 3, None),
            Err(Error::DivergentElement { .. })
        ));
        assert_eq!(
            assemble(&OscillatorParams::spiked(1.0, 1.0).unwrap(), 0, None),
            Err(Error::Dimension(0))
        );
        assert!(OscillatorParams::new(-1.0, 1.0, 1.0, 1.0, Channel::Radial).is_err());
        assert!(
            OscillatorParams::new(0.0, 1.0, 1.0, 1.0, Channel::Dimensional { dim: 1, ell: 0 })
                .is_err()
        );
    }

    #[test]
    fn matrix_scaling_law() {
        // H(B) = √B · H(1; λ → λ B^((α-2)/4))
        for &(b, alpha, lambda) in &[(4.0, 2.5, 3.0), (0.3, 1.2, 10.0), (9.0, 1.9, 0.7)] {
            let p = OscillatorParams::new(0.6, b, lambda, alpha, Channel::Radial).unwrap();
            let unit = OscillatorParams::new(
                0.6,
                1.0,
                lambda * libm::pow(b, (alpha - 2.0) / 4.0),
                alpha,
                Channel::Radial,
            )
            .unwrap();
            let hb = assemble(&p, 12, None).unwrap();
            let h1 = assemble(&unit, 12, None).unwrap();
            let sb = libm::sqrt(b);
            for i in 0..12 {
                for j in 0..12 {
                    let lhs = hb.get(i, j);
                    let rhs = sb * h1.get(i, j);
                    assert!((lhs - rhs).abs() <= 1e-12 * hb.frobenius_norm());
                }
            }
        }
    }
}
