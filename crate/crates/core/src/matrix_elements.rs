//! Matrix elements in the Gol'dman–Krivchenkov basis.
//!
//! The basis functions are eigenfunctions of `H₀ = -d²/dx² + B x² + A/x²`.
//! Everything here depends on `A` only through
//!
//! ```text
//! γ = 1 + ½ √(1 + 4A)
//! ```
//!
//! and on `B` only through the length scale `B^-1/4`.

use alloc::vec::Vec;

use crate::specfun::{binomial, log_gamma, pochhammer, sum_largest_first};
use crate::{Error, Result};

/// Largest basis index the closed forms are evaluated for.
pub const MAX_INDEX: usize = 64;

/// The parameter `γ` of a basis, together with the couplings that produced it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BasisGamma {
    gamma: f64,
    a_eff: f64,
    b_coupling: f64,
}

impl BasisGamma {
    /// Basis for centrifugal coupling `a_eff` and harmonic coupling `b`.
    ///
    /// `a_eff` may be as low as `-1/4`, the value reached by the `N = 2, ℓ = 0`
    /// channel, where `γ = 1`.
    pub fn new(a_eff: f64, b: f64) -> Result<Self> {
        if !(b > 0.0) || !b.is_finite() {
            return Err(Error::InvalidParameter {
                name: "B",
                value: b,
                constraint: "finite and > 0",
            });
        }
        if !(a_eff >= -0.25) || !a_eff.is_finite() {
            return Err(Error::InvalidParameter {
                name: "effective A",
                value: a_eff,
                constraint: "finite and >= -1/4",
            });
        }
        let disc = libm::fmax(1.0 + 4.0 * a_eff, 0.0);
        Ok(BasisGamma {
            gamma: 1.0 + 0.5 * libm::sqrt(disc),
            a_eff,
            b_coupling: b,
        })
    }

    pub fn gamma(&self) -> f64 {
        self.gamma
    }

    pub fn a_eff(&self) -> f64 {
        self.a_eff
    }

    pub fn b_coupling(&self) -> f64 {
        self.b_coupling
    }

    /// Checks `0 < α < 2γ`, the condition for `<m|x^-α|n>` to converge.
    pub fn check_alpha(&self, alpha: f64) -> Result<()> {
        if !(alpha > 0.0) || !alpha.is_finite() {
            return Err(Error::InvalidParameter {
                name: "alpha",
                value: alpha,
                constraint: "finite and > 0",
            });
        }
        if alpha >= 2.0 * self.gamma {
            return Err(Error::DivergentElement {
                alpha,
                gamma: self.gamma,
            });
        }
        Ok(())
    }
}

/// A `(m, n)` pair of basis indices.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ElementIndex {
    pub m: usize,
    pub n: usize,
}

impl ElementIndex {
    pub fn new(m: usize, n: usize) -> Self {
        ElementIndex { m, n }
    }

    fn ordered(self) -> (usize, usize) {
        if self.m <= self.n {
            (self.m, self.n)
        } else {
            (self.n, self.m)
        }
    }
}

/// Precomputed factors for the elements `<m|x^-α|n>` with `m, n < size`.
///
/// For `m ≤ n` the element is
///
/// ```text
/// (-1)^(m+n) B^(α/4) √(Γ(γ+m) / (m! n! Γ(γ+n)))
///     × Σ_{k=0}^{m} (-1)^k C(m,k) [Γ(k+γ-α/2)/Γ(k+γ)] (α/2-k)_n
/// ```
///
/// The sum always runs over the smaller index; the long orientation of the
/// same formula cancels catastrophically at large indices.
#[derive(Debug, Clone)]
pub struct SpikeElements {
    alpha: f64,
    scale: f64,
    // ½ ln(Γ(γ+i)/i!) and ½ ln(Γ(γ+i) i!)
    half_log_up: Vec<f64>,
    half_log_down: Vec<f64>,
    // Γ(k+γ-α/2)/Γ(k+γ)
    ratios: Vec<f64>,
    binomials: Vec<Vec<f64>>,
}

impl SpikeElements {
    pub fn new(g: &BasisGamma, alpha: f64, size: usize) -> Result<Self> {
        g.check_alpha(alpha)?;
        if size > MAX_INDEX + 1 {
            return Err(Error::Dimension(size));
        }
        let gamma = g.gamma;
        let mut half_log_up = Vec::with_capacity(size);
        let mut half_log_down = Vec::with_capacity(size);
        for i in 0..size {
            let lg_gi = log_gamma(gamma + i as f64)?.log_abs;
            let lg_fact = log_gamma(i as f64 + 1.0)?.log_abs;
            half_log_up.push(0.5 * (lg_gi - lg_fact));
            half_log_down.push(0.5 * (lg_gi + lg_fact));
        }

        let shifted = gamma - 0.5 * alpha;
        let mut ratios = Vec::with_capacity(size);
        if size > 0 {
            ratios.push(libm::exp(
                log_gamma(shifted)?.log_abs - log_gamma(gamma)?.log_abs,
            ));
        }
        for k in 1..size {
            let prev = ratios[k - 1];
            let kf = (k - 1) as f64;
            ratios.push(prev * (kf + shifted) / (kf + gamma));
        }

        let mut binomials = Vec::with_capacity(size);
        for m in 0..size {
            let row = (0..=m)
                .map(|k| binomial(m as u32, k as u32))
                .collect::<Result<Vec<_>>>()?;
            binomials.push(row);
        }

        Ok(SpikeElements {
            alpha,
            scale: libm::pow(g.b_coupling, 0.25 * alpha),
            half_log_up,
            half_log_down,
            ratios,
            binomials,
        })
    }

    pub fn size(&self) -> usize {
        self.ratios.len()
    }

    /// `<m|x^-α|n>`; panics if either index is outside the precomputed range.
    pub fn get(&self, m: usize, n: usize) -> f64 {
        let (lo, hi) = ElementIndex::new(m, n).ordered();
        let half_alpha = 0.5 * self.alpha;
        let mut terms: Vec<f64> = (0..=lo)
            .map(|k| {
                let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
                sign * self.binomials[lo][k]
                    * self.ratios[k]
                    * pochhammer(half_alpha - k as f64, hi)
            })
            .collect();
        let sum = sum_largest_first(&mut terms);
        let sign = if (lo + hi) % 2 == 0 { 1.0 } else { -1.0 };
        let norm = libm::exp(self.half_log_up[lo] - self.half_log_down[hi]);
        sign * self.scale * norm * sum
    }
}

/// `<m|x^-α|n>` for a single pair of indices.
pub fn singular_element(idx: ElementIndex, g: &BasisGamma, alpha: f64) -> Result<f64> {
    let size = idx.m.max(idx.n) + 1;
    Ok(SpikeElements::new(g, alpha, size)?.get(idx.m, idx.n))
}

/// `<0|x^-α|n>` from its own closed form:
///
/// ```text
/// (-1)^n B^(α/4) √(Γ(γ)/(n! Γ(γ+n))) Γ(γ-α/2)/Γ(γ) (α/2)_n
/// ```
pub fn ground_row_element(n: usize, g: &BasisGamma, alpha: f64) -> Result<f64> {
    g.check_alpha(alpha)?;
    let gamma = g.gamma;
    let lg_g = log_gamma(gamma)?.log_abs;
    let half_norm =
        0.5 * (lg_g - log_gamma(n as f64 + 1.0)?.log_abs - log_gamma(gamma + n as f64)?.log_abs);
    let ratio = log_gamma(gamma - 0.5 * alpha)?.log_abs - lg_g;
    let sign = if n.is_multiple_of(2) { 1.0 } else { -1.0 };
    Ok(sign
        * libm::pow(g.b_coupling, 0.25 * alpha)
        * libm::exp(half_norm + ratio)
        * pochhammer(0.5 * alpha, n))
}

/// The explicit polynomial-in-α forms of `<m|x^-α|n>` for `m, n ≤ 4`.
///
/// These are tabulated closed forms, evaluated independently of
/// [`SpikeElements`]. `x₃₃` carries the corrected coefficients.
pub fn appendix_element(idx: ElementIndex, g: &BasisGamma, alpha: f64) -> Result<f64> {
    let (m, n) = idx.ordered();
    if n > 4 {
        return Err(Error::UnsupportedIndex { m: idx.m, n: idx.n });
    }
    g.check_alpha(alpha)?;
    let y = g.gamma;
    let a = alpha;
    let a2 = a * a;
    let a3 = a2 * a;
    let a4 = a3 * a;
    let a5 = a4 * a;
    let a6 = a5 * a;
    let a7 = a6 * a;
    let a8 = a7 * a;
    let y2 = y * y;
    let y3 = y2 * y;
    // Γ(γ-α/2)/Γ(γ+j) = r0 / (γ)_j
    let r0 = libm::exp(log_gamma(y - 0.5 * a)?.log_abs - log_gamma(y)?.log_abs);
    let r = |j: usize| r0 / pochhammer(y, j);
    let sqrt = libm::sqrt;

    let value = match (m, n) {
        (0, 0) => r(0),
        (0, 1) => -a / (2.0 * sqrt(y)) * r(0),
        (0, 2) => a * (a + 2.0) / (4.0 * sqrt(2.0 * y * (y + 1.0))) * r(0),
        (0, 3) => -a * (a + 2.0) * (a + 4.0) / (8.0 * sqrt(6.0 * y * (y + 1.0) * (y + 2.0))) * r(0),
        (0, 4) => {
            a * (a + 2.0) * (a + 4.0) * (a + 6.0)
                / (16.0 * sqrt(24.0 * y * (y + 1.0) * (y + 2.0) * (y + 3.0)))
                * r(0)
        }
        (1, 1) => (a2 - 2.0 * a + 4.0 * y) / 4.0 * r(1),
        (1, 2) => -a * (a2 - 2.0 * a + 8.0 * y) / (8.0 * sqrt(2.0 * (y + 1.0))) * r(1),
        (1, 3) => {
            a * (a + 2.0) * (a2 - 2.0 * a + 12.0 * y) / (16.0 * sqrt(6.0 * (y + 1.0) * (y + 2.0)))
                * r(1)
        }
        (1, 4) => {
            -a * (a + 2.0) * (a + 4.0) * (a2 - 2.0 * a + 16.0 * y)
                / (32.0 * sqrt(24.0 * (y + 1.0) * (y + 2.0) * (y + 3.0)))
                * r(1)
        }
        (2, 2) => {
            (a4 - 4.0 * a3 + (12.0 + 16.0 * y) * a2 - (16.0 + 32.0 * y) * a + 32.0 * y * (1.0 + y))
                / (16.0 * 2.0)
                * r(2)
        }
        (2, 3) => {
            -a * (a4 - 4.0 * a3 + (20.0 + 24.0 * y) * a2 - (32.0 + 48.0 * y) * a
                + 96.0 * y * (1.0 + y))
                / (32.0 * sqrt(12.0 * (y + 2.0)))
                * r(2)
        }
        (2, 4) => {
            a * (a5 - 2.0 * a4
                + (20.0 + 32.0 * y) * a3
                + 8.0 * a2
                + (-96.0 + 64.0 * y + 192.0 * y2) * a
                + 384.0 * y * (y + 1.0))
                / (64.0 * sqrt(48.0 * (y + 2.0) * (y + 3.0)))
                * r(2)
        }
        (3, 3) => {
            (a6 - 6.0 * a5 + (52.0 + 36.0 * y) * a4 - (168.0 + 144.0 * y) * a3
                + (352.0 + 720.0 * y + 288.0 * y2) * a2
                - (384.0 + 1152.0 * y + 576.0 * y2) * a
                + 384.0 * y * (1.0 + y) * (2.0 + y))
                / (64.0 * 6.0)
                * r(3)
        }
        (3, 4) => {
            -(a7 - 6.0 * a6 + (76.0 + 48.0 * y) * a5 - (264.0 + 192.0 * y) * a4
                + (832.0 + 1536.0 * y + 576.0 * y2) * a3
                - (1152.0 + 2688.0 * y + 1152.0 * y2) * a2
                + 1536.0 * y * (y + 1.0) * (y + 2.0) * a)
                / (128.0 * sqrt(144.0 * (y + 3.0)))
                * r(3)
        }
        (4, 4) => {
            (a8 - 8.0 * a7 + (136.0 + 64.0 * y) * a6 - (704.0 + 384.0 * y) * a5
                + (3856.0 + 4480.0 * y + 1152.0 * y2) * a4
                - (10880.0 + 15360.0 * y + 4608.0 * y2) * a3
                + (19200.0 + 48640.0 * y + 32256.0 * y2 + 6144.0 * y3) * a2
                - (18432.0 + 67584.0 * y + 55296.0 * y2 + 12288.0 * y3) * a
                + 6144.0 * y * (y + 1.0) * (y + 2.0) * (y + 3.0))
                / (256.0 * 24.0)
                * r(4)
        }
        _ => unreachable!("ordered indices with n <= 4"),
    };
    Ok(libm::pow(g.b_coupling, 0.25 * a) * value)
}

/// Coefficients of the α-polynomial in `x₃₃` for `A = 0, B = 1`, highest
/// power first.
pub const HARMONIC_X33_COEFFS: [f64; 7] = [1.0, -6.0, 106.0, -384.0, 2080.0, -3408.0, 5040.0];

/// `x₃₃ = Γ((3-α)/2) / (7! Γ(3/2)) · P(α)` for the `A = 0, B = 1` basis,
/// with `P` given by `coeffs` (highest power first).
pub fn harmonic_x33(alpha: f64, coeffs: &[f64; 7]) -> Result<f64> {
    if !(alpha > 0.0 && alpha < 3.0) {
        return Err(Error::DivergentElement { alpha, gamma: 1.5 });
    }
    let poly = coeffs.iter().fold(0.0, |acc, c| acc * alpha + c);
    let ratio = libm::exp(log_gamma(0.5 * (3.0 - alpha))?.log_abs - log_gamma(1.5)?.log_abs);
    Ok(ratio * poly / 5040.0)
}

/// Diagonal of `H₀`: `√B (4n + 2 + √(1+4A)) = 2√B (2n + γ)`.
pub fn h0_diagonal(n: usize, g: &BasisGamma) -> f64 {
    2.0 * libm::sqrt(g.b_coupling) * (2.0 * n as f64 + g.gamma)
}
