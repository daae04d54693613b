//! Reference eigenvalues by two-sided shooting on the radial equation
//! `−u'' + V(x) u = E u`.
//!
//! The equation is integrated in `t = ln x` for `φ = u / √x`, which turns it
//! into `φ'' = Q(t) φ` with `Q = ¼ + x²(V − E)`. A uniform step in `t` resolves
//! the singular origin and the Gaussian tail alike. Levels are isolated by
//! counting nodes of the outward solution and then refined on the sign of the
//! Wronskian between the outward and inward solutions at the matching point.

use alloc::vec::Vec;

use crate::hamiltonian::{effective_a, OscillatorParams};
use crate::{Error, Result};

/// Decay lengths `B^{-1/4}` added beyond the outer turning point.
const TAIL_LENGTHS: f64 = 6.0;
/// Inner boundary as a fraction of the matching point when the origin is
/// governed by the centrifugal term.
const INNER_FRACTION: f64 = 1e-6;
/// For `α > 2` the inner boundary sits where `λ x^{2-α}` exceeds the
/// centrifugal coefficient by this factor, within the range below.
const SPIKE_DOMINANCE: f64 = 1e4;
const INNER_RANGE: (f64, f64) = (1e-14, 1e-4);
const RESCALE_ABOVE: f64 = 1e150;
// Largest phase advance per step in oscillatory regions before the node
// count is considered unreliable.
const MAX_PHASE_STEP: f64 = 0.5;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ShootingSettings {
    /// Inner boundary; `0` chooses one from the behavior at the origin.
    pub x_left: f64,
    /// Outer boundary; `0` places it six decay lengths past the turning point.
    pub x_right: f64,
    /// RK4 step in `ln x`.
    pub step: f64,
    pub energy_tol: f64,
    pub max_nodes: usize,
    /// Bracketing gives up above this energy.
    pub energy_ceiling: f64,
}

impl Default for ShootingSettings {
    fn default() -> Self {
        ShootingSettings {
            x_left: 0.0,
            x_right: 0.0,
            step: 1e-3,
            energy_tol: 1e-9,
            max_nodes: 40,
            energy_ceiling: 1e5,
        }
    }
}

impl ShootingSettings {
    pub fn with_step(mut self, step: f64) -> Self {
        self.step = step;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.step > 0.0 && self.step.is_finite()) {
            return Err(Error::Settings("step must be positive"));
        }
        if !(self.energy_tol > 0.0) {
            return Err(Error::Settings("energy tolerance must be positive"));
        }
        if !(self.x_left >= 0.0 && self.x_right >= 0.0) {
            return Err(Error::Settings("boundaries must be non-negative"));
        }
        if self.x_left > 0.0 && self.x_right > 0.0 && self.x_left >= self.x_right {
            return Err(Error::Settings(
                "inner boundary must lie below outer boundary",
            ));
        }
        if !(self.energy_ceiling > 0.0) {
            return Err(Error::Settings("energy ceiling must be positive"));
        }
        Ok(())
    }
}

/// `V(x) = B x² + A_eff / x² + λ x^{-α}`
pub fn potential(p: &OscillatorParams, x: f64) -> Result<f64> {
    if !(x > 0.0) {
        return Err(Error::NonPositivePosition(x));
    }
    let a = effective_a(p);
    let spike = if p.lambda == 0.0 {
        0.0
    } else {
        p.lambda * libm::pow(x, -p.alpha)
    };
    Ok(p.b * x * x + a / (x * x) + spike)
}

/// Default outer boundary for energy `e`: the outer classical turning point
/// plus six decay lengths `B^{-1/4}`.
pub fn outer_boundary(p: &OscillatorParams, e: f64) -> Result<f64> {
    p.validate()?;
    let shape = Shape::new(p);
    let x_match = shape.langer_minimum();
    Ok(shape.turning_point(e, x_match) + TAIL_LENGTHS / libm::sqrt(libm::sqrt(p.b)))
}

/// Energy of the level with `node_count` interior nodes.
pub fn find_eigenvalue(
    p: &OscillatorParams,
    node_count: usize,
    s: &ShootingSettings,
) -> Result<f64> {
    p.validate()?;
    s.validate()?;
    if node_count > s.max_nodes {
        return Err(Error::Settings("node count exceeds max_nodes"));
    }
    let shape = Shape::new(p);
    let x_match = shape.langer_minimum();
    let floor = if shape.has_minimum() {
        shape.langer(x_match)
    } else {
        0.0
    };
    let x_left = if s.x_left > 0.0 {
        s.x_left
    } else {
        shape.inner_boundary(x_match)
    };

    // Grow an upper energy until it lies above the requested level.
    let spacing = 4.0 * libm::sqrt(p.b);
    let mut hi = floor + spacing * (node_count as f64 + 1.0);
    let grid = loop {
        if hi > s.energy_ceiling {
            return Err(Error::NoRoot {
                nodes: node_count,
                ceiling: s.energy_ceiling,
            });
        }
        let x_right = if s.x_right > 0.0 {
            s.x_right
        } else {
            outer_boundary(p, hi)?
        };
        let grid = Grid::new(&shape, x_left, x_right, x_match, s.step)?;
        if grid.shoot(hi)?.nodes > node_count {
            break grid;
        }
        hi = floor + 2.0 * (hi - floor);
    };

    // Below `min(V + 1/(4x²))` the solution cannot oscillate.
    let mut lo = floor;
    let mut lo_shot = grid.shoot(lo)?;
    let mut hi_shot = grid.shoot(hi)?;
    while !(lo_shot.nodes == node_count && hi_shot.nodes == node_count + 1)
        && hi - lo > s.energy_tol
    {
        let mid = 0.5 * (lo + hi);
        let shot = grid.shoot(mid)?;
        if shot.nodes > node_count {
            hi = mid;
            hi_shot = shot;
        } else {
            lo = mid;
            lo_shot = shot;
        }
    }

    let wronskian_brackets = lo_shot.wronskian.signum() != hi_shot.wronskian.signum();
    while hi - lo > s.energy_tol {
        let mid = 0.5 * (lo + hi);
        let shot = grid.shoot(mid)?;
        let go_low = if wronskian_brackets {
            shot.wronskian.signum() == hi_shot.wronskian.signum()
        } else {
            shot.nodes > node_count
        };
        if go_low {
            hi = mid;
            hi_shot = shot;
        } else {
            lo = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// Energy-independent pieces of the potential.
struct Shape {
    b: f64,
    // A_eff + ¼, the coefficient of 1/x² in the Langer-corrected potential.
    c: f64,
    lambda: f64,
    alpha: f64,
}

impl Shape {
    fn new(p: &OscillatorParams) -> Self {
        Shape {
            b: p.b,
            c: effective_a(p) + 0.25,
            lambda: p.lambda,
            alpha: p.alpha,
        }
    }

    fn spike(&self, x: f64) -> f64 {
        if self.lambda == 0.0 {
            0.0
        } else {
            self.lambda * libm::pow(x, -self.alpha)
        }
    }

    /// `B x² + (A_eff + ¼)/x² + λ x^{-α}`
    fn langer(&self, x: f64) -> f64 {
        self.b * x * x + self.c / (x * x) + self.spike(x)
    }

    fn has_minimum(&self) -> bool {
        self.c > 0.0 || self.lambda != 0.0
    }

    /// Location of the minimum of [`Shape::langer`]; `B^{-1/4}` when the
    /// potential has no interior minimum.
    fn langer_minimum(&self) -> f64 {
        let fallback = 1.0 / libm::sqrt(libm::sqrt(self.b));
        if !self.has_minimum() {
            return fallback;
        }
        // Stationarity: 2B x⁴ − αλ x^{2−α} − 2c = 0, increasing through its root.
        let g = |x: f64| {
            2.0 * self.b * x * x * x * x - self.alpha * self.spike(x) * x * x - 2.0 * self.c
        };
        let (mut a, mut b) = (fallback, fallback);
        while g(a) > 0.0 {
            a *= 0.5;
            if a < 1e-300 {
                return fallback;
            }
        }
        while g(b) < 0.0 {
            b *= 2.0;
        }
        for _ in 0..200 {
            let mid = libm::sqrt(a * b);
            if g(mid) < 0.0 {
                a = mid;
            } else {
                b = mid;
            }
            if b - a <= 1e-15 * b {
                break;
            }
        }
        libm::sqrt(a * b)
    }

    fn inner_boundary(&self, x_match: f64) -> f64 {
        if self.lambda > 0.0 && self.alpha > 2.0 {
            let target = SPIKE_DOMINANCE * libm::fmax(1.0, self.c);
            let x = libm::pow(self.lambda / target, 1.0 / (self.alpha - 2.0));
            x.clamp(INNER_RANGE.0 * x_match, INNER_RANGE.1 * x_match)
        } else {
            INNER_FRACTION * x_match
        }
    }

    /// `φ'/φ` at `x` of the regular solution of `φ'' = (c + λ x^{2-α}) φ`,
    /// the small-x form of the equation when `α ≤ 2`.
    fn regular_log_derivative(&self, x: f64) -> f64 {
        let beta = 2.0 - self.alpha;
        if self.lambda == 0.0 || beta == 0.0 {
            return libm::sqrt(self.c + if beta == 0.0 { self.lambda } else { 0.0 });
        }
        let root = libm::sqrt(self.c);
        let eps = self.lambda * libm::pow(x, beta);
        // φ = e^{√c t} Σ a_k ε^k,  a_k = a_{k-1} / (kβ (kβ + 2√c))
        let (mut sum, mut dsum, mut term) = (1.0, root, 1.0);
        for k in 1..400 {
            let kb = k as f64 * beta;
            term *= eps / (kb * (kb + 2.0 * root));
            sum += term;
            dsum += (root + kb) * term;
            if term < 1e-17 * sum {
                break;
            }
        }
        dsum / sum
    }

    /// Outermost point where `V(x) = e`, or `from` if `V(from) ≥ e`.
    fn turning_point(&self, e: f64, from: f64) -> f64 {
        let v = |x: f64| self.b * x * x + (self.c - 0.25) / (x * x) + self.spike(x);
        if v(from) >= e {
            return from;
        }
        let (mut a, mut b) = (from, 2.0 * from);
        while v(b) < e {
            a = b;
            b *= 2.0;
        }
        for _ in 0..200 {
            let mid = 0.5 * (a + b);
            if v(mid) < e {
                a = mid;
            } else {
                b = mid;
            }
            if b - a <= 1e-12 * b {
                break;
            }
        }
        b
    }
}

/// Uniform grid in `t = ln x` with the energy-independent part of `Q`
/// tabulated at half steps.
struct Grid {
    h: f64,
    steps: usize,
    matching: usize,
    // Q(t) = base − E·x² at t_left + j·h/2
    base: Vec<f64>,
    x2: Vec<f64>,
    // dQ/dt = slope_base − 2E x² at both ends
    slope_left: f64,
    // Energy-independent seed for `α ≤ 2`; WKB otherwise.
    series_left: Option<f64>,
    slope_right: f64,
}

struct Shot {
    nodes: usize,
    wronskian: f64,
}

impl Grid {
    fn new(shape: &Shape, x_left: f64, x_right: f64, x_match: f64, step: f64) -> Result<Self> {
        if !(x_left < x_right) {
            return Err(Error::Settings(
                "inner boundary must lie below outer boundary",
            ));
        }
        let (t0, t1) = (libm::log(x_left), libm::log(x_right));
        let steps = libm::ceil((t1 - t0) / step).max(2.0) as usize;
        let h = (t1 - t0) / steps as f64;
        let mut base = Vec::with_capacity(2 * steps + 1);
        let mut x2 = Vec::with_capacity(2 * steps + 1);
        for j in 0..=2 * steps {
            let x = libm::exp(t0 + 0.5 * h * j as f64);
            let xx = x * x;
            base.push(0.25 + (shape.c - 0.25) + shape.b * xx * xx + shape.spike(x) * xx);
            x2.push(xx);
        }
        let slope = |x: f64| {
            let xx = x * x;
            4.0 * shape.b * xx * xx + (2.0 - shape.alpha) * shape.spike(x) * xx
        };
        let matching = libm::round((libm::log(x_match) - t0) / h).clamp(1.0, steps as f64 - 1.0);
        Ok(Grid {
            h,
            steps,
            matching: matching as usize,
            base,
            x2,
            slope_left: slope(x_left),
            series_left: (shape.lambda == 0.0 || shape.alpha <= 2.0)
                .then(|| shape.regular_log_derivative(x_left)),
            slope_right: slope(x_right),
        })
    }

    fn q(&self, j: usize, e: f64) -> f64 {
        self.base[j] - e * self.x2[j]
    }

    fn shoot(&self, e: f64) -> Result<Shot> {
        let n = 2 * self.steps;

        // Outward from the inner boundary on the regular branch.
        let seed = match self.series_left {
            Some(d) => d,
            None => {
                let slope0 = self.slope_left - 2.0 * e * self.x2[0];
                wkb_log_derivative(self.q(0, e), slope0, 1.0)
            }
        };
        let mut y = (1.0, seed);
        let mut nodes = 0;
        let mut left_at_match = y;
        for i in 0..self.steps {
            let j = 2 * i;
            self.check_resolution(j, e)?;
            let next = rk4(y, self.h, self.q(j, e), self.q(j + 1, e), self.q(j + 2, e));
            if next.0 * y.0 < 0.0 {
                nodes += 1;
            }
            y = rescale(next);
            if i + 1 == self.matching {
                left_at_match = y;
            }
        }

        // Inward from the outer boundary with the decaying branch.
        let qn = self.q(n, e);
        let slope_n = self.slope_right - 2.0 * e * self.x2[n];
        let mut z = (1.0, wkb_log_derivative(qn, slope_n, -1.0));
        for i in (self.matching..self.steps).rev() {
            let j = 2 * i;
            z = rescale(rk4(
                z,
                -self.h,
                self.q(j + 2, e),
                self.q(j + 1, e),
                self.q(j, e),
            ));
        }

        let (l, r) = (normalize(left_at_match), normalize(z));
        Ok(Shot {
            nodes,
            wronskian: l.0 * r.1 - l.1 * r.0,
        })
    }

    fn check_resolution(&self, j: usize, e: f64) -> Result<()> {
        let q = self.q(j, e);
        if q < 0.0 && self.h * libm::sqrt(-q) > MAX_PHASE_STEP {
            return Err(Error::StepResolution {
                step: self.h,
                x: libm::sqrt(self.x2[j]),
            });
        }
        Ok(())
    }
}

/// `φ'/φ` of the WKB branch `Q^{-1/4} exp(±∫√Q)`.
fn wkb_log_derivative(q: f64, slope: f64, branch: f64) -> f64 {
    if q <= 0.0 {
        return 0.0;
    }
    let root = libm::sqrt(q);
    let correction = slope / (4.0 * q);
    if correction.abs() < 0.5 * root {
        branch * root - correction
    } else {
        branch * root
    }
}

fn rk4(y: (f64, f64), h: f64, qa: f64, qm: f64, qb: f64) -> (f64, f64) {
    let (p, d) = y;
    let half = 0.5 * h;
    let (k1p, k1d) = (d, qa * p);
    let (k2p, k2d) = (d + half * k1d, qm * (p + half * k1p));
    let (k3p, k3d) = (d + half * k2d, qm * (p + half * k2p));
    let (k4p, k4d) = (d + h * k3d, qb * (p + h * k3p));
    (
        p + h / 6.0 * (k1p + 2.0 * k2p + 2.0 * k3p + k4p),
        d + h / 6.0 * (k1d + 2.0 * k2d + 2.0 * k3d + k4d),
    )
}

fn rescale(y: (f64, f64)) -> (f64, f64) {
    if y.0.abs() > RESCALE_ABOVE || y.1.abs() > RESCALE_ABOVE {
        (y.0 / RESCALE_ABOVE, y.1 / RESCALE_ABOVE)
    } else {
        y
    }
}

fn normalize(y: (f64, f64)) -> (f64, f64) {
    let r = libm::hypot(y.0, y.1);
    (y.0 / r, y.1 / r)
}
