//! Variational solves: single diagonalizations, D sweeps, and minimization of
//! an eigenvalue over the basis shift `A*`.
//!
//! Minimizing over `A*` is a rigorous upper bound only for the lowest level;
//! for excited levels the minimized value is reported as-is.

use alloc::vec::Vec;

use crate::eigensolver::{jacobi_eigen, Spectrum};
use crate::hamiltonian::{assemble, OscillatorParams};
use crate::{Error, Result};

/// Stop the golden-section search once the bracket is narrower than this (in
/// units of `A`).
pub const SHIFT_TOLERANCE: f64 = 1e-6;

const GROWTH: f64 = 4.0;
const MAX_EXPANSIONS: usize = 12;
const INV_PHI: f64 = 0.618_033_988_749_894_9;

#[derive(Debug, Clone, PartialEq)]
pub struct SolveRequest {
    pub params: OscillatorParams,
    pub dim: usize,
    pub state: usize,
    pub optimize_shift: bool,
    pub shift_bounds: Option<(f64, f64)>,
    pub want_vectors: bool,
}

impl SolveRequest {
    pub fn new(params: OscillatorParams, dim: usize, state: usize) -> Self {
        SolveRequest {
            params,
            dim,
            state,
            optimize_shift: false,
            shift_bounds: None,
            want_vectors: false,
        }
    }

    pub fn optimized(mut self, bounds: Option<(f64, f64)>) -> Self {
        self.optimize_shift = true;
        self.shift_bounds = bounds;
        self
    }

    pub fn with_vectors(mut self) -> Self {
        self.want_vectors = true;
        self
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SolveResult {
    pub energy: f64,
    pub spectrum: Spectrum,
    /// Basis shift `A*` the spectrum was computed with, if optimized.
    pub shift: Option<f64>,
    /// Set when the optimal shift sits on a bound of the search interval.
    pub shift_on_boundary: bool,
    pub dim: usize,
}

/// Outcome of [`optimize_shift`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ShiftOptimum {
    pub shift: f64,
    pub energy: f64,
    /// No interior minimum was bracketed; `shift` is the better endpoint.
    pub on_boundary: bool,
}

/// `[0, max(10λ, 100)]`
pub fn default_shift_bounds(lambda: f64) -> (f64, f64) {
    (0.0, libm::fmax(10.0 * lambda, 100.0))
}

fn check_state(state: usize, dim: usize) -> Result<()> {
    if dim < 1 {
        return Err(Error::Dimension(dim));
    }
    if state >= dim {
        return Err(Error::StateIndex { state, dim });
    }
    Ok(())
}

pub fn solve(req: &SolveRequest) -> Result<SolveResult> {
    check_state(req.state, req.dim)?;
    let (shift, on_boundary) = if req.optimize_shift {
        let bounds = req
            .shift_bounds
            .unwrap_or_else(|| default_shift_bounds(req.params.lambda));
        let opt = optimize_shift(&req.params, req.dim, req.state, bounds)?;
        (Some(opt.shift), opt.on_boundary)
    } else {
        (None, false)
    };
    let matrix = assemble(&req.params, req.dim, shift)?;
    let spectrum = jacobi_eigen(&matrix, req.want_vectors)?;
    Ok(SolveResult {
        energy: spectrum.values()[req.state],
        spectrum,
        shift,
        shift_on_boundary: on_boundary,
        dim: req.dim,
    })
}

/// Minimizes the `state`-th eigenvalue of the shifted `dim×dim` problem over
/// `A* ∈ [lo, hi]`.
///
/// Starts at `A* = λ`, expands geometrically (factor 4 in distance from `lo`)
/// downhill until the energy rises again, then narrows the bracket by golden
/// section. The result is a local minimizer.
pub fn optimize_shift(
    params: &OscillatorParams,
    dim: usize,
    state: usize,
    bounds: (f64, f64),
) -> Result<ShiftOptimum> {
    check_state(state, dim)?;
    let (lo, hi) = bounds;
    if !(lo >= 0.0) || !(hi >= lo) || !hi.is_finite() {
        return Err(Error::ShiftBounds { lo, hi });
    }
    let energy = |shift: f64| -> Result<f64> {
        let m = assemble(params, dim, Some(shift))?;
        Ok(jacobi_eigen(&m, false)?.values()[state])
    };
    if hi == lo {
        return Ok(ShiftOptimum {
            shift: lo,
            energy: energy(lo)?,
            on_boundary: true,
        });
    }

    let span = hi - lo;
    let mut start = params.lambda.clamp(lo, hi) - lo;
    if start <= 0.0 {
        start = libm::fmin(1.0, span);
    }
    // Candidate distances from `lo`: start·4^k, closed off by 0 and `span`.
    let position = |k: i32| -> f64 {
        if k < -(MAX_EXPANSIONS as i32) {
            0.0
        } else {
            libm::fmin(start * libm::pow(GROWTH, f64::from(k)), span)
        }
    };

    let f0 = energy(lo + position(0))?;
    let f_down = energy(lo + position(-1))?;
    let f_up = if position(0) < span {
        energy(lo + position(1))?
    } else {
        f64::INFINITY
    };

    // (k, f) triples for the bracket, ordered by position.
    let (a, b, c);
    if f_down < f0 && f_down <= f_up {
        let mut k = -1;
        let mut fk = f_down;
        let mut prev = (0, f0);
        loop {
            let next_k = k - 1;
            let x_next = position(next_k);
            let f_next = energy(lo + x_next)?;
            if f_next >= fk || x_next == 0.0 {
                if f_next < fk {
                    // Still descending at the lower bound.
                    a = (next_k, f_next);
                    b = (next_k, f_next);
                    c = (k, fk);
                } else {
                    a = (next_k, f_next);
                    b = (k, fk);
                    c = prev;
                }
                break;
            }
            prev = (k, fk);
            k = next_k;
            fk = f_next;
        }
    } else if f_up < f0 {
        let mut k = 1;
        let mut fk = f_up;
        let mut prev = (0, f0);
        loop {
            if position(k) >= span {
                a = prev;
                b = (k, fk);
                c = (k, fk);
                break;
            }
            let next_k = k + 1;
            let f_next = energy(lo + position(next_k))?;
            if f_next >= fk {
                a = prev;
                b = (k, fk);
                c = (next_k, f_next);
                break;
            }
            prev = (k, fk);
            k = next_k;
            fk = f_next;
        }
    } else {
        a = (-1, f_down);
        b = (0, f0);
        c = (1, f_up);
    }

    let mut left = lo + position(a.0);
    let mut right = lo + position(c.0);
    if c.1.is_infinite() {
        right = lo + position(0);
    }
    let mut best = (lo + position(b.0), b.1);

    // Golden section on [left, right].
    let mut x1 = right - INV_PHI * (right - left);
    let mut x2 = left + INV_PHI * (right - left);
    let mut f1 = energy(x1)?;
    let mut f2 = energy(x2)?;
    while right - left > SHIFT_TOLERANCE {
        if f1 <= f2 {
            right = x2;
            x2 = x1;
            f2 = f1;
            x1 = right - INV_PHI * (right - left);
            f1 = energy(x1)?;
        } else {
            left = x1;
            x1 = x2;
            f1 = f2;
            x2 = left + INV_PHI * (right - left);
            f2 = energy(x2)?;
        }
        for (x, f) in [(x1, f1), (x2, f2)] {
            if f < best.1 {
                best = (x, f);
            }
        }
    }
    for x in [left, right] {
        let f = energy(x)?;
        if f < best.1 {
            best = (x, f);
        }
    }

    let on_boundary = best.0 - lo <= SHIFT_TOLERANCE || hi - best.0 <= SHIFT_TOLERANCE;
    if on_boundary {
        // Report the better endpoint exactly.
        let f_lo = energy(lo)?;
        let f_hi = energy(hi)?;
        let (shift, e) = if f_lo <= f_hi { (lo, f_lo) } else { (hi, f_hi) };
        if e <= best.1 {
            best = (shift, e);
        }
    }
    Ok(ShiftOptimum {
        shift: best.0,
        energy: best.1,
        on_boundary,
    })
}

/// `state`-th eigenvalue for each basis size in `dims` (strictly ascending).
///
/// The largest matrix is assembled once; smaller sizes use its leading
/// principal submatrices.
pub fn convergence_sweep(
    params: &OscillatorParams,
    dims: &[usize],
    state: usize,
) -> Result<Vec<(usize, f64)>> {
    if dims.is_empty() || dims.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::DimensionList);
    }
    check_state(state, dims[0])?;
    let largest = *dims.last().unwrap_or(&1);
    let full = assemble(params, largest, None)?;
    dims.iter()
        .map(|&d| {
            let s = jacobi_eigen(&full.leading(d), false)?;
            Ok((d, s.values()[state]))
        })
        .collect()
}
