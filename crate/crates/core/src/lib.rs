//! Rayleigh–Ritz spectra of the generalized spiked harmonic oscillator
//!
//! ```text
//! H = -d²/dx² + B x² + A/x² + λ/x^α        (0 < x < ∞, ψ(0) = 0)
//! ```
//!
//! The Hamiltonian is diagonalized in the Gol'dman–Krivchenkov eigenbasis of
//! `-d²/dx² + B x² + A/x²`, where the singular matrix elements `<m|x^-α|n>`
//! have closed forms. N-dimensional angular-momentum channels reduce to the
//! same radial problem through an effective centrifugal coupling.
//!
//! The crate is `no_std` and needs only `alloc`:
//!
//! * [`specfun`]: log-gamma, Pochhammer symbols, terminating Kummer series
//! * [`matrix_elements`]: `<m|x^-α|n>` and the diagonal of `H₀`
//! * [`hamiltonian`]: problem parameters and D×D matrix assembly
//! * [`eigensolver`]: cyclic Jacobi diagonalization
//! * [`variational`]: D sweeps and minimization over the basis shift `A*`
//! * [`oracle`]: independent shooting-method eigenvalues
//! * [`basis`]: basis functions and expanded trial states
//! * [`quadrature`]: adaptive Gauss–Kronrod integration

#![cfg_attr(not(test), no_std)]
// Quadrature nodes and series constants are kept at full tabulated precision;
// `!(x > 0.0)` guards are deliberate so NaN is rejected too.
#![allow(clippy::excessive_precision, clippy::neg_cmp_op_on_partial_ord)]

extern crate alloc;

pub mod basis;
pub mod eigensolver;
mod error;
pub mod hamiltonian;
pub mod matrix_elements;
pub mod oracle;
pub mod quadrature;
pub mod specfun;
pub mod variational;

pub use basis::{eval_basis, eval_state, BasisFunctionSpec, ExpandedState};
pub use eigensolver::{jacobi_eigen, Spectrum};
pub use error::{Error, Result};
pub use hamiltonian::{
    assemble, closed_form_d1, closed_form_d2, effective_a, Channel, OscillatorParams, SymMatrix,
};
pub use matrix_elements::{
    appendix_element, ground_row_element, h0_diagonal, singular_element, BasisGamma, ElementIndex,
    SpikeElements,
};
pub use oracle::{find_eigenvalue, outer_boundary, potential, ShootingSettings};
pub use variational::{
    convergence_sweep, optimize_shift, solve, ShiftOptimum, SolveRequest, SolveResult,
};
