use thiserror::Error;

pub type Result<T> = core::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("gamma function pole at z = {0}")]
    GammaPole(f64),

    #[error("binomial coefficient C({m}, {k}) requires k <= m <= 64")]
    Binomial { m: u32, k: u32 },

    #[error("Kummer polynomial requires b > 0, got b = {0}")]
    KummerParameter(f64),

    /// `<m|x^-α|n>` diverges unless `0 < α < 2γ`.
    #[error("matrix element diverges: need 0 < alpha < 2*gamma = {}, got alpha = {alpha}", 2.0 * .gamma)]
    DivergentElement { alpha: f64, gamma: f64 },

    #[error("explicit closed forms exist only for m, n <= 4, got ({m}, {n})")]
    UnsupportedIndex { m: usize, n: usize },

    #[error("invalid parameter {name} = {value}: must be {constraint}")]
    InvalidParameter {
        name: &'static str,
        value: f64,
        constraint: &'static str,
    },

    #[error("invalid channel: N = {dim} (need N >= 2)")]
    InvalidChannel { dim: u32 },

    #[error("basis dimension must be at least 1, got {0}")]
    Dimension(usize),

    #[error("state index {state} out of range for basis dimension {dim}")]
    StateIndex { state: usize, dim: usize },

    #[error("Jacobi iteration did not converge within {sweeps} sweeps")]
    NoConvergence { sweeps: usize },

    #[error("invalid shift bounds [{lo}, {hi}]")]
    ShiftBounds { lo: f64, hi: f64 },

    #[error("basis dimensions must be non-empty and strictly ascending")]
    DimensionList,

    #[error("position must be positive, got x = {0}")]
    NonPositivePosition(f64),

    #[error("no level with {nodes} nodes found below energy ceiling {ceiling}")]
    NoRoot { nodes: usize, ceiling: f64 },

    #[error("integration step {step} too coarse to resolve nodes near x = {x}")]
    StepResolution { step: f64, x: f64 },

    #[error("invalid shooting settings: {0}")]
    Settings(&'static str),
}
