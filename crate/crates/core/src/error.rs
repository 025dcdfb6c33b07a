//! Error types for the exact and numeric layers.

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RingError {
    #[error("cannot parse `{0}` as a rational (expected `p/q`, an integer, or a decimal)")]
    BadRational(String),
    #[error("zero denominator in rational literal `{0}`")]
    ZeroDenominator(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("variable mismatch: left operand is in `{left}`, right operand is in `{right}`")]
    VarMismatch { left: String, right: String },
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("leading coefficient of the divisor is not invertible")]
    NonInvertibleLeading,
    #[error("exact division left a nonzero remainder (degree {remainder_degree})")]
    NonZeroRemainder { remainder_degree: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ClassicalError {
    #[error("polynomial degree {0} is below -1; only n >= -1 is meaningful (n = -1 denotes the zero polynomial)")]
    DegreeBelowMinusOne(i64),
    #[error("Jacobi parameter alpha = {alpha} is a negative integer with |alpha| <= n = {n}; the expansion degenerates")]
    DegenerateAlpha { alpha: String, n: i64 },
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SystemError {
    #[error("coupling g must be positive, got g = {0}")]
    NonPositiveG(String),
    #[error("couplings must satisfy h > g > 0, got g = {g}, h = {h}")]
    CouplingOrder { g: String, h: String },
    #[error("system requires parameter h, but none was given")]
    MissingH,
    #[error("system takes no parameter h, but h = {0} was given")]
    UnexpectedH(String),
    #[error("deformation degree ell = {ell} needs ell < {n_bound} (the number of bound states for these couplings)")]
    TooFewBoundStates { ell: u32, n_bound: u64 },
    #[error("structural denominator `{factor}` vanishes for these parameters")]
    VanishingDenominator { factor: String },
    #[error("sample point x = {x} lies outside the open domain ({lo}, {hi})")]
    OutsideDomain { x: f64, lo: f64, hi: f64 },
    #[error("identity comparison is degenerate: normalization factor `{factor}` vanishes")]
    DegenerateNormalization { factor: String },
    #[error("level n = {n} is not a bound state of the degree-{ell} deformed system (need n < {limit})")]
    UnboundLevel { n: u32, ell: u32, limit: String },
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum NumericsError {
    #[error("quadrature order {0} is not positive")]
    BadOrder(usize),
    #[error("quadrature parameter constraint violated: {0}")]
    BadWeightParameter(String),
    #[error("eigenvalue bisection failed to bracket index {0}")]
    BisectionFailure(usize),
    #[error("Gram matrix did not stabilize below {tol:e} at the order cap {cap}")]
    NoConvergence { tol: f64, cap: usize },
    #[error("grid of {n} points on ({lo}, {hi}) is too coarse: eigenvalue {index} moved by {shift:e} under half-spacing refinement")]
    GridTooCoarse {
        n: usize,
        lo: f64,
        hi: f64,
        index: usize,
        shift: f64,
    },
    #[error("grid must have at least {min} points, got {got}")]
    GridTooSmall { min: usize, got: usize },
}

/// Union of every failure the crate can produce, for call sites that mix the
/// exact and floating-point layers (the numeric validators, the CLI).
#[derive(Debug, Clone, PartialEq, Error)]
pub enum XellError {
    #[error(transparent)]
    Ring(#[from] RingError),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Classical(#[from] ClassicalError),
    #[error(transparent)]
    System(#[from] SystemError),
    #[error(transparent)]
    Numerics(#[from] NumericsError),
}
