//! Error type shared by all modules.

use thiserror::Error;

/// Errors reported by the analysis routines.
#[derive(Debug, Error)]
pub enum Error {
    /// Parameter validation failed (b = 0, d = 0, k out of range, non-finite input).
    #[error("invalid map parameters: {0}")]
    InvalidParams(String),

    /// The map is not invertible (e = 0).
    #[error("map is not invertible: e = 0")]
    NonInvertible,

    /// An evaluation overflowed to a non-finite value.
    #[error("evaluation produced a non-finite result")]
    NonFinite,

    /// A parameter point lies outside the admissible strip |e|(a^2+b^2) < 1.
    #[error("|e|(a^2+b^2) >= 1: outside the admissible parameter strip")]
    StripViolation,

    /// The requested stability region has no points at the given slice.
    #[error("stability region is empty: {0}")]
    EmptyRegion(String),

    /// A formula is undefined on the circle a^2+b^2 = 1.
    #[error("undefined for a^2+b^2 = 1: {0}")]
    UnitCircleDegenerate(String),

    /// The required periodic orbit does not exist at these parameters.
    #[error("orbit does not exist: {0}")]
    OrbitMissing(String),

    /// Slab root computation failed to produce the required distinct roots.
    #[error("degenerate slab roots: {0}")]
    DegenerateSlabs(String),

    /// None of the horseshoe conditions hold at these parameters.
    #[error("horseshoe conditions do not hold at these parameters")]
    NoHorseshoeCase,

    /// An orbit state falls outside every slab.
    #[error("state {index} lies outside every slab")]
    OutOfSlab { index: usize },

    /// Anti-integrable seeding is impossible (limit function lacks the zeros).
    #[error("seed unavailable: {0}")]
    SeedUnavailable(String),

    /// The continuation parameter is zero or beyond its ceiling.
    #[error("continuation parameter lambda = {lambda} rejected: {reason}")]
    LambdaRejected { lambda: f64, reason: String },

    /// A Newton iteration failed to converge.
    #[error("Newton iteration failed: {0}")]
    NewtonFailed(String),

    /// Two symbol words converged onto the same orbit.
    #[error("orbits for words {word_a} and {word_b} collide")]
    DistinctnessViolation { word_a: String, word_b: String },

    /// A window's residual is too large to lift to a phase-space orbit.
    #[error("residual norm {norm:e} exceeds lift tolerance {tol:e}")]
    ResidualTooLarge { norm: f64, tol: f64 },

    /// An orbit left the escape box.
    #[error("orbit escaped at step {step}")]
    Escaped { step: usize },

    /// A Poincare section recorded fewer crossings than requested.
    #[error("only {got} plane crossings recorded, {want} required")]
    TooFewCrossings { got: usize, want: usize },

    /// A symbol word is malformed for the current alphabet.
    #[error("invalid symbol word: {0}")]
    InvalidWord(String),

    /// A boundary point's eigenvalues do not show the expected signature.
    #[error("expected eigenvalue signature {expected} not found at {at}")]
    EigenvalueMismatch { expected: String, at: String },
}

/// Convenience alias.
pub type Result<T, E = Error> = std::result::Result<T, E>;
