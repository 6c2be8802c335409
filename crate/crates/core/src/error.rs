//! Error type shared by every module in the crate.

use alloc::string::String;

/// Crate-wide result alias.
pub type Result<T> = core::result::Result<T, Error>;

/// Everything that can go wrong across the spectral, Lie, solver and jet
/// layers. Variants carry enough data to print a one-line diagnostic.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    /// Grid construction rejected the requested size or length.
    #[error("invalid grid: n = {n} must be even and >= 8, length = {length} must be positive and finite")]
    InvalidGrid { n: usize, length: f64 },

    /// Two fields that must share a grid do not.
    #[error("grid mismatch: {left} points vs {right} points (or differing lengths)")]
    GridMismatch { left: usize, right: usize },

    /// A field constructor received the wrong number of samples.
    #[error("value count {got} does not match grid size {expected}")]
    ValueCount { got: usize, expected: usize },

    /// Both metric parameters vanish, so the inertia operator is zero.
    #[error("metric parameters alpha and beta must not both be zero")]
    DegenerateMetric,

    /// Inverting a degenerate (alpha = 0) inertia operator requires a
    /// zero-mean momentum; this one has mean {mean}.
    #[error("inertia operator not solvable: alpha = 0 requires zero-mean momentum, got mean {mean:e}")]
    NotSolvable { mean: f64 },

    /// A circle-diffeomorphism lift failed strict monotonicity.
    #[error("lift is not strictly increasing at sample {index}")]
    NonMonotoneLift { index: usize },

    /// A lift sample is non-finite or violates the periodic seam condition.
    #[error("lift is not a valid degree-one circle map (seam or finiteness violated)")]
    InvalidLift,

    /// A Jacobian came too close to zero for stable division.
    #[error("diffeomorphism Jacobian too close to zero at grid index {index}: |phi_x| = {min_abs:e}")]
    NearSingularJacobian { index: usize, min_abs: f64 },

    /// Solver options failed validation.
    #[error("invalid solver options: {0}")]
    InvalidOptions(&'static str),

    /// A trajectory lookup asked for a time that was never stored.
    #[error("time {time} not stored in trajectory (nearest stored time differs by more than tolerance)")]
    TimeNotStored { time: f64 },

    /// Residual evaluation needs interior snapshots with uniform spacing.
    #[error("residual needs a uniformly spaced interior snapshot; index {index} does not qualify")]
    ResidualStencil { index: usize },

    /// A simulation died (NaN/Inf) before reaching the requested time.
    #[error("simulation blew up at t = {time}")]
    BlowUp { time: f64 },

    /// The Hopf equation is excluded from the numerical symmetry harness.
    #[error("hopf: numerical symmetry transport is not defined (solutions break in finite time); use the jet-level invariance check")]
    HopfNotSupported,

    /// The requested generator rescales x and cannot act on a fixed grid.
    #[error("generator {generator} of {equation} is grid-incompatible: verified symbolically via invariance-check")]
    GridIncompatible {
        equation: &'static str,
        generator: &'static str,
    },

    /// No equation with this name is in the catalog.
    #[error("unknown equation: {0}")]
    UnknownEquation(String),

    /// The named equation exists but has no generator with this label.
    #[error("unknown generator {generator} for equation {equation}")]
    UnknownGenerator {
        equation: String,
        generator: String,
    },

    /// Time-translation consistency runs need the source trajectory to
    /// start at or before the transformed one.
    #[error("time translation with delta > 0 would need source data at negative times")]
    NegativeSourceTime,

    /// A vector field coefficient depends on jet coordinates.
    #[error("vector field coefficients must depend only on t, x, u (and parameters); found {found}")]
    NotAPointField { found: String },

    /// The chosen leading derivative cannot be solved for.
    #[error("cannot solve for leading derivative {leading}: {reason}")]
    NotSolvableForLeading {
        leading: String,
        reason: &'static str,
    },

    /// No admissible leading derivative was found automatically.
    #[error("no constant-coefficient time-derivative to solve for; specify the leading jet variable explicitly")]
    NoLeadingCandidate,

    /// Closure checking requires linearly independent generators.
    #[error("generators are linearly dependent over the rationals (generator {index} is in the span of the earlier ones)")]
    DependentGenerators { index: usize },

    /// Surface-syntax parse failure, with 1-based position.
    #[error("parse error at line {line}, column {col}: {msg}")]
    Parse { line: u32, col: u32, msg: String },
}
