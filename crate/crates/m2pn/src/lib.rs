//! Toolkit for Menger 2-probabilistic normed spaces.
//!
//! A 2-probabilistic norm assigns to every pair of vectors `(x, y)` a
//! distribution function `nu_{x,y}`, where `nu_{x,y}(t)` reads as "the
//! probability that the area spanned by `x` and `y` is smaller than `t`".
//! This crate provides the pieces needed to compute with such spaces:
//!
//! * [`dfalgebra`] — exact algebra of the distribution functions themselves:
//!   step functions, the `t/(t+a)` ratio family, piecewise-constant shapes,
//!   pointwise minima, left limits, and certified pointwise order.
//! * [`geometry`] — the crisp side: points, the Gram-determinant 2-norm
//!   (area of the parallelogram spanned by two vectors), axiom sweeps for
//!   the 2-norm laws, and an exact rational mode for planar inputs.
//! * [`space`] — probabilistic 2-norm families (standard, indicator,
//!   custom), Menger axiom verification (A1..A5), local ball queries, scalar
//!   monotonicity, boundedness thresholds, and product spaces.
//! * [`sequences`] — finite-horizon convergence and Cauchy verdicts, the
//!   equivalence of 2-norm and probabilistic convergence, and convex-series
//!   machinery (weights, partial sums, chain inequality, closedness probes).
//! * [`dbound`] — probabilistic radius of a set, the four-way boundedness
//!   classification, witness checks, and closure of D-boundedness under
//!   scaling and Minkowski sums.
//!
//! Everything is deterministic given a seeded RNG; randomized checkers take
//! the generator as an argument and never consult ambient entropy.

pub mod dbound;
pub mod dfalgebra;
pub mod geometry;
pub mod report;
pub mod sequences;
pub mod space;

pub use dfalgebra::DistributionFn;
pub use geometry::Point;
pub use report::AxiomReport;
pub use space::Prob2Norm;

/// Errors surfaced by the toolkit. Construction and query functions validate
/// their domains eagerly so that numeric kernels can stay total.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("point dimension must be at least 2, got {0}")]
    InvalidDimension(usize),
    #[error("coordinates must be finite")]
    NonFiniteCoordinate,
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("left limit is undefined at negative infinity")]
    LeftLimitAtNegInfinity,
    #[error("invalid breakpoints: {0}")]
    InvalidBreakpoints(&'static str),
    #[error("{name} must be {requirement}, got {value}")]
    OutOfRange {
        name: &'static str,
        requirement: &'static str,
        value: f64,
    },
    #[error("{0} must not be empty")]
    EmptyInput(&'static str),
    #[error("index {index} outside 1..={horizon}")]
    IndexOutOfBounds { index: usize, horizon: usize },
    #[error("tail weight from index {from} is zero")]
    ZeroTailMass { from: usize },
    #[error("block weight is zero for indices {n}..={m}")]
    DegenerateBlockWeight { n: usize, m: usize },
    #[error("precondition violated: {0}")]
    PreconditionViolated(&'static str),
    #[error("witness must lie in D+ (zero at 0, limit 1 at +infinity)")]
    WitnessNotInDPlus,
    #[error("unsupported descriptor: {0}")]
    UnsupportedDescriptor(&'static str),
    #[error("analytic families disagree within a pair set")]
    MixedAnalyticFamilies,
    #[error("scalar must be nonzero")]
    ZeroScalar,
}

pub type Result<T> = std::result::Result<T, Error>;
