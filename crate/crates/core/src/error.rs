//! Crate-wide error type.
//!
//! One enum covers all layers so that errors compose across the pipeline
//! (linear algebra → Gröbner → modules → spectral invariants → CLI) and the
//! frontend can surface them by name.

use thiserror::Error;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;

/// Every failure mode of the engine, named by what went wrong.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Matrix shapes are incompatible for the requested operation.
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),

    /// A tuple of operators was required to commute but does not.
    #[error("operators do not commute: {0}")]
    NonCommuting(String),

    /// A characteristic polynomial has an irreducible factor of degree > 1,
    /// so the joint spectrum is not rational.
    #[error("spectrum is not rational: {0}")]
    IrrationalSpectrum(String),

    /// Operands live in different polynomial rings.
    #[error("ring mismatch: {0}")]
    RingMismatch(String),

    /// The staircase of standard monomials is infinite where a finite one
    /// was required.
    #[error("infinite staircase: {0}")]
    InfiniteStaircase(String),

    /// A generator expected to be a monomial is not.
    #[error("not a monomial: {0}")]
    NotMonomial(String),

    /// A module map does not send relations into relations.
    #[error("ill-defined module map: {0}")]
    IllDefinedMap(String),

    /// An element claimed to lie in a submodule does not.
    #[error("element not contained in submodule: {0}")]
    NotContained(String),

    /// M/qM is not finite-dimensional, so Hilbert–Samuel data is undefined.
    #[error("quotient not cofinite: {0}")]
    NotCofinite(String),

    /// The sampled quotient dimensions never stabilized to a polynomial
    /// within the sampling budget.
    #[error("no polynomial stabilization within budget: {0}")]
    NoStabilization(String),

    /// A parameter count does not match the module dimension.
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    /// A module expected to be finite-dimensional over the scalars is not.
    #[error("module is infinite-dimensional: {0}")]
    InfiniteDimensional(String),

    /// The chosen coordinate subset does not cut the support down to
    /// dimension zero at the given point.
    #[error("not a coordinate system: {0}")]
    NotACoordinateSystem(String),

    /// The component list of a support could not be determined
    /// automatically and no certified candidates were supplied.
    #[error("components unknown: {0}")]
    ComponentsUnknown(String),

    /// A supplied prime candidate fails certification, containment, or
    /// minimality.
    #[error("bad prime candidate: {0}")]
    BadCandidate(String),

    /// The requested point does not lie on the component it was claimed on.
    #[error("point not on component: {0}")]
    NotOnComponent(String),

    /// A sample point was not generic enough (division failed, or no
    /// admissible sample was found within the budget).
    #[error("sample not generic: {0}")]
    NotGeneric(String),

    /// A map restricted to a support is not finite over its image.
    #[error("map not finite on support: {0}")]
    NotFinite(String),

    /// Two independent generic samples disagreed where a constant value was
    /// required.
    #[error("generic samples disagree: {0}")]
    GenericSampleDisagreement(String),

    /// A fiber of a polynomial map contains non-rational points.
    #[error("preimage points are not rational: {0}")]
    IrrationalPreimage(String),

    /// A relation of a would-be graded module is not homogeneous.
    #[error("not homogeneous: {0}")]
    NotHomogeneous(String),

    /// The operation is undefined on the zero module.
    #[error("zero module: {0}")]
    ZeroModule(String),

    /// The operation is not defined for this model kind.
    #[error("unsupported for this model: {0}")]
    Unsupported(String),

    /// Problem-file syntax error with location.
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

impl Error {
    /// True for errors that indicate bad user input rather than a failed
    /// mathematical verification.
    pub fn is_input_error(&self) -> bool {
        matches!(self, Error::Parse { .. } | Error::Unsupported(_))
    }
}
