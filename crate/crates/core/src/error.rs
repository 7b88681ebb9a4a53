use thiserror::Error;

use crate::linalg::FieldTag;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Every failure the library reports.
///
/// Variants split into input errors (malformed files, unknown ids, field
/// mixups) and domain errors (the input is well formed but the requested
/// operation does not apply to it). The CLI maps the two groups onto exit
/// codes 2 and 1.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("arrow `{arrow}` refers to unknown vertex `{vertex}`")]
    DanglingEndpoint { arrow: String, vertex: String },
    #[error("id `{0}` is declared more than once")]
    DuplicateId(String),
    #[error("ray `{ray}` attaches to unknown vertex `{vertex}`")]
    UnknownAttach { ray: String, vertex: String },
    #[error("id `{0}` uses a character reserved for ray materialization")]
    ReservedId(String),
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("unknown arrow `{0}`")]
    UnknownArrow(String),
    #[error("unknown ray `{0}`")]
    UnknownRay(String),
    #[error("multiplicity for component of `{0}` is given twice with different values")]
    ConflictingMultiplicity(String),
    #[error("subquiver is not closed: arrow `{0}` has an endpoint outside the vertex set")]
    OpenSubquiver(String),

    #[error("component of `{0}` has countably many copies, so no finite retraction exists")]
    NoFiniteRetraction(String),
    #[error("not a retraction: {0}")]
    NotARetraction(String),
    #[error("arrow `{0}` lies outside the retraction but does not carry an isomorphism")]
    NotSupportedOnRetraction(String),
    #[error("representation is not coherent as a FLEI representation: {0}")]
    FleiIncoherent(String),
    #[error("not an element of the root space: {0}")]
    NotRootSpace(String),

    #[error("field mismatch: {left} vs {right}")]
    FieldMismatch { left: FieldTag, right: FieldTag },
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("representations live on different windows or quivers")]
    WindowMismatch,
    #[error("vertex `{0}` is neither a sink nor a source")]
    NotSinkOrSource(String),
    #[error("vertex `{0}` is not a sink")]
    NotSink(String),
    #[error("vertex `{0}` is not a source")]
    NotSource(String),
    #[error("window does not contain every arrow incident to `{0}`")]
    WindowTooShallow(String),
    #[error("morphism does not commute with the arrow maps at `{0}`")]
    InvalidMorphism(String),
    #[error("morphism is zero or an isomorphism")]
    TrivialMorphism,

    #[error("quiver is not positive definite")]
    NotPositiveDefinite,
    #[error("not a positive root: {0}")]
    NotPositiveRoot(String),
    #[error("quiver is not of type D-infinity")]
    NotDInfinity,
    #[error("quiver is not eventually outward (ray `{0}`)")]
    NotEventuallyOutward(String),
    #[error("net did not stabilize within {0} vertices")]
    Unstabilized(usize),
    #[error("support has infinite homology; the finite net cannot see it")]
    InfiniteHomology,
    #[error("nontrivial-hom digraph has a cycle")]
    OrderCycle,
    #[error("filtration audit failed: {0}")]
    AuditFailure(String),

    #[error("schema violation: {0}")]
    Schema(String),
    #[error("malformed JSON: {0}")]
    Json(String),
    #[error("i/o: {0}")]
    Io(String),
    #[error("invalid scalar `{0}`")]
    InvalidScalar(String),
    #[error("invalid field `{0}` (expected \"Q\" or \"F<prime>\")")]
    InvalidField(String),
}

impl Error {
    /// Stable kebab-case identifier used in JSON reports and diagnostics.
    pub fn code(&self) -> &'static str {
        match self {
            Error::DanglingEndpoint { .. } => "dangling-endpoint",
            Error::DuplicateId(_) => "duplicate-id",
            Error::UnknownAttach { .. } => "unknown-attach",
            Error::ReservedId(_) => "reserved-id",
            Error::UnknownVertex(_) => "unknown-vertex",
            Error::UnknownArrow(_) => "unknown-arrow",
            Error::UnknownRay(_) => "unknown-ray",
            Error::ConflictingMultiplicity(_) => "conflicting-multiplicity",
            Error::OpenSubquiver(_) => "open-subquiver",
            Error::NoFiniteRetraction(_) => "no-finite-retraction",
            Error::NotARetraction(_) => "not-a-retraction",
            Error::NotSupportedOnRetraction(_) => "not-supported-on-retraction",
            Error::FleiIncoherent(_) => "flei-incoherent",
            Error::NotRootSpace(_) => "not-root-space",
            Error::FieldMismatch { .. } => "field-mismatch",
            Error::ShapeMismatch(_) => "shape-mismatch",
            Error::WindowMismatch => "window-mismatch",
            Error::NotSinkOrSource(_) => "not-sink-or-source",
            Error::NotSink(_) => "not-sink",
            Error::NotSource(_) => "not-source",
            Error::WindowTooShallow(_) => "window-too-shallow",
            Error::InvalidMorphism(_) => "invalid-morphism",
            Error::TrivialMorphism => "trivial-morphism",
            Error::NotPositiveDefinite => "not-positive-definite",
            Error::NotPositiveRoot(_) => "not-positive-root",
            Error::NotDInfinity => "not-d-infinity",
            Error::NotEventuallyOutward(_) => "not-eventually-outward",
            Error::Unstabilized(_) => "unstabilized",
            Error::InfiniteHomology => "infinite-homology",
            Error::OrderCycle => "order-cycle",
            Error::AuditFailure(_) => "audit-failure",
            Error::Schema(_) => "schema",
            Error::Json(_) => "json",
            Error::Io(_) => "io",
            Error::InvalidScalar(_) => "invalid-scalar",
            Error::InvalidField(_) => "invalid-field",
        }
    }

    /// True for errors caused by malformed or inconsistent input, as opposed
    /// to well-formed input on which the operation is undefined.
    pub fn is_input_error(&self) -> bool {
        matches!(
            self,
            Error::DanglingEndpoint { .. }
                | Error::DuplicateId(_)
                | Error::UnknownAttach { .. }
                | Error::ReservedId(_)
                | Error::UnknownVertex(_)
                | Error::UnknownArrow(_)
                | Error::UnknownRay(_)
                | Error::ConflictingMultiplicity(_)
                | Error::OpenSubquiver(_)
                | Error::NotRootSpace(_)
                | Error::FieldMismatch { .. }
                | Error::ShapeMismatch(_)
                | Error::WindowMismatch
                | Error::InvalidMorphism(_)
                | Error::Schema(_)
                | Error::Json(_)
                | Error::Io(_)
                | Error::InvalidScalar(_)
                | Error::InvalidField(_)
        )
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        if e.is_data() {
            Error::Schema(e.to_string())
        } else {
            Error::Json(e.to_string())
        }
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
