use thiserror::Error;

use crate::cone::Cone;
use crate::strata::Stratum;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Errors raised by the library. Variants that stem from a failed check carry
/// the offending objects as a witness.
#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("ambient dimension mismatch: expected {expected}, found {found}")]
    AmbientMismatch { expected: usize, found: usize },

    #[error("parse error: {0}")]
    Parse(String),

    #[error("collection is not face-closed: face {face} of {cone} is missing")]
    NotFaceClosed { cone: Box<Cone>, face: Box<Cone> },

    #[error("relative interiors of {a} and {b} overlap")]
    InteriorOverlap { a: Box<Cone>, b: Box<Cone> },

    #[error("face {face} of {cone} is not a union of members")]
    UnionFaceViolation { cone: Box<Cone>, face: Box<Cone> },

    #[error("cone {0} is not contained in the support")]
    NotInSupport(Box<Cone>),

    #[error("complexes have different supports")]
    SupportMismatch,

    #[error("invalid semicomplex: {0}")]
    InvalidSemiComplex(String),

    #[error("cone {0} has a nontrivial lineality space")]
    NotPointed(Box<Cone>),

    #[error("stratum {0} is not in the nonempty family")]
    UnknownStratum(Stratum),

    #[error("{sub} is not a substratum of {sup}")]
    NotSubstratum { sub: Stratum, sup: Stratum },

    #[error("adjacent maps do not chain: {0} != {1}")]
    ChainMismatch(Stratum, Stratum),

    #[error("invalid path: {0}")]
    InvalidPath(String),

    #[error("path is not convex at position {0}")]
    NotConvex(usize),

    #[error("system is not simplicial at stratum {0}")]
    NotSimplicial(Stratum),

    #[error("no tau assigned to stratum {0}")]
    MissingTau(Stratum),

    #[error("commensurability criteria disagree for {0} and {1}")]
    CriteriaDisagree(Stratum, Stratum),

    #[error("resource cap exceeded: {what} > {cap} ({trace})")]
    ResourceCap { what: &'static str, cap: usize, trace: String },

    #[error("check failed: {0}")]
    CheckFailed(String),

    #[error("fan refinements disagree on the overlap {sub} of {sup}")]
    OverlapInconsistency { sub: Stratum, sup: Stratum },

    #[error("stratum {0} does not lie over {1}")]
    NotOverStratum(String, Stratum),

    #[error("matrix is not nilpotent")]
    NotNilpotent,

    #[error("matrices {0} and {1} do not commute")]
    NonCommuting(usize, usize),

    #[error("invalid input: {0}")]
    Invalid(String),
}
