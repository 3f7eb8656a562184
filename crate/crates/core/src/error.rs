use thiserror::Error;

/// Errors raised by the cusp calculus.
///
/// Every variant has a stable short name (see [`CuspError::name`]) which the
/// command-line front end prints alongside the message.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CuspError {
    #[error("sequence is empty")]
    EmptySequence,
    #[error("not a cusp cycle: {0}")]
    InvalidCycle(String),
    #[error("cycle consists only of 2s (parabolic)")]
    ParabolicCycle,
    #[error("cycle has no entry >= 3")]
    AllTwos,
    #[error("input is rational")]
    RationalInput,
    #[error("matrix or cycle is not hyperbolic (|trace| <= 2)")]
    NotHyperbolic,
    #[error("matrix is not in SL2(Z) (det = {0})")]
    NotSL2(String),
    #[error("matrix has negative trace; negate it first")]
    NegativeTrace,
    #[error("trace {0} is too small for a one-vertex cover cycle")]
    TraceTooSmall(i64),
    #[error("multiplication does not preserve the module")]
    NotStable,
    #[error("generators do not span a rank-2 module")]
    DegenerateModule,
    #[error("index {index} out of range for length {len}")]
    IndexOutOfRange { index: usize, len: usize },
    #[error("entry at {0} is not 1, cannot blow down")]
    NotExceptional(usize),
    #[error("sequence is too short for this operation")]
    TooShort,
    #[error("reduction degenerated: {0}")]
    Degenerate(String),
    #[error("no toric model found within the search bounds")]
    NotFound,
    #[error("invalid T(p,q,r) triple: {0}")]
    InvalidTriple(String),
    #[error("invalid Pi(p,q,r,s) quadruple: {0}")]
    InvalidQuadruple(String),
    #[error("torsion group is not cyclic: {0}")]
    NonCyclicTorsion(String),
    #[error("bad subgroup order {order} for torsion group of order {group_order}")]
    BadOrder { order: i64, group_order: String },
    #[error("malformed complex: {0}")]
    MalformedComplex(String),
    #[error("permutation is not an automorphism: {0}")]
    NotAutomorphism(String),
    #[error("entry leaves the 64-bit range: {0}")]
    Overflow(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("internal error: {0}")]
    Internal(String),
}

impl CuspError {
    /// Stable identifier of the error kind.
    pub fn name(&self) -> &'static str {
        use CuspError::*;
        match self {
            EmptySequence => "EmptySequence",
            InvalidCycle(_) => "InvalidCycle",
            ParabolicCycle => "ParabolicCycle",
            AllTwos => "AllTwos",
            RationalInput => "RationalInput",
            NotHyperbolic => "NotHyperbolic",
            NotSL2(_) => "NotSL2",
            NegativeTrace => "NegativeTrace",
            TraceTooSmall(_) => "TraceTooSmall",
            NotStable => "NotStable",
            DegenerateModule => "DegenerateModule",
            IndexOutOfRange { .. } => "IndexOutOfRange",
            NotExceptional(_) => "NotExceptional",
            TooShort => "TooShort",
            Degenerate(_) => "Degenerate",
            NotFound => "NotFound",
            InvalidTriple(_) => "InvalidTriple",
            InvalidQuadruple(_) => "InvalidQuadruple",
            NonCyclicTorsion(_) => "NonCyclicTorsion",
            BadOrder { .. } => "BadOrder",
            MalformedComplex(_) => "MalformedComplex",
            NotAutomorphism(_) => "NotAutomorphism",
            Overflow(_) => "Overflow",
            Parse(_) => "Parse",
            Internal(_) => "Internal",
        }
    }
}

pub type Result<T> = std::result::Result<T, CuspError>;
