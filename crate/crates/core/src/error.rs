use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("unknown element `{0}`")]
    UnknownElement(String),

    #[error("invalid element token `{0}`")]
    InvalidToken(String),

    #[error("duplicate element `{0}`")]
    DuplicateElement(String),

    #[error("ground set has {0} elements, at most {max} are supported", max = crate::set::MAX_ELEMENTS)]
    TooManyElements(usize),

    #[error("ground set has {n} elements, exceeds the enumeration guard of {guard}")]
    GuardExceeded { n: usize, guard: usize },

    #[error("set is not a member of the family")]
    NotMember,

    #[error("set is not closed")]
    NotClosed,

    #[error("not a closure system: {0}")]
    NotClosureSystem(String),

    #[error("element `{0}` is not a pivot (its closure is itself)")]
    NotPivot(String),

    #[error("meet family is not reduced: a member has {covers} covers")]
    NotReduced { covers: usize },

    #[error(
        "empty-premise implication present; a largest extension never has one (Φ(∅) must be ∅)"
    )]
    EmptyPremise,

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("ground sets differ")]
    GroundMismatch,

    #[error("cannot generate instance: {0}")]
    Generate(String),
}
