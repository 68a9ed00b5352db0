use thiserror::Error;

use crate::rational::Rational;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("unknown element `{0}`")]
    UnknownElement(String),
    #[error("duplicate element label `{0}`")]
    DuplicateElement(String),
    #[error("ground set has {size} elements, the limit is {cap}")]
    TooLarge { size: usize, cap: usize },
    #[error("operands live on different ground sets")]
    GroundMismatch,

    #[error("relation is not a preorder (witness {witness:?})")]
    NotAPreorder { witness: Vec<String> },
    #[error("relation is not a partial order (witness {witness:?})")]
    NotAPartialOrder { witness: Vec<String> },
    #[error("relation is not a semiorder: {axiom} fails at {witness:?}")]
    NotASemiorder { axiom: String, witness: Vec<String> },
    #[error("strict part contains a cycle through {witness:?}")]
    CyclicStrictPart { witness: Vec<String> },

    #[error("scale factor must be positive, got {0}")]
    NonPositiveAlpha(Rational),
    #[error("function #{function} is undefined at `{element}` but the family kind requires total functions")]
    PartialFunctionInTotalKind { function: usize, element: String },
    #[error("Scott-Suppes utility is undefined at `{0}`")]
    PartialUtilityForSS(String),
    #[error("threshold must be exactly 1 for Scott-Suppes kinds, got {0}")]
    InvalidThreshold(Rational),
    #[error("precondition failed: {0}")]
    PreconditionFailed(String),
    #[error("{what}: size {size} exceeds cap {cap}")]
    CapExceeded { what: &'static str, size: usize, cap: usize },
    #[error("arithmetic overflow in exact rational computation")]
    Overflow,
    #[error("difference constraints are infeasible")]
    Infeasible,

    #[error("not a topology: {0}")]
    InvalidTopology(String),
    #[error("unknown example `{0}`")]
    UnknownExample(String),
    #[error("invalid example parameters: {0}")]
    InvalidParams(String),

    #[error("receive of message `{0}` has no matching send")]
    DanglingReceive(String),
    #[error("message id `{0}` is used by more than one send or receive")]
    DuplicateMessageId(String),
    #[error("process {process}: sequence number {seq} does not increase")]
    NonMonotonicSequence { process: usize, seq: u64 },
    #[error("event refers to process {process} but the trace declares {processes}")]
    UnknownProcess { process: usize, processes: usize },
    #[error("trace has a causal cycle through `{0}`")]
    CausalCycle(String),

    #[error("malformed input: {0}")]
    Parse(String),
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Parse(e.to_string())
    }
}
