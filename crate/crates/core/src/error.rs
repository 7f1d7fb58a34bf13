use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ToricError {
    #[error("graph not connected")]
    NotConnected,
    #[error("not Eulerian: vertex {0} has odd degree")]
    NotEulerian(usize),
    #[error("walk not even")]
    WalkNotEven,
    #[error("invalid walk: {0}")]
    InvalidWalk(String),
    #[error("invalid graph: {0}")]
    InvalidGraph(String),
    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("block {0} is not a node of the block tree")]
    UnknownBlock(usize),
    #[error("requires primitive walk")]
    RequiresPrimitive,
    #[error("cycle enumeration on {0} edges requires an explicit length cap")]
    CycleCapRequired(usize),
    #[error("graver enumeration on {0} edges requires an explicit degree cap")]
    DegreeCapRequired(usize),
    #[error("completion may not terminate meaningfully; cap required")]
    CapRequired,
    #[error("infinite fiber possible: semigroup is not pointed")]
    InfiniteFiber,
    #[error("semigroup is not pointed; Markov bases of non-pointed configurations are handled by the nonpointed module")]
    NotPointed,
    #[error("vector is not primitive")]
    NotPrimitive,
    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),
    #[error("integer overflow in {0}")]
    Overflow(&'static str),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("{0} and {1} are not coprime (gcd {2})")]
    NotCoprime(String, String, String),
    #[error("empty exponent set")]
    EmptySet,
    #[error("unknown experiment '{0}'; known: {1}")]
    UnknownExperiment(String, String),
    #[error("invariant violated: {0}")]
    Invariant(String),
}

pub type Result<T> = std::result::Result<T, ToricError>;
