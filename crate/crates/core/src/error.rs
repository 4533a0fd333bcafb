use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("invalid ring spec: {0}")]
    InvalidRing(String),

    #[error("dimension mismatch: expected {expected} coordinates, got {got}")]
    Dimension { expected: usize, got: usize },

    #[error("ring rejected by axiom check: {0}")]
    RingAxioms(String),

    #[error("cayley table rejected: {0}")]
    InvalidTable(String),

    #[error("element {0} has no two-sided inverse")]
    NoTwoSidedInverse(usize),

    #[error("order {order} exceeds the cap of {cap}")]
    CapExceeded { order: usize, cap: usize },

    #[error("unknown preset `{0}`")]
    UnknownPreset(String),

    #[error("subloop is not normal: {0}")]
    NotNormal(String),

    #[error("not uniquely {m}-divisible: element {witness} is not of the form x^{m}")]
    NotDivisible { m: u32, witness: usize },

    #[error("refused: {0}")]
    Refused(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}
