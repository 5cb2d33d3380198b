use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("duplicate leaf label {0}")]
    DuplicateLeaf(u32),
    #[error("leaf labels must be positive integers")]
    ZeroLabel,
    #[error("leaf label {0} occurs in both subtrees")]
    LabelClash(u32),
    #[error("label set is empty")]
    EmptyLabelSet,
    #[error("operands use different label sets or group models")]
    ModelMismatch,
    #[error("syntax error at offset {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("unknown group element `{0}`")]
    UnknownGroupElement(String),
    #[error("invalid group model: {0}")]
    InvalidGroup(String),
    #[error("expression is not multilinear in its label set")]
    NotMultilinear,
    #[error("maximum word length {max} is smaller than the alphabet size {alphabet}")]
    LTooSmall { max: usize, alphabet: usize },
    #[error("free group decorations need a word-length cap to be enumerated")]
    InfiniteEnumeration,
    #[error("leg {0} does not sit alone on a loop vertex")]
    NotResolvable(u32),
    #[error("invalid one-loop diagram: {0}")]
    InvalidDiagram(String),
    #[error("vector is not in the row lattice")]
    NotInLattice,
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("bad input: {0}")]
    Input(String),
}
