use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("size mismatch: {left} vs {right}")]
    SizeMismatch { left: usize, right: usize },

    #[error("not a permutation of 1..{n}: {word:?}")]
    InvalidPermutation { n: usize, word: Vec<usize> },

    #[error("duplicate value {0} in string")]
    DuplicateValue(usize),

    #[error("permutation {0} is not an involution")]
    NotInvolution(String),

    #[error("string {index} ({string}) is not an involution in relative order")]
    InvalidString { index: usize, string: String },

    #[error("invalid composition {0:?}: parts must be positive and nonempty")]
    InvalidComposition(Vec<usize>),

    #[error("generator index {index} out of range 1..={max}")]
    GeneratorOutOfRange { index: usize, max: usize },

    #[error("parse error: {0}")]
    Parse(String),

    #[error("s_{label} does not move {source_word}: not a covering step")]
    NotCovering { label: usize, source_word: String },

    #[error("node {0} is not in the poset")]
    UnknownNode(String),

    #[error("{count} maximal chains exceed the enumeration limit {limit}")]
    ChainLimit { count: String, limit: usize },

    #[error("resource bound exceeded: n = {n} > limit {limit} (estimated {estimate} items)")]
    ResourceBound {
        n: usize,
        limit: usize,
        estimate: String,
    },
}
