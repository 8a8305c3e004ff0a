use thiserror::Error;

/// Errors raised by the engine.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("Coxeter matrix is not symmetric at ({i}, {j})")]
    Asymmetric { i: usize, j: usize },
    #[error("Coxeter matrix diagonal entry ({i}, {i}) must be 1")]
    BadDiagonal { i: usize },
    #[error("Coxeter matrix entry ({i}, {j}) = {value} is not a valid order (use >= 2, or 0 for infinity)")]
    BadOrder { i: usize, j: usize, value: i64 },
    #[error("Coxeter matrix must be square with rank >= 1 (got {rows} rows, offending row {row} has {cols} entries)")]
    BadShape { rows: usize, row: usize, cols: usize },
    #[error("rank {0} exceeds the supported maximum of 255 generators")]
    RankTooLarge(usize),
    #[error("generator index {index} out of range for rank {rank}")]
    IndexOutOfRange { index: usize, rank: usize },
    #[error("generator subset is not spherical")]
    NotSpherical,
    #[error("Coxeter group is not finite")]
    NotFinite,
    #[error("generator subset is not irreducible")]
    NotIrreducible,
    #[error("elements have different lengths ({0} vs {1})")]
    LengthMismatch(usize, usize),
    #[error("node budget of {budget} exceeded during {phase}")]
    ResourceLimit { phase: String, budget: usize },
    #[error("class polynomial recursion is inconsistent at {word:?}: {detail}")]
    InconsistentRecursion { word: Vec<u8>, detail: String },
    #[error("specialized b-parameter of class {class} is not a unit")]
    NonInvertibleB { class: usize },
    #[error("twist is not a diagram automorphism of the subset: {0}")]
    InvalidTwist(String),
    #[error("no ascending shift chain reaches a maximal element from {0:?}")]
    NoAscendingChain(Vec<u8>),
    #[error("class is infinite")]
    InfiniteClass,
    #[error("invalid input: {0}")]
    InvalidInput(String),
}

pub type Result<T> = std::result::Result<T, Error>;

/// Default node budget for every breadth-first search in the engine.
pub const DEFAULT_NODE_BUDGET: usize = 200_000;
