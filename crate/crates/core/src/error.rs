use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("pairing Gram matrix is {rows}x{cols}; the paired lattices have different ranks")]
    RankMismatch { rows: usize, cols: usize },

    #[error("dimension mismatch: expected {expected}, found {found}")]
    Dimension { expected: usize, found: usize },

    #[error("invalid K3 model: {0}")]
    InvalidK3(String),

    #[error("class with self-intersection {0} is not a smooth curve class on a K3 surface")]
    NotACurve(String),

    #[error("invalid base threefold: {0}")]
    InvalidBase(String),

    #[error("center {index} has {found} coordinates but Pic(D) has rank {expected}")]
    CenterNotOnLattice { index: usize, expected: usize, found: usize },

    #[error("centers {i} and {j} have negative mutual intersection {value}")]
    NegativeIntersection { i: usize, j: usize, value: String },

    #[error("the two components do not share the same K3 surface")]
    MismatchedK3,

    #[error("component {0} has no blow-up centers")]
    NoCenters(usize),

    #[error("component index must be 1 or 2, got {0}")]
    ComponentIndex(usize),

    #[error("internal inconsistency: {0}")]
    Inconsistent(String),

    #[error("c2 correction term is {value} on generator {generator}; d-semistability is broken")]
    NonzeroC2Correction { generator: usize, value: String },

    #[error("cubic tensor has rank {found}; Aronhold invariants need rank 3 (use discriminant data for rank <= 2)")]
    TensorRank { found: usize },

    #[error("tensor ranks differ: {0} vs {1}")]
    TensorRankMismatch(usize, usize),

    #[error("invalid cubic tensor: {0}")]
    InvalidTensor(String),

    #[error("Euler characteristic is not integral for rho^3 = {rho_cubed}, rho.c2 = {rho_c2}, n = {n}")]
    NonIntegralChi { rho_cubed: String, rho_c2: String, n: String },

    #[error("delta mismatch: {v1} has delta {d1}, {v2} has delta {d2}")]
    DeltaMismatch { v1: String, v2: String, d1: i64, d2: i64 },

    #[error("catalog row {row}: {message}")]
    Catalog { row: usize, message: String },

    #[error("non-integral invariant for pair ({v1}, {v2}): {what}")]
    NonIntegral { v1: String, v2: String, what: String },

    #[error("unknown Fano family '{0}'")]
    UnknownFamily(String),

    #[error("{location}: {message}")]
    Schema { location: String, message: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}
