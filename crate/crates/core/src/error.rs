use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid field: {0}")]
    InvalidField(String),

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("linear system has no solution")]
    NoSolution,

    #[error("pairing matrix is singular (the input form is degenerate)")]
    SingularForm,

    #[error("matrix is singular")]
    SingularMatrix,

    #[error("multiplication is not associative at basis triple {0:?}")]
    NotAssociative([usize; 3]),

    #[error("unit axiom fails at basis element {0}")]
    NoUnit(usize),

    #[error("form is not symmetric at basis pair {0:?}")]
    FormNotSymmetric([usize; 2]),

    #[error("form is degenerate (rank {rank} < {dim})")]
    FormDegenerate { rank: usize, dim: usize },

    #[error("form is not associative at basis triple {0:?}: (b_i b_j, b_l) != (b_i, b_j b_l)")]
    FormNotAssociative([usize; 3]),

    #[error("operation requires a symmetrizing form")]
    FormRequired,

    #[error("table is not a group: {0}")]
    NotAGroup(String),

    #[error("induced pairing Z(A) x A/KA is degenerate; the input is not symmetric")]
    DegeneratePairing,

    #[error("size cap exceeded: {entries} matrix entries > cap {cap}")]
    SizeCapExceeded { entries: u128, cap: u64 },

    #[error("degree mismatch: {0}")]
    DegreeMismatch(String),

    #[error("Hochschild pairing in degree {0} is degenerate")]
    PairingDegenerate(usize),

    #[error("parity violation: {0}")]
    ParityViolation(String),

    #[error("signatures are incomparable: {0}")]
    Incomparable(String),

    #[error("schema version mismatch: found {found}, expected {expected}")]
    SchemaVersionMismatch { found: u32, expected: u32 },

    #[error("malformed document: {0}")]
    MalformedDocument(String),

    /// A mathematical identity the computation relies on failed to hold.
    #[error("invariant violated: {0}")]
    InvariantViolation(String),
}

impl Error {
    pub fn is_cap(&self) -> bool {
        matches!(self, Error::SizeCapExceeded { .. })
    }
}
