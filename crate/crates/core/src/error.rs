use thiserror::Error;

/// Errors produced by the simulator library.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("matrix is not Hermitian: max |M[i][j] - conj(M[j][i])| = {residual:.3e} exceeds {tolerance:.3e}")]
    NotHermitian { residual: f64, tolerance: f64 },

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("matrix must be square, got {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },

    #[error("cannot normalize a zero or non-finite vector")]
    ZeroVector,

    #[error("cubic has complex roots (discriminant {discriminant:.3e}); coefficients are not from a Hermitian matrix")]
    ComplexRoots { discriminant: f64 },

    #[error("non-finite input: {0}")]
    NonFinite(&'static str),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("atom index {index} out of range for {count} atoms")]
    AtomIndex { index: usize, count: usize },

    #[error("model too large: {atoms} atoms with photon cutoff {cutoff} gives dimension {dim}")]
    DimensionGuard { atoms: usize, cutoff: usize, dim: usize },

    #[error("block structure invalid without RWA")]
    BlockWithoutRwa,

    #[error("dark state undefined: both couplings are zero")]
    UndefinedDarkState,

    #[error("frequencies are degenerate (|w1 - w2| = {gap:.3e}); use the degenerate branch")]
    UseDegenerateBranch { gap: f64 },

    #[error("singlet ensembles need an even number of atoms, got {0}")]
    OddAtomCount(usize),

    #[error("position x = {x} outside cavity [0, {length}]")]
    PositionOutOfRange { x: f64, length: f64 },

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
}

pub type Result<T> = std::result::Result<T, Error>;
