use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("column {column} is not strictly increasing")]
    ColumnNotStrict { column: usize },
    #[error("entry {entry} outside [1,{m}]")]
    OutOfRange { entry: i64, m: usize },
    #[error("rows have different lengths")]
    RaggedRows,
    #[error("expected {expected} rows, got {got}")]
    WrongRowCount { expected: usize, got: usize },
    #[error("dimension mismatch: ({0}) vs ({1})")]
    DimensionMismatch(String, String),
    #[error("divisor is not a row-wise factor")]
    NotAFactor,
    #[error("content vectors differ")]
    ContentMismatch,
    #[error("degree difference is not in the lattice of solid frozens")]
    NotInLattice,
    #[error("column {0:?} does not have gap weight 1")]
    NotFundamental(Vec<u16>),
    #[error("Y[{i},{s}] lies outside the window for (n,m) = ({n},{m})")]
    OutOfWindow { i: i32, s: i32, n: usize, m: usize },
    #[error("parity error: Y[{i},{s}] needs s = i mod 2")]
    ParityError { i: i32, s: i32 },
    #[error("bad dimensions: {0}")]
    BadDimensions(String),
    #[error(
        "gap weight {k} exceeds the cap {cap}; raise it with --max-k or GRTAB_MAX_K, \
         or work with the Zelevinsky dual multisegment"
    )]
    KTooLarge { k: usize, cap: usize },
    #[error("frozen minor {0:?} vanishes at this point")]
    SingularFrozen(Vec<u16>),
    #[error("degrees differ by a vector outside the solid frozen lattice")]
    IncomparableDegrees,
    #[error("vertex {0} is frozen")]
    FrozenVertex(String),
    #[error("unknown vertex {0}")]
    UnknownVertex(String),
    #[error("exchange sides at {0} have equal or incomparable weights")]
    AmbiguousMax(String),
    #[error("monomial is not expressible in the given cluster")]
    NotExpressible,
    #[error("matrix is singular")]
    Singular,
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
