use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("cannot parse {input:?}: {reason}")]
    Parse { input: String, reason: String },

    #[error("invalid segmented composition: {0}")]
    InvalidComposition(String),

    #[error("invalid segmented permutation: {0}")]
    InvalidPermutation(String),

    #[error("position {position} is outside 1..={max}")]
    OutOfRange { position: usize, max: usize },

    #[error("descent and bar sets overlap at {0}")]
    OverlappingSets(usize),

    #[error("n = {n} exceeds the enumeration cap {cap} (raise it with --oracle-cap)")]
    OracleCapExceeded { n: usize, cap: usize },

    #[error("inexact division by j in the j-recurrence at K({n},{i},{j})")]
    InexactDivision { n: usize, i: usize, j: usize },

    #[error("product of elements in different bases ({left} and {right})")]
    MixedBasis { left: char, right: char },

    #[error("unsupported basis change {from} -> {to}")]
    UnsupportedConversion { from: char, to: char },

    #[error("basis {basis} cannot be indexed by {kind}")]
    WrongIndexKind { basis: char, kind: &'static str },

    #[error("series: {0}")]
    Series(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

pub type Result<T> = std::result::Result<T, Error>;
