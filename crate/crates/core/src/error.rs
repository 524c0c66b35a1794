use thiserror::Error;

use crate::rings::Alphabet;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("matrix has no rows or no columns")]
    EmptyMatrix,
    #[error("length mismatch: expected {expected}, found {found}")]
    LengthMismatch { expected: usize, found: usize },
    #[error("alphabet mismatch: {left} vs {right}")]
    AlphabetMismatch { left: Alphabet, right: Alphabet },
    #[error("code length {0} is odd")]
    OddLength(usize),
    #[error("generator is not self-orthogonal")]
    NotSelfOrthogonal,
    #[error("generator has rank {rank} but {rows} rows")]
    RankDeficient { rank: usize, rows: usize },
    #[error("dimension {k} (length {n}) exceeds the enumeration limit")]
    DimensionTooLarge { k: usize, n: usize },
    #[error("lambda {0} is not a unit")]
    NonUnitLambda(String),
    #[error("construction condition failed: {0}")]
    ConditionFailed(String),
    #[error("bordered construction needs odd block order, got {0}")]
    EvenN(usize),
    #[error("row sums differ or are not units: S_A = {s_a}, S_B = {s_b}")]
    RowSumMismatch { s_a: String, s_b: String },
    #[error("border elements invalid: x must be a unit and y a non-unit (x = {x}, y = {y})")]
    BadBorder { x: String, y: String },
    #[error("extension constant c = {0} does not satisfy c^2 = 1")]
    BadC(String),
    #[error("extension vector has <X,X> = {0}, expected 1")]
    BadX(String),
    #[error("weight profile lacks exact counts up to weight {0}")]
    MissingWeights(usize),
    #[error("no enumerator families are known for length {0}")]
    UnsupportedLength(usize),
    #[error("invalid character {ch:?} at position {pos} for alphabet {alphabet}")]
    BadCharacter {
        ch: char,
        pos: usize,
        alphabet: Alphabet,
    },
    #[error("empty row text")]
    EmptyRow,
    #[error("invalid record: {0}")]
    BadRecord(String),
    #[error("invalid search configuration: {0}")]
    ConfigInvalid(String),
    #[error("unknown table {0}")]
    UnknownTable(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
