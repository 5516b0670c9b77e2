use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("rank must be at least 1, got {0}")]
    InvalidRank(usize),
    #[error("floor {floor} out of range for rank {n}")]
    InvalidFloor { n: usize, floor: usize },
    #[error("letter {letter} outside {lo}..={hi}")]
    LetterOutOfRange { letter: u32, lo: u32, hi: u32 },
    #[error("tableau word is not weakly increasing: {0}")]
    DecreasingWord(String),
    #[error("occupancy vector has length {got}, expected {expected}")]
    OccupancyLength { got: usize, expected: usize },
    #[error("occupancy vector violates floor {0}")]
    FloorViolation(usize),
    #[error("negative entry in {0}")]
    NegativeEntry(&'static str),
    #[error("rank or floor mismatch")]
    Mismatch,
    #[error("principal window is not a valid element: {0}")]
    InvalidWindow(String),
    #[error("carrier did not return to the vacuum: ball(s) would leave the system")]
    BoundaryCheck,
    #[error("path is not highest")]
    NotHighest,
    #[error("invalid rigged configuration: {0}")]
    InvalidRc(String),
    #[error("not a sub-multiset: {0}")]
    NotSubMultiset(String),
    #[error("not a tau table: {0}")]
    InvalidTauTable(String),
    #[error("scattering data: {0}")]
    Scattering(String),
    #[error("regime check failed: {0}")]
    Regime(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
