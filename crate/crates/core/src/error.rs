use thiserror::Error;

use crate::realkit::Dyadic;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("malformed numeric literal `{0}`")]
    Malformed(String),
    #[error("`{0}` is not exactly representable as a binary fraction")]
    NotDyadic(String),
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum CorpusError {
    #[error("interval endpoints out of order: [{lo}, {hi}]")]
    EmptyInterval { lo: Dyadic, hi: Dyadic },
    #[error("rectangle axis {axis} is degenerate or reversed")]
    BadRect { axis: usize },
    #[error("parameter `{name}` is invalid: {reason}")]
    BadParameter { name: &'static str, reason: String },
    #[error("unknown corpus function `{0}`")]
    UnknownFunction(String),
    #[error("point has {got} coordinates, expected {expected}")]
    Dimension { expected: usize, got: usize },
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ArgminError {
    /// The derivative enclosure contains zero at every probe the bisection
    /// can still make; more precision is needed to certify a sign.
    #[error("no certified derivative sign on [{lo}, {hi}] at the current precision")]
    NoCertifiedSign { lo: Dyadic, hi: Dyadic },
    #[error("policy value {value} lies outside the minimizer segment [{lo}, {hi}]")]
    PolicyOutsideSegment { value: String, lo: String, hi: String },
    #[error("invalid argument: {0}")]
    Invalid(String),
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum DescentError {
    #[error(transparent)]
    Argmin(#[from] ArgminError),
    #[error(transparent)]
    Corpus(#[from] CorpusError),
    #[error("start point lies outside the feasible rectangle")]
    Infeasible,
    #[error("invalid block schedule: {0}")]
    BadSchedule(String),
    #[error("block {0:?} has more than one coordinate; only scalar block solvers are available")]
    UnsupportedBlock(Vec<usize>),
    #[error("sweep limit of {0} reached without meeting the stopping criterion")]
    MaxIterExceeded(usize),
}
