//! Exact dyadic arithmetic, certified enclosures and block coordinate
//! descent on a small corpus of counterexample functions.

pub mod argmin;
pub mod corpus;
pub mod descent;
pub mod error;
pub mod experiments;
pub mod realkit;
pub mod scalar;

pub use error::{ArgminError, CorpusError, DescentError, ParseError};
pub use realkit::{Dyadic, Interval};
pub use scalar::Scalar;

/// Traces over exact dyadics, the default everywhere.
pub type ExactTrace = descent::Trace<Dyadic>;
/// Traces over machine floats, for comparison runs on `f1`.
pub type FloatTrace = descent::Trace<f64>;
pub type ExactF1Problem = descent::F1Problem<Dyadic>;
pub type FloatF1Problem = descent::F1Problem<f64>;
