//! Exact dyadic arithmetic, interval enclosures and effective convergence.

mod dyadic;
mod interval;
mod repr;

pub use dyadic::{parse_rational, Dyadic};
pub use interval::{Interval, DEFAULT_PRECISION};
pub use repr::{effective_convergence_check, stopping_index, Representation};
