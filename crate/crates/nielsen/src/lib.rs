//! Nielsen transformations of tuples in a group and a bounded,
//! bidirectional search for Nielsen equivalence.
//!
//! The elementary transformations are (T1) invert one entry, (T2) swap two
//! entries and (T3) replace `g_i` by `g_i·g_j`.  Searches are sound but
//! incomplete: a returned trace always replays, while failure to find one
//! is reported as [`SearchVerdict::Unknown`].

mod oracle;
mod search;
mod tuple;

pub use oracle::{GroupOracle, Pi1Oracle};
pub use search::{canonical_key, equivalent_bounded, is_reducible_witness, SearchBounds, SearchVerdict};
pub use tuple::{apply, invert_trace, replay, NielsenMove, NielsenTuple};

use thiserror::Error;

/// Errors raised by Nielsen transformations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NielsenError {
    #[error("index {index} out of range for a tuple of size {size}")]
    Index { index: usize, size: usize },
    #[error("move {0} needs two distinct indices")]
    SameIndex(String),
    #[error("tuples have different sizes ({0} and {1})")]
    SizeMismatch(usize, usize),
}
