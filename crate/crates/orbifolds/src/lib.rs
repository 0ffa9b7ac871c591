//! Compact 2-orbifolds `F(p_1, …, p_r)` without reflector curves.
//!
//! An orbifold is described by its underlying surface (orientability,
//! genus, number of boundary components `q`) and the orders of its cone
//! points.  The crate produces the standard presentation of the orbifold
//! fundamental group, a free-product-of-cyclic-groups model of that group
//! when the boundary is non-empty, the small / sufficiently-large
//! predicates and standard generating tuples.

mod presentation;
mod spec;
mod standard;

pub use presentation::{presentation, FpcModel, OrbifoldPresentation, PresWord};
pub use spec::OrbifoldSpec;
pub use standard::{admissible_selections, standard_tuple, tuple_generates, StandardTuple};

use thiserror::Error;

/// Errors raised for invalid orbifold data or tuple requests.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OrbifoldError {
    #[error("cone point {index} has order {order}, orders must be at least 2")]
    ConeOrder { index: usize, order: u64 },
    #[error("a non-orientable surface needs genus at least 1")]
    NonOrientableGenus,
    #[error("selection sizes q' = {q_sel}, r' = {r_sel} violate q' + r' = q + r - 1 (q = {q}, r = {r})")]
    SelectionSize { q_sel: usize, r_sel: usize, q: usize, r: usize },
    #[error("{kind} indices must be strictly increasing within 1..={max}, got {indices:?}")]
    SelectionIndices { kind: &'static str, indices: Vec<usize>, max: usize },
    #[error("expected {expected} exponents, got {got}")]
    ExponentCount { expected: usize, got: usize },
    #[error("exponent {nu} for cone point {index} is not a positive integer coprime to its order {order}")]
    Exponent { index: usize, nu: i64, order: u64 },
}
