//! Decorated groups and decorated morphisms over small orientable
//! 2-orbifolds.
//!
//! A small orientable orbifold `𝒪` (a disc with two cone points, an
//! annulus with one, or a pair of pants, …) is modelled by the graph of
//! groups `𝔸^𝒪` with two vertices `v1, v2` carrying the cone groups and
//! one edge pair per boundary component.  A decorated morphism is a
//! morphism `φ : 𝔹 → 𝔸^𝒪` together with closed paths `p_j` whose images
//! are conjugated powers of boundary loops, and connecting paths `γ_j`.
//!
//! The crate provides the induced decorated groups and their predicates
//! (projection witnesses, folding of peripheral subgroups, obvious
//! relations), local graphs and the path formulas they satisfy,
//! collapsibility, square folds, tameness, S-trivialization of interval
//! components, extraction of almost-orbifold-covers and the unfold that
//! adjoins a finite subgroup.  Every predicate verifies a witness first and
//! searches (boundedly) second; bounded searches report that they were
//! inconclusive rather than claiming completeness.

mod ao;
mod commute;
pub mod constructions;
mod cover;
mod cyclic;
mod group;
mod local;
mod morphism;
pub mod random;
mod tame;

use fpc_words::FpcError;
use gg_morphism::MorphismError;
use graph_of_groups::GogError;
use moves::MoveError;
use orbifolds::OrbifoldError;
use thiserror::Error;

pub use ao::SmallOrbGraph;
pub use commute::{fold_a2_square, FoldA2Square};
pub use cover::{adjoin_unfold, extract_almost_cover, fold_to_square, AdjoinOutcome, AlmostCoverDescriptor, SquareFoldOutcome};
pub use group::{
    compose_witness, finish_witness, surjectivity_certificate, PREIMAGE_STATES,
    folds_peripheral_subgroups, has_obvious_relation, induced_decorated_group, reverse_witness, transport_witness,
    verify_projection, DecoratedGroup, Peripheral, PeripheralFoldSearch, ProjectionCheck, ProjectionWitness, Splitting,
};
pub use local::{check_local_path_formulas, local_graph, make_s_trivial, ComponentKind, LocalComponent, LocalEdge, LocalGraph, LocalPathReport, STrivialOutcome};
pub use morphism::{decompose_boundary_image, BoundaryDecomposition, DecoratedMorphism, DecoratedMorphismSpec};
pub use tame::{collapsing_order, collapsing_splitting, folds_squares, is_tame, CollapsingOrder, SquareFold, TameReport};

/// Errors raised by decorated-morphism operations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DecoratedError {
    #[error(transparent)]
    Gog(#[from] GogError),
    #[error(transparent)]
    Morphism(#[from] MorphismError),
    #[error(transparent)]
    Move(#[from] MoveError),
    #[error(transparent)]
    Fpc(#[from] FpcError),
    #[error(transparent)]
    Orbifold(#[from] OrbifoldError),
    #[error("orbifold `{0}` is not a small orientable orbifold")]
    NotSmall(String),
    #[error("invalid decorated morphism: {0}")]
    Invalid(String),
    #[error("path {0} has no decomposition a·c_i^z·a⁻¹ over any cyclic shift")]
    NoDecomposition(usize),
    #[error("decorated morphism folds squares: {0}")]
    FoldsSquares(String),
    #[error("incomplete witness: {0}")]
    IncompleteWitness(String),
    #[error("witness rejected: {0}")]
    WitnessRejected(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("almost-cover condition ({condition}) fails: {reason}")]
    AlmostCover { condition: String, reason: String },
}
