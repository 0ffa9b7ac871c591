//! The move calculus on morphisms of graphs of groups `φ : 𝔹 → 𝔸`.
//!
//! Every move is pure: it returns the new morphism together with the
//! comparison morphism `σ` relating old and new source, so that the
//! relations `φ' ∘ σ = φ` (auxiliary move A2, elementary folds, vertex
//! morphisms), `φ ∘ σ = φ'` (unfolds) or `φ̄_* ∘ σ_* = φ_*` (composite
//! folds) can be checked by the caller.

mod auxiliary;
mod elementary;
mod fold;
pub mod lemma;
pub mod random;
mod unfold;
mod vertex;

use gg_morphism::{GGMorphism, MorphismError};
use graph_of_groups::GogError;
use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use auxiliary::{move_a0, move_a1, move_a2};
pub use elementary::{elementary_fold_ia, elementary_fold_iiia};
pub use fold::{fold, fold_first_violation, FoldKind, FoldOutcome};
pub use unfold::{unfold, UnfoldWitness};
pub use vertex::vertex_morphism;

/// Errors raised by moves; precondition failures name the failing check.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MoveError {
    #[error(transparent)]
    Morphism(#[from] MorphismError),
    #[error(transparent)]
    Gog(#[from] GogError),
    #[error(transparent)]
    Fpc(#[from] fpc_words::FpcError),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("identifying the edges would create a loop at `{0}`")]
    LoopCreated(String),
    #[error("unsupported configuration: {0}")]
    Unsupported(String),
    #[error("witness rejected: {0}")]
    Witness(String),
}

/// A move result: the new morphism and the comparison morphism `σ`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MoveResult {
    pub morphism: GGMorphism,
    pub sigma: GGMorphism,
}

/// Deterministic generator of fresh names (for new free generators and
/// merged vertices); the counter is owned by the caller.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct FreshNames {
    counter: usize,
}

impl FreshNames {
    /// A counter starting at zero.
    pub fn new() -> Self {
        FreshNames::default()
    }

    /// The next name `{prefix}{n}`.
    pub fn fresh(&mut self, prefix: &str) -> String {
        self.counter += 1;
        format!("{prefix}{}", self.counter)
    }
}

/// Re-checks a constructed morphism and converts violations into errors.
fn validated(m: GGMorphism) -> Result<GGMorphism, MoveError> {
    let v = m.check();
    if v.is_empty() {
        Ok(m)
    } else {
        Err(MorphismError::Invalid(v).into())
    }
}
