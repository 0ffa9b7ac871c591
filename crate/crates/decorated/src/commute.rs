//! The commuting square of a fold and an auxiliary move A2: folding and
//! then applying A2 at the image edge, or applying A2 and then folding,
//! yields decorated morphisms whose decorated groups are isomorphic as
//! decorated groups.

use fpc_words::FpcWord;
use gg_morphism::GGMorphism;
use graph_core::EdgeId;
use moves::{fold, FreshNames};
use serde::{Deserialize, Serialize};

use crate::ao::SmallOrbGraph;
use crate::group::{
    compose_witness, induced_decorated_group, reverse_witness, transport_witness, verify_projection, ProjectionCheck,
    ProjectionWitness, PREIMAGE_STATES,
};
use crate::morphism::DecoratedMorphism;
use crate::DecoratedError;

/// Both corners of the square with witnesses in both directions.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FoldA2Square {
    /// Fold, then A2 at the image of `f`.
    pub fold_first: DecoratedMorphism,
    /// A2 at `f`, then fold.
    pub a2_first: DecoratedMorphism,
    /// Witness from the fold-first to the A2-first decorated group.
    pub forward: ProjectionWitness,
    pub backward: ProjectionWitness,
    pub forward_check: ProjectionCheck,
    pub backward_check: ProjectionCheck,
}

impl FoldA2Square {
    pub fn passed(&self) -> bool {
        self.forward_check.passed && self.backward_check.passed
    }
}

/// Folds `f1, f2` (using the witness reported by the folded check) and
/// returns the folded decorated morphism with `σ`.
fn fold_pair(sg: &SmallOrbGraph, dm: &DecoratedMorphism, f1: EdgeId, f2: EdgeId) -> Result<(DecoratedMorphism, GGMorphism), DecoratedError> {
    let report = dm.morphism.is_folded();
    let w = report
        .f1
        .iter()
        .find(|w| (w.f1, w.f2) == (f1.min(f2), f1.max(f2)))
        .ok_or_else(|| DecoratedError::Precondition("the edges do not violate (F1)".into()))?;
    let out = fold(&dm.morphism, w.f1, w.f2, &w.b, w.c_exp, dm.base, &mut FreshNames::new())?;
    let folded = dm.transport(sg, &out.sigma, out.morphism)?;
    Ok((folded, out.sigma))
}

/// Witness for `dm → after` along `σ` with trivial connectors (the paths
/// of `after` are the images `σ(p_j)`).
fn along(sg: &SmallOrbGraph, dm: &DecoratedMorphism, after: &DecoratedMorphism, sigma: &GGMorphism) -> Result<ProjectionWitness, DecoratedError> {
    let connectors: Vec<_> = after.paths.iter().map(|p| after.source().trivial_path(p.start)).collect();
    transport_witness(sg, dm, after, sigma, &connectors, PREIMAGE_STATES)
}

/// Runs both orders of the square for the (F1) pair `f1, f2`, the edge `f`
/// and `b ∈ B_{α(f)}`, and verifies witnesses between the two results in
/// both directions.
pub fn fold_a2_square(
    sg: &SmallOrbGraph,
    dm: &DecoratedMorphism,
    f1: EdgeId,
    f2: EdgeId,
    f: EdgeId,
    b: &FpcWord,
) -> Result<FoldA2Square, DecoratedError> {
    let u = dm.source().graph().alpha(f);
    // Fold first.
    let (folded, s_fold) = fold_pair(sg, dm, f1, f2)?;
    let b_bar = s_fold.vertex_homs[u].apply(b);
    let (fold_first, s_a2) = folded.apply_a2(sg, s_fold.edge_map[f], &b_bar)?;
    let sigma_a = s_a2.compose(&s_fold)?;
    // A2 first.
    let (moved, s_move) = dm.apply_a2(sg, f, b)?;
    let (a2_first, s_fold2) = fold_pair(sg, &moved, f1, f2)?;
    let sigma_b = s_fold2.compose(&s_move)?;

    let dg = induced_decorated_group(sg, dm)?;
    let da = induced_decorated_group(sg, &fold_first)?;
    let db = induced_decorated_group(sg, &a2_first)?;
    let wa = along(sg, dm, &fold_first, &sigma_a)?;
    let wb = along(sg, dm, &a2_first, &sigma_b)?;
    let wa_inv = reverse_witness(sg, &dg, &da, &wa, PREIMAGE_STATES)?;
    let wb_inv = reverse_witness(sg, &dg, &db, &wb, PREIMAGE_STATES)?;
    let forward = compose_witness(&da, &dg, &db, &wa_inv, &wb)?;
    let backward = compose_witness(&db, &dg, &da, &wb_inv, &wa)?;
    let forward_check = verify_projection(sg, &da, &db, &forward)?;
    let backward_check = verify_projection(sg, &db, &da, &backward)?;
    Ok(FoldA2Square { fold_first, a2_first, forward, backward, forward_check, backward_check })
}
