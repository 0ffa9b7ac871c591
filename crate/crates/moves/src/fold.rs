//! Composite folds removing an (F1) violation.

use fpc_words::FpcWord;
use gg_morphism::GGMorphism;
use graph_core::{EdgeId, VertexId};
use serde::{Deserialize, Serialize};

use crate::auxiliary::{move_a0, move_a1, move_a2};
use crate::elementary::{elementary_fold_ia, elementary_fold_iiia};
use crate::{FreshNames, MoveError};

/// Type of the final elementary fold.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum FoldKind {
    IA,
    IIIA,
}

/// Result of a composite fold.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FoldOutcome {
    /// The folded morphism `φ̄ : 𝔹̄ → 𝔸`.
    pub morphism: GGMorphism,
    /// `σ : 𝔹 → 𝔹̄` with `φ̄_* ∘ σ_* = φ_*` at the base vertex.
    pub sigma: GGMorphism,
    pub kind: FoldKind,
    /// Whether `f1` and `f2` were exchanged to keep the A0 step away from
    /// the base vertex.
    pub swapped: bool,
    /// Intermediate morphisms, labelled by the move producing them.
    pub steps: Vec<(String, GGMorphism)>,
}

/// Fold along `f1, f2` given the witness `o_{f2} = φ_u(b)·o_{f1}·α_e(γᶜ)`:
/// A2 on `f2` with `b⁻¹`, A1 on `f2` with `γᶜ`, then IIIA if the terminal
/// vertices agree, otherwise A0 at `y = ω(f2)` with
/// `g = t_{f1}⁻¹·t_{f2}` followed by IA.  If `y` is the base vertex the
/// roles of the edges are exchanged first.  Edge groups of `f1`, `f2` must
/// be trivial.
pub fn fold(
    m: &GGMorphism,
    f1: EdgeId,
    f2: EdgeId,
    b: &FpcWord,
    c: i64,
    base: VertexId,
    names: &mut FreshNames,
) -> Result<FoldOutcome, MoveError> {
    let g = m.source.graph();
    if g.alpha(f1) != g.alpha(f2) || m.edge_map[f1] != m.edge_map[f2] || f1 == f2 {
        return Err(MoveError::Precondition("fold needs distinct edges with common start and image".into()));
    }
    let u = g.alpha(f1);
    let e = m.edge_map[f1];
    let a = m.target.vertex_group(m.vertex_map[u]);
    let expected = a.product([&m.vertex_homs[u].apply(b), &m.o[f1], &m.target.boundary_pow(e, c)]);
    if expected != m.o[f2] {
        return Err(MoveError::Witness("o_{f2} differs from φ(b)·o_{f1}·α_e(c)".into()));
    }
    let (mut f1, mut f2, mut b, mut c) = (f1, f2, b.clone(), c);
    let mut swapped = false;
    if g.omega(f1) != g.omega(f2) && g.omega(f2) == base {
        std::mem::swap(&mut f1, &mut f2);
        b = m.source.vertex_group(u).inv(&b);
        c = -c;
        swapped = true;
    }
    let bu = m.source.vertex_group(u);
    let mut steps = Vec::new();
    let a2 = move_a2(m, f2, &bu.inv(&b))?;
    steps.push(("A2".to_string(), a2.morphism.clone()));
    let mut cur = move_a1(&a2.morphism, f2, c)?;
    steps.push(("A1".to_string(), cur.clone()));
    let (result, kind) = if g.omega(f1) == g.omega(f2) {
        (elementary_fold_iiia(&cur, f1, f2, names)?, FoldKind::IIIA)
    } else {
        let y = g.omega(f2);
        let w = m.target.vertex_group(m.vertex_map[y]);
        let conj = w.mul(&w.inv(&cur.t[f1]), &cur.t[f2]);
        cur = move_a0(&cur, y, &conj)?;
        steps.push(("A0".to_string(), cur.clone()));
        (elementary_fold_ia(&cur, f1, f2)?, FoldKind::IA)
    };
    steps.push((format!("{kind:?}"), result.morphism.clone()));
    let sigma = result.sigma.compose(&a2.sigma)?;
    Ok(FoldOutcome { morphism: result.morphism, sigma, kind, swapped, steps })
}

/// Folds along the first (F1) violation found by the folded test, if any.
pub fn fold_first_violation(
    m: &GGMorphism,
    base: VertexId,
    names: &mut FreshNames,
) -> Result<Option<FoldOutcome>, MoveError> {
    let report = m.is_folded();
    match report.f1.first() {
        Some(w) => fold(m, w.f1, w.f2, &w.b, w.c_exp, base, names).map(Some),
        None => Ok(None),
    }
}
