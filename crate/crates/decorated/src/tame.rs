//! Square folds, collapsibility and tameness of decorated morphisms.

use fpc_words::FpcWord;
use graph_core::EdgeId;
use graph_of_groups::{APath, TreeBasis};
use serde::{Deserialize, Serialize};

use crate::group::Splitting;
use crate::morphism::DecoratedMorphism;
use crate::DecoratedError;

/// A square fold (paths are 0-based; `f` is the oriented edge crossed).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum SquareFold {
    /// (S.1) distinct paths `p_j, p_k` with `i(j) = i(k)` both cross `f`
    /// in the same direction.
    PeripheralFold { f: EdgeId, j: usize, k: usize },
    /// (S.2) `p_j` crosses `f` twice in the same direction.
    SelfFold { f: EdgeId, j: usize },
}

/// Detects square folds, scanning oriented edges in id order (self folds
/// before peripheral folds for each edge).  Paths are closed, so every
/// cyclic representative crosses the same edges.
pub fn folds_squares(dm: &DecoratedMorphism) -> Option<SquareFold> {
    let ne = dm.source().graph().edge_count();
    let mut crossings: Vec<Vec<usize>> = vec![Vec::new(); ne];
    for (j, p) in dm.paths.iter().enumerate() {
        for &f in &p.edges {
            crossings[f].push(j);
        }
    }
    for (f, js) in crossings.iter().enumerate() {
        for w in js.windows(2) {
            if w[0] == w[1] {
                return Some(SquareFold::SelfFold { f, j: w[0] });
            }
        }
        for (a, &j) in js.iter().enumerate() {
            for &k in &js[a + 1..] {
                if j != k && dm.decompositions[j].i == dm.decompositions[k].i {
                    return Some(SquareFold::PeripheralFold { f, j, k });
                }
            }
        }
    }
    None
}

/// A collapsing order: `p_{ν(k)}` crosses `f_k` exactly once and none of
/// `f_1, …, f_{k−1}` (so `f_k` is crossed by no `p_{ν(m)}` with `m > k`).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CollapsingOrder {
    /// Positive representatives `f_1, …, f_n`.
    pub edges: Vec<EdgeId>,
    /// `ν(k)` (0-based path indices).
    pub nu: Vec<usize>,
}

/// Number of times `p` crosses the edge pair of `f` (either direction).
fn crossings(p: &APath, f: EdgeId) -> usize {
    p.edges.iter().filter(|&&e| e & !1 == f & !1).count()
}

/// Searches for a collapsing order.  At each step some remaining path
/// must cross some edge exactly once while no other remaining path
/// crosses it; since removing paths only weakens this condition, taking
/// the first admissible choice never blocks a later step, so the search
/// is complete.  Returns `None` iff no order exists.
pub fn collapsing_order(dm: &DecoratedMorphism) -> Option<CollapsingOrder> {
    let g = dm.source().graph();
    let mut remaining: Vec<usize> = (0..dm.n()).collect();
    let mut order = CollapsingOrder { edges: Vec::new(), nu: Vec::new() };
    while !remaining.is_empty() {
        let choice = remaining.iter().enumerate().find_map(|(pos, &k)| {
            g.positive_edges()
                .find(|&f| {
                    crossings(&dm.paths[k], f) == 1
                        && remaining.iter().all(|&m| m == k || crossings(&dm.paths[m], f) == 0)
                })
                .map(|f| (pos, k, f))
        });
        let (pos, k, f) = choice?;
        remaining.remove(pos);
        order.nu.push(k);
        order.edges.push(f);
    }
    Some(order)
}

impl CollapsingOrder {
    /// Re-checks the defining property.
    pub fn verify(&self, dm: &DecoratedMorphism) -> bool {
        let n = dm.n();
        if self.nu.len() != n || self.edges.len() != n {
            return false;
        }
        let mut seen = vec![false; n];
        for &k in &self.nu {
            if k >= n || seen[k] {
                return false;
            }
            seen[k] = true;
        }
        (0..n).all(|k| {
            let p = &dm.paths[self.nu[k]];
            crossings(p, self.edges[k]) == 1 && self.edges[..k].iter().all(|&f| crossings(p, f) == 0)
        })
    }
}

/// Generators of `G_0 = π1(𝔹_{f_1,…,f_n}, u_1)` as words of the basis of
/// `π1(𝔹, u_1)` used by [`induced_decorated_group`](crate::induced_decorated_group),
/// together with the rank of `G_0`.
pub fn collapsing_splitting(dm: &DecoratedMorphism, order: &CollapsingOrder) -> Result<(Splitting, usize), DecoratedError> {
    let src = dm.source();
    let removed: Vec<EdgeId> = order.edges.iter().flat_map(|&f| [f, f ^ 1]).collect();
    let (sub, emap) = src.subgraph_of_groups(&removed)?;
    let mut back = vec![0; sub.graph().edge_count()];
    for (e, image) in emap.iter().enumerate() {
        if let Some(x) = image {
            back[*x] = e;
        }
    }
    let base = sub.graph().vertex_by_name(src.graph().vertex_name(dm.base)).map_err(graph_of_groups::GogError::from)?;
    let sub_basis = TreeBasis::new(&sub, base)?;
    let basis = TreeBasis::new(src, dm.base)?;
    let mut complement = Vec::new();
    for k in 0..sub_basis.rank() {
        let p = sub_basis.generator_path(&sub, k);
        let lifted = APath {
            start: src.graph().vertex_by_name(sub.graph().vertex_name(p.start)).map_err(graph_of_groups::GogError::from)?,
            elems: p.elems.clone(),
            edges: p.edges.iter().map(|&e| back[e]).collect(),
        };
        complement.push(basis.word_of(src, &lifted));
    }
    let rank = complement.len();
    Ok((Splitting { complement: complement.into_iter().filter(|w: &FpcWord| !w.is_identity()).collect() }, rank))
}

/// The three tameness checks, each with a witness on failure.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TameReport {
    /// `Some(true)` if every vertex homomorphism is injective; `None` if
    /// undecided (counted as failure).
    pub vertex_injective: Option<bool>,
    pub collapsing_order: Option<CollapsingOrder>,
    pub square_fold: Option<SquareFold>,
}

impl TameReport {
    pub fn is_tame(&self) -> bool {
        self.vertex_injective == Some(true) && self.collapsing_order.is_some() && self.square_fold.is_none()
    }

    /// Reasons for failure, one per failing check.
    pub fn reasons(&self) -> Vec<String> {
        let mut out = Vec::new();
        match self.vertex_injective {
            Some(true) => {}
            Some(false) => out.push("not vertex injective".to_string()),
            None => out.push("vertex injectivity undecided".to_string()),
        }
        if self.collapsing_order.is_none() {
            out.push("not collapsible".to_string());
        }
        if let Some(s) = self.square_fold {
            out.push(format!("folds squares: {s:?}"));
        }
        out
    }
}

/// Tameness: vertex injective, collapsible and not folding squares.
pub fn is_tame(dm: &DecoratedMorphism) -> TameReport {
    TameReport {
        vertex_injective: dm.morphism.is_vertex_injective(),
        collapsing_order: collapsing_order(dm),
        square_fold: folds_squares(dm),
    }
}
