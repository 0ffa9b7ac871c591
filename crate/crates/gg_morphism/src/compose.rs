//! Composition, inclusions of sub-graphs of groups and restriction.

use fpc_words::{FpcHom, FpcWord};
use graph_core::EdgeId;
use graph_of_groups::GraphOfGroups;

use crate::morphism::{GGMorphism, MorphismError};

impl GGMorphism {
    /// The composite `self ∘ inner` (first `inner`, then `self`):
    /// `ψ_u = φ_{ϕ(u)} ∘ ϕ_u`, `o^ψ_g = φ(o^ϕ_g)·o^φ_{ϕ(g)}` and
    /// `t^ψ_g = t^φ_{ϕ(g)}·φ(t^ϕ_g)`.
    pub fn compose(&self, inner: &GGMorphism) -> Result<GGMorphism, MorphismError> {
        if inner.target != self.source {
            return Err(MorphismError::Mismatch("target of the inner morphism is not the source of the outer one".into()));
        }
        let cg = inner.source.graph();
        let bg = self.source.graph();
        let vertex_homs = cg
            .vertices()
            .map(|u| self.vertex_homs[inner.vertex_map[u]].compose(&inner.vertex_homs[u]))
            .collect::<Result<Vec<_>, _>>()?;
        let mut o = Vec::with_capacity(cg.edge_count());
        let mut t = Vec::with_capacity(cg.edge_count());
        for g in cg.edges() {
            let f = inner.edge_map[g];
            let (x, y) = (bg.alpha(f), bg.omega(f));
            let ax = self.target.vertex_group(self.vertex_map[x]);
            let ay = self.target.vertex_group(self.vertex_map[y]);
            o.push(ax.mul(&self.vertex_homs[x].apply(&inner.o[g]), &self.o[f]));
            t.push(ay.mul(&self.t[f], &self.vertex_homs[y].apply(&inner.t[g])));
        }
        Ok(GGMorphism {
            source: inner.source.clone(),
            target: self.target.clone(),
            vertex_map: inner.vertex_map.iter().map(|&v| self.vertex_map[v]).collect(),
            edge_map: inner.edge_map.iter().map(|&f| self.edge_map[f]).collect(),
            vertex_homs,
            edge_exps: cg.edges().map(|g| self.edge_exps[inner.edge_map[g]] * inner.edge_exps[g]).collect(),
            o,
            t,
        })
    }

    /// The inclusion of a carried sub-graph of groups (same vertices, edge
    /// map `edge_map` from the sub-graph's edges into `gog`'s edges).
    pub fn inclusion(sub: &GraphOfGroups, gog: &GraphOfGroups, edge_map: Vec<EdgeId>) -> Result<GGMorphism, MorphismError> {
        let sg = sub.graph();
        GGMorphism::new(
            sub.clone(),
            gog.clone(),
            sg.vertices().collect(),
            edge_map,
            sg.vertices().map(|v| FpcHom::identity(sub.vertex_group(v))).collect(),
            sg.edges().map(|e| if sub.edge_is_trivial(e) { 0 } else { 1 }).collect(),
            vec![FpcWord::identity(); sg.edge_count()],
            vec![FpcWord::identity(); sg.edge_count()],
        )
    }

    /// Restriction of `self` to the sub-graph of groups obtained by
    /// deleting the edge pairs of the edges in `removed` (either orientation
    /// may be listed); returns the restriction and the inclusion it factors
    /// through.
    pub fn restrict(&self, removed: &[EdgeId]) -> Result<(GGMorphism, GGMorphism), MorphismError> {
        let mut pairs: Vec<EdgeId> = removed.iter().flat_map(|&e| [e, e ^ 1]).collect();
        pairs.sort_unstable();
        pairs.dedup();
        let (sub, map) = self.source.subgraph_of_groups(&pairs)?;
        let mut back = vec![0; sub.graph().edge_count()];
        for (old, new) in map.iter().enumerate() {
            if let Some(n) = new {
                back[*n] = old;
            }
        }
        let incl = GGMorphism::inclusion(&sub, &self.source, back)?;
        Ok((self.compose(&incl)?, incl))
    }
}
