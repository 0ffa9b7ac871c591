//! Hand-built decorated morphisms: the two-cone-point disc example, the
//! degree-one covers and cyclic almost-orbifold-covers of discs.

use fpc_words::{FpcGroup, FpcHom, FpcWord};
use gg_morphism::GGMorphism;
use graph_core::{EdgeId, VertexId};
use graph_of_groups::{APath, GraphOfGroups};
use orbifolds::OrbifoldSpec;

use crate::ao::SmallOrbGraph;
use crate::morphism::DecoratedMorphism;
use crate::DecoratedError;

/// Incremental construction of a morphism into `𝔸^𝒪` whose source has
/// trivial edge groups.  Edge data is given on positive edges as
/// `(o_f, o_{f⁻¹})`; the `t` values follow from `t_f = o_{f⁻¹}⁻¹`.
pub(crate) struct Builder<'a> {
    pub sg: &'a SmallOrbGraph,
    pub gog: GraphOfGroups,
    pub vertex_map: Vec<VertexId>,
    pub vertex_homs: Vec<FpcHom>,
    pub edge_map: Vec<EdgeId>,
    pub o: Vec<FpcWord>,
}

impl<'a> Builder<'a> {
    pub fn new(sg: &'a SmallOrbGraph) -> Self {
        Builder { sg, gog: GraphOfGroups::new(), vertex_map: Vec::new(), vertex_homs: Vec::new(), edge_map: Vec::new(), o: Vec::new() }
    }

    /// Adds a vertex over `v_side` with group `group` mapped by `images`.
    pub fn vertex(
        &mut self,
        name: &str,
        side: usize,
        group: FpcGroup,
        names: Vec<String>,
        images: Vec<FpcWord>,
    ) -> Result<VertexId, DecoratedError> {
        let v = self.sg.vertex(side);
        let hom = FpcHom::new(group.clone(), self.sg.gog().vertex_group(v).clone(), images)?;
        let id = self.gog.add_vertex_named(name, group, names)?;
        self.vertex_map.push(v);
        self.vertex_homs.push(hom);
        Ok(id)
    }

    /// A vertex over `v_side` with trivial group.
    pub fn trivial_vertex(&mut self, name: &str, side: usize) -> Result<VertexId, DecoratedError> {
        self.vertex(name, side, FpcGroup::trivial(), Vec::new(), Vec::new())
    }

    /// A vertex over `v_side` carrying a copy of `A_{v_side}` mapped by the
    /// identity (trivial group when the cone order is 1).
    pub fn cone_vertex(&mut self, name: &str, side: usize, factor: &str) -> Result<VertexId, DecoratedError> {
        let p = self.sg.cone_order(side);
        if p == 1 {
            return self.trivial_vertex(name, side);
        }
        let group = FpcGroup::cyclic(p);
        let images = vec![group.generator(0)];
        self.vertex(name, side, group, vec![factor.to_string()], images)
    }

    /// Adds a positive edge from a vertex over `v1` to a vertex over `v2`
    /// mapping to `e_i`, with `o_f` and `o_{f⁻¹}` given as exponents.
    pub fn edge(&mut self, name: &str, from: VertexId, to: VertexId, i: i64, o_exp: i64, o_inv_exp: i64) -> Result<EdgeId, DecoratedError> {
        let f = self.gog.add_edge(name, &format!("{name}'"), from, to)?;
        let e = self.sg.edge(i);
        self.edge_map.extend([e, e ^ 1]);
        self.o.push(self.sg.s_pow(self.sg.vertex(1), o_exp));
        self.o.push(self.sg.s_pow(self.sg.vertex(2), o_inv_exp));
        Ok(f)
    }

    pub fn finish(self) -> Result<GGMorphism, DecoratedError> {
        let ne = self.o.len();
        let t = (0..ne)
            .map(|f| {
                let v = self.sg.gog().graph().omega(self.edge_map[f]);
                self.sg.gog().vertex_group(v).inv(&self.o[f ^ 1])
            })
            .collect();
        Ok(GGMorphism::new(self.gog, self.sg.gog().clone(), self.vertex_map, self.edge_map, self.vertex_homs, vec![0; ne], self.o, t)?)
    }
}

/// Trivial connecting path at the base vertex.
fn at_base(gog: &GraphOfGroups, base: VertexId, count: usize) -> Vec<APath> {
    vec![gog.trivial_path(base); count]
}

/// The disc `D²(2,2)` example: vertices `u1 ↦ v1`, `u2 ↦ v2` with trivial
/// groups, edges `f1, f2, f3 : u1 → u2` over `e_1` with
/// `o_{f1} = s1, o_{f2} = 1, o_{f3} = s1⁻¹`, `t_{f1} = s2, t_{f2} = 1,
/// t_{f3} = s2`, and the paths `p1 = 1, f1, 1, f2⁻¹, 1`,
/// `p2 = 1, f2, 1, f3⁻¹, 1` with trivial connecting paths.  The induced
/// peripheral types are `(1, 1)` and `(s⁻¹, 1)`.
pub fn d2_2_2_example() -> Result<(SmallOrbGraph, DecoratedMorphism), DecoratedError> {
    let sg = SmallOrbGraph::build(&OrbifoldSpec::new(true, 0, 1, vec![2, 2])?)?;
    let mut b = Builder::new(&sg);
    let u1 = b.trivial_vertex("u1", 1)?;
    let u2 = b.trivial_vertex("u2", 2)?;
    // o_{f⁻¹} = t_f⁻¹ in A_{v2} = Z_2.
    let f1 = b.edge("f1", u1, u2, 1, 1, -1)?;
    let f2 = b.edge("f2", u1, u2, 1, 0, 0)?;
    let f3 = b.edge("f3", u1, u2, 1, -1, -1)?;
    let m = b.finish()?;
    let id = FpcWord::identity;
    let p1 = APath { start: u1, elems: vec![id(), id(), id()], edges: vec![f1, f2 ^ 1] };
    let p2 = APath { start: u1, elems: vec![id(), id(), id()], edges: vec![f2, f3 ^ 1] };
    let gammas = at_base(&m.source, u1, 2);
    let dm = DecoratedMorphism::new(&sg, m, u1, vec![p1, p2], gammas)?;
    Ok((sg, dm))
}

/// The same example with a third path equal to `p1` but connected through
/// the loop `p1` itself, so that its peripheral subgroup is conjugate to
/// the first one by an element of `G_1`: a planted instance for the search
/// for folding peripheral subgroups.
pub fn d2_2_2_planted_fold() -> Result<(SmallOrbGraph, DecoratedMorphism), DecoratedError> {
    let (sg, dm) = d2_2_2_example()?;
    let mut paths = dm.paths.clone();
    let mut gammas = dm.gammas.clone();
    paths.push(dm.paths[0].clone());
    gammas.push(dm.paths[0].clone());
    let dm = dm.with_paths(&sg, paths, gammas)?;
    Ok((sg, dm))
}

/// The degree-one orbifold cover of a small orbifold: `u ↦ v1` with
/// `B_u = ⟨b⟩ ≅ Z`, `b ↦ s1`, `w ↦ v2` with `B_w = A_{v2}` (identity),
/// edges `f_i : u → w` over `e_i` with `o = t = 1`, and paths
/// `p_i = b^{ε_i}, f_i, s2^{ε_i}, f_{i+1}⁻¹, 1`.
pub fn degree_one_cover(spec: &OrbifoldSpec) -> Result<(SmallOrbGraph, DecoratedMorphism), DecoratedError> {
    let sg = SmallOrbGraph::build(spec)?;
    let q = sg.q();
    let mut b = Builder::new(&sg);
    let s1 = sg.s(sg.vertex(1));
    let u = b.vertex("u", 1, FpcGroup::free(1), vec!["b".into()], vec![s1])?;
    let w = b.cone_vertex("w", 2, "c")?;
    let edges = (1..=q as i64).map(|i| b.edge(&format!("f{i}"), u, w, i, 0, 0)).collect::<Result<Vec<_>, _>>()?;
    let m = b.finish()?;
    let bu = m.source.vertex_group(u).generator(0);
    let paths = (0..q)
        .map(|k| {
            let eps = sg.epsilon(k as i64 + 1);
            let s2 = if eps == 1 && m.source.vertex_group(w).rank() == 1 {
                m.source.vertex_group(w).generator(0)
            } else {
                FpcWord::identity()
            };
            let b0 = if eps == 1 { bu.clone() } else { FpcWord::identity() };
            APath { start: u, elems: vec![b0, s2, FpcWord::identity()], edges: vec![edges[k], edges[(k + 1) % q] ^ 1] }
        })
        .collect();
    let gammas = at_base(&m.source, u, q);
    let dm = DecoratedMorphism::new(&sg, m, u, paths, gammas)?;
    Ok((sg, dm))
}

/// A `k`-sheeted cyclic almost-orbifold-cover of `D²(p1, p2)` with
/// exceptional vertex `u ↦ v1`.
///
/// `B_u = ⟨b⟩ ∗ ⟨a⟩` with `b ↦ s1^k` and, when `d < p1`, a finite factor
/// `⟨a⟩ ≅ Z_{p1/d}` with `a ↦ s1^d` (`d` must divide `p1`; `d = p1` means
/// no finite factor).  Vertices `w_1, …, w_k ↦ v2` carry `A_{v2}`, edges
/// `g_m : u → w_m` lie over `e_1` with `o_{g_m} = s1^{m}` for `m < k` and
/// `o_{g_k} = 1`, and the single path is
/// `1, g_1, s2, g_1⁻¹, 1, …, 1, g_{k−1}, s2, g_{k−1}⁻¹, b, g_k, s2, g_k⁻¹, 1`
/// with image `[c_1]^k`.
pub fn cyclic_cover(p1: u64, p2: u64, k: usize, d: u64) -> Result<(SmallOrbGraph, DecoratedMorphism), DecoratedError> {
    if k == 0 || d == 0 || p1 % d != 0 {
        return Err(DecoratedError::Precondition(format!("need k ≥ 1 and d | p1 (k = {k}, d = {d}, p1 = {p1})")));
    }
    let sg = SmallOrbGraph::build(&OrbifoldSpec::new(true, 0, 1, vec![p1, p2])?)?;
    let v1 = sg.vertex(1);
    let mut b = Builder::new(&sg);
    let (group, names, images) = if d < p1 {
        (
            FpcGroup::new(vec![0, p1 / d])?,
            vec!["b".to_string(), "a".to_string()],
            vec![sg.s_pow(v1, k as i64), sg.s_pow(v1, d as i64)],
        )
    } else {
        (FpcGroup::free(1), vec!["b".to_string()], vec![sg.s_pow(v1, k as i64)])
    };
    let u = b.vertex("u", 1, group, names, images)?;
    let mut edges = Vec::with_capacity(k);
    for m in 1..=k {
        let w = b.cone_vertex(&format!("w{m}"), 2, "c")?;
        let o = if m < k { m as i64 } else { 0 };
        edges.push(b.edge(&format!("g{m}"), u, w, 1, o, 0)?);
    }
    let m = b.finish()?;
    let src = &m.source;
    let bu = src.vertex_group(u).generator(0);
    let mut elems = vec![FpcWord::identity()];
    let mut path_edges = Vec::with_capacity(2 * k);
    for (r, &g) in edges.iter().enumerate() {
        let w = src.graph().omega(g);
        elems.push(src.vertex_group(w).generator(0));
        elems.push(if r + 2 == k { bu.clone() } else { FpcWord::identity() });
        path_edges.extend([g, g ^ 1]);
    }
    if k == 1 {
        // The single junction is the wrap: put b at the start.
        elems[0] = bu;
    }
    let p = APath { start: u, elems, edges: path_edges };
    let gammas = at_base(src, u, 1);
    let dm = DecoratedMorphism::new(&sg, m, u, vec![p], gammas)?;
    Ok((sg, dm))
}
