//! Almost-orbifold-covers: extraction of the descriptor and the unfold
//! that adjoins a finite subgroup at the exceptional vertex.

use fpc_words::{FpcGroup, FpcHom, FpcWord, Injectivity};
use gg_morphism::GGMorphism;
use graph_core::{EdgeId, VertexId};
use graph_of_groups::{APath, TreeBasis};
use moves::{elementary_fold_iiia, fold, FreshNames};
use serde::{Deserialize, Serialize};

use crate::ao::SmallOrbGraph;
use crate::group::{reverse_witness, transport_witness, ProjectionWitness, PREIMAGE_STATES};
use crate::group::induced_decorated_group;
use crate::local::{local_graph, ComponentKind, LocalGraph};
use crate::morphism::DecoratedMorphism;
use crate::tame::{folds_squares, SquareFold};
use crate::DecoratedError;

/// Descriptor of an almost-orbifold-cover with exceptional vertex `u`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlmostCoverDescriptor {
    pub u: String,
    /// Which vertex of `𝔸^𝒪` (1 or 2) `u` lies over.
    pub over: usize,
    /// `f_{u,1}`: the circle at `u` is `f_{u,1} ↦ ⋯ ↦ f_{u,l_u} ↦ f_{u,1}`
    /// with the label `b_u` on the last edge.
    pub first_edge: String,
    /// Circle length `l_w` per vertex.
    pub circle_lengths: Vec<(String, usize)>,
    /// Local degree `k_w = l_w / q` per vertex.
    pub local_degrees: Vec<(String, u64)>,
    pub l_u: usize,
    pub k_u: u64,
    /// `B_u = ⟨b_u⟩ ∗ ⟨s_v^d⟩`.
    pub d: u64,
    /// Order of `A_{φ(u)}`.
    pub exceptional_order: u64,
    pub degree: u64,
    /// `(i(j), z_j)` per decorating path.
    pub boundary: Vec<(usize, u64)>,
    /// `|B_w|` for vertices `w ≠ u` with finite nontrivial group.
    pub cone_orders: Vec<(String, u64)>,
    /// `k_u ≤ |A_{φ(u)}|`.
    pub special: bool,
    /// Order `|A_v| / d` of the finite subgroup adjoined at `u`.
    pub adjoined_order: u64,
}

fn cover_err(condition: &str, reason: String) -> DecoratedError {
    DecoratedError::AlmostCover { condition: condition.to_string(), reason }
}

/// Factor data of `B_u = ⟨b_u⟩ ∗ ⟨s^d⟩`: (index of `b_u`, optional index
/// of the finite factor, `d`).
fn exceptional_factors(
    sg: &SmallOrbGraph,
    dm: &DecoratedMorphism,
    u: VertexId,
) -> Result<(usize, Option<usize>, u64), DecoratedError> {
    let m = &dm.morphism;
    let bu = dm.source().vertex_group(u);
    let cyc = sg.cyclic(m.vertex_map[u]);
    let infinite: Vec<usize> = (0..bu.rank()).filter(|&r| bu.order(r) == 0).collect();
    let finite: Vec<usize> = (0..bu.rank()).filter(|&r| bu.order(r) != 0).collect();
    if infinite.len() != 1 || finite.len() > 1 {
        return Err(cover_err("c", "B_u is not ⟨b_u⟩ ∗ (finite cyclic)".into()));
    }
    let d = match finite.first() {
        None => cyc.p,
        Some(&r) => {
            let e = cyc.exp(&m.vertex_homs[u].apply(&bu.generator(r)));
            let d = cyc.subgroup([e]);
            if bu.order(r) * d != cyc.p {
                return Err(cover_err("c", "finite factor of B_u does not map isomorphically onto ⟨s^d⟩".into()));
            }
            d
        }
    };
    Ok((infinite[0], finite.first().copied(), d))
}

/// Checks conditions (a)–(c) and returns the descriptor:
/// (a) every local graph is a single circle; (b) `φ` is folded at every
/// `w ≠ u`; (c) `B_u = ⟨b_u⟩ ∗ ⟨s_v^d⟩` with `b_u ↦ s_v^{k_u}`,
/// `k_u = l_u/q`, where the circle at `u` carries the label `b_u` on one
/// edge and `1` elsewhere.
pub fn extract_almost_cover(sg: &SmallOrbGraph, dm: &DecoratedMorphism, u: VertexId) -> Result<AlmostCoverDescriptor, DecoratedError> {
    let src = dm.source();
    let g = src.graph();
    let m = &dm.morphism;
    let q = sg.q() as u64;
    if let Some(s) = folds_squares(dm) {
        return Err(cover_err("a", format!("folds squares: {s:?}")));
    }
    let mut graphs: Vec<LocalGraph> = Vec::new();
    for w in g.vertices() {
        let lg = local_graph(dm, w)?;
        if lg.components.len() != 1 || lg.components[0].kind != ComponentKind::Circle {
            return Err(cover_err("a", format!("local graph at `{}` is not a circle", g.vertex_name(w))));
        }
        graphs.push(lg);
    }
    for w in g.vertices().filter(|&w| w != u) {
        let hom = &m.vertex_homs[w];
        if hom.injectivity() != Injectivity::Injective {
            return Err(cover_err("b", format!("φ is not injective on B_{}", g.vertex_name(w))));
        }
        let cyc = sg.cyclic(m.vertex_map[w]);
        let bw = src.vertex_group(w);
        let d = cyc.subgroup((0..bw.rank()).map(|r| cyc.exp(&hom.apply(&bw.generator(r)))));
        let star = g.star(w);
        for (a, &f1) in star.iter().enumerate() {
            for &f2 in &star[a + 1..] {
                let diff = cyc.exp(&m.o[f2]) - cyc.exp(&m.o[f1]);
                if m.edge_map[f1] == m.edge_map[f2] && cyc.contains(d, diff) {
                    return Err(cover_err(
                        "b",
                        format!("edges `{}`, `{}` fold at `{}`", g.edge_name(f1), g.edge_name(f2), g.vertex_name(w)),
                    ));
                }
            }
        }
    }
    let (rb, _, d) = exceptional_factors(sg, dm, u)?;
    let bu = src.vertex_group(u);
    let circle = &graphs[u].components[0];
    let l_u = circle.nodes.len();
    let b_gen = bu.generator(rb);
    let special_edges: Vec<usize> = circle.edges.iter().copied().filter(|&e| !graphs[u].edges[e].elem.is_identity()).collect();
    if special_edges.len() != 1 || graphs[u].edges[special_edges[0]].elem != b_gen {
        return Err(cover_err("c", "the circle at u must carry b_u on exactly one edge and 1 elsewhere".into()));
    }
    let v = m.vertex_map[u];
    let cyc = sg.cyclic(v);
    if l_u as u64 % q != 0 {
        return Err(cover_err("c", format!("q does not divide l_u = {l_u}")));
    }
    let k_u = l_u as u64 / q;
    if cyc.exp(&m.vertex_homs[u].apply(&b_gen)) != cyc.reduce(k_u as i64) {
        return Err(cover_err("c", "b_u does not map to s^{k_u}".into()));
    }
    let first_edge = graphs[u].edges[special_edges[0]].to;
    let mut circle_lengths = Vec::new();
    let mut local_degrees = Vec::new();
    let mut sums = [0u64; 2];
    for w in g.vertices() {
        let l = graphs[w].components[0].nodes.len();
        if l as u64 % q != 0 {
            return Err(cover_err("invariants", format!("q does not divide l at `{}`", g.vertex_name(w))));
        }
        let k = l as u64 / q;
        sums[sg.side(m.vertex_map[w]) - 1] += k;
        circle_lengths.push((g.vertex_name(w).to_string(), l));
        local_degrees.push((g.vertex_name(w).to_string(), k));
    }
    if sums[0] != sums[1] {
        return Err(cover_err("invariants", format!("local degrees over v1, v2 sum to {} and {}", sums[0], sums[1])));
    }
    for i in 1..=sg.q() as i64 {
        let e = sg.edge(i);
        let fiber = g.edges().filter(|&f| m.edge_map[f] == e).count() as u64;
        if fiber != sums[0] {
            return Err(cover_err("invariants", format!("fiber over e{i} has {fiber} edges, degree is {}", sums[0])));
        }
    }
    let cone_orders = g
        .vertices()
        .filter(|&w| w != u)
        .filter_map(|w| src.vertex_group(w).cardinality().filter(|&c| c > 1).map(|c| (g.vertex_name(w).to_string(), c)))
        .collect();
    Ok(AlmostCoverDescriptor {
        u: g.vertex_name(u).to_string(),
        over: sg.side(v),
        first_edge: g.edge_name(first_edge).to_string(),
        circle_lengths,
        local_degrees,
        l_u,
        k_u,
        d,
        exceptional_order: cyc.p,
        degree: sums[0],
        boundary: dm.decompositions.iter().map(|x| (x.i, x.z)).collect(),
        cone_orders,
        special: k_u <= cyc.p,
        adjoined_order: cyc.p / d,
    })
}

/// Result of [`adjoin_unfold`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AdjoinOutcome {
    /// The decorated morphism on `𝔹'` with the new edge.
    pub dm: DecoratedMorphism,
    /// The new edge `f_{u,l_u+1}`.
    pub new_edge: EdgeId,
    /// `f_{u,1}`.
    pub first_edge: EdgeId,
    /// `σ : 𝔹' → 𝔹` identifying the new edge with `f_{u,1}` (`o^σ = b_u`).
    pub sigma: GGMorphism,
    /// Projection witness from the new to the old decorated group.
    pub witness: ProjectionWitness,
    /// Projection witness from the old to the new decorated group.
    pub reverse: ProjectionWitness,
    /// Whether the elementary fold IIIA of `f_{u,1}⁻¹, f_{u,l_u+1}⁻¹`
    /// recovers a source with the rank and torsion of `𝔹`.
    pub iiia_round_trip: bool,
}

/// The unfold adjoining `⟨s_v^d⟩` at the exceptional vertex: requires the
/// almost-cover conditions and `1 ≤ d < k_u`.  Paths starting at `u` are
/// first shifted and all `γ_j` replaced by spanning-tree paths; then
/// `B_u` is replaced by `⟨s_v^d⟩`, an edge `f_{u,l_u+1}` parallel to
/// `f_{u,1}` is added with `o = s_v^{k_u}·o_{f_{u,1}}`, `t = t_{f_{u,1}}`,
/// and the path through `f_{u,l_u}⁻¹, b_u, f_{u,1}` is rerouted through
/// `f_{u,l_u}⁻¹, 1, f_{u,l_u+1}`.
pub fn adjoin_unfold(sg: &SmallOrbGraph, dm: &DecoratedMorphism, u: VertexId) -> Result<AdjoinOutcome, DecoratedError> {
    let desc = extract_almost_cover(sg, dm, u)?;
    if desc.d < 1 || desc.d >= desc.k_u {
        return Err(DecoratedError::Precondition(format!("need 1 ≤ d < k_u, got d = {}, k_u = {}", desc.d, desc.k_u)));
    }
    let src = dm.source();
    let g = src.graph();
    let m = &dm.morphism;
    let (rb, rf, _) = exceptional_factors(sg, dm, u)?;
    let f1 = g.edge_by_name(&desc.first_edge).map_err(graph_of_groups::GogError::from)?;

    // Shift paths away from u and use tree paths as connecting paths.
    let shifts: Vec<usize> = dm.paths.iter().map(|p| usize::from(p.start == u)).collect();
    let (shifted, prefixes) = dm.redecorate_shifts(sg, &shifts)?;
    let tree = g.spanning_tree(dm.base);
    let tree_path = |v: VertexId| {
        let edges = tree.path_from_root(g, v);
        APath { start: dm.base, elems: vec![FpcWord::identity(); edges.len() + 1], edges }
    };

    // The new source.
    let mut b2 = src.clone();
    let (finite_group, finite_names) = match rf {
        Some(r) => (FpcGroup::cyclic(src.vertex_group(u).order(r)), vec![src.factor_names(u)[r].clone()]),
        None => (FpcGroup::trivial(), Vec::new()),
    };
    b2.set_vertex_group(u, finite_group.clone(), finite_names);
    let name = format!("{}_adj", g.edge_name(f1));
    let new_edge = b2.add_edge(&name, &format!("{name}'"), u, g.omega(f1))?;
    let bu_hom = &m.vertex_homs[u];
    let a_v = sg.gog().vertex_group(m.vertex_map[u]);
    let images = rf.map(|r| vec![bu_hom.apply(&src.vertex_group(u).generator(r))]).unwrap_or_default();
    let mut vertex_homs = m.vertex_homs.clone();
    vertex_homs[u] = FpcHom::new(finite_group.clone(), a_v.clone(), images)?;
    let mut edge_map = m.edge_map.clone();
    edge_map.extend([m.edge_map[f1], m.edge_map[f1 ^ 1]]);
    let mut edge_exps = m.edge_exps.clone();
    edge_exps.extend([0, 0]);
    let b_u = src.vertex_group(u).generator(rb);
    let o_new = a_v.mul(&bu_hom.apply(&b_u), &m.o[f1]);
    let mut o = m.o.clone();
    let mut t = m.t.clone();
    o.extend([o_new.clone(), m.o[f1 ^ 1].clone()]);
    t.extend([m.t[f1].clone(), a_v.inv(&o_new)]);
    let phi2 = GGMorphism::new(b2.clone(), sg.gog().clone(), m.vertex_map.clone(), edge_map, vertex_homs, edge_exps, o, t)?;

    // Reroute the path through the b_u label.
    let mut paths = shifted.paths.clone();
    let mut rerouted = false;
    for p in paths.iter_mut() {
        for pos in 1..p.edges.len() {
            if b2.graph().omega(p.edges[pos - 1]) == u && p.edges[pos] == f1 && p.elems[pos] == b_u {
                p.elems[pos] = FpcWord::identity();
                p.edges[pos] = new_edge;
                rerouted = true;
            }
        }
    }
    if !rerouted {
        return Err(DecoratedError::Invalid("no path carries the label b_u".into()));
    }
    let gammas: Vec<APath> = paths.iter().map(|p| tree_path(p.start)).collect();
    let after = DecoratedMorphism::new(sg, phi2.clone(), dm.base, paths, gammas)?;

    // σ : 𝔹' → 𝔹.
    let mut sigma_homs: Vec<FpcHom> = g.vertices().map(|v| FpcHom::identity(src.vertex_group(v))).collect();
    sigma_homs[u] = FpcHom::new(
        finite_group,
        src.vertex_group(u).clone(),
        rf.map(|r| vec![src.vertex_group(u).generator(r)]).unwrap_or_default(),
    )?;
    let mut s_edge_map: Vec<EdgeId> = g.edges().collect();
    s_edge_map.extend([f1, f1 ^ 1]);
    let ne = s_edge_map.len();
    let mut s_o = vec![FpcWord::identity(); ne];
    let mut s_t = vec![FpcWord::identity(); ne];
    s_o[new_edge] = b_u.clone();
    s_t[new_edge ^ 1] = src.vertex_group(u).inv(&b_u);
    let sigma = GGMorphism::new(b2, src.clone(), g.vertices().collect(), s_edge_map, sigma_homs, vec![0; ne], s_o, s_t)?;

    let connectors: Vec<APath> = prefixes.iter().map(|p| src.inverse_path(p)).collect();
    let witness = transport_witness(sg, &after, dm, &sigma, &connectors, PREIMAGE_STATES)?;
    let (dg_after, dg_before) = (induced_decorated_group(sg, &after)?, induced_decorated_group(sg, dm)?);
    let reverse = reverse_witness(sg, &dg_after, &dg_before, &witness, PREIMAGE_STATES)?;

    let iiia = elementary_fold_iiia(&phi2, f1 ^ 1, new_edge ^ 1, &mut FreshNames::new())?;
    let folded = TreeBasis::new(&iiia.morphism.source, dm.base)?;
    let original = TreeBasis::new(src, dm.base)?;
    let iiia_round_trip = folded.rank() == original.rank() && folded.torsion() == original.torsion();
    Ok(AdjoinOutcome { dm: after, new_edge, first_edge: f1, sigma, witness, reverse, iiia_round_trip })
}

/// Result of [`fold_to_square`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SquareFoldOutcome {
    pub dm: DecoratedMorphism,
    /// The edge folded with the new edge.
    pub partner: EdgeId,
    pub square: SquareFold,
}

/// Folds the new edge of an adjoin-unfold with the first partner (in
/// edge order) whose fold produces a decorated morphism that folds
/// squares.
pub fn fold_to_square(sg: &SmallOrbGraph, dm: &DecoratedMorphism, new_edge: EdgeId) -> Result<SquareFoldOutcome, DecoratedError> {
    let report = dm.morphism.is_folded();
    for w in report.f1.iter().filter(|w| w.f1 == new_edge || w.f2 == new_edge) {
        let out = fold(&dm.morphism, w.f1, w.f2, &w.b, w.c_exp, dm.base, &mut FreshNames::new())?;
        let folded = dm.transport(sg, &out.sigma, out.morphism)?;
        if let Some(square) = folds_squares(&folded) {
            let partner = if w.f1 == new_edge { w.f2 } else { w.f1 };
            return Ok(SquareFoldOutcome { dm: folded, partner, square });
        }
    }
    Err(DecoratedError::Precondition("no fold of the new edge produces a square fold".into()))
}
