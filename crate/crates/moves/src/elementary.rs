//! Elementary folds IA (identify two edges with distinct terminal vertices)
//! and IIIA (identify two edges with a common terminal vertex).

use fpc_words::{FpcGroup, FpcHom, FpcWord};
use gg_morphism::GGMorphism;
use graph_core::{EdgeId, VertexId};
use graph_of_groups::GraphOfGroups;

use crate::{validated, FreshNames, MoveError, MoveResult};

/// The source after identifying `f2` with `f1`.
struct Quotient {
    gog: GraphOfGroups,
    vmap: Vec<VertexId>,
    emap: Vec<EdgeId>,
}

/// Rebuilds `src` without the pair of `f2`, mapping `f2 ↦ f1`.  With
/// `merge = Some((x, y))` the vertex `y` is merged into `x` (group
/// `B_x ∗ B_y`); `group_at_x` replaces the group of `x` otherwise.
fn quotient(
    src: &GraphOfGroups,
    f1: EdgeId,
    f2: EdgeId,
    merge: Option<(VertexId, VertexId)>,
    group_at_x: Option<(VertexId, FpcGroup, Vec<String>)>,
) -> Result<Quotient, MoveError> {
    let g = src.graph();
    let mut out = GraphOfGroups::new();
    let mut vmap = vec![usize::MAX; g.vertex_count()];
    let shift = merge.map_or(0, |(x, _)| src.vertex_group(x).rank());
    for v in g.vertices() {
        if merge.is_some_and(|(_, y)| y == v) {
            continue;
        }
        let (id, group, names) = match (&merge, &group_at_x) {
            (Some((x, y)), _) if *x == v => {
                let mut names = src.factor_names(*x).to_vec();
                names.extend_from_slice(src.factor_names(*y));
                (
                    format!("{}+{}", g.vertex_name(*x), g.vertex_name(*y)),
                    src.vertex_group(*x).free_product(src.vertex_group(*y)),
                    names,
                )
            }
            (_, Some((x, group, names))) if *x == v => (g.vertex_name(v).to_string(), group.clone(), names.clone()),
            _ => (g.vertex_name(v).to_string(), src.vertex_group(v).clone(), src.factor_names(v).to_vec()),
        };
        vmap[v] = out.add_vertex_named(&id, group, names)?;
    }
    if let Some((x, y)) = merge {
        vmap[y] = vmap[x];
    }
    let moved = |v: VertexId, w: &FpcWord| -> FpcWord {
        if merge.is_some_and(|(_, y)| y == v) {
            w.shifted(shift)
        } else {
            w.clone()
        }
    };
    let mut emap = vec![usize::MAX; g.edge_count()];
    for p in g.positive_edges() {
        if p == f2 & !1 {
            continue;
        }
        let (a, b) = (g.alpha(p), g.omega(p));
        if vmap[a] == vmap[b] {
            return Err(MoveError::LoopCreated(g.edge_name(p).to_string()));
        }
        let ne = out.add_edge_with_group(
            g.edge_name(p),
            g.edge_name(p ^ 1),
            vmap[a],
            vmap[b],
            src.edge_order(p),
            moved(a, src.boundary(p)),
            moved(b, src.boundary(p ^ 1)),
        )?;
        emap[p] = ne;
        emap[p ^ 1] = ne ^ 1;
    }
    emap[f2] = emap[f1];
    emap[f2 ^ 1] = emap[f1] ^ 1;
    Ok(Quotient { gog: out, vmap, emap })
}

/// Common preconditions of elementary folds.
fn check_pair(m: &GGMorphism, f1: EdgeId, f2: EdgeId) -> Result<(), MoveError> {
    let g = m.source.graph();
    let fail = |s: &str| Err(MoveError::Precondition(format!("{s} ({}, {})", g.edge_name(f1), g.edge_name(f2))));
    if f1 == f2 || f1 == f2 ^ 1 {
        return fail("edges must be distinct and not inverse");
    }
    if g.alpha(f1) != g.alpha(f2) {
        return fail("edges must start at the same vertex");
    }
    if m.edge_map[f1] != m.edge_map[f2] {
        return fail("edges must have the same image");
    }
    if m.o[f1] != m.o[f2] {
        return fail("o-elements must agree");
    }
    if !m.source.edge_is_trivial(f1) || !m.source.edge_is_trivial(f2) {
        return fail("edge groups must be trivial");
    }
    Ok(())
}

/// The new morphism: data of all vertices and edges carried over, except
/// the dropped pair and the vertex homomorphisms supplied by `homs`.
fn carry_over(m: &GGMorphism, q: &Quotient, dropped: EdgeId, homs: impl Fn(VertexId) -> Option<FpcHom>) -> GGMorphism {
    let (ng, og) = (q.gog.graph(), m.source.graph());
    let mut vertex_map = vec![0; ng.vertex_count()];
    let mut vertex_homs: Vec<Option<FpcHom>> = vec![None; ng.vertex_count()];
    for v in og.vertices() {
        vertex_map[q.vmap[v]] = m.vertex_map[v];
        let slot = &mut vertex_homs[q.vmap[v]];
        match homs(v) {
            Some(h) => *slot = Some(h),
            None if slot.is_none() => *slot = Some(m.vertex_homs[v].clone()),
            None => {}
        }
    }
    let ne = ng.edge_count();
    let (mut edge_map, mut edge_exps) = (vec![0; ne], vec![0; ne]);
    let (mut o, mut t) = (vec![FpcWord::identity(); ne], vec![FpcWord::identity(); ne]);
    for f in og.edges().filter(|&f| f >> 1 != dropped >> 1) {
        let nf = q.emap[f];
        edge_map[nf] = m.edge_map[f];
        edge_exps[nf] = m.edge_exps[f];
        o[nf] = m.o[f].clone();
        t[nf] = m.t[f].clone();
    }
    GGMorphism {
        source: q.gog.clone(),
        target: m.target.clone(),
        vertex_map,
        edge_map,
        vertex_homs: vertex_homs.into_iter().map(|h| h.expect("every new vertex has a preimage")).collect(),
        edge_exps,
        o,
        t,
    }
}

/// The quotient map `σ : 𝔹 → 𝔹'` with the given vertex homomorphisms and
/// identity edge data.
fn quotient_map(src: &GraphOfGroups, q: &Quotient, homs: impl Fn(VertexId) -> FpcHom) -> GGMorphism {
    let g = src.graph();
    GGMorphism {
        source: src.clone(),
        target: q.gog.clone(),
        vertex_map: q.vmap.clone(),
        edge_map: q.emap.clone(),
        vertex_homs: g.vertices().map(homs).collect(),
        edge_exps: g.edges().map(|f| if src.edge_is_trivial(f) { 0 } else { 1 }).collect(),
        o: vec![FpcWord::identity(); g.edge_count()],
        t: vec![FpcWord::identity(); g.edge_count()],
    }
}

/// The embedding of factor block `offset..offset+rank(from)` into `to`.
fn factor_inclusion(from: &FpcGroup, to: &FpcGroup, offset: usize) -> FpcHom {
    let images = (0..from.rank()).map(|i| to.generator(offset + i)).collect();
    FpcHom::new(from.clone(), to.clone(), images).expect("factor orders agree")
}

/// Elementary fold IA: `f1, f2` with common initial vertex, distinct
/// terminal vertices `x ≠ y`, equal image and equal `o`, `t`.  The edges
/// and the vertices `x, y` are identified; the new vertex group is
/// `B_x ∗ B_y`.  Returns `σ` with `φ' ∘ σ = φ` (and `σ_*` an isomorphism).
pub fn elementary_fold_ia(m: &GGMorphism, f1: EdgeId, f2: EdgeId) -> Result<MoveResult, MoveError> {
    check_pair(m, f1, f2)?;
    let g = m.source.graph();
    let (x, y) = (g.omega(f1), g.omega(f2));
    if x == y {
        return Err(MoveError::Precondition("IA needs distinct terminal vertices".into()));
    }
    if m.t[f1] != m.t[f2] {
        return Err(MoveError::Precondition("t-elements must agree".into()));
    }
    let q = quotient(&m.source, f1, f2, Some((x, y)), None)?;
    let z = q.vmap[x];
    let bz = q.gog.vertex_group(z).clone();
    let aw = m.target.vertex_group(m.vertex_map[x]).clone();
    let mut images = m.vertex_homs[x].images().to_vec();
    images.extend_from_slice(m.vertex_homs[y].images());
    let hz = FpcHom::new(bz.clone(), aw, images)?;
    let phi = carry_over(m, &q, f2, |v| (v == x).then(|| hz.clone()));
    let rx = m.source.vertex_group(x).rank();
    let sigma = quotient_map(&m.source, &q, |v| {
        if v == x {
            factor_inclusion(m.source.vertex_group(x), &bz, 0)
        } else if v == y {
            factor_inclusion(m.source.vertex_group(y), &bz, rx)
        } else {
            FpcHom::identity(m.source.vertex_group(v))
        }
    });
    Ok(MoveResult { morphism: validated(phi)?, sigma: validated(sigma)? })
}

/// Elementary fold IIIA: `f1, f2` with common initial and terminal vertex
/// `x`, equal image and equal `o`.  The edges are identified and `B_x` is
/// replaced by `B_x ∗ ⟨b_x⟩` with `b_x ↦ t_{f1}⁻¹·t_{f2}`.  Returns `σ`
/// (with `t^σ_{f2} = b_x`) such that `φ' ∘ σ = φ`.
pub fn elementary_fold_iiia(
    m: &GGMorphism,
    f1: EdgeId,
    f2: EdgeId,
    names: &mut FreshNames,
) -> Result<MoveResult, MoveError> {
    check_pair(m, f1, f2)?;
    let g = m.source.graph();
    let x = g.omega(f1);
    if g.omega(f2) != x {
        return Err(MoveError::Precondition("IIIA needs a common terminal vertex".into()));
    }
    let bx = m.source.vertex_group(x);
    let rx = bx.rank();
    let new_group = bx.free_product(&FpcGroup::free(1));
    let mut factor_names = m.source.factor_names(x).to_vec();
    factor_names.push(names.fresh("b"));
    let q = quotient(&m.source, f1, f2, None, Some((x, new_group.clone(), factor_names)))?;
    let aw = m.target.vertex_group(m.vertex_map[x]).clone();
    let mut images = m.vertex_homs[x].images().to_vec();
    images.push(aw.mul(&aw.inv(&m.t[f1]), &m.t[f2]));
    let hx = FpcHom::new(new_group.clone(), aw, images)?;
    let phi = carry_over(m, &q, f2, |v| (v == x).then(|| hx.clone()));
    let mut sigma = quotient_map(&m.source, &q, |v| {
        if v == x {
            factor_inclusion(bx, &new_group, 0)
        } else {
            FpcHom::identity(m.source.vertex_group(v))
        }
    });
    sigma.set_t(f2, new_group.generator(rx));
    Ok(MoveResult { morphism: validated(phi)?, sigma: validated(sigma)? })
}
