//! Random generators of decorated morphisms: tame "wedges of lollipops"
//! and cyclic almost-orbifold-covers of discs.

use fpc_words::FpcWord;
use graph_core::{EdgeId, VertexId};
use graph_of_groups::APath;
use rand::Rng;

use crate::ao::SmallOrbGraph;
use crate::constructions::{cyclic_cover, Builder};
use crate::morphism::DecoratedMorphism;
use crate::DecoratedError;

/// Exponent bookkeeping for one generated path: the traversed edges, the
/// vertex-group elements (as exponents of `s_v`, mapped identically) and
/// the required image exponents.
struct Walk {
    edges: Vec<EdgeId>,
    elems: Vec<i64>,
    targets: Vec<i64>,
}

/// Adds a vertex over `v_side` whose group is, at random, trivial or a
/// copy of `A_{v_side}`; returns it with its group order.
fn random_vertex<R: Rng + ?Sized>(rng: &mut R, b: &mut Builder, name: &str, side: usize) -> Result<(VertexId, u64), DecoratedError> {
    let p = b.sg.cone_order(side);
    if p > 1 && rng.gen_bool(0.5) {
        Ok((b.cone_vertex(name, side, "c")?, p))
    } else {
        Ok((b.trivial_vertex(name, side)?, 1))
    }
}

/// A random tame decorated morphism: `n ≤ 3` closed paths (lollipops)
/// attached at a common vertex, itself joined to the base `u_1` by an
/// optional stick of length two.  Each path `p_j` runs through fresh
/// vertices `x_0, y_0, x_1, …, y_{z−1}, x_0` over
/// `v1, v2, v1, …` following `c_i^{z}`; when `q = 1` and `p2 > 1` some
/// steps (never the last) are pendant: `x_m, f, s2, f⁻¹, x_m` through a
/// vertex carrying `A_{v2}`, whose local graph is a circle.  Vertex groups
/// are trivial or copies of the cone groups mapped identically, the
/// elements on the path are random and the edge elements `o, t` are
/// solved for along the path, so the image of `p_j` is literally
/// `a·c_i^z·a⁻¹` for a random `a`.
pub fn random_tame_dm<R: Rng + ?Sized>(rng: &mut R, sg: &SmallOrbGraph) -> Result<DecoratedMorphism, DecoratedError> {
    let q = sg.q();
    let (p1, p2) = (sg.cone_order(1), sg.cone_order(2));
    let mut b = Builder::new(sg);
    let mut order: Vec<u64> = Vec::new();
    let (u1, o1) = random_vertex(rng, &mut b, "u1", 1)?;
    order.push(o1);
    let mut edge_count = 0usize;
    let mut fixed: Vec<Option<i64>> = Vec::new();
    let mut new_edge = |b: &mut Builder, fixed: &mut Vec<Option<i64>>, from: VertexId, to: VertexId, i: i64| {
        edge_count += 1;
        fixed.extend([None, None]);
        b.edge(&format!("f{edge_count}"), from, to, i, 0, 0)
    };
    let mut vertex_count = 1usize;
    let mut fresh_vertex = |rng: &mut R, b: &mut Builder, order: &mut Vec<u64>, side: usize, pendant: bool| {
        vertex_count += 1;
        let name = format!("{}{vertex_count}", if side == 1 { "x" } else { "y" });
        let (v, o) = if pendant { (b.cone_vertex(&name, side, "c")?, p2) } else { random_vertex(rng, b, &name, side)? };
        order.push(o);
        Ok::<_, DecoratedError>(v)
    };

    // Optional stick u1 → y → x0.
    let (x0, gamma_edges) = if rng.gen_bool(0.5) {
        let y = fresh_vertex(rng, &mut b, &mut order, 2, false)?;
        let x = fresh_vertex(rng, &mut b, &mut order, 1, false)?;
        let h1 = new_edge(&mut b, &mut fixed, u1, y, 1)?;
        let h2 = new_edge(&mut b, &mut fixed, x, y, 1)?;
        (x, vec![h1, h2 ^ 1])
    } else {
        (u1, Vec::new())
    };

    let n = rng.gen_range(1..=3);
    let mut walks = Vec::with_capacity(n);
    for _ in 0..n {
        let i = rng.gen_range(1..=q as i64);
        let z = rng.gen_range(1..=3usize);
        let eps = sg.epsilon(i);
        let a = rng.gen_range(0..p1 as i64);
        let mut walk = Walk { edges: Vec::new(), elems: Vec::new(), targets: Vec::new() };
        let mut x = x0;
        walk.elems.push(rand_exp(rng, order[x0]));
        walk.targets.push(a + eps);
        for m in 0..z {
            let last = m + 1 == z;
            let pendant = q == 1 && p2 > 1 && !last && rng.gen_bool(0.4);
            let y = fresh_vertex(rng, &mut b, &mut order, 2, pendant)?;
            let f = new_edge(&mut b, &mut fixed, x, y, i)?;
            if pendant {
                walk.edges.extend([f, f ^ 1]);
                walk.elems.push(eps);
            } else {
                let next = if last { x0 } else { fresh_vertex(rng, &mut b, &mut order, 1, false)? };
                let g = new_edge(&mut b, &mut fixed, next, y, i + 1)?;
                walk.edges.extend([f, g ^ 1]);
                walk.elems.push(rand_exp(rng, order[y]));
                x = next;
            }
            walk.targets.push(eps);
            if last {
                walk.elems.push(rand_exp(rng, order[x0]));
                walk.targets.push(-a);
            } else {
                walk.elems.push(rand_exp(rng, order[x]));
                walk.targets.push(eps);
            }
        }
        solve_edge_elements(rng, sg, &b, &walk, &mut fixed);
        walks.push(walk);
    }
    for (f, o) in fixed.iter().enumerate() {
        let v = sg.gog().graph().alpha(b.edge_map[f]);
        let exp = o.unwrap_or_else(|| rng.gen_range(0..sg.cone_order(sg.side(v)) as i64));
        b.o[f] = sg.s_pow(v, exp);
    }
    let m = b.finish()?;
    let src = &m.source;
    let word = |v: VertexId, e: i64| if src.vertex_group(v).rank() == 0 { FpcWord::identity() } else { src.vertex_group(v).syllable(0, e) };
    let mut paths = Vec::with_capacity(n);
    for w in &walks {
        let mut p = APath { start: x0, elems: Vec::new(), edges: w.edges.clone() };
        for (r, &e) in w.elems.iter().enumerate() {
            let v = src.elem_vertex(&p, r);
            p.elems.push(word(v, e));
        }
        paths.push(p);
    }
    let gamma = APath { start: u1, elems: vec![FpcWord::identity(); gamma_edges.len() + 1], edges: gamma_edges };
    let gammas = vec![gamma; n];
    DecoratedMorphism::new(sg, m, u1, paths, gammas)
}

fn rand_exp<R: Rng + ?Sized>(rng: &mut R, order: u64) -> i64 {
    if order <= 1 {
        0
    } else {
        rng.gen_range(0..order as i64)
    }
}

/// Chooses `o` on the edges of `walk` so that its image elements have the
/// target exponents: `a_0 = b_0·o_{f_1}`, `a_r = t_{f_r}·b_r·o_{f_{r+1}}`
/// with `t_f = o_{f⁻¹}⁻¹`, `a_k = t_{f_k}·b_k`.  Edges traversed for the
/// first time are free; a pendant return reuses `o_{f⁻¹}`, which is
/// consistent because the pendant element maps to `s2^{ε}`.
fn solve_edge_elements<R: Rng + ?Sized>(rng: &mut R, sg: &SmallOrbGraph, b: &Builder, walk: &Walk, fixed: &mut [Option<i64>]) {
    let order_at = |f: EdgeId| sg.cone_order(sg.side(sg.gog().graph().alpha(b.edge_map[f]))) as i64;
    let k = walk.edges.len();
    let e = &walk.edges;
    debug_assert!(fixed[e[0]].is_none());
    fixed[e[0]] = Some(walk.targets[0] - walk.elems[0]);
    for r in 1..k {
        let back = e[r - 1] ^ 1;
        let o_back = *fixed[back].get_or_insert_with(|| rng.gen_range(0..order_at(back)));
        let need = walk.targets[r] + o_back - walk.elems[r];
        match fixed[e[r]] {
            None => fixed[e[r]] = Some(need),
            Some(have) => debug_assert_eq!((have - need).rem_euclid(order_at(e[r])), 0),
        }
    }
    let back = e[k - 1] ^ 1;
    debug_assert!(fixed[back].is_none());
    fixed[back] = Some(walk.elems[k] - walk.targets[k]);
}

/// A random cyclic almost-orbifold-cover of a disc with two cone points:
/// cone orders in `2..=max_order`, `k_u ∈ 1..=max_degree` sheets and a
/// random divisor `d` of `p1` (see [`cyclic_cover`]).
pub fn random_almost_cover<R: Rng + ?Sized>(
    rng: &mut R,
    max_order: u64,
    max_degree: usize,
) -> Result<(SmallOrbGraph, DecoratedMorphism), DecoratedError> {
    let p1 = rng.gen_range(2..=max_order.max(2));
    let p2 = rng.gen_range(2..=max_order.max(2));
    let k = rng.gen_range(1..=max_degree.max(1));
    let divisors: Vec<u64> = (1..=p1).filter(|d| p1 % d == 0).collect();
    let d = divisors[rng.gen_range(0..divisors.len())];
    cyclic_cover(p1, p2, k, d)
}

/// An instance of the fold/A2 square: a random tame decorated morphism
/// with an (F1) pair `f1, f2`, an edge `f` and `b ∈ B_{α(f)}`, or `None`
/// when the generated morphism has no (F1) pair.
pub fn random_square_instance<R: Rng + ?Sized>(
    rng: &mut R,
    sg: &SmallOrbGraph,
) -> Result<Option<(DecoratedMorphism, EdgeId, EdgeId, EdgeId, FpcWord)>, DecoratedError> {
    let dm = random_tame_dm(rng, sg)?;
    let report = dm.morphism.is_folded();
    if report.f1.is_empty() {
        return Ok(None);
    }
    let w = &report.f1[rng.gen_range(0..report.f1.len())];
    let (f1, f2) = (w.f1, w.f2);
    let g = dm.source().graph();
    let f = rng.gen_range(0..g.edge_count());
    let group = dm.source().vertex_group(g.alpha(f));
    let b = match group.cardinality() {
        Some(1) => FpcWord::identity(),
        _ => group.syllable(0, rng.gen_range(1..=group.order(0).max(2) as i64)),
    };
    Ok(Some((dm, f1, f2, f, b)))
}
