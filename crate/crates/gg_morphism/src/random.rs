//! Random morphisms for property tests and generated instances.
//!
//! Targets have trivial edge groups and vertex groups that are finite
//! cyclic, trivial or (optionally) infinite.  Over a finite cyclic vertex
//! group `Z_p` each source vertex carries a subgroup `Z_d` (or, for
//! non-folded instances, possibly `Z` mapped onto it); over an infinite
//! vertex group the source group is trivial.  With `distinct_cosets` every
//! two source edges at a vertex over the same target edge use distinct
//! double cosets, which makes the result folded.

use std::collections::{HashMap, HashSet};

use fpc_words::random::{random_group, random_word};
use fpc_words::{FpcGroup, FpcHom, FpcWord};
use graph_core::{EdgeId, VertexId};
use graph_of_groups::GraphOfGroups;
use rand::seq::SliceRandom;
use rand::Rng;

use crate::morphism::GGMorphism;

/// Parameters of [`random_morphism`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RandomMorphismConfig {
    pub max_target_vertices: usize,
    pub extra_target_edges: usize,
    pub max_lifts_per_vertex: usize,
    pub max_edges_per_target_edge: usize,
    /// Allow infinite target vertex groups.
    pub allow_infinite: bool,
    /// Enforce distinct double cosets (and injective vertex maps).
    pub distinct_cosets: bool,
}

impl Default for RandomMorphismConfig {
    fn default() -> Self {
        RandomMorphismConfig {
            max_target_vertices: 4,
            extra_target_edges: 2,
            max_lifts_per_vertex: 2,
            max_edges_per_target_edge: 3,
            allow_infinite: false,
            distinct_cosets: true,
        }
    }
}

fn divisors(p: u64) -> Vec<u64> {
    (1..=p).filter(|d| p % d == 0).collect()
}

/// A random target graph of groups with trivial edge groups.
pub fn random_target<R: Rng + ?Sized>(rng: &mut R, cfg: &RandomMorphismConfig) -> GraphOfGroups {
    let n = rng.gen_range(1..=cfg.max_target_vertices.max(1));
    let mut g = GraphOfGroups::new();
    for i in 0..n {
        let group = if cfg.allow_infinite && rng.gen_bool(0.2) {
            let mut h = random_group(rng, 2, 4);
            while h.cardinality().is_some() {
                h = random_group(rng, 2, 4);
            }
            h
        } else if rng.gen_bool(0.15) {
            FpcGroup::trivial()
        } else {
            FpcGroup::cyclic(rng.gen_range(2..=7))
        };
        g.add_vertex(&format!("v{i}"), group).expect("fresh id");
    }
    let mut next = 0;
    let mut add = |g: &mut GraphOfGroups, a: VertexId, b: VertexId| {
        g.add_edge(&format!("e{next}"), &format!("e{next}'"), a, b).expect("fresh ids");
        next += 1;
    };
    for i in 1..n {
        let parent = rng.gen_range(0..i);
        add(&mut g, parent, i);
    }
    if n >= 2 {
        for _ in 0..rng.gen_range(0..=cfg.extra_target_edges) {
            let a = rng.gen_range(0..n);
            let mut b = rng.gen_range(0..n - 1);
            if b >= a {
                b += 1;
            }
            add(&mut g, a, b);
        }
    }
    g
}

/// Data of one source vertex: the target group, the vertex hom and a
/// generator of the cosets `φ_x(B_x)\A` (finite case) or `None` when the
/// cosets are single elements of an infinite group.
struct Lift {
    target_vertex: VertexId,
    hom: FpcHom,
    /// For `Z_p ⊇ ⟨s^m⟩`: `Some(m)`, cosets are `s^j·⟨s^m⟩`, `0 ≤ j < m`.
    coset_step: Option<u64>,
}

fn random_lift<R: Rng + ?Sized>(rng: &mut R, a: &FpcGroup, v: VertexId, distinct: bool) -> Lift {
    match a.cardinality() {
        Some(1) => Lift { target_vertex: v, hom: FpcHom::trivial(&FpcGroup::trivial(), a), coset_step: Some(1) },
        Some(p) if a.rank() == 1 => {
            let d = *divisors(p).choose(rng).expect("nonempty");
            let m = p / d;
            if !distinct && rng.gen_bool(0.3) {
                // Z → Z_p onto ⟨s^m⟩: never injective.
                let img = a.syllable(0, m as i64 % p as i64);
                let src = FpcGroup::free(1);
                let hom = FpcHom::new(src, a.clone(), vec![img]).expect("Z maps anywhere");
                return Lift { target_vertex: v, hom, coset_step: Some(m) };
            }
            if d == 1 {
                return Lift { target_vertex: v, hom: FpcHom::trivial(&FpcGroup::trivial(), a), coset_step: Some(p) };
            }
            // Generator s^{m·u} with u a unit mod d.
            let units: Vec<u64> = (1..d).filter(|&u| fpc_words::gcd(u, d) == 1).collect();
            let u = *units.choose(rng).expect("1 is a unit");
            let img = a.pow(&a.generator(0), (m * u) as i64);
            let hom = FpcHom::new(FpcGroup::cyclic(d), a.clone(), vec![img]).expect("orders divide");
            Lift { target_vertex: v, hom, coset_step: Some(m) }
        }
        _ => Lift { target_vertex: v, hom: FpcHom::trivial(&FpcGroup::trivial(), a), coset_step: None },
    }
}

/// A random morphism following `cfg`.  The source may be disconnected.
pub fn random_morphism<R: Rng + ?Sized>(rng: &mut R, cfg: &RandomMorphismConfig) -> GGMorphism {
    let target = random_target(rng, cfg);
    let tg = target.graph();
    let mut source = GraphOfGroups::new();
    let mut lifts: Vec<Lift> = Vec::new();
    let mut over: Vec<Vec<VertexId>> = vec![Vec::new(); tg.vertex_count()];
    for v in tg.vertices() {
        let count = rng.gen_range(1..=cfg.max_lifts_per_vertex.max(1));
        for i in 0..count {
            let lift = random_lift(rng, target.vertex_group(v), v, cfg.distinct_cosets);
            let x = source
                .add_vertex(&format!("{}.{i}", tg.vertex_name(v)), lift.hom.source().clone())
                .expect("fresh id");
            over[v].push(x);
            lifts.push(lift);
        }
    }
    // Coset keys in use at (source vertex, target edge).
    let mut used: HashMap<(VertexId, EdgeId), HashSet<FpcWord>> = HashMap::new();
    let mut pick = |rng: &mut R, x: VertexId, e: EdgeId, lifts: &[Lift]| -> Option<FpcWord> {
        let lift = &lifts[x];
        let a = lift.hom.target();
        let key_set = used.entry((x, e)).or_default();
        let coset_key = |j: u64| if a.rank() == 0 { FpcWord::identity() } else { a.syllable(0, j as i64) };
        let (key, rep) = match lift.coset_step {
            Some(m) => {
                let free: Vec<u64> =
                    (0..m).filter(|&j| !cfg.distinct_cosets || !key_set.contains(&coset_key(j))).collect();
                let j = *free.choose(rng)?;
                let key = coset_key(j);
                let p = a.cardinality().unwrap_or(1).max(1);
                let shift = rng.gen_range(0..p / m.max(1)) * m;
                let rep = if a.rank() == 0 { FpcWord::identity() } else { a.pow(&a.generator(0), (j + shift) as i64) };
                (key, rep)
            }
            None => {
                let mut w = random_word(rng, a, 3);
                let mut tries = 0;
                while cfg.distinct_cosets && key_set.contains(&w) {
                    w = random_word(rng, a, 3 + tries / 4);
                    tries += 1;
                    if tries > 64 {
                        return None;
                    }
                }
                (w.clone(), w)
            }
        };
        key_set.insert(key);
        Some(rep)
    };
    let mut edge_map = Vec::new();
    let mut o = Vec::new();
    let mut t = Vec::new();
    let mut next = 0;
    for e in tg.positive_edges().collect::<Vec<_>>() {
        let attempts = rng.gen_range(1..=cfg.max_edges_per_target_edge.max(1));
        for _ in 0..attempts {
            let x = *over[tg.alpha(e)].choose(rng).expect("each vertex has a lift");
            let y = *over[tg.omega(e)].choose(rng).expect("each vertex has a lift");
            let Some(ox) = pick(rng, x, e, &lifts) else { continue };
            let Some(oy) = pick(rng, y, e ^ 1, &lifts) else { continue };
            source.add_edge(&format!("f{next}"), &format!("f{next}'"), x, y).expect("fresh ids");
            next += 1;
            let (ax, ay) = (lifts[x].hom.target(), lifts[y].hom.target());
            edge_map.extend([e, e ^ 1]);
            t.extend([ay.inv(&oy), ax.inv(&ox)]);
            o.extend([ox, oy]);
        }
    }
    let nv = source.graph().vertex_count();
    let ne = source.graph().edge_count();
    let mut m = GGMorphism {
        vertex_map: lifts.iter().map(|l| l.target_vertex).collect(),
        vertex_homs: lifts.into_iter().map(|l| l.hom).collect(),
        edge_map,
        edge_exps: vec![0; ne],
        o,
        t,
        source,
        target,
    };
    // Random conjugation at every source vertex.
    for x in 0..nv {
        let a = m.target.vertex_group(m.vertex_map[x]).clone();
        let g = random_word(rng, &a, 2);
        m.vertex_homs[x] = m.vertex_homs[x].conjugated(&g);
        let star: Vec<EdgeId> = m.source.graph().star(x).to_vec();
        for f in star {
            let no = a.mul(&g, &m.o[f]);
            m.set_o(f, no);
        }
    }
    debug_assert!(m.check().is_empty(), "{:?}", m.check());
    m
}

/// A random folded morphism with finite target vertex groups.
pub fn random_folded_morphism<R: Rng + ?Sized>(rng: &mut R) -> GGMorphism {
    random_morphism(rng, &RandomMorphismConfig::default())
}
