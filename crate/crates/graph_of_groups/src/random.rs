//! Random graphs of groups and A-paths for property tests and generated
//! instances.

use fpc_words::random::{random_group, random_word};
use fpc_words::FpcGroup;
use graph_core::VertexId;
use rand::Rng;

use crate::gog::GraphOfGroups;
use crate::path::APath;

/// A random connected graph of groups with trivial edge groups: a random
/// tree on `1..=max_vertices` vertices plus up to `extra_edges` further
/// edge pairs.  Vertex groups are random free products (possibly trivial).
pub fn random_trivial_gog<R: Rng + ?Sized>(
    rng: &mut R,
    max_vertices: usize,
    extra_edges: usize,
) -> GraphOfGroups {
    let n = rng.gen_range(1..=max_vertices.max(1));
    let mut g = GraphOfGroups::new();
    for i in 0..n {
        let group = if rng.gen_bool(0.25) { FpcGroup::trivial() } else { random_group(rng, 2, 5) };
        g.add_vertex(&format!("u{i}"), group).expect("fresh id");
    }
    let mut next = 0;
    for i in 1..n {
        let parent = rng.gen_range(0..i);
        g.add_edge(&format!("f{next}"), &format!("f{next}'"), parent, i).expect("fresh ids");
        next += 1;
    }
    if n >= 2 {
        for _ in 0..rng.gen_range(0..=extra_edges) {
            let a = rng.gen_range(0..n);
            let mut b = rng.gen_range(0..n - 1);
            if b >= a {
                b += 1;
            }
            g.add_edge(&format!("f{next}"), &format!("f{next}'"), a, b).expect("fresh ids");
            next += 1;
        }
    }
    g
}

/// A random A-path of `len` edges from `start`; elements are random words
/// of up to `elem_len` syllables, and with probability `backtrack` the
/// walk immediately returns along the edge it came from.
pub fn random_path<R: Rng + ?Sized>(
    rng: &mut R,
    gog: &GraphOfGroups,
    start: VertexId,
    len: usize,
    elem_len: usize,
    backtrack: f64,
) -> APath {
    let g = gog.graph();
    let mut at = start;
    let l = rng.gen_range(0..=elem_len);
    let mut elems = vec![random_word(rng, gog.vertex_group(at), l)];
    let mut edges: Vec<usize> = Vec::new();
    for _ in 0..len {
        let star = g.star(at);
        if star.is_empty() {
            break;
        }
        let e = match edges.last() {
            Some(&last) if rng.gen_bool(backtrack) => last ^ 1,
            _ => star[rng.gen_range(0..star.len())],
        };
        at = g.omega(e);
        edges.push(e);
        let l = rng.gen_range(0..=elem_len);
        elems.push(random_word(rng, gog.vertex_group(at), l));
    }
    APath { start, elems, edges }
}

/// A random closed A-path at `base`: a random walk followed by a walk back
/// along a tree path.
pub fn random_loop<R: Rng + ?Sized>(
    rng: &mut R,
    gog: &GraphOfGroups,
    base: VertexId,
    len: usize,
    elem_len: usize,
) -> APath {
    let p = random_path(rng, gog, base, len, elem_len, 0.3);
    let end = gog.path_end(&p);
    let tree = gog.graph().spanning_tree(base);
    let back_edges: Vec<usize> = tree.path_from_root(gog.graph(), end).iter().rev().map(|&e| e ^ 1).collect();
    let back = APath { start: end, elems: vec![fpc_words::FpcWord::identity(); back_edges.len() + 1], edges: back_edges };
    gog.concat(&p, &back).expect("walk ends where the tree path starts")
}
