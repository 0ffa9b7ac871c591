//! Checks of the relations guaranteed by the move lemmas.

use gg_morphism::GGMorphism;
use graph_core::VertexId;
use graph_of_groups::{APath, GraphOfGroups};

/// Whether two morphisms have identical data (vertex homomorphisms compared
/// as maps).
pub fn same_morphism(a: &GGMorphism, b: &GGMorphism) -> bool {
    a.source == b.source
        && a.target == b.target
        && a.vertex_map == b.vertex_map
        && a.edge_map == b.edge_map
        && a.edge_exps == b.edge_exps
        && a.o == b.o
        && a.t == b.t
        && a.vertex_homs.iter().zip(&b.vertex_homs).all(|(x, y)| x.same_map(y))
}

/// Closed paths at `base` consisting of a tree path to some vertex, a loop
/// of length at most two there and the tree path back: for every edge `f`
/// reachable from `base` the loops `f·x·f⁻¹` for `x` the identity or a
/// generator of `B_{ω(f)}`, every non-tree edge closed up through the tree,
/// and every vertex generator.  Together these generate `π1(𝔹, base)`.
pub fn test_loops(gog: &GraphOfGroups, base: VertexId) -> Vec<APath> {
    let g = gog.graph();
    let tree = g.spanning_tree(base);
    let to = |v: VertexId| -> APath {
        let edges = tree.path_from_root(g, v);
        let n = edges.len();
        APath { start: base, elems: vec![fpc_words::FpcWord::identity(); n + 1], edges }
    };
    let mut out = Vec::new();
    for v in g.vertices().filter(|&v| tree.contains(v)) {
        let pv = to(v);
        let back = gog.inverse_path(&pv);
        for i in 0..gog.vertex_group(v).rank() {
            let x = gog.elem_path(v, gog.vertex_group(v).generator(i));
            out.push(gog.concat_all(&[pv.clone(), x, back.clone()]).expect("composable"));
        }
        for &f in g.star(v) {
            let w = g.omega(f);
            let gw = gog.vertex_group(w);
            let mut middles = vec![fpc_words::FpcWord::identity()];
            middles.extend((0..gw.rank()).map(|i| gw.generator(i)));
            for x in middles {
                let lp = APath {
                    start: v,
                    elems: vec![fpc_words::FpcWord::identity(), x, fpc_words::FpcWord::identity()],
                    edges: vec![f, f ^ 1],
                };
                out.push(gog.concat_all(&[pv.clone(), lp, back.clone()]).expect("composable"));
            }
            if !tree.is_tree_edge(g, f) {
                let through = gog.concat(&pv, &gog.edge_path(f)).expect("composable");
                out.push(gog.concat(&through, &gog.inverse_path(&to(w))).expect("composable"));
            }
        }
    }
    out
}

/// Checks `φ̄_*(σ_*(x)) = φ_*(x)` on all [`test_loops`] at `base`.
pub fn pi1_commutes(phi: &GGMorphism, phibar: &GGMorphism, sigma: &GGMorphism, base: VertexId) -> Result<(), String> {
    for q in test_loops(&phi.source, base) {
        let x = phi.source.pi1_from_path(&q).map_err(|e| e.to_string())?;
        let lhs = phibar.induced_hom(&sigma.induced_hom(&x).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
        let rhs = phi.induced_hom(&x).map_err(|e| e.to_string())?;
        if !phi.target.pi1_eq(&lhs, &rhs) {
            return Err(format!("relation fails on {}", phi.source.format_path(&q)));
        }
    }
    Ok(())
}

/// Checks `ψ_*(x) = φ_*(x)` on all [`test_loops`] at `base`.
pub fn pi1_equal(phi: &GGMorphism, psi: &GGMorphism, base: VertexId) -> Result<(), String> {
    for q in test_loops(&phi.source, base) {
        let x = phi.source.pi1_from_path(&q).map_err(|e| e.to_string())?;
        let a = phi.induced_hom(&x).map_err(|e| e.to_string())?;
        let b = psi.induced_hom(&x).map_err(|e| e.to_string())?;
        if !phi.target.pi1_eq(&a, &b) {
            return Err(format!("induced maps differ on {}", phi.source.format_path(&q)));
        }
    }
    Ok(())
}
