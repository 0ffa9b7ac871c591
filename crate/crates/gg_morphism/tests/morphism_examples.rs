//! Worked examples for morphism checks, induced maps, foldedness, local
//! surjectivity, composition and complexity.

use fpc_words::{FpcGroup, FpcHom, FpcWord};
use gg_morphism::{edge_data_table, FoldVerdict, GGMorphism, MorphismSpec, Violation};
use graph_of_groups::GraphOfGroups;

fn w(s: &[(usize, i64)]) -> FpcWord {
    FpcWord(s.to_vec())
}

fn one() -> FpcWord {
    FpcWord::identity()
}

/// Source: `x —f→ y` with trivial groups; target `v (Z3) —e→ w (Z5)`;
/// `o_f = s`, `t_f = r`.
fn edge_morphism() -> GGMorphism {
    let mut s = GraphOfGroups::new();
    let x = s.add_vertex("x", FpcGroup::trivial()).unwrap();
    let y = s.add_vertex("y", FpcGroup::trivial()).unwrap();
    s.add_edge("f", "f'", x, y).unwrap();
    let mut t = GraphOfGroups::new();
    let v = t.add_vertex("v", FpcGroup::cyclic(3)).unwrap();
    let wv = t.add_vertex("w", FpcGroup::cyclic(5)).unwrap();
    t.add_edge("e", "e'", v, wv).unwrap();
    let homs = vec![
        FpcHom::trivial(&FpcGroup::trivial(), t.vertex_group(v)),
        FpcHom::trivial(&FpcGroup::trivial(), t.vertex_group(wv)),
    ];
    GGMorphism::new(
        s,
        t,
        vec![0, 1],
        vec![0, 1],
        homs,
        vec![0, 0],
        vec![w(&[(0, 1)]), w(&[(0, 4)])],
        vec![w(&[(0, 1)]), w(&[(0, 2)])],
    )
    .unwrap()
}

/// `u (Z2∗Z3) —e→ w (Z2)` with edge group `Z2`, `α_e = x_0`, `ω_e = y_0`.
fn amalgam() -> GraphOfGroups {
    let mut g = GraphOfGroups::new();
    let u = g.add_vertex("u", FpcGroup::new(vec![2, 3]).unwrap()).unwrap();
    let wv = g.add_vertex("w", FpcGroup::cyclic(2)).unwrap();
    g.add_edge_with_group("e", "e'", u, wv, 2, w(&[(0, 1)]), w(&[(0, 1)])).unwrap();
    g
}

#[test]
fn identity_morphism_has_no_violations() {
    let m = GGMorphism::identity(&amalgam());
    assert!(m.check().is_empty());
    assert_eq!(m.is_folded().verdict(), FoldVerdict::Folded);
}

#[test]
fn non_central_conjugator_breaks_the_boundary_diagram() {
    let mut m = GGMorphism::identity(&amalgam());
    // x_1 x_0 x_1⁻¹ ≠ x_0 in Z2∗Z3 (distinct normal forms).
    let g = m.target.vertex_group(0).clone();
    assert_ne!(g.conj(&w(&[(1, 1)]), &w(&[(0, 1)])), w(&[(0, 1)]));
    m.set_o(0, w(&[(1, 1)]));
    assert_eq!(m.check(), vec![Violation::Condition5 { edge: "e".into() }]);
}

#[test]
fn broken_involution_is_reported_once() {
    let mut m = GGMorphism::identity(&amalgam());
    m.t[0] = w(&[(0, 1)]);
    assert_eq!(m.check(), vec![Violation::Involution { edge: "e".into() }]);
}

#[test]
fn induced_image_of_an_element() {
    let mut s = GraphOfGroups::new();
    s.add_vertex("x", FpcGroup::cyclic(2)).unwrap();
    let mut t = GraphOfGroups::new();
    t.add_vertex("v", FpcGroup::cyclic(4)).unwrap();
    let hom = FpcHom::new(FpcGroup::cyclic(2), FpcGroup::cyclic(4), vec![w(&[(0, 2)])]).unwrap();
    let m = GGMorphism::new(s.clone(), t, vec![0], vec![], vec![hom], vec![], vec![], vec![]).unwrap();
    let p = s.elem_path(0, w(&[(0, 1)]));
    let img = m.induced_image(&p).unwrap();
    assert_eq!(img.elems, vec![w(&[(0, 2)])]);
    assert!(img.edges.is_empty());
}

#[test]
fn backtracking_loop_maps_to_a_null_homotopic_path() {
    let m = edge_morphism();
    let q = m.source.path(0, vec![one(), one(), one()], vec![0, 1]).unwrap();
    let img = m.induced_image(&q).unwrap();
    // a, φ(f), t·t⁻¹, φ(f)⁻¹, a⁻¹
    assert_eq!(img.elems, vec![w(&[(0, 1)]), one(), w(&[(0, 2)])]);
    assert_eq!(img.edges, vec![0, 1]);
    let r = m.target.reduce(&img);
    assert!(r.edges.is_empty());
    assert!(r.elems[0].is_identity());
}

#[test]
fn two_edge_morphism_edge_data() {
    // Two edges over two target edges; target vertex groups Z3 with
    // generators s_{v1,1}, s_{v2,1}.
    let mut s = GraphOfGroups::new();
    let u = s.add_vertex("u", FpcGroup::trivial()).unwrap();
    let u2 = s.add_vertex("u2", FpcGroup::trivial()).unwrap();
    s.add_edge("f1", "f1'", u, u2).unwrap();
    s.add_edge("f2", "f2'", u, u2).unwrap();
    let mut t = GraphOfGroups::new();
    let v1 = t.add_vertex("v1", FpcGroup::cyclic(3)).unwrap();
    let v2 = t.add_vertex("v2", FpcGroup::cyclic(3)).unwrap();
    t.add_edge("e1", "e1'", v1, v2).unwrap();
    t.add_edge("e2", "e2'", v1, v2).unwrap();
    let sv = w(&[(0, 1)]);
    let sv_inv = w(&[(0, 2)]);
    let homs = vec![FpcHom::trivial(&FpcGroup::trivial(), &FpcGroup::cyclic(3)); 2];
    let m = GGMorphism::new(
        s,
        t,
        vec![v1, v2],
        vec![0, 1, 2, 3],
        homs,
        vec![0; 4],
        vec![one(), one(), sv.clone(), sv_inv.clone()],
        vec![one(), one(), sv.clone(), sv_inv.clone()],
    )
    .unwrap();
    let table = edge_data_table(&m);
    assert_eq!(table["f1"], ("e1".into(), "1".into(), "1".into()));
    assert_eq!(table["f2"], ("e2".into(), "v1.1".into(), "v2.1".into()));
    // The loop f1 f2⁻¹ maps to 1, e1, s_{v2,1}⁻¹, e2⁻¹, s_{v1,1}⁻¹.
    let q = m.source.path(u, vec![one(), one(), one()], vec![0, 3]).unwrap();
    let img = m.induced_image(&q).unwrap();
    assert_eq!(img.elems, vec![one(), sv_inv.clone(), sv_inv]);
    assert_eq!(img.edges, vec![0, 3]);
}

#[test]
fn wedge_morphism_maps_loops_to_loops() {
    // Two cycles of lengths 2 and 3 through a base vertex; the target has
    // the same shape with Z2 at the base.
    let build = |base_group: FpcGroup| {
        let mut g = GraphOfGroups::new();
        let b = g.add_vertex("b", base_group).unwrap();
        let mut cycles = Vec::new();
        for (i, k) in [(1, 2usize), (2, 3)] {
            let mut prev = b;
            let mut edges = Vec::new();
            for j in 1..=k {
                let next = if j == k { b } else { g.add_vertex(&format!("c{i}{j}"), FpcGroup::trivial()).unwrap() };
                edges.push(g.add_edge(&format!("f{i}{j}"), &format!("f{i}{j}'"), prev, next).unwrap());
                prev = next;
            }
            cycles.push(edges);
        }
        (g, cycles)
    };
    let (s, qs) = build(FpcGroup::trivial());
    let (t, ps) = build(FpcGroup::cyclic(2));
    let sg = s.graph();
    let m = GGMorphism::new(
        s.clone(),
        t.clone(),
        sg.vertices().collect(),
        sg.edges().collect(),
        sg.vertices()
            .map(|v| FpcHom::trivial(s.vertex_group(v), t.vertex_group(v)))
            .collect(),
        vec![0; sg.edge_count()],
        vec![one(); sg.edge_count()],
        vec![one(); sg.edge_count()],
    )
    .unwrap();
    for (q, p) in qs.iter().zip(&ps) {
        let qp = s.path(0, vec![one(); q.len() + 1], q.clone()).unwrap();
        let pp = t.path(0, vec![one(); p.len() + 1], p.clone()).unwrap();
        let img = m.induced_hom(&s.pi1_from_path(&qp).unwrap()).unwrap();
        assert!(t.pi1_eq(&img, &t.pi1_from_path(&pp).unwrap()));
    }
    let id = s.pi1_identity(0);
    assert!(m.induced_hom(&id).unwrap().is_identity());
}

/// Source: `x` with two parallel edges to `y` over a single target edge.
fn parallel_edges(tx: FpcGroup, bx: FpcGroup, image: Vec<FpcWord>, o: [FpcWord; 2]) -> GGMorphism {
    let mut s = GraphOfGroups::new();
    let x = s.add_vertex("x", bx.clone()).unwrap();
    let y1 = s.add_vertex("y1", FpcGroup::trivial()).unwrap();
    let y2 = s.add_vertex("y2", FpcGroup::trivial()).unwrap();
    s.add_edge("f1", "f1'", x, y1).unwrap();
    s.add_edge("f2", "f2'", x, y2).unwrap();
    let mut t = GraphOfGroups::new();
    let v = t.add_vertex("v", tx.clone()).unwrap();
    let wv = t.add_vertex("w", FpcGroup::trivial()).unwrap();
    t.add_edge("e", "e'", v, wv).unwrap();
    let [o1, o2] = o;
    let (i1, i2) = (tx.inv(&o1), tx.inv(&o2));
    GGMorphism::new(
        s,
        t,
        vec![v, wv, wv],
        vec![0, 1, 0, 1],
        vec![
            FpcHom::new(bx, tx, image).unwrap(),
            FpcHom::trivial(&FpcGroup::trivial(), &FpcGroup::trivial()),
            FpcHom::trivial(&FpcGroup::trivial(), &FpcGroup::trivial()),
        ],
        vec![0; 4],
        vec![o1, one(), o2, one()],
        vec![one(), i1, one(), i2],
    )
    .unwrap()
}

#[test]
fn equal_edge_elements_violate_f1() {
    let m = parallel_edges(FpcGroup::trivial(), FpcGroup::trivial(), vec![], [one(), one()]);
    let r = m.is_folded();
    assert_eq!(r.verdict(), FoldVerdict::NotFolded);
    assert_eq!(r.f1.len(), 1);
    assert_eq!((r.f1[0].f1, r.f1[0].f2), (0, 2));
    assert!(r.f1[0].b.is_identity());
    assert_eq!(r.f1[0].c_exp, 0);
}

/// Integer residue of an element of `Z_n` given as a word.
fn residue(a: &FpcWord) -> i64 {
    a.0.first().map_or(0, |s| s.1)
}

#[test]
fn distinct_cosets_in_z6_are_folded() {
    // φ(Z2) = {0, 3} ⊂ Z6; cosets by exhaustive enumeration.
    let z6 = FpcGroup::cyclic(6);
    let coset = |o: i64| -> Vec<i64> {
        let mut c: Vec<i64> = [0, 3].iter().map(|h| (h + o).rem_euclid(6)).collect();
        c.sort();
        c
    };
    for (a, b, folded) in [(1, 2, true), (1, 4, false), (0, 5, true), (2, 5, false)] {
        assert_eq!(coset(a) != coset(b), folded);
        let m = parallel_edges(
            z6.clone(),
            FpcGroup::cyclic(2),
            vec![w(&[(0, 3)])],
            [z6.syllable(0, a), z6.syllable(0, b)],
        );
        let r = m.is_folded();
        let expect = if folded { FoldVerdict::Folded } else { FoldVerdict::NotFolded };
        assert_eq!(r.verdict(), expect, "o = s^{a}, s^{b}");
        if let Some(wit) = r.f1.first() {
            // o_{f2} = φ(b)·o_{f1}
            assert_eq!((3 * residue(&wit.b) + a).rem_euclid(6), b);
        }
    }
}

#[test]
fn z4_onto_z2_violates_f0() {
    let mut s = GraphOfGroups::new();
    s.add_vertex("x", FpcGroup::cyclic(4)).unwrap();
    let mut t = GraphOfGroups::new();
    t.add_vertex("v", FpcGroup::cyclic(2)).unwrap();
    let hom = FpcHom::new(FpcGroup::cyclic(4), FpcGroup::cyclic(2), vec![w(&[(0, 1)])]).unwrap();
    let m = GGMorphism::new(s, t, vec![0], vec![], vec![hom], vec![], vec![], vec![]).unwrap();
    let r = m.is_folded();
    assert_eq!(r.f0, vec![(0, w(&[(0, 2)]))]);
    assert_eq!(r.verdict(), FoldVerdict::NotFolded);
    assert_eq!(m.is_vertex_injective(), Some(false));
}

#[test]
fn f2_detects_a_pulled_back_edge_group() {
    // Target edge group Z2 ↪ Z2 × … at v = Z2, source edge group trivial at
    // x = Z2 mapped isomorphically: the generator b lies over α_e(A_e).
    let mut s = GraphOfGroups::new();
    let x = s.add_vertex("x", FpcGroup::cyclic(2)).unwrap();
    let y = s.add_vertex("y", FpcGroup::cyclic(2)).unwrap();
    s.add_edge("f", "f'", x, y).unwrap();
    let mut t = GraphOfGroups::new();
    let v = t.add_vertex("v", FpcGroup::cyclic(2)).unwrap();
    let wv = t.add_vertex("w", FpcGroup::cyclic(2)).unwrap();
    t.add_edge_with_group("e", "e'", v, wv, 2, w(&[(0, 1)]), w(&[(0, 1)])).unwrap();
    let id = FpcHom::identity(&FpcGroup::cyclic(2));
    let m = GGMorphism::new(s, t, vec![v, wv], vec![0, 1], vec![id.clone(), id], vec![0, 0], vec![one(), one()], vec![one(), one()])
        .unwrap();
    let r = m.is_folded();
    assert_eq!(r.f2.len(), 2);
    assert_eq!(r.f2[0].b, w(&[(0, 1)]));
    assert_eq!(r.verdict(), FoldVerdict::NotFolded);
}

/// `x` over `v` (group `tx`) with one edge per entry of `os`, all over the
/// single target edge.
fn fan(tx: FpcGroup, bx: FpcGroup, image: Vec<FpcWord>, os: &[FpcWord]) -> GGMorphism {
    let mut s = GraphOfGroups::new();
    let x = s.add_vertex("x", bx.clone()).unwrap();
    let mut t = GraphOfGroups::new();
    let v = t.add_vertex("v", tx.clone()).unwrap();
    let wv = t.add_vertex("w", FpcGroup::trivial()).unwrap();
    t.add_edge("e", "e'", v, wv).unwrap();
    let mut o = Vec::new();
    let mut tt = Vec::new();
    for (i, a) in os.iter().enumerate() {
        let y = s.add_vertex(&format!("y{i}"), FpcGroup::trivial()).unwrap();
        s.add_edge(&format!("f{i}"), &format!("f{i}'"), x, y).unwrap();
        o.extend([a.clone(), one()]);
        tt.extend([one(), tx.inv(a)]);
    }
    let n = s.graph().vertex_count();
    let mut vm = vec![wv; n];
    vm[0] = v;
    let mut homs = vec![FpcHom::trivial(&FpcGroup::trivial(), &FpcGroup::trivial()); n];
    homs[0] = FpcHom::new(bx, tx, image).unwrap();
    let ne = s.graph().edge_count();
    GGMorphism::new(s, t, vm, (0..ne).map(|f| f % 2).collect(), homs, vec![0; ne], o, tt).unwrap()
}

#[test]
fn local_surjectivity_examples() {
    let z3 = FpcGroup::cyclic(3);
    let m = fan(z3.clone(), z3.clone(), vec![w(&[(0, 1)])], &[one()]);
    assert!(m.is_locally_surjective(0).unwrap().surjective);

    let z2 = FpcGroup::cyclic(2);
    let m = fan(z2, FpcGroup::trivial(), vec![], &[one(), w(&[(0, 1)])]);
    let ls = m.is_locally_surjective(0).unwrap();
    assert!(ls.surjective);
    assert_eq!(ls.per_edge, vec![(0, vec![0, 2], true)]);

    let z4 = FpcGroup::cyclic(4);
    let m = fan(z4, FpcGroup::trivial(), vec![], &[one()]);
    assert!(!m.is_locally_surjective(0).unwrap().surjective);

    let zinf = FpcGroup::free(1);
    let m = fan(zinf, FpcGroup::trivial(), vec![], &[one()]);
    assert!(m.is_locally_surjective(0).is_err());
}

#[test]
fn compose_with_identity_is_unchanged() {
    let m = edge_morphism();
    let left = GGMorphism::identity(&m.target).compose(&m).unwrap();
    let right = m.compose(&GGMorphism::identity(&m.source)).unwrap();
    assert_eq!(left, m);
    assert_eq!(right, m);
    assert!(GGMorphism::identity(&m.source).compose(&m).is_err());
}

/// The automorphism of `g` with identity graph map and vertex homs and
/// `o_f = a` on edge `f` (trivial edge groups).
fn edge_shift(g: &GraphOfGroups, f: usize, a: FpcWord) -> GGMorphism {
    let mut m = GGMorphism::identity(g);
    m.set_o(f, a);
    assert!(m.check().is_empty());
    m
}

#[test]
fn composing_edge_shifts_multiplies_edge_elements() {
    let mut g = GraphOfGroups::new();
    let x = g.add_vertex("x", FpcGroup::new(vec![2, 3]).unwrap()).unwrap();
    let y = g.add_vertex("y", FpcGroup::trivial()).unwrap();
    g.add_edge("f", "f'", x, y).unwrap();
    let (a1, a2) = (w(&[(0, 1)]), w(&[(1, 1)]));
    let s1 = edge_shift(&g, 0, a1.clone());
    let s2 = edge_shift(&g, 0, a2.clone());
    let c = s2.compose(&s1).unwrap();
    // o^ψ_f = σ2(o^σ1_f)·o^σ2_f = a1·a2, t^ψ_{f⁻¹} its inverse.
    let gx = g.vertex_group(x);
    assert_eq!(c.o[0], gx.mul(&a1, &a2));
    assert_eq!(c.t[1], gx.inv(&c.o[0]));
    assert!(c.check().is_empty());
}

#[test]
fn restriction_agrees_with_the_original_on_remaining_edges() {
    let mut s = GraphOfGroups::new();
    let x = s.add_vertex("x", FpcGroup::trivial()).unwrap();
    let y = s.add_vertex("y", FpcGroup::trivial()).unwrap();
    s.add_edge("f1", "f1'", x, y).unwrap();
    s.add_edge("f2", "f2'", x, y).unwrap();
    let mut t = GraphOfGroups::new();
    let v = t.add_vertex("v", FpcGroup::cyclic(3)).unwrap();
    let wv = t.add_vertex("w", FpcGroup::trivial()).unwrap();
    t.add_edge("e", "e'", v, wv).unwrap();
    let s1 = w(&[(0, 1)]);
    let m = GGMorphism::new(
        s,
        t.clone(),
        vec![v, wv],
        vec![0, 1, 0, 1],
        vec![FpcHom::trivial(&FpcGroup::trivial(), t.vertex_group(v)), FpcHom::trivial(&FpcGroup::trivial(), &FpcGroup::trivial())],
        vec![0; 4],
        vec![one(), one(), s1.clone(), one()],
        vec![one(), one(), one(), w(&[(0, 2)])],
    )
    .unwrap();
    let (r, incl) = m.restrict(&[0]).unwrap();
    assert_eq!(r.source.graph().edge_count(), 2);
    assert_eq!(r.source.graph().edge_name(0), "f2");
    assert_eq!(r.o, vec![s1, one()]);
    assert_eq!(r.edge_map, vec![0, 1]);
    assert_eq!(incl.edge_map, vec![2, 3]);
    assert!(r.check().is_empty());
}

#[test]
fn theta_graph_complexity() {
    let mut g = GraphOfGroups::new();
    let a = g.add_vertex("a", FpcGroup::trivial()).unwrap();
    let b = g.add_vertex("b", FpcGroup::trivial()).unwrap();
    for i in 0..3 {
        g.add_edge(&format!("f{i}"), &format!("f{i}'"), a, b).unwrap();
    }
    let m = GGMorphism::identity(&g);
    let r = m.complexity(a);
    // rank = betti = 3 − 2 + 1
    assert_eq!(r.c, Some((2, 2, 6)));
    assert_eq!(r.d(), Some((0, 0)));
}

#[test]
fn index_three_edge_contributes_three() {
    let z = FpcGroup::free(1);
    let gen = w(&[(0, 1)]);
    let build = || {
        let mut g = GraphOfGroups::new();
        let x = g.add_vertex("x", z.clone()).unwrap();
        let y = g.add_vertex("y", z.clone()).unwrap();
        g.add_edge_with_group("f", "f'", x, y, 0, gen.clone(), gen.clone()).unwrap();
        g
    };
    let (s, t) = (build(), build());
    let cube = FpcHom::new(z.clone(), z.clone(), vec![w(&[(0, 3)])]).unwrap();
    let m = GGMorphism::new(s, t, vec![0, 1], vec![0, 1], vec![cube.clone(), cube], vec![3, 3], vec![one(), one()], vec![one(), one()])
        .unwrap();
    let r = m.complexity(0);
    assert_eq!(r.c_e, Some(3));
    assert_eq!(r.d(), Some((1, 3)));
    assert_eq!(gg_morphism::edge_index(0, 0), None);
    assert_eq!(gg_morphism::edge_index(6, 4), Some(2));
}

#[test]
fn torsion_counts_finite_factors() {
    let mut g = GraphOfGroups::new();
    let a = g.add_vertex("a", FpcGroup::new(vec![2, 0]).unwrap()).unwrap();
    let b = g.add_vertex("b", FpcGroup::trivial()).unwrap();
    g.add_edge("f1", "f1'", a, b).unwrap();
    g.add_edge("f2", "f2'", a, b).unwrap();
    let r = GGMorphism::identity(&g).complexity(a);
    // Two vertex factors plus betti number 1.
    assert_eq!((r.rank, r.torsion), (Some(3), Some(1)));
    assert_eq!(r.c, Some((3, 2, 4)));
}

#[test]
fn json_round_trip_and_schema_errors() {
    let m = edge_morphism();
    let json = serde_json::to_string(&m).unwrap();
    let back: GGMorphism = serde_json::from_str(&json).unwrap();
    assert_eq!(back, m);
    let mut spec = MorphismSpec::from(m);
    spec.edges.pop();
    assert!(GGMorphism::try_from(spec).is_err());
}
