//! A-path reduction, normal forms and fundamental-group arithmetic.

use fpc_words::{FpcGroup, FpcWord};
use graph_of_groups::random::{random_loop, random_path, random_trivial_gog};
use graph_of_groups::{APath, GraphOfGroups, Strategy, TreeBasis};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Two vertices with groups Z2 = ⟨s1⟩ and Z2 = ⟨s2⟩ joined by one edge
/// with trivial group.
fn dihedral_gog() -> GraphOfGroups {
    let mut g = GraphOfGroups::new();
    let v1 = g.add_vertex_named("v1", FpcGroup::cyclic(2), vec!["s1".into()]).unwrap();
    let v2 = g.add_vertex_named("v2", FpcGroup::cyclic(2), vec!["s2".into()]).unwrap();
    g.add_edge("e1", "e1'", v1, v2).unwrap();
    g
}

/// Vertex x with Z ∗ Z = ⟨a, b⟩, vertex y with Z = ⟨c⟩, two edges x → y
/// with infinite cyclic groups: α_e = a, ω_e = c²; α_f = b, ω_f = c.
fn amalgam_gog() -> GraphOfGroups {
    let mut g = GraphOfGroups::new();
    let x = g.add_vertex_named("x", FpcGroup::free(2), vec!["a".into(), "b".into()]).unwrap();
    let y = g.add_vertex_named("y", FpcGroup::free(1), vec!["c".into()]).unwrap();
    g.add_edge_with_group("e", "e'", x, y, 0, FpcWord(vec![(0, 1)]), FpcWord(vec![(0, 2)])).unwrap();
    g.add_edge_with_group("f", "f'", x, y, 0, FpcWord(vec![(1, 1)]), FpcWord(vec![(0, 1)])).unwrap();
    g
}

#[test]
fn backtrack_with_trivial_group_vanishes() {
    let g = dihedral_gog();
    let p = g.path(0, vec![FpcWord::identity(); 3], vec![0, 1]).unwrap();
    let r = g.reduce(&p);
    assert_eq!(r, g.trivial_path(0));
}

#[test]
fn backtrack_through_edge_group_element() {
    let g = amalgam_gog();
    let a = FpcWord(vec![(1, 1)]);
    let a2 = FpcWord(vec![(0, -1)]);
    // a, e, ω_e(c) = c², e⁻¹, a′ ~ a·α_e(c)·a′ = b·a·a⁻¹ = b
    let p = g.path(0, vec![a.clone(), FpcWord(vec![(0, 2)]), a2.clone()], vec![0, 1]).unwrap();
    let r = g.reduce(&p);
    let expected = g.vertex_group(0).product([&a, &FpcWord(vec![(0, 1)]), &a2]);
    assert_eq!(r, g.elem_path(0, expected));
    // c³ is not in ω_e(A_e) = ⟨c²⟩: the path is already reduced.
    let q = g.path(0, vec![a, FpcWord(vec![(0, 3)]), a2], vec![0, 1]).unwrap();
    assert!(g.is_reduced(&q));
    assert_eq!(g.reduce(&q), q);
}

#[test]
fn normalize_pushes_corrections_right() {
    let g = amalgam_gog();
    // b·a, e, c, f', 1  — a_0 = b a lies in the coset (b)·⟨a⟩, so the
    // representative is b and ω_e(c¹) = c² is pushed across e.
    let p = g
        .path(0, vec![FpcWord(vec![(1, 1), (0, 1)]), FpcWord(vec![(0, 1)]), FpcWord::identity()], vec![0, 3])
        .unwrap();
    let n = g.normalize(&p);
    assert_eq!(n.elems[0], FpcWord(vec![(1, 1)]));
    // After the first step the middle element is c²·c = c³, which lies in
    // α_{f'}(A_f) = ⟨c⟩; it becomes 1 and ω_{f'}(c³) = b³ moves to the end.
    assert_eq!(n.elems[1], FpcWord::identity());
    assert_eq!(n.elems[2], FpcWord(vec![(1, 3)]));
    assert_eq!(g.normalize(&n), n);
}

#[test]
fn normalize_on_length_zero_is_identity_map() {
    let g = amalgam_gog();
    let p = g.elem_path(0, FpcWord(vec![(0, 2), (1, -1)]));
    assert_eq!(g.normalize(&p), p);
}

/// Applies a random second-type equivalence `g, e, h ~ g·α_e(cⁿ), e, ω_e(c⁻ⁿ)·h`
/// or inserts a backtrack `1, e, ω_e(cⁿ), e⁻¹, α_e(c⁻ⁿ)` at a random position.
fn random_equivalent(rng: &mut ChaCha8Rng, g: &GraphOfGroups, p: &APath) -> APath {
    let mut q = p.clone();
    for _ in 0..4 {
        if !q.edges.is_empty() && rng.gen_bool(0.6) {
            let i = rng.gen_range(0..q.edges.len());
            let e = q.edges[i];
            let n = rng.gen_range(-2..=2);
            let (va, vw) = (g.graph().alpha(e), g.graph().omega(e));
            q.elems[i] = g.vertex_group(va).mul(&q.elems[i], &g.boundary_pow(e, n));
            q.elems[i + 1] = g.vertex_group(vw).mul(&g.boundary_pow(e ^ 1, -n), &q.elems[i + 1]);
        } else {
            let i = rng.gen_range(0..q.elems.len());
            let v = g.elem_vertex(&q, i);
            let star = g.graph().star(v);
            let e = star[rng.gen_range(0..star.len())];
            let n = rng.gen_range(-2..=2);
            let detour = g
                .path(
                    v,
                    vec![FpcWord::identity(), g.boundary_pow(e ^ 1, n), g.boundary_pow(e, -n)],
                    vec![e, e ^ 1],
                )
                .unwrap();
            let (left, right) = split_at(g, &q, i);
            q = g.concat_all(&[left, detour, right]).unwrap();
        }
    }
    q
}

fn split_at(g: &GraphOfGroups, p: &APath, i: usize) -> (APath, APath) {
    let left = APath { start: p.start, elems: p.elems[..=i].to_vec(), edges: p.edges[..i].to_vec() };
    let mut right_elems = vec![FpcWord::identity()];
    right_elems.extend(p.elems[i + 1..].iter().cloned());
    let right = APath { start: g.elem_vertex(p, i), elems: right_elems, edges: p.edges[i..].to_vec() };
    (left, right)
}

#[test]
fn normal_form_is_constant_on_equivalence_classes() {
    let g = amalgam_gog();
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..300 {
        let p = random_path(&mut rng, &g, 0, 5, 3, 0.3);
        let q = random_equivalent(&mut rng, &g, &p);
        assert!(g.validate_path(&q).is_ok());
        let (np, nq) = (g.normalize(&p), g.normalize(&q));
        assert_eq!(np, nq, "{} vs {}", g.format_path(&p), g.format_path(&q));
        assert!(g.is_reduced(&np));
        assert_eq!(g.normalize(&np), np);
        assert_eq!(g.normalize(&g.reduce_with(&p, Strategy::RightFirst)), np);
    }
}

#[test]
fn reduction_strategies_agree_on_trivial_edge_groups() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..5 {
        let g = random_trivial_gog(&mut rng, 5, 3);
        for _ in 0..200 {
            let start = rng.gen_range(0..g.graph().vertex_count());
            let p = random_path(&mut rng, &g, start, 10, 2, 0.4);
            let l = g.reduce_with(&p, Strategy::LeftFirst);
            let r = g.reduce_with(&p, Strategy::RightFirst);
            assert_eq!(l, r);
            assert!(g.is_reduced(&l));
            assert_eq!(g.reduce(&l), l);
        }
    }
}

#[test]
fn pi1_group_laws() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..5 {
        let g = random_trivial_gog(&mut rng, 4, 3);
        for _ in 0..100 {
            let [x, y, z] = [0, 1, 2].map(|_| g.pi1_from_path(&random_loop(&mut rng, &g, 0, 5, 2)).unwrap());
            let xy_z = g.pi1_mul(&g.pi1_mul(&x, &y).unwrap(), &z).unwrap();
            let x_yz = g.pi1_mul(&x, &g.pi1_mul(&y, &z).unwrap()).unwrap();
            assert_eq!(xy_z, x_yz);
            assert_eq!(g.pi1_mul(&x, &g.pi1_identity(0)).unwrap(), x);
            assert!(g.pi1_mul(&x, &g.pi1_inv(&x)).unwrap().is_identity());
        }
    }
}

#[test]
fn boundary_loop_in_dihedral_graph() {
    let g = dihedral_gog();
    let s1 = FpcWord(vec![(0, 1)]);
    let c1 = g.path(0, vec![s1.clone(), s1.clone(), FpcWord::identity()], vec![0, 1]).unwrap();
    let x = g.pi1_from_path(&c1).unwrap();
    let x2 = g.pi1_mul(&x, &x).unwrap();
    let expected = g
        .path(
            0,
            vec![s1.clone(), s1.clone(), s1.clone(), s1.clone(), FpcWord::identity()],
            vec![0, 1, 0, 1],
        )
        .unwrap();
    assert_eq!(x2.path, expected);
    assert!(!x2.is_identity());
    // Infinite order: normal-form length grows linearly.
    for n in 1..=50 {
        assert_eq!(g.pi1_pow(&x, n).path.edges.len(), 2 * n as usize);
    }
    let trivial_loop = g.path(0, vec![FpcWord::identity(); 3], vec![0, 1]).unwrap();
    assert!(g.pi1_from_path(&trivial_loop).unwrap().is_identity());
}

#[test]
fn open_paths_and_base_mismatch_are_errors() {
    let g = dihedral_gog();
    assert!(g.pi1_from_path(&g.edge_path(0)).is_err());
    let a = g.pi1_identity(0);
    let b = g.pi1_identity(1);
    assert!(g.pi1_mul(&a, &b).is_err());
}

#[test]
fn tree_basis_rank_and_round_trip() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..30 {
        let g = random_trivial_gog(&mut rng, 5, 3);
        let basis = TreeBasis::new(&g, 0).unwrap();
        let factors: usize = g.graph().vertices().map(|v| g.vertex_group(v).rank()).sum();
        let finite: usize = g.graph().vertices().map(|v| g.vertex_group(v).finite_factor_count()).sum();
        assert_eq!(basis.rank(), factors + g.graph().first_betti());
        assert_eq!(basis.torsion(), finite);
        assert_eq!(g.rank_and_torsion(0), Some((basis.rank(), basis.torsion())));
        for _ in 0..20 {
            let p = random_loop(&mut rng, &g, 0, 6, 2);
            let q = random_loop(&mut rng, &g, 0, 6, 2);
            let (wp, wq) = (basis.word_of(&g, &p), basis.word_of(&g, &q));
            // homomorphism
            let pq = g.concat(&p, &q).unwrap();
            assert_eq!(basis.word_of(&g, &pq), basis.group.mul(&wp, &wq));
            // invariance under equivalence and round trip
            assert_eq!(basis.word_of(&g, &g.normalize(&p)), wp);
            assert_eq!(basis.path_of(&g, &wp), g.normalize(&p));
        }
    }
}

#[test]
fn rank_with_eliminable_edge_groups() {
    // A = Z = ⟨a⟩, B = Z2 ∗ Z = ⟨s, b⟩, edge group Z with a ↦ a, ↦ b²:
    // the amalgam is Z2 ∗ Z, rank 2 with one finite factor.
    let mut g = GraphOfGroups::new();
    let x = g.add_vertex("x", FpcGroup::free(1)).unwrap();
    let y = g.add_vertex("y", FpcGroup::new(vec![2, 0]).unwrap()).unwrap();
    g.add_edge_with_group("e", "e'", x, y, 0, FpcWord(vec![(0, 1)]), FpcWord(vec![(1, 2)])).unwrap();
    assert_eq!(g.rank_and_torsion(x), Some((2, 1)));
    // Both sides proper powers: not visibly a free product.
    let mut h = GraphOfGroups::new();
    let x = h.add_vertex("x", FpcGroup::free(1)).unwrap();
    let y = h.add_vertex("y", FpcGroup::free(1)).unwrap();
    h.add_edge_with_group("e", "e'", x, y, 0, FpcWord(vec![(0, 2)]), FpcWord(vec![(0, 3)])).unwrap();
    assert_eq!(h.rank_and_torsion(x), None);
}

#[test]
fn boundary_orders_are_validated() {
    let mut g = GraphOfGroups::new();
    let x = g.add_vertex("x", FpcGroup::cyclic(4)).unwrap();
    let y = g.add_vertex("y", FpcGroup::cyclic(2)).unwrap();
    assert!(g.add_edge_with_group("e", "e'", x, y, 2, FpcWord(vec![(0, 1)]), FpcWord(vec![(0, 1)])).is_err());
    assert!(g.add_edge_with_group("e", "e'", x, y, 2, FpcWord(vec![(0, 2)]), FpcWord(vec![(0, 1)])).is_ok());
}
