use decorated::constructions::{cyclic_cover, d2_2_2_example, d2_2_2_planted_fold, degree_one_cover};
use decorated::{
    adjoin_unfold, check_local_path_formulas, collapsing_order, collapsing_splitting, extract_almost_cover, fold_to_square,
    folds_peripheral_subgroups, folds_squares, has_obvious_relation, induced_decorated_group, is_tame, local_graph, make_s_trivial,
    verify_projection, ComponentKind, DecoratedError, DecoratedMorphism, PeripheralFoldSearch, SmallOrbGraph, SquareFold,
};
use fpc_words::FpcWord;
use orbifolds::OrbifoldSpec;

fn spec(q: usize, cones: Vec<u64>) -> OrbifoldSpec {
    OrbifoldSpec::new(true, 0, q, cones).unwrap()
}

/// Independent check that the image of every path is `a·c_i^z·a⁻¹` in
/// `π1(𝔸^𝒪, v1)`, computed from the literal image path.
fn images_are_boundary_conjugates(sg: &SmallOrbGraph, dm: &DecoratedMorphism) -> bool {
    let a = sg.group();
    (0..dm.n()).all(|j| {
        let d = &dm.decompositions[j];
        let image = dm.morphism.induced_image(&dm.shifted_path(j)).unwrap();
        let expected = a.conj(&sg.v1_word(&d.a), &a.pow(sg.c_word(d.i as i64), d.z as i64));
        sg.word(&image) == expected
    })
}

#[test]
fn small_orbifold_graph_rejects_large_orbifolds() {
    assert!(matches!(SmallOrbGraph::build(&spec(1, vec![2, 3, 5])), Err(DecoratedError::NotSmall(_))));
    assert!(matches!(SmallOrbGraph::build(&spec(1, vec![3])), Err(DecoratedError::NotSmall(_))));
    assert!(SmallOrbGraph::build(&spec(2, vec![4])).is_ok());
    assert!(SmallOrbGraph::build(&spec(3, vec![])).is_ok());
}

#[test]
fn boundary_words_satisfy_the_orbifold_relator() {
    for (q, cones) in [(1, vec![2, 2]), (1, vec![3, 7]), (2, vec![5]), (2, vec![2, 3]), (3, vec![]), (4, vec![6])] {
        let sg = SmallOrbGraph::build(&spec(q, cones.clone())).unwrap();
        assert!(sg.relator_check(), "{q} {cones:?}");
        let names: Vec<String> = sg.theta().into_iter().map(|(n, _)| n).collect();
        assert_eq!(names.len(), cones.iter().filter(|&&p| p > 1).count() + q);
        for i in 1..=q as i64 {
            assert_eq!(sg.c_power(i, &sg.group().pow(sg.c_word(i), 3)), Some(3));
        }
    }
}

#[test]
fn two_cone_point_disc_example_types_and_local_graph() {
    let (sg, dm) = d2_2_2_example().unwrap();
    assert!(images_are_boundary_conjugates(&sg, &dm));
    let dg = induced_decorated_group(&sg, &dm).unwrap();
    dg.check(&sg).unwrap();
    // Types (1, 1) and (s⁻¹, 1); in Z_2 the element s⁻¹ is written s1.
    assert_eq!(dg.types(&sg), vec![("1".to_string(), 1, 1), ("s1".to_string(), 1, 1)]);
    let u1 = dm.base;
    let lg = local_graph(&dm, u1).unwrap();
    let edges = lg.edge_list(&dm);
    assert_eq!(
        edges,
        vec![("f2".to_string(), "f1".to_string(), 1, "1".to_string()), ("f3".to_string(), "f2".to_string(), 2, "1".to_string())]
    );
    assert_eq!(lg.components.len(), 1);
    assert_eq!(lg.components[0].kind, ComponentKind::Interval);
    assert!(check_local_path_formulas(&sg, &dm, &lg, 0).passed());
    assert!(lg.to_dot(&dm).contains("f2"));
}

#[test]
fn two_cone_point_disc_example_is_tame_and_does_not_fold_peripherals() {
    let (sg, dm) = d2_2_2_example().unwrap();
    let report = is_tame(&dm);
    assert!(report.is_tame(), "{:?}", report.reasons());
    let order = collapsing_order(&dm).unwrap();
    assert!(order.verify(&dm));
    let (splitting, rank) = collapsing_splitting(&dm, &order).unwrap();
    assert_eq!(rank, 0);
    let dg = induced_decorated_group(&sg, &dm).unwrap();
    assert_eq!(folds_peripheral_subgroups(&sg, &dg, &splitting, 4).unwrap(), PeripheralFoldSearch::NotFound);
}

#[test]
fn planted_peripheral_fold_is_found_and_obvious_relation_checked() {
    let (sg, dm) = d2_2_2_planted_fold().unwrap();
    assert!(matches!(folds_squares(&dm), Some(SquareFold::PeripheralFold { .. })));
    assert!(collapsing_order(&dm).is_none());
    let dg = induced_decorated_group(&sg, &dm).unwrap();
    let splitting = decorated::Splitting { complement: Vec::new() };
    match folds_peripheral_subgroups(&sg, &dg, &splitting, 2).unwrap() {
        PeripheralFoldSearch::Witness { k, l, g, z } => {
            let (pk, pl) = (&dg.peripherals[k], &dg.peripherals[l]);
            let a = sg.group();
            let eta = dg.eta_hom(&sg).unwrap();
            let rhs = a.product([&eta.apply(&g), &pk.o, &a.pow(sg.c_word(pk.i as i64), z)]);
            assert_eq!(pl.o, rhs);
        }
        PeripheralFoldSearch::NotFound => panic!("planted fold not found"),
    }
    // The third subgroup is conjugate to the first by its own generator:
    // η(g_1) = o_3·c·o_3⁻¹ gives z' = 1, which is not smaller than z_3 = 1.
    assert!(!has_obvious_relation(&sg, &dg, &splitting, 2, 1, &[(0, 1)]).unwrap());
    assert!(matches!(
        has_obvious_relation(&sg, &dg, &splitting, 2, 1, &[(1, 1)]),
        Err(DecoratedError::WitnessRejected(_))
    ));
}

#[test]
fn s_trivialization_of_the_example_interval() {
    let (sg, dm) = d2_2_2_example().unwrap();
    let u1 = dm.base;
    let lg = local_graph(&dm, u1).unwrap();
    let node = lg.components[0].nodes[0];
    let out = make_s_trivial(&sg, &dm, u1, node).unwrap();
    let after = local_graph(&out.dm, u1).unwrap();
    assert!(after.edges.iter().all(|e| e.elem.is_identity()));
    let g = induced_decorated_group(&sg, &dm).unwrap();
    let h = induced_decorated_group(&sg, &out.dm).unwrap();
    assert!(verify_projection(&sg, &g, &h, &out.witness).unwrap().passed);
}

#[test]
fn tampered_projection_witness_is_rejected() {
    let (sg, dm) = d2_2_2_example().unwrap();
    let lg = local_graph(&dm, dm.base).unwrap();
    let out = make_s_trivial(&sg, &dm, dm.base, lg.components[0].nodes[0]).unwrap();
    let g = induced_decorated_group(&sg, &dm).unwrap();
    let h = induced_decorated_group(&sg, &out.dm).unwrap();
    let mut w = out.witness.clone();
    w.h[1] = h.group.mul(&w.h[1], &h.group.generator(0));
    assert!(!verify_projection(&sg, &g, &h, &w).unwrap().passed);
    let mut w = out.witness.clone();
    w.z[0] += 1;
    assert!(!verify_projection(&sg, &g, &h, &w).unwrap().passed);
    let mut w = out.witness;
    w.tau.pop();
    assert!(matches!(verify_projection(&sg, &g, &h, &w), Err(DecoratedError::IncompleteWitness(_))));
}

#[test]
fn degree_one_covers_are_almost_covers() {
    for (q, cones) in [(1, vec![3, 4]), (1, vec![2, 2]), (2, vec![5]), (2, vec![]), (3, vec![2])] {
        let (sg, dm) = degree_one_cover(&spec(q, cones.clone())).unwrap();
        assert!(images_are_boundary_conjugates(&sg, &dm));
        let desc = extract_almost_cover(&sg, &dm, dm.base).unwrap();
        assert_eq!(desc.degree, 1);
        assert_eq!(desc.k_u, 1);
        assert_eq!(desc.l_u, q);
        assert_eq!(desc.boundary, (1..=q).map(|i| (i, 1)).collect::<Vec<_>>());
        assert_eq!(desc.d, sg.cone_order(1));
        assert!(desc.special);
        assert!(matches!(adjoin_unfold(&sg, &dm, dm.base), Err(DecoratedError::Precondition(_))));
    }
}

#[test]
fn degree_two_cover_of_d2_3_4() {
    let (sg, dm) = cyclic_cover(3, 4, 2, 3).unwrap();
    let desc = extract_almost_cover(&sg, &dm, dm.base).unwrap();
    assert_eq!((desc.degree, desc.k_u, desc.l_u, desc.d), (2, 2, 2, 3));
    assert_eq!(desc.boundary, vec![(1, 2)]);
    assert_eq!(desc.first_edge, "g2");
    assert_eq!(desc.cone_orders, vec![("w1".to_string(), 4), ("w2".to_string(), 4)]);
    assert!(desc.special);
    assert_eq!(desc.adjoined_order, 1);
}

#[test]
fn adjoin_unfold_then_fold_produces_a_square() {
    let (sg, dm) = cyclic_cover(3, 4, 2, 1).unwrap();
    let desc = extract_almost_cover(&sg, &dm, dm.base).unwrap();
    assert_eq!((desc.d, desc.k_u, desc.adjoined_order), (1, 2, 3));
    let out = adjoin_unfold(&sg, &dm, dm.base).unwrap();
    assert!(out.iiia_round_trip);
    assert!(images_are_boundary_conjugates(&sg, &out.dm));
    let before = induced_decorated_group(&sg, &dm).unwrap();
    let after = induced_decorated_group(&sg, &out.dm).unwrap();
    assert!(verify_projection(&sg, &after, &before, &out.witness).unwrap().passed);
    assert!(verify_projection(&sg, &before, &after, &out.reverse).unwrap().passed);
    // The new group at u is the finite factor Z_3.
    assert_eq!(out.dm.source().vertex_group(out.dm.base).cardinality(), Some(3));
    let sq = fold_to_square(&sg, &out.dm, out.new_edge).unwrap();
    assert!(folds_squares(&sq.dm).is_some());
    assert_eq!(sq.square, folds_squares(&sq.dm).unwrap());
}

#[test]
fn non_special_cover_is_recognised() {
    let (sg, dm) = cyclic_cover(2, 3, 3, 1).unwrap();
    let desc = extract_almost_cover(&sg, &dm, dm.base).unwrap();
    assert_eq!((desc.k_u, desc.exceptional_order), (3, 2));
    assert!(!desc.special);
}

#[test]
fn non_covers_are_rejected_with_the_failing_condition() {
    let (sg, dm) = d2_2_2_example().unwrap();
    match extract_almost_cover(&sg, &dm, dm.base) {
        Err(DecoratedError::AlmostCover { condition, .. }) => assert_eq!(condition, "a"),
        other => panic!("unexpected {other:?}"),
    }
    assert!(cyclic_cover(4, 3, 2, 3).is_err());
}

#[test]
fn decorated_morphism_json_round_trip() {
    let (_, dm) = cyclic_cover(3, 4, 2, 1).unwrap();
    let json = serde_json::to_string(&dm).unwrap();
    let back: DecoratedMorphism = serde_json::from_str(&json).unwrap();
    assert_eq!(back, dm);
}

#[test]
fn moves_transport_the_decoration() {
    let (sg, dm) = d2_2_2_example().unwrap();
    let u2 = dm.source().graph().vertex_by_name("u2").unwrap();
    assert!(matches!(dm.apply_a0(&sg, dm.base, &FpcWord::identity()), Err(DecoratedError::Precondition(_)) | Err(DecoratedError::Invalid(_))));
    let moved = dm.apply_a0(&sg, u2, &FpcWord::identity()).unwrap();
    assert_eq!(induced_decorated_group(&sg, &moved).unwrap().types(&sg), induced_decorated_group(&sg, &dm).unwrap().types(&sg));
    let f1 = dm.source().graph().edge_by_name("f1").unwrap();
    let (after, _) = dm.apply_a2(&sg, f1, &FpcWord::identity()).unwrap();
    assert!(images_are_boundary_conjugates(&sg, &after));
}
