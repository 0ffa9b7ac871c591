//! Elementary transformations and equivalence searches on small examples.

use fpc_words::{FpcGroup, FpcWord};
use graph_of_groups::GraphOfGroups;
use nielsen::{
    apply, canonical_key, equivalent_bounded, is_reducible_witness, replay, NielsenError, NielsenMove, NielsenTuple,
    Pi1Oracle, SearchBounds, SearchVerdict,
};

use NielsenMove::{T1, T2, T3};

fn w(s: &[(usize, i64)]) -> FpcWord {
    FpcWord(s.to_vec())
}

/// `Z2 ∗ Z = ⟨s⟩ ∗ ⟨t⟩`.
fn z2_z() -> FpcGroup {
    FpcGroup::new(vec![2, 0]).unwrap()
}

fn tuple(entries: &[FpcWord]) -> NielsenTuple<FpcWord> {
    NielsenTuple::new(entries.to_vec())
}

fn small_bounds() -> SearchBounds {
    SearchBounds { max_norm: 6, max_states: 20_000 }
}

#[test]
fn t1_twice_is_the_identity() {
    let g = z2_z();
    let a = tuple(&[w(&[(0, 1), (1, 2)]), w(&[(1, -1)])]);
    assert_eq!(replay(&g, &a, &[T1 { i: 0 }, T1 { i: 0 }]).unwrap(), a);
}

#[test]
fn t2_is_an_involution() {
    let g = z2_z();
    let a = tuple(&[w(&[(0, 1)]), w(&[(1, 1)])]);
    let b = apply(&g, &a, T2 { i: 0, j: 1 }).unwrap();
    assert_eq!(b, tuple(&[w(&[(1, 1)]), w(&[(0, 1)])]));
    assert_eq!(apply(&g, &b, T2 { i: 0, j: 1 }).unwrap(), a);
}

#[test]
fn t3_is_undone_with_the_inverted_entry() {
    let g = z2_z();
    let a = tuple(&[w(&[(0, 1)]), w(&[(1, 1)])]);
    let b = apply(&g, &a, T3 { i: 0, j: 1 }).unwrap();
    assert_eq!(b.entries[0], w(&[(0, 1), (1, 1)]));
    let back = replay(&g, &b, &[T1 { i: 1 }, T3 { i: 0, j: 1 }, T1 { i: 1 }]).unwrap();
    assert_eq!(back, a);
}

#[test]
fn invalid_indices_are_rejected() {
    let g = z2_z();
    let a = tuple(&[w(&[(0, 1)]), w(&[(1, 1)])]);
    assert_eq!(apply(&g, &a, T1 { i: 2 }), Err(NielsenError::Index { index: 2, size: 2 }));
    assert!(matches!(apply(&g, &a, T3 { i: 1, j: 1 }), Err(NielsenError::SameIndex(_))));
}

#[test]
fn swapped_pair_is_one_move_away() {
    let g = z2_z();
    let a = tuple(&[w(&[(0, 1)]), w(&[(1, 1)])]);
    let b = tuple(&[w(&[(1, 1)]), w(&[(0, 1)])]);
    let SearchVerdict::Equivalent(trace) = equivalent_bounded(&g, &a, &b, &small_bounds()).unwrap() else {
        panic!("expected a trace")
    };
    assert_eq!(trace, [T2 { i: 0, j: 1 }]);
}

#[test]
fn permutation_with_inversion_needs_two_moves() {
    let g = z2_z();
    let a = tuple(&[w(&[(0, 1)]), w(&[(1, 1)])]);
    let b = tuple(&[w(&[(1, -1)]), w(&[(0, 1)])]);
    let SearchVerdict::Equivalent(trace) = equivalent_bounded(&g, &a, &b, &small_bounds()).unwrap() else {
        panic!("expected a trace")
    };
    assert!(trace.len() <= 2);
    assert_eq!(replay(&g, &a, &trace).unwrap(), b);
}

#[test]
fn st_t_is_equivalent_to_s_t() {
    let g = z2_z();
    let a = tuple(&[w(&[(0, 1), (1, 1)]), w(&[(1, 1)])]);
    let b = tuple(&[w(&[(0, 1)]), w(&[(1, 1)])]);
    let SearchVerdict::Equivalent(trace) = equivalent_bounded(&g, &a, &b, &small_bounds()).unwrap() else {
        panic!("expected a trace")
    };
    assert!(trace.len() <= 3, "{trace:?}");
    assert_eq!(replay(&g, &a, &trace).unwrap(), b);
}

#[test]
fn non_generating_tuple_is_not_found() {
    let g = z2_z();
    let a = tuple(&[w(&[(0, 1)]), w(&[(1, 1)])]);
    let b = tuple(&[w(&[(0, 1)]), w(&[(0, 1)])]);
    assert_eq!(equivalent_bounded(&g, &a, &b, &small_bounds()).unwrap(), SearchVerdict::Unknown);
}

#[test]
fn size_mismatch_is_an_error() {
    let g = z2_z();
    let a = tuple(&[w(&[(0, 1)])]);
    let b = tuple(&[w(&[(0, 1)]), w(&[(1, 1)])]);
    assert_eq!(equivalent_bounded(&g, &a, &b, &small_bounds()), Err(NielsenError::SizeMismatch(1, 2)));
}

#[test]
fn tuple_with_trailing_identity_is_trivially_reducible() {
    let g = z2_z();
    let a = tuple(&[w(&[(0, 1)]), w(&[(1, 1)]), FpcWord::identity()]);
    assert_eq!(is_reducible_witness(&g, &a, &small_bounds()).unwrap(), Some(vec![]));
}

#[test]
fn repeated_entry_is_reducible() {
    let g = z2_z();
    let x = w(&[(0, 1), (1, 1)]);
    let a = tuple(&[x.clone(), x.clone()]);
    let trace = is_reducible_witness(&g, &a, &small_bounds()).unwrap().unwrap();
    let reached = replay(&g, &a, &trace).unwrap();
    assert_eq!(reached.entries[1], FpcWord::identity());
    assert!(trace.len() <= 4);
}

#[test]
fn keys_ignore_order_and_inversion() {
    let g = z2_z();
    let a = tuple(&[w(&[(0, 1), (1, 1)]), w(&[(1, 1)])]);
    let b = tuple(&[w(&[(1, -1)]), w(&[(1, -1), (0, 1)])]);
    assert_eq!(canonical_key(&g, &a), canonical_key(&g, &b));
}

#[test]
fn trace_json_format() {
    let trace = vec![T1 { i: 0 }, T3 { i: 1, j: 0 }];
    let json = serde_json::to_string(&trace).unwrap();
    assert_eq!(json, r#"[{"move":"T1","i":0},{"move":"T3","i":1,"j":0}]"#);
    assert_eq!(serde_json::from_str::<Vec<NielsenMove>>(&json).unwrap(), trace);
}

/// `v1 (Z2) —e1, e2→ v2 (Z3)`: `π1 = Z2 ∗ Z3 ∗ Z`.
fn theta_like() -> GraphOfGroups {
    let mut g = GraphOfGroups::new();
    let a = g.add_vertex("v1", FpcGroup::cyclic(2)).unwrap();
    let b = g.add_vertex("v2", FpcGroup::cyclic(3)).unwrap();
    g.add_edge("e1", "E1", a, b).unwrap();
    g.add_edge("e2", "E2", a, b).unwrap();
    g
}

#[test]
fn hand_trace_replays_in_a_graph_of_groups() {
    let gog = theta_like();
    let o = Pi1Oracle::new(&gog, 0).unwrap();
    // Path elements: s at v1, the loop e1 e2⁻¹, and e1 r e1⁻¹.
    let s = gog.elem_path(0, w(&[(0, 1)]));
    let loop_ = gog.path(0, vec![FpcWord::identity(); 3], vec![0, 3]).unwrap();
    let r = gog.path(0, vec![FpcWord::identity(), w(&[(0, 1)]), FpcWord::identity()], vec![0, 1]).unwrap();
    let start = NielsenTuple::new(vec![o.element(&s), o.element(&loop_), o.element(&r)]);
    // (s, ℓ, r) → (s, ℓ·r, r) → (s·ℓ·r, ℓ·r, r) and back.
    let trace = [T3 { i: 1, j: 2 }, T3 { i: 0, j: 1 }];
    let mid = apply(&o, &start, trace[0]).unwrap();
    assert_eq!(o.path(&mid.entries[1]), gog.normalize(&gog.concat(&loop_, &r).unwrap()));
    let end = apply(&o, &mid, trace[1]).unwrap();
    let back = replay(&o, &end, &nielsen::invert_trace(&trace)).unwrap();
    assert_eq!(back, start);
    let SearchVerdict::Equivalent(found) = equivalent_bounded(&o, &end, &start, &small_bounds()).unwrap() else {
        panic!("expected a trace")
    };
    assert_eq!(replay(&o, &end, &found).unwrap(), start);
}
