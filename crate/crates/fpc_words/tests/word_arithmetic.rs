//! Free-product arithmetic: documented examples, algebraic laws and
//! brute-force oracles for element orders, cyclic-subgroup membership and
//! coset representatives.

use fpc_words::{FpcError, FpcGroup, FpcWord};
use proptest::prelude::*;

fn w(g: &FpcGroup, raw: &[(usize, i64)]) -> FpcWord {
    g.normalize(raw).unwrap()
}

/// Oracle: element order by repeated multiplication (no cyclic reduction).
fn brute_order(g: &FpcGroup, x: &FpcWord, limit: u64) -> u64 {
    let mut acc = FpcWord::identity();
    for n in 1..=limit {
        acc = g.mul(&acc, x);
        if acc.is_identity() {
            return n;
        }
    }
    0
}

/// Oracle: all n in [-limit, limit] with tⁿ = w, by repeated multiplication.
fn brute_powers(g: &FpcGroup, x: &FpcWord, t: &FpcWord, limit: i64) -> Vec<i64> {
    let mut out = Vec::new();
    let ti = g.inv(t);
    let (mut pos, mut neg) = (FpcWord::identity(), FpcWord::identity());
    if x.is_identity() {
        out.push(0);
    }
    for n in 1..=limit {
        pos = g.mul(&pos, t);
        neg = g.mul(&neg, &ti);
        if pos == *x {
            out.push(n);
        }
        if neg == *x {
            out.push(-n);
        }
    }
    out
}

#[test]
fn documented_products() {
    let g = FpcGroup::new(vec![2, 3]).unwrap();
    let s1 = g.generator(0);
    assert!(g.mul(&s1, &s1).is_identity());
    let a = w(&g, &[(0, 1), (1, 1)]);
    let b = w(&g, &[(1, 2), (0, 1)]);
    assert!(g.mul(&a, &b).is_identity());
    let f = FpcGroup::free(2);
    let ab = w(&f, &[(0, 1), (1, 1)]);
    let bia = w(&f, &[(1, -1), (0, 1)]);
    assert_eq!(f.mul(&ab, &bia), w(&f, &[(0, 2)]));
}

#[test]
fn documented_orders() {
    let g = FpcGroup::new(vec![4, 0]).unwrap();
    assert_eq!(g.order_of(&FpcWord::identity()), 1);
    assert_eq!(g.order_of(&g.generator(0)), 4);
    let d = FpcGroup::new(vec![2, 2]).unwrap();
    let ab = w(&d, &[(0, 1), (1, 1)]);
    assert_eq!(d.order_of(&ab), 0);
    assert_eq!(brute_order(&d, &ab, 200), 0);
}

#[test]
fn documented_powers() {
    let f = FpcGroup::free(2);
    let ab = w(&f, &[(0, 1), (1, 1)]);
    let ab3 = f.pow(&ab, 3);
    assert_eq!(f.is_power_of(&ab3, &ab), Ok(Some(3)));
    assert_eq!(brute_powers(&f, &ab3, &ab, 10), vec![3]);
    assert_eq!(f.is_power_of(&f.generator(0), &ab), Ok(None));
    assert_eq!(f.is_power_of(&FpcWord::identity(), &ab), Ok(Some(0)));
    assert_eq!(f.is_power_of(&ab, &FpcWord::identity()), Err(FpcError::IdentityBase));
}

#[test]
fn documented_coset_reps() {
    let f = FpcGroup::free(2);
    let t = f.generator(1);
    let (rep, n) = f.coset_min_rep(&f.pow(&t, 2), &t).unwrap();
    assert!(rep.is_identity());
    assert_eq!(n, 2);
    let at = w(&f, &[(0, 1), (1, 1)]);
    assert_eq!(f.coset_min_rep(&at, &t).unwrap(), (f.generator(0), 1));
    assert_eq!(f.coset_min_rep(&f.generator(0), &t).unwrap(), (f.generator(0), 0));
}

#[test]
fn validation_errors() {
    assert_eq!(FpcGroup::new(vec![2, 1]), Err(FpcError::TrivialFactor { factor: 1 }));
    let g = FpcGroup::new(vec![3, 0]).unwrap();
    assert!(g.validate(&FpcWord(vec![(0, 3)])).is_err());
    assert!(g.validate(&FpcWord(vec![(1, 2), (1, 1)])).is_err());
    assert!(g.validate(&FpcWord(vec![(2, 1)])).is_err());
    assert!(g.validate(&FpcWord(vec![(1, 0)])).is_err());
    assert!(g.validate(&FpcWord(vec![(0, 2), (1, -5)])).is_ok());
}

#[test]
fn json_forms() {
    let g = FpcGroup::new(vec![2, 0]).unwrap();
    assert_eq!(serde_json::to_string(&g).unwrap(), r#"{"orders":[2,0]}"#);
    let x = w(&g, &[(0, 1), (1, -2)]);
    assert_eq!(serde_json::to_string(&x).unwrap(), "[[0,1],[1,-2]]");
    assert!(serde_json::from_str::<FpcGroup>(r#"{"orders":[1]}"#).is_err());
}

fn group_strategy() -> impl Strategy<Value = FpcGroup> {
    prop::collection::vec(prop_oneof![Just(0u64), 2u64..6], 1..4)
        .prop_map(|orders| FpcGroup::new(orders).unwrap())
}

fn word_in(g: FpcGroup, max_len: usize) -> impl Strategy<Value = FpcWord> {
    let rank = g.rank();
    prop::collection::vec((0..rank, -4i64..=4), 0..max_len)
        .prop_map(move |raw| g.normalize(&raw).unwrap())
}

fn group_and_words(n: usize, max_len: usize) -> impl Strategy<Value = (FpcGroup, Vec<FpcWord>)> {
    group_strategy().prop_flat_map(move |g| {
        let words = prop::collection::vec(word_in(g.clone(), max_len), n);
        (Just(g), words)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn normal_forms_are_valid_and_associative((g, ws) in group_and_words(3, 8)) {
        for x in &ws {
            prop_assert!(g.validate(x).is_ok());
        }
        let (a, b, c) = (&ws[0], &ws[1], &ws[2]);
        prop_assert_eq!(g.mul(&g.mul(a, b), c), g.mul(a, &g.mul(b, c)));
        prop_assert_eq!(g.inv(&g.mul(a, b)), g.mul(&g.inv(b), &g.inv(a)));
        prop_assert!(g.mul(a, &g.inv(a)).is_identity());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn order_matches_brute_force((g, ws) in group_and_words(1, 6)) {
        let x = &ws[0];
        prop_assert_eq!(g.order_of(x), brute_order(&g, x, 60));
    }

    #[test]
    fn pow_matches_repeated_product((g, ws) in group_and_words(1, 6), n in -6i64..=6) {
        let x = &ws[0];
        let base = if n >= 0 { x.clone() } else { g.inv(x) };
        let mut acc = FpcWord::identity();
        for _ in 0..n.unsigned_abs() {
            acc = g.mul(&acc, &base);
        }
        prop_assert_eq!(g.pow(x, n), acc);
    }

    #[test]
    fn power_membership_matches_oracle((g, ws) in group_and_words(2, 5), n in -4i64..=4, planted in any::<bool>()) {
        let t = &ws[0];
        prop_assume!(!t.is_identity());
        let x = if planted { g.pow(t, n) } else { ws[1].clone() };
        let answer = g.is_power_of(&x, t).unwrap();
        let brute = brute_powers(&g, &x, t, 40);
        match answer {
            Some(k) => {
                prop_assert_eq!(g.pow(t, k), x.clone());
                prop_assert!(brute.contains(&k) || g.order_of(t) > 0);
            }
            None => prop_assert!(brute.is_empty()),
        }
        if planted {
            prop_assert!(answer.is_some());
        }
    }

    #[test]
    fn coset_rep_is_in_coset_and_minimal((g, ws) in group_and_words(2, 6)) {
        let (x, t) = (&ws[0], &ws[1]);
        prop_assume!(!t.is_identity());
        let (rep, n) = g.coset_min_rep(x, t).unwrap();
        prop_assert_eq!(g.mul(&rep, &g.pow(t, n)), x.clone());
        // Oracle: scan a wide window of exponents.
        let mut best = x.clone();
        for m in -30i64..=30 {
            let cand = g.mul(x, &g.pow(t, m));
            if cand < best {
                best = cand;
            }
        }
        prop_assert_eq!(rep.clone(), best);
        // Independence of the chosen coset member.
        let shifted = g.mul(x, &g.pow(t, 3));
        prop_assert_eq!(g.coset_min_rep(&shifted, t).unwrap().0, rep);
    }

    #[test]
    fn cyclic_reduction_conjugates((g, ws) in group_and_words(1, 8)) {
        let x = &ws[0];
        let (u, core) = g.cyclic_reduce(x);
        prop_assert_eq!(g.conj(&u, &core), x.clone());
        if core.len() >= 2 {
            prop_assert_ne!(core.0[0].0, core.0[core.len() - 1].0);
        }
    }
}
