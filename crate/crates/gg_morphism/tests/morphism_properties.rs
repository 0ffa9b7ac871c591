//! Property tests: generated morphisms satisfy the invariants, folded
//! morphisms preserve reducedness, induced maps respect equivalence and
//! composition is associative and functorial.

use fpc_words::random::random_word;
use fpc_words::FpcHom;
use gg_morphism::random::{random_folded_morphism, random_morphism, RandomMorphismConfig};
use gg_morphism::{FoldVerdict, GGMorphism};
use graph_of_groups::random::{random_loop, random_path};
use graph_of_groups::GraphOfGroups;
use proptest::prelude::*;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// A random self-map of `g` (trivial edge groups): identity graph map,
/// vertex homs conjugations by `g_x`, `o_f = g_{α(f)}`, `t_f = g_{ω(f)}⁻¹`.
fn random_self_map<R: Rng>(rng: &mut R, g: &GraphOfGroups) -> GGMorphism {
    let mut m = GGMorphism::identity(g);
    let gr = g.graph();
    let conj: Vec<_> = gr.vertices().map(|v| random_word(rng, g.vertex_group(v), 2)).collect();
    for v in gr.vertices() {
        m.vertex_homs[v] = FpcHom::identity(g.vertex_group(v)).conjugated(&conj[v]);
    }
    for f in gr.edges() {
        m.o[f] = conj[gr.alpha(f)].clone();
        m.t[f] = g.vertex_group(gr.omega(f)).inv(&conj[gr.omega(f)]);
    }
    assert!(m.check().is_empty());
    m
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn generated_morphisms_are_valid_and_folded(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let m = random_folded_morphism(&mut rng);
        prop_assert!(m.check().is_empty());
        prop_assert_eq!(m.is_folded().verdict(), FoldVerdict::Folded);
    }

    #[test]
    fn folded_morphisms_map_reduced_paths_to_reduced_paths(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let m = random_folded_morphism(&mut rng);
        let n = m.source.graph().vertex_count();
        for _ in 0..8 {
            let start = rng.gen_range(0..n);
            let p = random_path(&mut rng, &m.source, start, 6, 2, 0.4);
            let q = m.source.reduce(&p);
            prop_assert!(m.source.is_reduced(&q));
            let img = m.induced_image(&q).unwrap();
            prop_assert!(m.target.is_reduced(&img), "{}", m.target.format_path(&img));
        }
    }

    #[test]
    fn induced_image_respects_equivalence(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let cfg = RandomMorphismConfig { distinct_cosets: false, allow_infinite: true, ..Default::default() };
        let m = random_morphism(&mut rng, &cfg);
        let start = rng.gen_range(0..m.source.graph().vertex_count());
        let p = random_path(&mut rng, &m.source, start, 6, 2, 0.4);
        let a = m.induced_image(&m.source.normalize(&p)).unwrap();
        let b = m.induced_image(&p).unwrap();
        prop_assert!(m.target.equivalent(&a, &b));
    }

    #[test]
    fn induced_hom_is_a_homomorphism(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let m = random_folded_morphism(&mut rng);
        let s = &m.source;
        let x = s.pi1_from_path(&random_loop(&mut rng, s, 0, 5, 2)).unwrap();
        let y = s.pi1_from_path(&random_loop(&mut rng, s, 0, 5, 2)).unwrap();
        let xy = m.induced_hom(&s.pi1_mul(&x, &y).unwrap()).unwrap();
        let fx = m.induced_hom(&x).unwrap();
        let fy = m.induced_hom(&y).unwrap();
        prop_assert!(m.target.pi1_eq(&xy, &m.target.pi1_mul(&fx, &fy).unwrap()));
        let inv = m.induced_hom(&s.pi1_inv(&x)).unwrap();
        prop_assert!(m.target.pi1_eq(&inv, &m.target.pi1_inv(&fx)));
    }

    #[test]
    fn composition_is_associative_and_functorial(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let phi = random_folded_morphism(&mut rng);
        let psi = random_self_map(&mut rng, &phi.source);
        let chi = random_self_map(&mut rng, &phi.source);
        let left = phi.compose(&psi).unwrap().compose(&chi).unwrap();
        let right = phi.compose(&psi.compose(&chi).unwrap()).unwrap();
        prop_assert!(left.check().is_empty());
        prop_assert_eq!(&left.o, &right.o);
        prop_assert_eq!(&left.t, &right.t);
        for (a, b) in left.vertex_homs.iter().zip(&right.vertex_homs) {
            prop_assert!(a.same_map(b));
        }
        let s = &phi.source;
        let x = s.pi1_from_path(&random_loop(&mut rng, s, 0, 5, 2)).unwrap();
        let direct = left.induced_hom(&x).unwrap();
        let stepwise = phi.induced_hom(&psi.induced_hom(&chi.induced_hom(&x).unwrap()).unwrap()).unwrap();
        prop_assert!(phi.target.pi1_eq(&direct, &stepwise));
    }

    #[test]
    fn f1_witnesses_verify(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let cfg = RandomMorphismConfig { distinct_cosets: false, ..Default::default() };
        let m = random_morphism(&mut rng, &cfg);
        prop_assert!(m.check().is_empty());
        let r = m.is_folded();
        prop_assert!(r.undecided.is_empty());
        for w in &r.f1 {
            let e = m.edge_map[w.f1];
            let a = m.target.vertex_group(m.target.graph().alpha(e));
            let x = m.source.graph().alpha(w.f1);
            let rhs = a.product([&m.vertex_homs[x].apply(&w.b), &m.o[w.f1], &m.target.boundary_pow(e, w.c_exp)]);
            prop_assert_eq!(&m.o[w.f2], &rhs);
        }
        for (u, k) in &r.f0 {
            prop_assert!(m.vertex_homs[*u].apply(k).is_identity());
            prop_assert!(!k.is_identity());
        }
    }

    #[test]
    fn json_round_trip(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let m = random_folded_morphism(&mut rng);
        let back: GGMorphism = serde_json::from_str(&serde_json::to_string(&m).unwrap()).unwrap();
        prop_assert_eq!(back, m);
    }
}
