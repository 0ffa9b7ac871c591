//! Homomorphisms: construction checks, composition, injectivity verdicts
//! and preimage searches.

use fpc_words::{FpcError, FpcGroup, FpcHom, FpcWord, Injectivity, Preimage};
use proptest::prelude::*;

#[test]
fn order_divisibility_is_checked() {
    let z4 = FpcGroup::cyclic(4);
    let z3 = FpcGroup::cyclic(3);
    let err = FpcHom::new(z4.clone(), z3.clone(), vec![z3.generator(0)]).unwrap_err();
    assert_eq!(err, FpcError::OrderMismatch { factor: 0, order: 4, image_order: 3 });
    let z = FpcGroup::free(1);
    assert!(FpcHom::new(z4, z, vec![FpcGroup::free(1).generator(0)]).is_err());
}

#[test]
fn kernel_of_z4_to_z2() {
    let z4 = FpcGroup::cyclic(4);
    let z2 = FpcGroup::cyclic(2);
    let h = FpcHom::new(z4.clone(), z2.clone(), vec![z2.generator(0)]).unwrap();
    assert_eq!(h.injectivity(), Injectivity::NotInjective(z4.syllable(0, 2)));
}

#[test]
fn injectivity_verdicts() {
    let f2 = FpcGroup::free(2);
    let (a, b) = (f2.generator(0), f2.generator(1));
    // a ↦ a, b ↦ b a b⁻¹ is injective (free basis).
    let h = FpcHom::new(f2.clone(), f2.clone(), vec![a.clone(), f2.conj(&b, &a)]).unwrap();
    assert_eq!(h.injectivity(), Injectivity::Injective);
    // a ↦ a, b ↦ a² has a commutator in its kernel.
    let h = FpcHom::new(f2.clone(), f2.clone(), vec![a.clone(), f2.pow(&a, 2)]).unwrap();
    match h.injectivity() {
        Injectivity::NotInjective(k) => {
            assert!(!k.is_identity());
            assert!(h.apply(&k).is_identity());
        }
        other => panic!("unexpected {other:?}"),
    }
    // Z2 ∗ Z3 → Z2 ∗ Z3 conjugated identity.
    let g = FpcGroup::new(vec![2, 3]).unwrap();
    let c = g.generator(1);
    let h = FpcHom::identity(&g).conjugated(&c);
    assert_eq!(h.injectivity(), Injectivity::Injective);
}

#[test]
fn preimages_in_finite_images() {
    let z6 = FpcGroup::cyclic(6);
    let z2 = FpcGroup::cyclic(2);
    let h = FpcHom::new(z2.clone(), z6.clone(), vec![z6.syllable(0, 3)]).unwrap();
    assert_eq!(h.preimage(&z6.syllable(0, 3), 100), Preimage::Found(z2.generator(0)));
    assert_eq!(h.preimage(&z6.syllable(0, 2), 100), Preimage::NotInImage);
    assert_eq!(h.image_elements(100).unwrap().len(), 2);
}

#[test]
fn composition_and_identity() {
    let g = FpcGroup::new(vec![2, 0]).unwrap();
    let s = g.generator(0);
    let h = FpcHom::identity(&g).conjugated(&s);
    let id = FpcHom::identity(&g);
    assert_eq!(h.compose(&id).unwrap(), h);
    assert_eq!(id.compose(&h).unwrap(), h);
    let hh = h.compose(&h).unwrap();
    assert_eq!(hh, id);
}

#[test]
fn hom_json_round_trip() {
    let g = FpcGroup::new(vec![2, 0]).unwrap();
    let h = FpcHom::identity(&g).conjugated(&g.generator(1));
    let text = serde_json::to_string(&h).unwrap();
    let back: FpcHom = serde_json::from_str(&text).unwrap();
    assert_eq!(back, h);
    let bad = r#"{"source":{"orders":[4]},"target":{"orders":[3]},"images":[[[0,1]]]}"#;
    assert!(serde_json::from_str::<FpcHom>(bad).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    /// Verdicts are sound: kernel witnesses are nontrivial and map to 1;
    /// injective maps have no short kernel elements.
    #[test]
    fn injectivity_verdicts_are_sound(
        images in prop::collection::vec(prop::collection::vec((0usize..2, -2i64..=2), 1..4), 1..3)
    ) {
        let target = FpcGroup::new(vec![0, 0]).unwrap();
        let source = FpcGroup::free(images.len());
        let imgs: Vec<FpcWord> = images.iter().map(|raw| target.normalize(raw).unwrap()).collect();
        let h = FpcHom::new(source, target, imgs).unwrap();
        match h.injectivity() {
            Injectivity::Injective => prop_assert!(h.search_kernel(3, 50_000).is_none()),
            Injectivity::NotInjective(k) => {
                prop_assert!(!k.is_identity());
                prop_assert!(h.apply(&k).is_identity());
            }
            Injectivity::Unknown => {}
        }
    }

    #[test]
    fn apply_is_a_homomorphism(
        raw_a in prop::collection::vec((0usize..2, -3i64..=3), 0..6),
        raw_b in prop::collection::vec((0usize..2, -3i64..=3), 0..6),
        img0 in prop::collection::vec((0usize..2, -2i64..=2), 0..4),
    ) {
        let g = FpcGroup::new(vec![3, 0]).unwrap();
        let t = FpcGroup::new(vec![3, 0]).unwrap();
        let y0 = t.conj(&t.normalize(&img0).unwrap(), &t.generator(0));
        let h = FpcHom::new(g.clone(), t.clone(), vec![y0, t.generator(1)]).unwrap();
        let (a, b) = (g.normalize(&raw_a).unwrap(), g.normalize(&raw_b).unwrap());
        prop_assert_eq!(h.apply(&g.mul(&a, &b)), t.mul(&h.apply(&a), &h.apply(&b)));
    }
}

#[test]
fn partial_conjugation_is_visibly_surjective() {
    let g = FpcGroup::new(vec![2, 0, 5]).unwrap();
    let b = FpcWord(vec![(0, 1), (1, -2)]);
    let images = vec![FpcWord(vec![(0, 1)]), FpcWord(vec![(1, 1)]), g.conj(&b, &FpcWord(vec![(2, 2)]))];
    let h = FpcHom::new(g.clone(), g.clone(), images).unwrap();
    assert!(h.is_visibly_surjective());
}

#[test]
fn proper_images_are_not_certified() {
    let g = FpcGroup::new(vec![0, 3]).unwrap();
    let h = FpcHom::new(g.clone(), g.clone(), vec![FpcWord(vec![(0, 2)]), FpcWord(vec![(1, 1)])]).unwrap();
    assert!(!h.is_visibly_surjective());
    let units = FpcHom::new(g.clone(), g, vec![FpcWord(vec![(0, -1)]), FpcWord(vec![(1, 2)])]).unwrap();
    assert!(units.is_visibly_surjective());
}
