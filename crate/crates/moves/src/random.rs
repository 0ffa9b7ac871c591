//! Random instances for the moves: morphisms with (F1) violations and
//! graphs of groups with a known splitting of a vertex group.

use fpc_words::random::random_word;
use fpc_words::{FpcGroup, FpcWord};
use gg_morphism::random::{random_morphism, RandomMorphismConfig};
use gg_morphism::{F1Witness, GGMorphism};
use graph_core::EdgeId;
use graph_of_groups::GraphOfGroups;
use rand::seq::SliceRandom;
use rand::Rng;

use crate::unfold::UnfoldWitness;

const ORDERS: [u64; 5] = [0, 2, 3, 4, 5];

/// A random morphism together with one of its (F1) violations, or `None`
/// if no violating instance turned up within a few attempts.
pub fn random_f1_instance<R: Rng + ?Sized>(rng: &mut R) -> Option<(GGMorphism, F1Witness)> {
    let cfg = RandomMorphismConfig { distinct_cosets: false, max_lifts_per_vertex: 1, ..Default::default() };
    for _ in 0..32 {
        let m = random_morphism(rng, &cfg);
        if let Some(w) = m.is_folded().f1.into_iter().next() {
            return Some((m, w));
        }
    }
    None
}

/// A random word in the factors `indices` of `g`.
fn word_in_factors<R: Rng + ?Sized>(rng: &mut R, g: &FpcGroup, indices: &[usize], len: usize) -> FpcWord {
    if indices.is_empty() {
        return FpcWord::identity();
    }
    let sub = FpcGroup::new(indices.iter().map(|&i| g.order(i)).collect()).expect("valid orders");
    let w = random_word(rng, &sub, len);
    let mapped: Vec<(usize, i64)> = w.0.iter().map(|&(f, e)| (indices[f], e)).collect();
    g.normalize(&mapped).expect("valid syllables")
}

/// A random instance for unfolding: the identity morphism of a graph of
/// groups whose vertex `u` splits as `C ∗ b_g·α_g(B_g)·b_g⁻¹ (∗ b_h·α_h(B_h)·b_h⁻¹)`
/// with conjugators in `C`, the edge `g` to unfold and the splitting witness.
pub fn random_unfold_instance<R: Rng + ?Sized>(rng: &mut R) -> (GGMorphism, EdgeId, UnfoldWitness) {
    let complement_orders: Vec<u64> = (0..rng.gen_range(0..=2)).map(|_| *ORDERS.choose(rng).expect("nonempty")).collect();
    let edge_orders: Vec<u64> = (0..rng.gen_range(1..=2)).map(|_| *ORDERS.choose(rng).expect("nonempty")).collect();
    // Factor layout of B_u: a random permutation of complement and edge factors.
    let mut slots: Vec<(bool, usize)> =
        (0..complement_orders.len()).map(|i| (true, i)).chain((0..edge_orders.len()).map(|i| (false, i))).collect();
    slots.shuffle(rng);
    let orders: Vec<u64> =
        slots.iter().map(|&(c, i)| if c { complement_orders[i] } else { edge_orders[i] }).collect();
    let bu = FpcGroup::new(orders).expect("valid orders");
    let position = |c: bool, i: usize| slots.iter().position(|&s| s == (c, i)).expect("slot");
    let c_indices: Vec<usize> = (0..complement_orders.len()).map(|i| position(true, i)).collect();

    let mut gog = GraphOfGroups::new();
    let u = gog.add_vertex("u", bu.clone()).expect("fresh id");
    let mut conjugators = Vec::new();
    let mut edges = Vec::new();
    for (i, &n) in edge_orders.iter().enumerate() {
        let mut w_orders = vec![n];
        if rng.gen_bool(0.5) {
            w_orders.push(*ORDERS.choose(rng).expect("nonempty"));
        }
        let bw = FpcGroup::new(w_orders).expect("valid orders");
        let w = gog.add_vertex(&format!("w{i}"), bw.clone()).expect("fresh id");
        let len = rng.gen_range(0..=2);
        let b = word_in_factors(rng, &bu, &c_indices, len);
        let alpha = bu.conj(&b, &bu.generator(position(false, i)));
        let e = gog
            .add_edge_with_group(&format!("g{i}"), &format!("g{i}'"), u, w, n, alpha, bw.generator(0))
            .expect("valid edge");
        if rng.gen_bool(0.5) {
            gog.add_edge(&format!("t{i}"), &format!("t{i}'"), u, w).expect("fresh ids");
        }
        conjugators.push((e, b));
        edges.push(e);
    }
    let witness = UnfoldWitness { complement: c_indices.iter().map(|&i| bu.generator(i)).collect(), conjugators };
    let g = *edges.choose(rng).expect("at least one edge");
    (GGMorphism::identity(&gog), g, witness)
}
