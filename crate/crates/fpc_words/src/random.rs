//! Random groups and words for property tests and generated instances.

use rand::Rng;

use crate::group::{FpcGroup, FpcWord};

/// A random free product with `1..=max_rank` factors whose orders are drawn
/// from `{0, 2, …, max_order}` (`0` with probability about one third).
pub fn random_group<R: Rng + ?Sized>(rng: &mut R, max_rank: usize, max_order: u64) -> FpcGroup {
    let rank = rng.gen_range(1..=max_rank.max(1));
    let orders = (0..rank)
        .map(|_| if rng.gen_bool(1.0 / 3.0) { 0 } else { rng.gen_range(2..=max_order.max(2)) })
        .collect();
    FpcGroup::new(orders).expect("orders are 0 or at least 2")
}

/// A random normal-form word obtained by multiplying `len` random syllables
/// (so the result may be shorter than `len`).  Exponents of infinite
/// factors lie in `-3..=3`.
pub fn random_word<R: Rng + ?Sized>(rng: &mut R, g: &FpcGroup, len: usize) -> FpcWord {
    if g.rank() == 0 {
        return FpcWord::identity();
    }
    let mut raw = Vec::with_capacity(len);
    for _ in 0..len {
        let f = rng.gen_range(0..g.rank());
        let e = match g.order(f) {
            0 => {
                let e: i64 = rng.gen_range(1..=3);
                if rng.gen_bool(0.5) {
                    -e
                } else {
                    e
                }
            }
            p => rng.gen_range(1..p as i64),
        };
        raw.push((f, e));
    }
    g.normalize(&raw).expect("factor indices in range")
}
