//! Exact arithmetic in free products of cyclic groups
//! `Z_{p_1} ∗ … ∗ Z_{p_n}` (an order of `0` denotes an infinite cyclic
//! factor).
//!
//! Elements are kept in syllable normal form ([`FpcWord`]): a list of
//! `(factor, exponent)` pairs with distinct adjacent factors and exponents
//! reduced to `1..p-1` for finite factors.  On top of the group arithmetic
//! the crate decides membership in cyclic subgroups ([`FpcGroup::is_power_of`]),
//! picks canonical right-coset representatives modulo cyclic subgroups
//! ([`FpcGroup::coset_min_rep`]) and provides homomorphisms between such
//! groups ([`FpcHom`]) with injectivity and preimage searches.

mod group;
mod hom;
pub mod random;

pub use group::{FpcError, FpcGroup, FpcWord};
pub use hom::{FpcHom, Injectivity, Preimage};

/// Greatest common divisor of two non-negative integers (`gcd(0, n) = n`).
pub fn gcd(a: u64, b: u64) -> u64 {
    let (mut a, mut b) = (a, b);
    while b != 0 {
        let r = a % b;
        a = b;
        b = r;
    }
    a
}
