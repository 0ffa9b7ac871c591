//! Free products of cyclic groups and their syllable normal forms.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::gcd;

/// Errors raised by free-product arithmetic.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FpcError {
    #[error("factor {factor} has order 1; trivial factors are not allowed")]
    TrivialFactor { factor: usize },
    #[error("factor index {factor} out of range (group has {rank} factors)")]
    FactorOutOfRange { factor: usize, rank: usize },
    #[error("syllable {index} has exponent zero")]
    ZeroExponent { index: usize },
    #[error("syllable {index} has exponent {exp}, not canonical for a factor of order {order}")]
    NonCanonicalExponent { index: usize, exp: i64, order: u64 },
    #[error("syllables {index} and {next} lie in the same factor", next = index + 1)]
    AdjacentSameFactor { index: usize },
    #[error("the cyclic subgroup generator must not be the identity")]
    IdentityBase,
    #[error("homomorphism needs {expected} generator images, got {got}")]
    ImageCount { expected: usize, got: usize },
    #[error("generator {factor} has order {order} but its image has order {image_order}")]
    OrderMismatch { factor: usize, order: u64, image_order: u64 },
    #[error("homomorphisms cannot be composed: groups differ")]
    GroupMismatch,
}

/// An element of a free product of cyclic groups in syllable normal form.
///
/// Serialized as a list of `[factor, exponent]` pairs.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct FpcWord(pub Vec<(usize, i64)>);

impl FpcWord {
    /// The identity (empty word).
    pub fn identity() -> Self {
        FpcWord(Vec::new())
    }

    /// Whether this is the identity.
    pub fn is_identity(&self) -> bool {
        self.0.is_empty()
    }

    /// Syllable length.
    pub fn len(&self) -> usize {
        self.0.len()
    }

    /// Whether the word is empty (same as [`FpcWord::is_identity`]).
    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Sum of absolute exponents.
    pub fn norm(&self) -> u64 {
        self.0.iter().map(|&(_, e)| e.unsigned_abs()).sum()
    }

    /// The syllables.
    pub fn syllables(&self) -> &[(usize, i64)] {
        &self.0
    }

    /// Shifts every factor index by `offset` (embedding into a larger free
    /// product).
    pub fn shifted(&self, offset: usize) -> FpcWord {
        FpcWord(self.0.iter().map(|&(f, e)| (f + offset, e)).collect())
    }

    /// Renames factors through `map` (which must keep adjacent factors
    /// distinct, e.g. be injective).
    pub fn map_factors(&self, map: impl Fn(usize) -> usize) -> FpcWord {
        FpcWord(self.0.iter().map(|&(f, e)| (map(f), e)).collect())
    }

    /// Human-readable rendering using the given factor names; the identity
    /// is rendered as `1`.
    pub fn format_with(&self, names: &[String]) -> String {
        if self.0.is_empty() {
            return "1".to_string();
        }
        self.0
            .iter()
            .map(|&(f, e)| {
                let name = names.get(f).cloned().unwrap_or_else(|| format!("x{f}"));
                if e == 1 {
                    name
                } else {
                    format!("{name}^{e}")
                }
            })
            .collect::<Vec<_>>()
            .join(" ")
    }

    /// Comparison key used for canonical choices: syllable length, then
    /// exponent norm, then the syllables lexicographically.
    pub fn shortlex_cmp(&self, other: &FpcWord) -> Ordering {
        self.len()
            .cmp(&other.len())
            .then(self.norm().cmp(&other.norm()))
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for FpcWord {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for FpcWord {
    fn cmp(&self, other: &Self) -> Ordering {
        self.shortlex_cmp(other)
    }
}

impl fmt::Display for FpcWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.format_with(&[]))
    }
}

/// A free product of cyclic groups; `orders[i] = 0` is an infinite cyclic
/// factor, otherwise `orders[i] ≥ 2`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(try_from = "RawGroup", into = "RawGroup")]
pub struct FpcGroup {
    orders: Vec<u64>,
}

#[derive(Serialize, Deserialize)]
struct RawGroup {
    orders: Vec<u64>,
}

impl TryFrom<RawGroup> for FpcGroup {
    type Error = FpcError;
    fn try_from(raw: RawGroup) -> Result<Self, FpcError> {
        FpcGroup::new(raw.orders)
    }
}

impl From<FpcGroup> for RawGroup {
    fn from(g: FpcGroup) -> Self {
        RawGroup { orders: g.orders }
    }
}

impl FpcGroup {
    /// Builds the free product with the given factor orders.
    pub fn new(orders: Vec<u64>) -> Result<Self, FpcError> {
        if let Some(factor) = orders.iter().position(|&p| p == 1) {
            return Err(FpcError::TrivialFactor { factor });
        }
        Ok(FpcGroup { orders })
    }

    /// The trivial group (no factors).
    pub fn trivial() -> Self {
        FpcGroup { orders: Vec::new() }
    }

    /// A single cyclic factor of order `p` (`0` for `Z`); `p = 1` gives the
    /// trivial group.
    pub fn cyclic(p: u64) -> Self {
        if p == 1 {
            Self::trivial()
        } else {
            FpcGroup { orders: vec![p] }
        }
    }

    /// The free group of rank `n`.
    pub fn free(n: usize) -> Self {
        FpcGroup { orders: vec![0; n] }
    }

    /// Factor orders.
    pub fn orders(&self) -> &[u64] {
        &self.orders
    }

    /// Number of factors (the rank of the free product).
    pub fn rank(&self) -> usize {
        self.orders.len()
    }

    /// Order of factor `f` (`0` = infinite).
    pub fn order(&self, f: usize) -> u64 {
        self.orders[f]
    }

    /// Number of finite factors.
    pub fn finite_factor_count(&self) -> usize {
        self.orders.iter().filter(|&&p| p != 0).count()
    }

    /// The free product `self ∗ other`; factors of `other` are shifted by
    /// `self.rank()`.
    pub fn free_product(&self, other: &FpcGroup) -> FpcGroup {
        let mut orders = self.orders.clone();
        orders.extend_from_slice(&other.orders);
        FpcGroup { orders }
    }

    /// Group cardinality if finite.
    pub fn cardinality(&self) -> Option<u64> {
        match self.orders.as_slice() {
            [] => Some(1),
            [p] if *p > 0 => Some(*p),
            _ => None,
        }
    }

    /// All elements, if the group is finite.
    pub fn elements(&self) -> Option<Vec<FpcWord>> {
        match self.orders.as_slice() {
            [] => Some(vec![FpcWord::identity()]),
            [p] if *p > 0 => Some((0..*p as i64).map(|k| self.syllable(0, k)).collect()),
            _ => None,
        }
    }

    fn reduce_exp(&self, f: usize, e: i64) -> i64 {
        match self.orders[f] {
            0 => e,
            p => e.rem_euclid(p as i64),
        }
    }

    /// The normal form of `x_f^e`.
    pub fn syllable(&self, f: usize, e: i64) -> FpcWord {
        let e = self.reduce_exp(f, e);
        if e == 0 {
            FpcWord::identity()
        } else {
            FpcWord(vec![(f, e)])
        }
    }

    /// The generator of factor `f`.
    pub fn generator(&self, f: usize) -> FpcWord {
        self.syllable(f, 1)
    }

    /// Checks that `w` is a normal-form word of this group.
    pub fn validate(&self, w: &FpcWord) -> Result<(), FpcError> {
        for (index, &(f, e)) in w.0.iter().enumerate() {
            if f >= self.rank() {
                return Err(FpcError::FactorOutOfRange { factor: f, rank: self.rank() });
            }
            if e == 0 {
                return Err(FpcError::ZeroExponent { index });
            }
            let p = self.orders[f];
            if p != 0 && !(1..p as i64).contains(&e) {
                return Err(FpcError::NonCanonicalExponent { index, exp: e, order: p });
            }
            if index + 1 < w.0.len() && w.0[index + 1].0 == f {
                return Err(FpcError::AdjacentSameFactor { index });
            }
        }
        Ok(())
    }

    /// Normal form of an arbitrary product of syllables.
    pub fn normalize(&self, raw: &[(usize, i64)]) -> Result<FpcWord, FpcError> {
        let mut out = Vec::with_capacity(raw.len());
        for &(f, e) in raw {
            if f >= self.rank() {
                return Err(FpcError::FactorOutOfRange { factor: f, rank: self.rank() });
            }
            self.push(&mut out, f, e);
        }
        Ok(FpcWord(out))
    }

    fn push(&self, out: &mut Vec<(usize, i64)>, f: usize, e: i64) {
        let e = self.reduce_exp(f, e);
        if e == 0 {
            return;
        }
        match out.last_mut() {
            Some(last) if last.0 == f => {
                let merged = self.reduce_exp(f, last.1 + e);
                if merged == 0 {
                    out.pop();
                } else {
                    last.1 = merged;
                }
            }
            _ => out.push((f, e)),
        }
    }

    /// Product `a·b`.
    pub fn mul(&self, a: &FpcWord, b: &FpcWord) -> FpcWord {
        let mut out = a.0.clone();
        for &(f, e) in &b.0 {
            self.push(&mut out, f, e);
        }
        FpcWord(out)
    }

    /// Product of a sequence of words.
    pub fn product<'a>(&self, words: impl IntoIterator<Item = &'a FpcWord>) -> FpcWord {
        let mut out = Vec::new();
        for w in words {
            for &(f, e) in &w.0 {
                self.push(&mut out, f, e);
            }
        }
        FpcWord(out)
    }

    /// Inverse `a⁻¹`.
    pub fn inv(&self, a: &FpcWord) -> FpcWord {
        FpcWord(a.0.iter().rev().map(|&(f, e)| (f, self.reduce_exp(f, -e))).collect())
    }

    /// Conjugate `g·a·g⁻¹`.
    pub fn conj(&self, g: &FpcWord, a: &FpcWord) -> FpcWord {
        self.product([g, a, &self.inv(g)])
    }

    /// Commutator `[a, b] = a·b·a⁻¹·b⁻¹`.
    pub fn commutator(&self, a: &FpcWord, b: &FpcWord) -> FpcWord {
        self.product([a, b, &self.inv(a), &self.inv(b)])
    }

    /// Power `aⁿ` for any integer `n`.
    pub fn pow(&self, a: &FpcWord, n: i64) -> FpcWord {
        if n == 0 || a.is_identity() {
            return FpcWord::identity();
        }
        let (u, core) = self.cyclic_reduce(a);
        let core_pow = if core.len() == 1 {
            let (f, e) = core.0[0];
            match self.orders[f] {
                0 => self.syllable(f, e * n),
                p => {
                    let prod = (e as i128 * n as i128).rem_euclid(p as i128) as i64;
                    self.syllable(f, prod)
                }
            }
        } else {
            let base = if n > 0 { core.clone() } else { self.inv(&core) };
            let mut out = Vec::with_capacity(base.len() * n.unsigned_abs() as usize);
            for _ in 0..n.unsigned_abs() {
                out.extend_from_slice(&base.0);
            }
            FpcWord(out)
        };
        self.conj(&u, &core_pow)
    }

    /// Writes `w = u·c·u⁻¹` with `c` cyclically reduced (first and last
    /// syllables in different factors, or `|c| ≤ 1`); returns `(u, c)`.
    pub fn cyclic_reduce(&self, w: &FpcWord) -> (FpcWord, FpcWord) {
        let mut u: Vec<(usize, i64)> = Vec::new();
        let mut core: std::collections::VecDeque<(usize, i64)> = w.0.iter().copied().collect();
        while core.len() >= 2 && core.front().map(|s| s.0) == core.back().map(|s| s.0) {
            let (f, e) = core.pop_front().expect("length checked");
            u.push((f, e));
            let (_, last) = core.pop_back().expect("length checked");
            let merged = self.reduce_exp(f, last + e);
            if merged != 0 {
                core.push_back((f, merged));
            }
        }
        (FpcWord(u), FpcWord(core.into_iter().collect()))
    }

    /// Element order; `0` means infinite.
    pub fn order_of(&self, w: &FpcWord) -> u64 {
        let (_, core) = self.cyclic_reduce(w);
        match core.0.as_slice() {
            [] => 1,
            [(f, e)] => match self.orders[*f] {
                0 => 0,
                p => p / gcd(p, e.unsigned_abs()),
            },
            _ => 0,
        }
    }

    /// Solves `w = tⁿ`.  For `t` of finite order `m` the smallest
    /// non-negative solution modulo `m` is returned.
    pub fn is_power_of(&self, w: &FpcWord, t: &FpcWord) -> Result<Option<i64>, FpcError> {
        if t.is_identity() {
            return if w.is_identity() { Ok(Some(0)) } else { Err(FpcError::IdentityBase) };
        }
        if w.is_identity() {
            return Ok(Some(0));
        }
        let (u, core) = self.cyclic_reduce(t);
        let w_core = self.product([&self.inv(&u), w, &u]);
        if core.len() == 1 {
            let (f, e) = core.0[0];
            let k = match w_core.0.as_slice() {
                [(g, k)] if *g == f => *k,
                _ => return Ok(None),
            };
            return Ok(match self.orders[f] {
                0 => (k % e == 0).then_some(k / e),
                p => solve_congruence(e, k, p as i64),
            });
        }
        if w_core.len() % core.len() != 0 {
            return Ok(None);
        }
        let m = (w_core.len() / core.len()) as i64;
        for n in [m, -m] {
            if self.pow(&core, n) == w_core {
                return Ok(Some(n));
            }
        }
        Ok(None)
    }

    /// Canonical representative of the right coset `w·⟨t⟩`: the element
    /// `rep = w·t⁻ⁿ` minimal for [`FpcWord::shortlex_cmp`].  Returns
    /// `(rep, n)` with `w = rep·tⁿ`.
    pub fn coset_min_rep(&self, w: &FpcWord, t: &FpcWord) -> Result<(FpcWord, i64), FpcError> {
        if t.is_identity() {
            return Err(FpcError::IdentityBase);
        }
        let order = self.order_of(t);
        let candidates: Vec<i64> = if order > 0 {
            (0..order as i64).collect()
        } else {
            let (u, core) = self.cyclic_reduce(t);
            let x = self.mul(w, &u);
            if core.len() >= 2 {
                let bound = ((w.len() + x.len() + u.len() + 2) / core.len() + 2) as i64;
                (-bound..=bound).collect()
            } else {
                let (f, e) = core.0[0];
                let k = match x.0.last() {
                    Some(&(g, k)) if g == f => k,
                    _ => 0,
                };
                let centre = -k / e;
                (centre - 2..=centre + 2).collect()
            }
        };
        let mut best: Option<(FpcWord, i64)> = None;
        for m in candidates {
            let cand = self.mul(w, &self.pow(t, m));
            if best.as_ref().is_none_or(|(b, _)| cand.shortlex_cmp(b) == Ordering::Less) {
                best = Some((cand, m));
            }
        }
        let (rep, m) = best.expect("candidate list is never empty");
        let n = if order > 0 { (-m).rem_euclid(order as i64) } else { -m };
        Ok((rep, n))
    }
}

/// Smallest `n ∈ [0, p)` with `e·n ≡ k (mod p)`, if any.
fn solve_congruence(e: i64, k: i64, p: i64) -> Option<i64> {
    let g = gcd(e.rem_euclid(p) as u64, p as u64) as i64;
    let g = if g == 0 { p } else { g };
    if k.rem_euclid(g) != 0 {
        return None;
    }
    let m = p / g;
    let (e1, k1) = ((e / g).rem_euclid(m), (k / g).rem_euclid(m));
    if m == 1 {
        return Some(0);
    }
    let inv = mod_inverse(e1, m)?;
    Some(((k1 as i128 * inv as i128).rem_euclid(m as i128)) as i64)
}

fn mod_inverse(a: i64, m: i64) -> Option<i64> {
    let (mut old_r, mut r) = (a, m);
    let (mut old_s, mut s) = (1i64, 0i64);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
    }
    (old_r == 1).then(|| old_s.rem_euclid(m))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn congruences() {
        assert_eq!(solve_congruence(2, 4, 6), Some(2));
        assert_eq!(solve_congruence(2, 3, 6), None);
        assert_eq!(solve_congruence(3, 2, 7), Some(3));
        assert_eq!(solve_congruence(5, 0, 5), Some(0));
    }

    #[test]
    fn cyclic_reduce_conjugates_back() {
        let g = FpcGroup::free(2);
        let w = g.normalize(&[(0, 1), (1, 2), (0, 3), (1, -1), (0, -1)]).unwrap();
        let (u, c) = g.cyclic_reduce(&w);
        assert_eq!(g.conj(&u, &c), w);
        assert!(c.len() < 2 || c.0[0].0 != c.0[c.len() - 1].0);
    }
}
