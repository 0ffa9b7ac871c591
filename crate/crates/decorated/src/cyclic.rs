//! Exponent arithmetic in the cyclic vertex groups `A_v = ⟨s_v⟩` of
//! `𝔸^𝒪`.

use fpc_words::{gcd, FpcWord};

/// View of a cyclic group `Z_p` (`p = 1` for the trivial group) through
/// exponents of its generator `s`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) struct Cyclic {
    pub p: u64,
}

impl Cyclic {
    /// Exponent of `w = s^k`, reduced to `0..p` (always `0` for `p = 1`;
    /// unreduced for the infinite cyclic group `p = 0`).
    pub fn exp(&self, w: &FpcWord) -> i64 {
        let k: i64 = w.syllables().iter().map(|&(_, e)| e).sum();
        self.reduce(k)
    }

    pub fn reduce(&self, k: i64) -> i64 {
        match self.p {
            0 => k,
            p => k.rem_euclid(p as i64),
        }
    }

    /// The word `s^k`.
    pub fn elem(&self, k: i64) -> FpcWord {
        let k = self.reduce(k);
        if k == 0 {
            FpcWord::identity()
        } else {
            FpcWord(vec![(0, k)])
        }
    }

    /// Generator exponent `d` of the subgroup generated by the given
    /// exponents (`d` divides `p`; `d = p` for the trivial subgroup).
    pub fn subgroup(&self, exps: impl IntoIterator<Item = i64>) -> u64 {
        exps.into_iter().fold(self.p, |d, e| gcd(d, e.unsigned_abs()))
    }

    /// Whether `s^k` lies in the subgroup `⟨s^d⟩`.
    pub fn contains(&self, d: u64, k: i64) -> bool {
        let k = self.reduce(k);
        if d == 0 {
            k == 0
        } else {
            k.rem_euclid(d as i64) == 0
        }
    }
}
