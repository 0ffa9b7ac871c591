//! Complexity measures of a morphism: `c = (rk, rk − tn, |EB|)` and
//! `d = (|𝔹|_c, c_E)`.

use std::cmp::Ordering;

use graph_core::VertexId;
use graph_of_groups::GraphOfGroups;
use serde::{Deserialize, Serialize};

use crate::morphism::GGMorphism;

/// Index of `⟨c^k⟩` in a cyclic group `⟨c⟩` of order `n` (`0` = infinite);
/// `None` for infinite index.
pub fn edge_index(n: u64, k: i64) -> Option<u64> {
    match n {
        1 => Some(1),
        0 => (k != 0).then(|| k.unsigned_abs()),
        n => Some(fpc_words::gcd(k.unsigned_abs() % n, n)),
    }
}

/// Complexity data of a morphism (or of a graph of groups alone).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComplexityReport {
    /// Rank of `π1(𝔹)` when visibly a free product of cyclic groups.
    pub rank: Option<usize>,
    /// Number of finite factors in that decomposition.
    pub torsion: Option<usize>,
    /// Number of oriented edges `|EB|`.
    pub edge_count: usize,
    /// `(rk, rk − tn, |EB|)`.
    pub c: Option<(usize, usize, usize)>,
    /// Number of edge pairs with nontrivial group.
    pub nontrivial_edge_pairs: usize,
    /// `½ Σ_f |A_{φ(f)} : φ_f(B_f)|` over edges with nontrivial group.
    pub c_e: Option<u64>,
}

impl ComplexityReport {
    /// Measures of a graph of groups without a morphism (`c_E` is absent).
    pub fn of_gog(gog: &GraphOfGroups, base: VertexId) -> Self {
        let rt = gog.rank_and_torsion(base);
        let edge_count = gog.graph().edge_count();
        let nontrivial = gog.graph().positive_edges().filter(|&e| !gog.edge_is_trivial(e)).count();
        ComplexityReport {
            rank: rt.map(|x| x.0),
            torsion: rt.map(|x| x.1),
            edge_count,
            c: rt.map(|(r, tn)| (r, r - tn, edge_count)),
            nontrivial_edge_pairs: nontrivial,
            c_e: if nontrivial == 0 { Some(0) } else { None },
        }
    }

    /// `d = (|𝔹|_c, c_E)`.
    pub fn d(&self) -> Option<(usize, u64)> {
        self.c_e.map(|c| (self.nontrivial_edge_pairs, c))
    }

    /// Lexicographic comparison of the `c` triples.
    pub fn cmp_c(&self, other: &Self) -> Option<Ordering> {
        Some(self.c?.cmp(&other.c?))
    }

    /// Lexicographic comparison of the `d` pairs.
    pub fn cmp_d(&self, other: &Self) -> Option<Ordering> {
        Some(self.d()?.cmp(&other.d()?))
    }
}

impl GGMorphism {
    /// Complexity of the morphism, with rank counted at `base`.
    pub fn complexity(&self, base: VertexId) -> ComplexityReport {
        let mut report = ComplexityReport::of_gog(&self.source, base);
        let sg = self.source.graph();
        let mut total = Some(0u64);
        for f in sg.positive_edges() {
            if self.source.edge_is_trivial(f) {
                continue;
            }
            let index = edge_index(self.target.edge_order(self.edge_map[f]), self.edge_exps[f]);
            total = match (total, index) {
                (Some(a), Some(b)) => Some(a + b),
                _ => None,
            };
        }
        report.c_e = total;
        report
    }
}
