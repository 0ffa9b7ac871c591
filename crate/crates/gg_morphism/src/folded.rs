//! The folded conditions (F0)–(F2) and local surjectivity.

use std::collections::HashSet;

use fpc_words::{FpcWord, Injectivity, Preimage};
use graph_core::{EdgeId, VertexId};
use serde::{Deserialize, Serialize};

use crate::morphism::GGMorphism;

/// Default bound for searches over infinite cyclic edge groups (number of
/// exponents tried on each side of zero).
pub const SEARCH_BOUND: usize = 32;

/// Default state bound for preimage searches.
const MAX_STATES: usize = 1 << 12;

/// An (F1) violation: `o_{f2} = φ_x(b)·o_{f1}·α_e(cⁿ)` with `n = c_exp`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct F1Witness {
    pub f1: EdgeId,
    pub f2: EdgeId,
    pub b: FpcWord,
    pub c_exp: i64,
}

/// An (F2) violation: `b ∉ α_f(B_f)` with `o_f⁻¹·φ(b)·o_f ∈ α_{φ(f)}(A_{φ(f)})`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct F2Witness {
    pub f: EdgeId,
    pub b: FpcWord,
}

/// Outcome of the folded test with all witnesses found.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct FoldReport {
    /// Vertices with non-injective vertex homomorphism and a kernel element.
    pub f0: Vec<(VertexId, FpcWord)>,
    pub f1: Vec<F1Witness>,
    pub f2: Vec<F2Witness>,
    /// Checks whose bounded search was inconclusive.
    pub undecided: Vec<String>,
}

/// Three-valued verdict.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum FoldVerdict {
    Folded,
    NotFolded,
    Unknown,
}

impl FoldReport {
    /// Overall verdict: a single witness makes the morphism not folded.
    pub fn verdict(&self) -> FoldVerdict {
        if !self.f0.is_empty() || !self.f1.is_empty() || !self.f2.is_empty() {
            FoldVerdict::NotFolded
        } else if self.undecided.is_empty() {
            FoldVerdict::Folded
        } else {
            FoldVerdict::Unknown
        }
    }
}

/// Covering data of the local-surjectivity test at one source vertex.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LocalSurjectivity {
    pub surjective: bool,
    /// For every target edge `e ∈ st(φ(x))`: the source edges over it and
    /// whether their double cosets cover `A_{φ(x)}`.
    pub per_edge: Vec<(EdgeId, Vec<EdgeId>, bool)>,
}

impl GGMorphism {
    /// Exponents of the edge-group generator to try for a target edge group
    /// of order `n`, and whether the enumeration is exhaustive.
    fn edge_group_exponents(n: u64, bound: usize) -> (Vec<i64>, bool) {
        match n {
            1 => (vec![0], true),
            0 => {
                let b = bound as i64;
                let mut v = vec![0];
                for j in 1..=b {
                    v.extend([j, -j]);
                }
                (v, false)
            }
            n => ((0..n as i64).collect(), true),
        }
    }

    /// Checks (F0)–(F2) with default search bounds.
    pub fn is_folded(&self) -> FoldReport {
        self.is_folded_with(SEARCH_BOUND, MAX_STATES)
    }

    /// Checks (F0)–(F2); searches over infinite edge groups try exponents
    /// up to `bound` and preimage searches visit at most `max_states`
    /// elements.
    pub fn is_folded_with(&self, bound: usize, max_states: usize) -> FoldReport {
        let (s, t) = (&self.source, &self.target);
        let (sg, tg) = (s.graph(), t.graph());
        let mut report = FoldReport::default();
        let mut injective = vec![true; sg.vertex_count()];
        for u in sg.vertices() {
            match self.vertex_homs[u].injectivity() {
                Injectivity::Injective => {}
                Injectivity::NotInjective(w) => {
                    injective[u] = false;
                    report.f0.push((u, w));
                }
                Injectivity::Unknown => {
                    injective[u] = false;
                    report.undecided.push(format!("F0 at vertex {}", sg.vertex_name(u)));
                }
            }
        }
        // (F1)
        for f1 in sg.edges() {
            for f2 in f1 + 1..sg.edge_count() {
                if sg.alpha(f1) != sg.alpha(f2) || self.edge_map[f1] != self.edge_map[f2] {
                    continue;
                }
                let x = sg.alpha(f1);
                let e = self.edge_map[f1];
                let a = t.vertex_group(tg.alpha(e));
                let o1_inv = a.inv(&self.o[f1]);
                let (exps, exhaustive) = Self::edge_group_exponents(t.edge_order(e), bound);
                let mut inconclusive = !exhaustive;
                let mut found = None;
                for c in exps {
                    let y = a.product([&self.o[f2], &t.boundary_pow(e, -c), &o1_inv]);
                    match self.vertex_homs[x].preimage(&y, max_states) {
                        Preimage::Found(b) => {
                            found = Some(F1Witness { f1, f2, b, c_exp: c });
                            break;
                        }
                        Preimage::NotInImage => {}
                        Preimage::Unknown => inconclusive = true,
                    }
                }
                match found {
                    Some(w) => report.f1.push(w),
                    None if inconclusive => report
                        .undecided
                        .push(format!("F1 for edges {}, {}", sg.edge_name(f1), sg.edge_name(f2))),
                    None => {}
                }
            }
        }
        // (F2)
        for f in sg.edges() {
            let x = sg.alpha(f);
            let e = self.edge_map[f];
            let n = t.edge_order(e);
            let a = t.vertex_group(tg.alpha(e));
            let bx = s.vertex_group(x);
            let in_edge_image = |b: &FpcWord| -> bool {
                if s.edge_is_trivial(f) {
                    b.is_identity()
                } else {
                    bx.is_power_of(b, s.boundary(f)).ok().flatten().is_some()
                }
            };
            if n == 1 {
                if let Some((_, w)) = report.f0.iter().find(|(u, _)| *u == x) {
                    if !in_edge_image(w) {
                        report.f2.push(F2Witness { f, b: w.clone() });
                    }
                }
                continue;
            }
            let k = self.edge_exps[f];
            let index = crate::complexity::edge_index(n, k);
            if index == Some(1) {
                continue;
            }
            let (range, exhaustive): (Vec<i64>, bool) = match index {
                Some(d) => ((1..d as i64).collect(), true),
                None => ((1..=bound as i64).flat_map(|j| [j, -j]).collect(), false),
            };
            let mut inconclusive = !exhaustive;
            let mut found = None;
            for j in range {
                let y = a.conj(&self.o[f], &t.boundary_pow(e, j));
                match self.vertex_homs[x].preimage(&y, max_states) {
                    Preimage::Found(b) if !in_edge_image(&b) => {
                        found = Some(F2Witness { f, b });
                        break;
                    }
                    Preimage::Found(_) | Preimage::NotInImage => {}
                    Preimage::Unknown => inconclusive = true,
                }
            }
            match found {
                Some(w) => report.f2.push(w),
                None if inconclusive => report.undecided.push(format!("F2 for edge {}", sg.edge_name(f))),
                None => {}
            }
        }
        report
    }

    /// Whether `A_{φ(x)} = ⋃_{f ∈ S_e} φ_x(B_x)·o_f·α_e(A_e)` for every
    /// `e ∈ st(φ(x))`, where `S_e` are the source edges at `x` over `e`.
    /// Requires a finite target vertex group.
    pub fn is_locally_surjective(&self, x: VertexId) -> Result<LocalSurjectivity, String> {
        let (sg, tg) = (self.source.graph(), self.target.graph());
        let v = self.vertex_map[x];
        let a = self.target.vertex_group(v);
        let all = a
            .elements()
            .ok_or_else(|| format!("vertex group of {} is infinite; covering is undecidable here", tg.vertex_name(v)))?;
        let image = self.vertex_homs[x]
            .image_elements(all.len())
            .expect("subgroup of a finite group");
        let mut per_edge = Vec::new();
        let mut surjective = true;
        for &e in tg.star(v) {
            let over: Vec<EdgeId> = sg.star(x).iter().copied().filter(|&f| self.edge_map[f] == e).collect();
            let edge_elems: Vec<FpcWord> = match self.target.edge_order(e) {
                0 => return Err(format!("edge group of {} is infinite", tg.edge_name(e))),
                n => (0..n as i64).map(|j| self.target.boundary_pow(e, j)).collect(),
            };
            let mut covered: HashSet<FpcWord> = HashSet::new();
            for &f in &over {
                for h in &image {
                    for c in &edge_elems {
                        covered.insert(a.product([h, &self.o[f], c]));
                    }
                }
            }
            let ok = covered.len() == all.len();
            surjective &= ok;
            per_edge.push((e, over, ok));
        }
        Ok(LocalSurjectivity { surjective, per_edge })
    }
}
