//! The standard presentation
//! `⟨a_1, …, a_p, t_1, …, t_q, s_1, …, s_r | s_i^{p_i}, R·s_1⋯s_r = t_1⋯t_q⟩`
//! and, for `q ≥ 1`, the free-product model
//! `F(a_1, …, a_p, t_1, …, t_{q−1}) ∗ ⟨s_1⟩ ∗ ⋯ ∗ ⟨s_r⟩`.

use std::fmt;

use fpc_words::{FpcGroup, FpcWord};
use serde::{Deserialize, Serialize};

use crate::spec::OrbifoldSpec;

/// A word in the presentation generators, as `(generator index, exponent)`
/// syllables.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PresWord(pub Vec<(usize, i64)>);

impl PresWord {
    /// The free reduction of the concatenation of `parts`.
    pub fn product<'a>(parts: impl IntoIterator<Item = &'a PresWord>) -> PresWord {
        let mut out: Vec<(usize, i64)> = Vec::new();
        for &(g, e) in parts.into_iter().flat_map(|w| w.0.iter()) {
            match out.last_mut() {
                Some((h, f)) if *h == g => {
                    *f += e;
                    if *f == 0 {
                        out.pop();
                    }
                }
                _ if e != 0 => out.push((g, e)),
                _ => {}
            }
        }
        PresWord(out)
    }

    /// Formal inverse.
    pub fn inverse(&self) -> PresWord {
        PresWord(self.0.iter().rev().map(|&(g, e)| (g, -e)).collect())
    }

    /// Renders the word with generator names (`1` for the empty word).
    pub fn format_with(&self, names: &[String]) -> String {
        if self.0.is_empty() {
            return "1".into();
        }
        self.0
            .iter()
            .map(|&(g, e)| if e == 1 { names[g].clone() } else { format!("{}^{e}", names[g]) })
            .collect::<Vec<_>>()
            .join("")
    }
}

/// The free-product model of the group of an orbifold with boundary.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FpcModel {
    pub group: FpcGroup,
    /// Names of the factors: `a`'s, `t_1 … t_{q−1}`, `s`'s.
    pub factor_names: Vec<String>,
    /// Image of every presentation generator (in presentation order).
    pub generator_images: Vec<FpcWord>,
}

impl FpcModel {
    /// Evaluates a presentation word in the model.
    pub fn eval(&self, w: &PresWord) -> FpcWord {
        let g = &self.group;
        w.0.iter().fold(FpcWord::identity(), |acc, &(i, e)| g.mul(&acc, &g.pow(&self.generator_images[i], e)))
    }
}

/// The presentation of `π1^o(𝒪)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrbifoldPresentation {
    pub spec: OrbifoldSpec,
    /// `a`'s (`a1, b1, a2, b2, …` when orientable), then `t`'s, then `s`'s.
    pub generators: Vec<String>,
    /// `s_i^{p_i}` followed by the long relator `R·s_1⋯s_r·(t_1⋯t_q)⁻¹`.
    pub relators: Vec<PresWord>,
    /// Left side `R·s_1⋯s_r` of the long relation.
    pub long_lhs: PresWord,
    /// Right side `t_1⋯t_q` of the long relation.
    pub long_rhs: PresWord,
    /// Present exactly when `q ≥ 1`.
    pub fpc_model: Option<FpcModel>,
}

impl OrbifoldPresentation {
    /// Index of the generator called `name`.
    pub fn generator(&self, name: &str) -> Option<usize> {
        self.generators.iter().position(|g| g == name)
    }

    /// Indices of the surface generators `a`, boundary generators `t` and
    /// cone generators `s`.
    pub fn blocks(&self) -> (std::ops::Range<usize>, std::ops::Range<usize>, std::ops::Range<usize>) {
        let p = self.spec.surface_generator_count();
        let q = self.spec.boundary_count;
        let r = self.spec.cone_count();
        (0..p, p..p + q, p + q..p + q + r)
    }

    /// The surface word `R`.
    pub fn surface_word(&self) -> PresWord {
        let (a, _, _) = self.blocks();
        surface_relator(&self.spec, a.start)
    }

    fn format_surface_word(&self) -> String {
        let g = &self.generators;
        let (a, _, _) = self.blocks();
        let parts: Vec<String> = if self.spec.orientable {
            a.step_by(2).map(|i| format!("[{},{}]", g[i], g[i + 1])).collect()
        } else {
            a.map(|i| format!("{}^2", g[i])).collect()
        };
        parts.join("")
    }
}

impl fmt::Display for OrbifoldPresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (_, t, s) = self.blocks();
        let mut rels: Vec<String> = s
            .clone()
            .zip(&self.spec.cone_orders)
            .map(|(i, p)| format!("{}^{p}", self.generators[i]))
            .collect();
        let mut lhs = self.format_surface_word();
        for i in s {
            lhs.push_str(&self.generators[i]);
        }
        if t.is_empty() {
            rels.push(if lhs.is_empty() { "1".into() } else { lhs });
        } else {
            let rhs: String = t.map(|i| self.generators[i].clone()).collect();
            rels.push(format!("{} = {rhs}", if lhs.is_empty() { "1" } else { &lhs }));
        }
        write!(f, "⟨{} | {}⟩", self.generators.join(", "), rels.join(", "))
    }
}

/// `R = [a_1,b_1]⋯[a_g,b_g]` (orientable) or `a_1²⋯a_p²`, with the `a`
/// block starting at generator `offset`.  `[x,y] = x·y·x⁻¹·y⁻¹`.
fn surface_relator(spec: &OrbifoldSpec, offset: usize) -> PresWord {
    let p = spec.surface_generator_count();
    let mut syl = Vec::new();
    if spec.orientable {
        for i in (0..p).step_by(2) {
            let (x, y) = (offset + i, offset + i + 1);
            syl.extend([(x, 1), (y, 1), (x, -1), (y, -1)]);
        }
    } else {
        syl.extend((0..p).map(|i| (offset + i, 2)));
    }
    PresWord(syl)
}

/// The presentation of `spec` (which should be valid, see
/// [`OrbifoldSpec::validate`]).
pub fn presentation(spec: &OrbifoldSpec) -> OrbifoldPresentation {
    let p = spec.surface_generator_count();
    let q = spec.boundary_count;
    let r = spec.cone_count();
    let mut generators: Vec<String> = if spec.orientable {
        (1..=spec.genus).flat_map(|i| [format!("a{i}"), format!("b{i}")]).collect()
    } else {
        (1..=p).map(|i| format!("a{i}")).collect()
    };
    generators.extend((1..=q).map(|j| format!("t{j}")));
    generators.extend((1..=r).map(|i| format!("s{i}")));
    let (t0, s0) = (p, p + q);

    let mut relators: Vec<PresWord> =
        spec.cone_orders.iter().enumerate().map(|(i, &o)| PresWord(vec![(s0 + i, o as i64)])).collect();
    let s_word = PresWord((0..r).map(|i| (s0 + i, 1)).collect());
    let long_lhs = PresWord::product([&surface_relator(spec, 0), &s_word]);
    let long_rhs = PresWord((0..q).map(|j| (t0 + j, 1)).collect());
    relators.push(PresWord::product([&long_lhs, &long_rhs.inverse()]));

    let fpc_model = (q >= 1).then(|| {
        // Factors: a's, t_1 … t_{q−1} (infinite cyclic), s's.
        let mut orders = vec![0u64; p + q - 1];
        orders.extend_from_slice(&spec.cone_orders);
        let group = FpcGroup::new(orders).expect("cone orders are at least 2");
        let mut factor_names: Vec<String> = generators[..p + q - 1].to_vec();
        factor_names.extend_from_slice(&generators[s0..]);
        let mut images: Vec<FpcWord> = (0..p + q - 1).map(|i| group.generator(i)).collect();
        images.push(FpcWord::identity()); // t_q, filled in below
        images.extend((0..r).map(|i| group.generator(p + q - 1 + i)));
        // t_q = (t_1⋯t_{q−1})⁻¹·R·s_1⋯s_r.
        let partial = FpcModel { group: group.clone(), factor_names: factor_names.clone(), generator_images: images };
        let head = PresWord((0..q - 1).map(|j| (t0 + j, 1)).collect());
        let tq = partial.eval(&PresWord::product([&head.inverse(), &long_lhs]));
        let mut generator_images = partial.generator_images;
        generator_images[t0 + q - 1] = tq;
        FpcModel { group, factor_names, generator_images }
    });
    OrbifoldPresentation { spec: spec.clone(), generators, relators, long_lhs, long_rhs, fpc_model }
}
