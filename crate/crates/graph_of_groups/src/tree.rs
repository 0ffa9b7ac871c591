//! Free-product decompositions of `π1` by collapsing a spanning tree, and
//! rank/torsion counts.

use std::collections::HashSet;

use fpc_words::{FpcGroup, FpcWord};
use graph_core::{EdgeId, SpanningTree, VertexId};

use crate::gog::{GogError, GraphOfGroups};
use crate::path::APath;

/// For trivial edge groups, `π1(𝔸, base)` is the free product of the
/// vertex groups of the base component (conjugated along tree paths) and
/// one infinite cyclic factor per non-tree edge pair.  This records that
/// isomorphism in both directions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TreeBasis {
    /// Base vertex.
    pub base: VertexId,
    /// The free product model.
    pub group: FpcGroup,
    /// Names of the model's factors.
    pub names: Vec<String>,
    /// First model factor of each vertex group (`None` outside the base
    /// component).
    pub vertex_offset: Vec<Option<usize>>,
    /// Model factor of each non-tree edge (positive edges only).
    pub edge_letter: Vec<Option<usize>>,
    /// The spanning tree used.
    pub tree: SpanningTree,
}

impl TreeBasis {
    /// Builds the basis; every edge group of the base component must be
    /// trivial.
    pub fn new(gog: &GraphOfGroups, base: VertexId) -> Result<Self, GogError> {
        let g = gog.graph();
        let tree = g.spanning_tree(base);
        let mut orders = Vec::new();
        let mut names = Vec::new();
        let mut vertex_offset = vec![None; g.vertex_count()];
        for &v in &tree.order {
            vertex_offset[v] = Some(orders.len());
            orders.extend_from_slice(gog.vertex_group(v).orders());
            names.extend(gog.factor_names(v).iter().cloned());
        }
        let mut edge_letter = vec![None; g.edge_count()];
        for e in g.positive_edges() {
            if !tree.contains(g.alpha(e)) {
                continue;
            }
            if !gog.edge_is_trivial(e) {
                return Err(GogError::NontrivialEdgeGroup(g.edge_name(e).to_string()));
            }
            if !tree.is_tree_edge(g, e) {
                edge_letter[e] = Some(orders.len());
                orders.push(0);
                names.push(g.edge_name(e).to_string());
            }
        }
        let group = FpcGroup::new(orders).expect("orders copied from valid groups");
        Ok(TreeBasis { base, group, names, vertex_offset, edge_letter, tree })
    }

    /// Rank of `π1` (number of model factors).
    pub fn rank(&self) -> usize {
        self.group.rank()
    }

    /// Number of finite factors of the model.
    pub fn torsion(&self) -> usize {
        self.group.finite_factor_count()
    }

    /// Model word of a closed A-path at the base.
    pub fn word_of(&self, gog: &GraphOfGroups, p: &APath) -> FpcWord {
        let mut raw = Vec::new();
        let push_elem = |raw: &mut Vec<(usize, i64)>, v: VertexId, a: &FpcWord| {
            let off = self.vertex_offset[v].expect("path stays in the base component");
            raw.extend(a.syllables().iter().map(|&(f, e)| (f + off, e)));
        };
        push_elem(&mut raw, p.start, &p.elems[0]);
        for (i, &e) in p.edges.iter().enumerate() {
            let positive = e & !1;
            if let Some(letter) = self.edge_letter[positive] {
                raw.push((letter, if e == positive { 1 } else { -1 }));
            }
            push_elem(&mut raw, gog.graph().omega(e), &p.elems[i + 1]);
        }
        self.group.normalize(&raw).expect("indices in range")
    }

    fn tree_path(&self, gog: &GraphOfGroups, v: VertexId) -> APath {
        let edges = self.tree.path_from_root(gog.graph(), v);
        APath { start: self.base, elems: vec![FpcWord::identity(); edges.len() + 1], edges }
    }

    /// The closed A-path representing model factor `i`.
    pub fn generator_path(&self, gog: &GraphOfGroups, i: usize) -> APath {
        self.syllable_path(gog, i, 1)
    }

    fn syllable_path(&self, gog: &GraphOfGroups, i: usize, exp: i64) -> APath {
        for e in gog.graph().positive_edges() {
            if self.edge_letter[e] == Some(i) {
                let (a, b) = (gog.graph().alpha(e), gog.graph().omega(e));
                let edge = if exp > 0 { e } else { e ^ 1 };
                let (from, to) = if exp > 0 { (a, b) } else { (b, a) };
                let single = gog
                    .concat_all(&[
                        self.tree_path(gog, from),
                        gog.edge_path(edge),
                        gog.inverse_path(&self.tree_path(gog, to)),
                    ])
                    .expect("consecutive paths");
                let copies = vec![single; exp.unsigned_abs() as usize];
                return gog.reduce(&gog.concat_all(&copies).expect("closed paths"));
            }
        }
        let v = self
            .tree
            .order
            .iter()
            .copied()
            .find(|&v| {
                let off = self.vertex_offset[v].expect("tree vertex");
                (off..off + gog.vertex_group(v).rank()).contains(&i)
            })
            .expect("factor index in range");
        let off = self.vertex_offset[v].expect("tree vertex");
        let to_v = self.tree_path(gog, v);
        let at_v = gog.elem_path(v, gog.vertex_group(v).syllable(i - off, exp));
        let back = gog.inverse_path(&to_v);
        gog.reduce(&gog.concat_all(&[to_v, at_v, back]).expect("consecutive paths"))
    }

    /// A closed A-path at the base representing a model word.
    pub fn path_of(&self, gog: &GraphOfGroups, w: &FpcWord) -> APath {
        let mut parts = vec![gog.trivial_path(self.base)];
        for &(f, e) in w.syllables() {
            parts.push(self.syllable_path(gog, f, e));
        }
        gog.normalize(&gog.concat_all(&parts).expect("closed paths at base"))
    }
}

impl GraphOfGroups {
    /// Rank and number of finite factors of `π1` of the component of
    /// `base`, when `π1` is visibly a free product of cyclic groups.
    ///
    /// Edge pairs with nontrivial group are eliminated one at a time
    /// whenever one side's boundary image generates a vertex factor used by
    /// no other remaining boundary; each elimination removes one factor.
    /// Returns `None` if some nontrivial edge cannot be eliminated.
    pub fn rank_and_torsion(&self, base: VertexId) -> Option<(usize, usize)> {
        let (comp, vmap, _) = self.component(base);
        let _ = vmap;
        let g = comp.graph();
        let factors: usize = g.vertices().map(|v| comp.vertex_group(v).rank()).sum();
        let finite: usize = g.vertices().map(|v| comp.vertex_group(v).finite_factor_count()).sum();
        let mut remaining: Vec<EdgeId> = g.positive_edges().filter(|&e| !comp.edge_is_trivial(e)).collect();
        let mut dead: HashSet<(VertexId, usize)> = HashSet::new();
        let (mut eliminated, mut finite_eliminated) = (0, 0);
        loop {
            if remaining.is_empty() {
                return Some((factors + g.first_betti() - eliminated, finite - finite_eliminated));
            }
            let uses = |skip: EdgeId| -> HashSet<(VertexId, usize)> {
                let mut out = HashSet::new();
                for &e in &remaining {
                    if e == skip {
                        continue;
                    }
                    for side in [e, e ^ 1] {
                        for &(f, _) in comp.boundary(side).syllables() {
                            out.insert((g.alpha(side), f));
                        }
                    }
                }
                out
            };
            let mut progress = None;
            'search: for (idx, &e) in remaining.iter().enumerate() {
                let used = uses(e);
                for side in [e, e ^ 1] {
                    let v = g.alpha(side);
                    if let [(f, k)] = comp.boundary(side).syllables() {
                        let group = comp.vertex_group(v);
                        let generates = match group.order(*f) {
                            0 => k.abs() == 1,
                            p => fpc_words::gcd(p, k.unsigned_abs()) == 1,
                        };
                        if generates && !used.contains(&(v, *f)) && !dead.contains(&(v, *f)) {
                            progress = Some((idx, v, *f, group.order(*f) != 0));
                            break 'search;
                        }
                    }
                }
            }
            let (idx, v, f, is_finite) = progress?;
            remaining.remove(idx);
            dead.insert((v, f));
            eliminated += 1;
            if is_finite {
                finite_eliminated += 1;
            }
        }
    }
}
