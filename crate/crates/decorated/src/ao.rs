//! The graph of groups `𝔸^𝒪` of a small orientable orbifold.

use fpc_words::{FpcGroup, FpcWord};
use graph_core::{EdgeId, VertexId};
use graph_of_groups::{APath, GraphOfGroups, TreeBasis};
use orbifolds::OrbifoldSpec;
use serde::{Deserialize, Serialize};

use crate::cyclic::Cyclic;
use crate::DecoratedError;

/// `𝔸^𝒪` for a small orientable orbifold `𝒪` with `q` boundary
/// components and at most two cone points `x1, x2` (missing cone points
/// have order 1): vertices `v1, v2` with groups `Z_{p1} = ⟨s1⟩`,
/// `Z_{p2} = ⟨s2⟩`, edge pairs `e_1, …, e_q` from `v1` to `v2`, trivial
/// edge groups.
///
/// Elements of `π1(𝔸^𝒪, v1)` are represented as words in the free-product
/// basis [`SmallOrbGraph::basis`] obtained by collapsing a spanning tree.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "OrbifoldSpec", into = "OrbifoldSpec")]
pub struct SmallOrbGraph {
    spec: OrbifoldSpec,
    gog: GraphOfGroups,
    p: [u64; 2],
    v: [VertexId; 2],
    edges: Vec<EdgeId>,
    basis: TreeBasis,
    c_words: Vec<FpcWord>,
}

impl TryFrom<OrbifoldSpec> for SmallOrbGraph {
    type Error = DecoratedError;

    fn try_from(spec: OrbifoldSpec) -> Result<Self, DecoratedError> {
        SmallOrbGraph::build(&spec)
    }
}

impl From<SmallOrbGraph> for OrbifoldSpec {
    fn from(sg: SmallOrbGraph) -> Self {
        sg.spec
    }
}

impl SmallOrbGraph {
    /// Builds `𝔸^𝒪`; the orbifold must be small, orientable and not a
    /// Möbius band.
    pub fn build(spec: &OrbifoldSpec) -> Result<Self, DecoratedError> {
        spec.validate()?;
        if !spec.orientable || !spec.is_small() || spec.is_moebius_band() {
            return Err(DecoratedError::NotSmall(spec.name()));
        }
        let mut p = [1u64; 2];
        for (k, &order) in spec.cone_orders.iter().enumerate() {
            p[k] = order;
        }
        let q = spec.boundary_count;
        let mut gog = GraphOfGroups::new();
        let mut v = [0; 2];
        for k in 0..2 {
            let group = FpcGroup::cyclic(p[k]);
            let names = if group.rank() == 1 { vec![format!("s{}", k + 1)] } else { Vec::new() };
            v[k] = gog.add_vertex_named(&format!("v{}", k + 1), group, names)?;
        }
        let mut edges = Vec::with_capacity(q);
        for i in 1..=q {
            edges.push(gog.add_edge(&format!("e{i}"), &format!("e{i}'"), v[0], v[1])?);
        }
        let basis = TreeBasis::new(&gog, v[0])?;
        let mut sg = SmallOrbGraph { spec: spec.clone(), gog, p, v, edges, basis, c_words: Vec::new() };
        sg.c_words = (1..=q as i64).map(|i| sg.word(&sg.c_path(i))).collect();
        Ok(sg)
    }

    /// The orbifold descriptor.
    pub fn spec(&self) -> &OrbifoldSpec {
        &self.spec
    }

    /// The graph of groups `𝔸^𝒪`.
    pub fn gog(&self) -> &GraphOfGroups {
        &self.gog
    }

    /// Number `q` of boundary components (edge pairs).
    pub fn q(&self) -> usize {
        self.edges.len()
    }

    /// Vertex `v_k` for `k ∈ {1, 2}`.
    pub fn vertex(&self, k: usize) -> VertexId {
        self.v[k - 1]
    }

    /// Which of `v1` (`1`) or `v2` (`2`) a vertex is.
    pub fn side(&self, v: VertexId) -> usize {
        if v == self.v[0] {
            1
        } else {
            2
        }
    }

    /// Order `p_k` of the cone group at `v_k` (1 when trivial).
    pub fn cone_order(&self, k: usize) -> u64 {
        self.p[k - 1]
    }

    pub(crate) fn cyclic(&self, v: VertexId) -> Cyclic {
        Cyclic { p: self.p[self.side(v) - 1] }
    }

    /// The generator `s_v` of `A_v` as a word (empty for trivial groups).
    pub fn s(&self, v: VertexId) -> FpcWord {
        self.cyclic(v).elem(1)
    }

    /// `s_v^k` in `A_v`.
    pub fn s_pow(&self, v: VertexId, k: i64) -> FpcWord {
        self.cyclic(v).elem(k)
    }

    /// The edge `e_d`, with `d` read modulo `q` (so `e_{q+1} = e_1`).
    pub fn edge(&self, d: i64) -> EdgeId {
        self.edges[self.index(d) - 1]
    }

    /// The representative of `d` modulo `q` in `1..=q`.
    pub fn index(&self, d: i64) -> usize {
        (d - 1).rem_euclid(self.q() as i64) as usize + 1
    }

    /// The boundary index `i` with `e = e_i` or `e = e_i⁻¹`.
    pub fn edge_index(&self, e: EdgeId) -> usize {
        self.edges.iter().position(|&x| x == e & !1).expect("edge of 𝔸^𝒪") + 1
    }

    /// `ε_i`: `1` for `i ≡ 1`, else `0`.
    pub fn epsilon(&self, i: i64) -> i64 {
        i64::from(self.index(i) == 1)
    }

    /// The boundary path `c_i = s1^{ε_i}, e_i, s2^{ε_i}, e_{i+1}⁻¹, 1`.
    pub fn c_path(&self, i: i64) -> APath {
        let eps = self.epsilon(i);
        APath {
            start: self.v[0],
            elems: vec![self.s_pow(self.v[0], eps), self.s_pow(self.v[1], eps), FpcWord::identity()],
            edges: vec![self.edge(i), self.edge(i + 1) ^ 1],
        }
    }

    /// `[c_i]` as a basis word.
    pub fn c_word(&self, i: i64) -> &FpcWord {
        &self.c_words[self.index(i) - 1]
    }

    /// The free-product basis of `π1(𝔸^𝒪, v1)`.
    pub fn basis(&self) -> &TreeBasis {
        &self.basis
    }

    /// The group `π1(𝔸^𝒪, v1)` in basis form.
    pub fn group(&self) -> &FpcGroup {
        &self.basis.group
    }

    /// Basis word of a closed A-path at `v1`.
    pub fn word(&self, p: &APath) -> FpcWord {
        self.basis.word_of(&self.gog, p)
    }

    /// The element `[a]` for `a ∈ A_{v1}`.
    pub fn v1_word(&self, a: &FpcWord) -> FpcWord {
        self.word(&self.gog.elem_path(self.v[0], a.clone()))
    }

    /// The table `θ`: `t_i ↦ [c_i]`, `s_{x1} ↦ [s_{v1}]`,
    /// `s_{x2} ↦ [1, e_1, s_{v2}, e_1⁻¹, 1]` (cone generators only for
    /// cone points that exist).
    pub fn theta(&self) -> Vec<(String, FpcWord)> {
        let mut out = Vec::new();
        if self.p[0] > 1 {
            out.push(("s_x1".to_string(), self.v1_word(&self.s(self.v[0]))));
        }
        if self.p[1] > 1 {
            out.push(("s_x2".to_string(), self.word(&self.sx2_path())));
        }
        for i in 1..=self.q() as i64 {
            out.push((format!("t{i}"), self.c_word(i).clone()));
        }
        out
    }

    fn sx2_path(&self) -> APath {
        APath {
            start: self.v[0],
            elems: vec![FpcWord::identity(), self.s(self.v[1]), FpcWord::identity()],
            edges: vec![self.edges[0], self.edges[0] ^ 1],
        }
    }

    /// The relator check `θ(s_{x1})·θ(s_{x2}) = θ(t_1)⋯θ(t_q)` in `π1`.
    pub fn relator_check(&self) -> bool {
        let g = self.group();
        let lhs = g.mul(&self.v1_word(&self.s(self.v[0])), &self.word(&self.sx2_path()));
        let rhs = g.product(self.c_words.iter());
        lhs == rhs
    }

    /// Solves `w = [c_i]^z`; `None` if `w` is no power of `[c_i]`.
    pub fn c_power(&self, i: i64, w: &FpcWord) -> Option<i64> {
        let c = self.c_word(i);
        if c.is_identity() {
            return w.is_identity().then_some(0);
        }
        self.group().is_power_of(w, c).ok().flatten()
    }
}
