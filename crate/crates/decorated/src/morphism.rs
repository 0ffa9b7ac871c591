//! Decorated morphisms `(φ : 𝔹 → 𝔸^𝒪, u_1, {p_j}, {γ_j})` and the
//! decomposition of boundary images.

use fpc_words::FpcWord;
use gg_morphism::GGMorphism;
use graph_core::{EdgeId, VertexId};
use graph_of_groups::{APath, GraphOfGroups, PathSpec};
use moves::{move_a0, move_a2};
use orbifolds::OrbifoldSpec;
use serde::{Deserialize, Serialize};

use crate::ao::SmallOrbGraph;
use crate::DecoratedError;

/// The decomposition `φ(p_j') = a·c_i^z·a⁻¹` of the image of a cyclic
/// shift `p_j'` of `p_j`.
///
/// For `p = b_0, f_1, b_1, …, f_k, b_k` and shift `s > 0` the shifted path
/// is `p' = b_s, f_{s+1}, …, f_k, b_k·b_0, f_1, …, f_s, 1` and the prefix is
/// `p_{j,1} = b_0, f_1, …, f_s, 1`, so that `p' ≃ p_{j,1}⁻¹·p·p_{j,1}`.
/// Shift `0` means `p' = p` with trivial prefix.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundaryDecomposition {
    /// Boundary index `i ∈ 1..=q`.
    pub i: usize,
    /// Exponent `z ≥ 1`.
    pub z: u64,
    /// `a = s_{v1}^{a_exp}`.
    pub a: FpcWord,
    /// Canonical exponent of `a` in `0..p1`.
    pub a_exp: u64,
    pub shift: usize,
}

/// A decorated morphism over `𝔸^𝒪`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "DecoratedMorphismSpec", into = "DecoratedMorphismSpec")]
pub struct DecoratedMorphism {
    pub orbifold: OrbifoldSpec,
    pub morphism: GGMorphism,
    /// The base vertex `u_1` with `φ(u_1) = v1`.
    pub base: VertexId,
    /// Closed paths `p_1, …, p_n`.
    pub paths: Vec<APath>,
    /// Paths `γ_j` from `u_1` to `α(p_j)`.
    pub gammas: Vec<APath>,
    /// One decomposition per path (smallest matching shift).
    pub decompositions: Vec<BoundaryDecomposition>,
}

/// JSON form of a decorated morphism.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DecoratedMorphismSpec {
    pub orbifold: OrbifoldSpec,
    pub morphism: GGMorphism,
    pub base: String,
    pub paths: Vec<PathSpec>,
    pub gammas: Vec<PathSpec>,
}

impl TryFrom<DecoratedMorphismSpec> for DecoratedMorphism {
    type Error = DecoratedError;

    fn try_from(spec: DecoratedMorphismSpec) -> Result<Self, DecoratedError> {
        let sg = SmallOrbGraph::build(&spec.orbifold)?;
        let src = &spec.morphism.source;
        let base = src.graph().vertex_by_name(&spec.base).map_err(graph_of_groups::GogError::from)?;
        let paths = spec.paths.iter().map(|p| src.path_from_spec(p)).collect::<Result<Vec<_>, _>>()?;
        let gammas = spec.gammas.iter().map(|p| src.path_from_spec(p)).collect::<Result<Vec<_>, _>>()?;
        DecoratedMorphism::new(&sg, spec.morphism, base, paths, gammas)
    }
}

impl From<DecoratedMorphism> for DecoratedMorphismSpec {
    fn from(dm: DecoratedMorphism) -> Self {
        let src = &dm.morphism.source;
        DecoratedMorphismSpec {
            orbifold: dm.orbifold.clone(),
            base: src.graph().vertex_name(dm.base).to_string(),
            paths: dm.paths.iter().map(|p| src.path_to_spec(p)).collect(),
            gammas: dm.gammas.iter().map(|p| src.path_to_spec(p)).collect(),
            morphism: dm.morphism,
        }
    }
}

/// The shifted path `p'` (see [`BoundaryDecomposition`]).
pub(crate) fn shifted(gog: &GraphOfGroups, p: &APath, s: usize) -> APath {
    if s == 0 {
        return p.clone();
    }
    let k = p.edges.len();
    let g = gog.vertex_group(p.start);
    let mut elems = vec![p.elems[s].clone()];
    elems.extend(p.elems[s + 1..k].iter().cloned());
    elems.push(g.mul(&p.elems[k], &p.elems[0]));
    elems.extend(p.elems[1..s].iter().cloned());
    elems.push(FpcWord::identity());
    let mut edges = p.edges[s..].to_vec();
    edges.extend_from_slice(&p.edges[..s]);
    APath { start: gog.elem_vertex(p, s), elems, edges }
}

/// The prefix `p_{j,1}` for shift `s` (trivial for `s = 0`).
pub(crate) fn prefix(gog: &GraphOfGroups, p: &APath, s: usize) -> APath {
    if s == 0 {
        return gog.trivial_path(p.start);
    }
    let mut elems = p.elems[..s].to_vec();
    elems.push(FpcWord::identity());
    APath { start: p.start, elems, edges: p.edges[..s].to_vec() }
}

/// Decomposes `φ(p')` as `a·c_i^z·a⁻¹` for the smallest shift `s` for
/// which the literal image has this form.  `j` is only used for error
/// messages.
pub fn decompose_boundary_image(
    sg: &SmallOrbGraph,
    m: &GGMorphism,
    p: &APath,
    j: usize,
) -> Result<BoundaryDecomposition, DecoratedError> {
    let src = &m.source;
    src.validate_path(p)?;
    if !src.is_closed(p) || p.edges.is_empty() || p.edges.len() % 2 == 1 {
        return Err(DecoratedError::NoDecomposition(j + 1));
    }
    let (v1, v2) = (sg.vertex(1), sg.vertex(2));
    let (c1, c2) = (sg.cyclic(v1), sg.cyclic(v2));
    for s in 0..p.edges.len() {
        if m.vertex_map[src.elem_vertex(p, s)] != v1 {
            continue;
        }
        let image = m.induced_image(&shifted(src, p, s))?;
        let z = image.edges.len() / 2;
        let e0 = image.edges[0];
        if e0 & 1 == 1 {
            continue;
        }
        let i = sg.edge_index(e0) as i64;
        let eps = sg.epsilon(i);
        let edges_match = (0..z).all(|r| image.edges[2 * r] == sg.edge(i) && image.edges[2 * r + 1] == sg.edge(i + 1) ^ 1);
        if !edges_match {
            continue;
        }
        let a_exp = c1.reduce(c1.exp(&image.elems[0]) - eps);
        let interior_v1 = (1..z).all(|r| c1.exp(&image.elems[2 * r]) == c1.reduce(eps));
        let interior_v2 = (0..z).all(|r| c2.exp(&image.elems[2 * r + 1]) == c2.reduce(eps));
        let last = c1.exp(&image.elems[2 * z]) == c1.reduce(-a_exp);
        if interior_v1 && interior_v2 && last {
            return Ok(BoundaryDecomposition {
                i: i as usize,
                z: z as u64,
                a: c1.elem(a_exp),
                a_exp: a_exp as u64,
                shift: s,
            });
        }
    }
    Err(DecoratedError::NoDecomposition(j + 1))
}

impl DecoratedMorphism {
    /// Builds and validates a decorated morphism: `φ` targets `𝔸^𝒪`, the
    /// source has trivial edge groups, `φ(u_1) = v1`, every `p_j` is a valid
    /// closed path with a decomposition and `γ_j` runs from `u_1` to
    /// `α(p_j)`.
    pub fn new(
        sg: &SmallOrbGraph,
        morphism: GGMorphism,
        base: VertexId,
        paths: Vec<APath>,
        gammas: Vec<APath>,
    ) -> Result<Self, DecoratedError> {
        if &morphism.target != sg.gog() {
            return Err(DecoratedError::Invalid("target is not the graph 𝔸^𝒪 of the orbifold".into()));
        }
        morphism.source.require_trivial_edge_groups()?;
        let src = &morphism.source;
        if !src.graph().has_vertex(base) || morphism.vertex_map[base] != sg.vertex(1) {
            return Err(DecoratedError::Invalid("base vertex must map to v1".into()));
        }
        if paths.len() != gammas.len() {
            return Err(DecoratedError::Invalid(format!("{} paths but {} connecting paths", paths.len(), gammas.len())));
        }
        let mut decompositions = Vec::with_capacity(paths.len());
        for (j, (p, g)) in paths.iter().zip(&gammas).enumerate() {
            src.validate_path(g)?;
            if g.start != base || src.path_end(g) != p.start {
                return Err(DecoratedError::Invalid(format!("γ_{} does not run from the base to α(p_{})", j + 1, j + 1)));
            }
            decompositions.push(decompose_boundary_image(sg, &morphism, p, j)?);
        }
        Ok(DecoratedMorphism { orbifold: sg.spec().clone(), morphism, base, paths, gammas, decompositions })
    }

    /// The source graph of groups `𝔹`.
    pub fn source(&self) -> &GraphOfGroups {
        &self.morphism.source
    }

    /// Number `n` of decorating paths.
    pub fn n(&self) -> usize {
        self.paths.len()
    }

    /// The shifted path `p_j'` of the stored decomposition.
    pub fn shifted_path(&self, j: usize) -> APath {
        shifted(self.source(), &self.paths[j], self.decompositions[j].shift)
    }

    /// The prefix `p_{j,1}` of the stored decomposition.
    pub fn prefix_path(&self, j: usize) -> APath {
        prefix(self.source(), &self.paths[j], self.decompositions[j].shift)
    }

    /// Edges of `p_j` (cyclically, as a multiset of oriented edges).
    pub fn path_edges(&self, j: usize) -> &[EdgeId] {
        &self.paths[j].edges
    }

    /// Same morphism with new paths and connecting paths.
    pub fn with_paths(&self, sg: &SmallOrbGraph, paths: Vec<APath>, gammas: Vec<APath>) -> Result<Self, DecoratedError> {
        DecoratedMorphism::new(sg, self.morphism.clone(), self.base, paths, gammas)
    }

    /// Redecoration by cyclic shifts: `p_j ↦ p_j'` (shift `shifts[j]`) and
    /// `γ_j ↦ γ_j·p_{j,1}`.  Also returns the connectors `c_j = p_{j,1}`
    /// with `c_j⁻¹·p_j·c_j ≃ p_j'` (see
    /// [`transport_witness`](crate::transport_witness)).
    pub fn redecorate_shifts(&self, sg: &SmallOrbGraph, shifts: &[usize]) -> Result<(Self, Vec<APath>), DecoratedError> {
        if shifts.len() != self.n() {
            return Err(DecoratedError::Invalid("one shift per path required".into()));
        }
        let src = self.source();
        let mut paths = Vec::new();
        let mut gammas = Vec::new();
        let mut connectors = Vec::new();
        for (j, &s) in shifts.iter().enumerate() {
            let p = &self.paths[j];
            if s >= p.edges.len().max(1) {
                return Err(DecoratedError::Invalid(format!("shift {s} out of range for p_{}", j + 1)));
            }
            let pre = prefix(src, p, s);
            paths.push(shifted(src, p, s));
            gammas.push(src.concat(&self.gammas[j], &pre)?);
            connectors.push(pre);
        }
        Ok((self.with_paths(sg, paths, gammas)?, connectors))
    }

    /// Transports the decoration along `σ : 𝔹 → 𝔹'` to a morphism
    /// `φ' : 𝔹' → 𝔸^𝒪`: paths `σ(p_j)`, `σ(γ_j)`, base `σ(u_1)`.
    pub fn transport(&self, sg: &SmallOrbGraph, sigma: &GGMorphism, target: GGMorphism) -> Result<Self, DecoratedError> {
        let paths = self.paths.iter().map(|p| sigma.induced_image(p)).collect::<Result<Vec<_>, _>>()?;
        let gammas = self.gammas.iter().map(|p| sigma.induced_image(p)).collect::<Result<Vec<_>, _>>()?;
        DecoratedMorphism::new(sg, target, sigma.vertex_map[self.base], paths, gammas)
    }

    /// Auxiliary move A2 at `f` with `b ∈ B_{α(f)}`, carrying the paths
    /// along `σ`.  Returns the new decorated morphism and `σ`.
    pub fn apply_a2(&self, sg: &SmallOrbGraph, f: EdgeId, b: &FpcWord) -> Result<(Self, GGMorphism), DecoratedError> {
        let r = move_a2(&self.morphism, f, b)?;
        let dm = self.transport(sg, &r.sigma, r.morphism)?;
        Ok((dm, r.sigma))
    }

    /// Auxiliary move A0 at a vertex `u ≠ u_1` (the paths are unchanged).
    pub fn apply_a0(&self, sg: &SmallOrbGraph, u: VertexId, g: &FpcWord) -> Result<Self, DecoratedError> {
        if u == self.base {
            return Err(DecoratedError::Precondition("A0 at the base vertex changes the decorated group".into()));
        }
        let m = move_a0(&self.morphism, u, g)?;
        DecoratedMorphism::new(sg, m, self.base, self.paths.clone(), self.gammas.clone())
    }

    /// Human-readable summary of the paths and their decompositions.
    pub fn describe(&self, sg: &SmallOrbGraph) -> String {
        let src = self.source();
        let a_names = sg.gog().factor_names(sg.vertex(1));
        let mut out = String::new();
        for (j, (p, d)) in self.paths.iter().zip(&self.decompositions).enumerate() {
            let a = if d.a.is_identity() { "1".to_string() } else { d.a.format_with(a_names) };
            out.push_str(&format!(
                "p{} = {}  (i = {}, z = {}, a = {}, shift = {})\n",
                j + 1,
                src.format_path(p),
                d.i,
                d.z,
                a,
                d.shift
            ));
        }
        out
    }
}
