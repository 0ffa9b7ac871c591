//! The morphism container, its invariants and JSON form.

use std::collections::BTreeMap;

use fpc_words::{FpcError, FpcHom, FpcWord};
use graph_core::{EdgeId, VertexId};
use graph_of_groups::{GogError, GraphOfGroups};
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Errors raised when building or combining morphisms.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MorphismError {
    #[error(transparent)]
    Gog(#[from] GogError),
    #[error(transparent)]
    Fpc(#[from] FpcError),
    #[error("schema error: {0}")]
    Schema(String),
    #[error("morphism invariants violated: {}", .0.iter().map(|v| v.to_string()).collect::<Vec<_>>().join("; "))]
    Invalid(Vec<Violation>),
    #[error("morphisms cannot be composed: {0}")]
    Mismatch(String),
}

/// A violated morphism invariant, naming the vertex or edge.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum Violation {
    /// `φ_u` does not map `B_u` to `A_{φ(u)}`.
    VertexHomGroups { vertex: String },
    /// The graph map does not commute with `α`, `ω` or inversion.
    Incidence { edge: String },
    /// `t_f⁻¹ ≠ o_{f⁻¹}`.
    Involution { edge: String },
    /// `o_f` or `t_f` is not an element of the right vertex group.
    EdgeElement { edge: String },
    /// `φ_f ≠ φ_{f⁻¹}`.
    EdgeHomSymmetry { edge: String },
    /// The exponent does not define a homomorphism `B_f → A_{φ(f)}`.
    EdgeHomUndefined { edge: String },
    /// `φ_{α(f)}(α_f(c)) ≠ o_f·α_{φ(f)}(φ_f(c))·o_f⁻¹`.
    Condition5 { edge: String },
}

impl std::fmt::Display for Violation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Violation::VertexHomGroups { vertex } => write!(f, "vertex {vertex}: homomorphism groups mismatch"),
            Violation::Incidence { edge } => write!(f, "edge {edge}: graph map incompatible with incidence"),
            Violation::Involution { edge } => write!(f, "edge {edge}: t_f inverse differs from o of the inverse edge"),
            Violation::EdgeElement { edge } => write!(f, "edge {edge}: o_f or t_f not in the vertex group"),
            Violation::EdgeHomSymmetry { edge } => write!(f, "edge {edge}: edge homomorphism differs on the inverse"),
            Violation::EdgeHomUndefined { edge } => write!(f, "edge {edge}: edge homomorphism not well defined"),
            Violation::Condition5 { edge } => write!(f, "edge {edge}: boundary diagram does not commute"),
        }
    }
}

/// A morphism of graphs of groups.
///
/// `edge_exps[f] = k` means `φ_f(c_f) = c_{φ(f)}^k` for the edge-group
/// generators; for a trivial source edge group the exponent is `0`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "MorphismSpec", into = "MorphismSpec")]
pub struct GGMorphism {
    pub source: GraphOfGroups,
    pub target: GraphOfGroups,
    pub vertex_map: Vec<VertexId>,
    pub edge_map: Vec<EdgeId>,
    pub vertex_homs: Vec<FpcHom>,
    pub edge_exps: Vec<i64>,
    pub o: Vec<FpcWord>,
    pub t: Vec<FpcWord>,
}

impl GGMorphism {
    /// The identity morphism of a graph of groups.
    pub fn identity(gog: &GraphOfGroups) -> Self {
        let g = gog.graph();
        GGMorphism {
            source: gog.clone(),
            target: gog.clone(),
            vertex_map: g.vertices().collect(),
            edge_map: g.edges().collect(),
            vertex_homs: g.vertices().map(|v| FpcHom::identity(gog.vertex_group(v))).collect(),
            edge_exps: g.edges().map(|e| if gog.edge_is_trivial(e) { 0 } else { 1 }).collect(),
            o: vec![FpcWord::identity(); g.edge_count()],
            t: vec![FpcWord::identity(); g.edge_count()],
        }
    }

    /// Builds a morphism and checks all invariants.
    #[allow(clippy::too_many_arguments)]
    pub fn new(
        source: GraphOfGroups,
        target: GraphOfGroups,
        vertex_map: Vec<VertexId>,
        edge_map: Vec<EdgeId>,
        vertex_homs: Vec<FpcHom>,
        edge_exps: Vec<i64>,
        o: Vec<FpcWord>,
        t: Vec<FpcWord>,
    ) -> Result<Self, MorphismError> {
        let m = GGMorphism { source, target, vertex_map, edge_map, vertex_homs, edge_exps, o, t };
        m.check_shape()?;
        let violations = m.check();
        if violations.is_empty() {
            Ok(m)
        } else {
            Err(MorphismError::Invalid(violations))
        }
    }

    fn check_shape(&self) -> Result<(), MorphismError> {
        let (nv, ne) = (self.source.graph().vertex_count(), self.source.graph().edge_count());
        let sizes = [
            ("vertex_map", self.vertex_map.len(), nv),
            ("vertex_homs", self.vertex_homs.len(), nv),
            ("edge_map", self.edge_map.len(), ne),
            ("edge_exps", self.edge_exps.len(), ne),
            ("o", self.o.len(), ne),
            ("t", self.t.len(), ne),
        ];
        for (name, got, want) in sizes {
            if got != want {
                return Err(MorphismError::Schema(format!("{name} has {got} entries, expected {want}")));
            }
        }
        let (tv, te) = (self.target.graph().vertex_count(), self.target.graph().edge_count());
        if self.vertex_map.iter().any(|&v| v >= tv) || self.edge_map.iter().any(|&e| e >= te) {
            return Err(MorphismError::Schema("graph map points outside the target".into()));
        }
        Ok(())
    }

    /// Sets `o_f` and keeps `t_{f⁻¹} = o_f⁻¹` consistent.
    pub fn set_o(&mut self, f: EdgeId, w: FpcWord) {
        let v = self.target.graph().alpha(self.edge_map[f]);
        self.t[f ^ 1] = self.target.vertex_group(v).inv(&w);
        self.o[f] = w;
    }

    /// Sets `t_f` and keeps `o_{f⁻¹} = t_f⁻¹` consistent.
    pub fn set_t(&mut self, f: EdgeId, w: FpcWord) {
        let v = self.target.graph().omega(self.edge_map[f]);
        self.o[f ^ 1] = self.target.vertex_group(v).inv(&w);
        self.t[f] = w;
    }

    /// All violated invariants (empty iff this is a morphism).
    pub fn check(&self) -> Vec<Violation> {
        let (s, t) = (&self.source, &self.target);
        let (sg, tg) = (s.graph(), t.graph());
        let mut out = Vec::new();
        for u in sg.vertices() {
            let h = &self.vertex_homs[u];
            if h.source() != s.vertex_group(u) || h.target() != t.vertex_group(self.vertex_map[u]) {
                out.push(Violation::VertexHomGroups { vertex: sg.vertex_name(u).to_string() });
            }
        }
        for f in sg.edges() {
            let name = sg.edge_name(f).to_string();
            let e = self.edge_map[f];
            if tg.alpha(e) != self.vertex_map[sg.alpha(f)]
                || tg.omega(e) != self.vertex_map[sg.omega(f)]
                || self.edge_map[f ^ 1] != e ^ 1
            {
                out.push(Violation::Incidence { edge: name });
                continue;
            }
            let (ga, gw) = (t.vertex_group(tg.alpha(e)), t.vertex_group(tg.omega(e)));
            if ga.validate(&self.o[f]).is_err() || gw.validate(&self.t[f]).is_err() {
                out.push(Violation::EdgeElement { edge: name });
                continue;
            }
            if gw.inv(&self.t[f]) != self.o[f ^ 1] {
                out.push(Violation::Involution { edge: name.clone() });
            }
            let k = self.edge_exps[f];
            if k != self.edge_exps[f ^ 1] {
                out.push(Violation::EdgeHomSymmetry { edge: name.clone() });
            }
            let (m, n) = (s.edge_order(f), t.edge_order(e));
            let defined = match (m, n) {
                (1, _) => k == 0,
                (_, 1) => k == 0,
                (0, _) => true,
                (m, 0) => k == 0 && m == 0,
                (m, n) => (k * m as i64).rem_euclid(n as i64) == 0,
            };
            if !defined {
                out.push(Violation::EdgeHomUndefined { edge: name.clone() });
                continue;
            }
            let hom = &self.vertex_homs[sg.alpha(f)];
            if hom.source() != s.vertex_group(sg.alpha(f)) || hom.target() != ga {
                continue;
            }
            let lhs = hom.apply(s.boundary(f));
            let rhs = ga.conj(&self.o[f], &t.boundary_pow(e, k));
            if lhs != rhs {
                out.push(Violation::Condition5 { edge: name });
            }
        }
        out
    }

    /// Whether every vertex homomorphism is injective (`None` if some
    /// verdict is unknown).
    pub fn is_vertex_injective(&self) -> Option<bool> {
        let mut unknown = false;
        for h in &self.vertex_homs {
            match h.injectivity() {
                fpc_words::Injectivity::Injective => {}
                fpc_words::Injectivity::NotInjective(_) => return Some(false),
                fpc_words::Injectivity::Unknown => unknown = true,
            }
        }
        (!unknown).then_some(true)
    }
}

/// JSON form of a morphism; every oriented source edge is listed.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MorphismSpec {
    pub source: GraphOfGroups,
    pub target: GraphOfGroups,
    pub vertices: Vec<VertexImageSpec>,
    pub edges: Vec<EdgeImageSpec>,
}

/// JSON form of the image data of a source vertex.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VertexImageSpec {
    pub id: String,
    pub image: String,
    pub images: Vec<FpcWord>,
}

/// JSON form of the image data of an oriented source edge.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeImageSpec {
    pub id: String,
    pub image: String,
    #[serde(default)]
    pub exponent: i64,
    #[serde(default)]
    pub o: FpcWord,
    #[serde(default)]
    pub t: FpcWord,
}

impl TryFrom<MorphismSpec> for GGMorphism {
    type Error = MorphismError;
    fn try_from(spec: MorphismSpec) -> Result<Self, MorphismError> {
        let (s, t) = (spec.source, spec.target);
        let (sg, tg) = (s.graph(), t.graph());
        let mut vertex_map = vec![None; sg.vertex_count()];
        let mut vertex_homs = vec![None; sg.vertex_count()];
        for v in &spec.vertices {
            let u = sg.vertex_by_name(&v.id).map_err(GogError::from)?;
            let x = tg.vertex_by_name(&v.image).map_err(GogError::from)?;
            if vertex_map[u].is_some() {
                return Err(MorphismError::Schema(format!("vertex `{}` listed twice", v.id)));
            }
            vertex_map[u] = Some(x);
            let hom = FpcHom::new(s.vertex_group(u).clone(), t.vertex_group(x).clone(), v.images.clone())?;
            vertex_homs[u] = Some(hom);
        }
        let ne = sg.edge_count();
        let (mut edge_map, mut edge_exps) = (vec![None; ne], vec![0; ne]);
        let (mut o, mut tt) = (vec![FpcWord::identity(); ne], vec![FpcWord::identity(); ne]);
        for e in &spec.edges {
            let f = sg.edge_by_name(&e.id).map_err(GogError::from)?;
            if edge_map[f].is_some() {
                return Err(MorphismError::Schema(format!("edge `{}` listed twice", e.id)));
            }
            edge_map[f] = Some(tg.edge_by_name(&e.image).map_err(GogError::from)?);
            edge_exps[f] = e.exponent;
            o[f] = e.o.clone();
            tt[f] = e.t.clone();
        }
        let missing_v = sg.vertices().find(|&u| vertex_map[u].is_none());
        if let Some(u) = missing_v {
            return Err(MorphismError::Schema(format!("vertex `{}` has no image", sg.vertex_name(u))));
        }
        let missing_e = sg.edges().find(|&f| edge_map[f].is_none());
        if let Some(f) = missing_e {
            return Err(MorphismError::Schema(format!("edge `{}` has no image", sg.edge_name(f))));
        }
        let m = GGMorphism {
            vertex_map: vertex_map.into_iter().map(|x| x.expect("checked")).collect(),
            vertex_homs: vertex_homs.into_iter().map(|x| x.expect("checked")).collect(),
            edge_map: edge_map.into_iter().map(|x| x.expect("checked")).collect(),
            edge_exps,
            o,
            t: tt,
            source: s,
            target: t,
        };
        m.check_shape()?;
        Ok(m)
    }
}

impl From<GGMorphism> for MorphismSpec {
    fn from(m: GGMorphism) -> Self {
        let (sg, tg) = (m.source.graph(), m.target.graph());
        let vertices = sg
            .vertices()
            .map(|u| VertexImageSpec {
                id: sg.vertex_name(u).to_string(),
                image: tg.vertex_name(m.vertex_map[u]).to_string(),
                images: m.vertex_homs[u].images().to_vec(),
            })
            .collect();
        let edges = sg
            .edges()
            .map(|f| EdgeImageSpec {
                id: sg.edge_name(f).to_string(),
                image: tg.edge_name(m.edge_map[f]).to_string(),
                exponent: m.edge_exps[f],
                o: m.o[f].clone(),
                t: m.t[f].clone(),
            })
            .collect();
        MorphismSpec { source: m.source.clone(), target: m.target.clone(), vertices, edges }
    }
}

/// Human-readable summary of the edge data of a morphism, keyed by edge id.
pub fn edge_data_table(m: &GGMorphism) -> BTreeMap<String, (String, String, String)> {
    let (sg, tg) = (m.source.graph(), m.target.graph());
    sg.edges()
        .map(|f| {
            let e = m.edge_map[f];
            (
                sg.edge_name(f).to_string(),
                (
                    tg.edge_name(e).to_string(),
                    m.target.format_elem(tg.alpha(e), &m.o[f]),
                    m.target.format_elem(tg.omega(e), &m.t[f]),
                ),
            )
        })
        .collect()
}
