//! The graph-of-groups container, its validation and JSON/DOT forms.

use fpc_words::{FpcError, FpcGroup, FpcWord};
use graph_core::{EdgeId, Graph, GraphError, VertexId};
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Errors raised by graph-of-groups operations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GogError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("in vertex group of `{vertex}`: {source}")]
    Group { vertex: String, source: FpcError },
    #[error("vertex `{vertex}` has {names} factor names for {factors} factors")]
    FactorNames { vertex: String, names: usize, factors: usize },
    #[error("edge `{edge}`: boundary image has order {got}, edge group has order {expected}")]
    BoundaryOrder { edge: String, expected: u64, got: u64 },
    #[error("edge `{edge}` and its inverse carry different edge groups")]
    EdgeGroupMismatch { edge: String },
    #[error("invalid A-path: {0}")]
    InvalidPath(String),
    #[error("A-path is not closed")]
    OpenPath,
    #[error("base vertices differ (`{0}` vs `{1}`)")]
    BaseMismatch(String, String),
    #[error("operation requires trivial edge groups (edge `{0}` is nontrivial)")]
    NontrivialEdgeGroup(String),
}

/// A graph of groups with free-product-of-cyclic vertex groups and cyclic
/// edge groups.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "GogSpec", into = "GogSpec")]
pub struct GraphOfGroups {
    graph: Graph,
    vertex_groups: Vec<FpcGroup>,
    factor_names: Vec<Vec<String>>,
    edge_orders: Vec<u64>,
    boundary: Vec<FpcWord>,
}

/// JSON form of a vertex.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VertexGroupSpec {
    pub id: String,
    #[serde(default)]
    pub orders: Vec<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub names: Option<Vec<String>>,
}

/// JSON form of an edge pair: `alpha` is the image of the edge-group
/// generator in the group of `from`, `omega` its image in the group of `to`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeGroupSpec {
    pub id: String,
    pub inv: String,
    pub from: String,
    pub to: String,
    #[serde(default = "one")]
    pub order: u64,
    #[serde(default)]
    pub alpha: FpcWord,
    #[serde(default)]
    pub omega: FpcWord,
}

fn one() -> u64 {
    1
}

/// JSON form of a graph of groups.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GogSpec {
    pub vertices: Vec<VertexGroupSpec>,
    pub edges: Vec<EdgeGroupSpec>,
}

impl TryFrom<GogSpec> for GraphOfGroups {
    type Error = GogError;
    fn try_from(spec: GogSpec) -> Result<Self, GogError> {
        let mut g = GraphOfGroups::new();
        for v in spec.vertices {
            let group = FpcGroup::new(v.orders)
                .map_err(|source| GogError::Group { vertex: v.id.clone(), source })?;
            match v.names {
                Some(names) => g.add_vertex_named(&v.id, group, names)?,
                None => g.add_vertex(&v.id, group)?,
            };
        }
        for e in spec.edges {
            let from = g.graph.vertex_by_name(&e.from)?;
            let to = g.graph.vertex_by_name(&e.to)?;
            g.add_edge_with_group(&e.id, &e.inv, from, to, e.order, e.alpha, e.omega)?;
        }
        Ok(g)
    }
}

impl From<GraphOfGroups> for GogSpec {
    fn from(g: GraphOfGroups) -> Self {
        let vertices = g
            .graph
            .vertices()
            .map(|v| VertexGroupSpec {
                id: g.graph.vertex_name(v).to_string(),
                orders: g.vertex_groups[v].orders().to_vec(),
                names: Some(g.factor_names[v].clone()),
            })
            .collect();
        let edges = g
            .graph
            .positive_edges()
            .map(|e| EdgeGroupSpec {
                id: g.graph.edge_name(e).to_string(),
                inv: g.graph.edge_name(e ^ 1).to_string(),
                from: g.graph.vertex_name(g.graph.alpha(e)).to_string(),
                to: g.graph.vertex_name(g.graph.omega(e)).to_string(),
                order: g.edge_orders[e],
                alpha: g.boundary[e].clone(),
                omega: g.boundary[e ^ 1].clone(),
            })
            .collect();
        GogSpec { vertices, edges }
    }
}

impl Default for GraphOfGroups {
    fn default() -> Self {
        Self::new()
    }
}

impl GraphOfGroups {
    /// The empty graph of groups.
    pub fn new() -> Self {
        GraphOfGroups {
            graph: Graph::new(),
            vertex_groups: Vec::new(),
            factor_names: Vec::new(),
            edge_orders: Vec::new(),
            boundary: Vec::new(),
        }
    }

    /// Adds a vertex with default factor names `id.1`, `id.2`, ….
    pub fn add_vertex(&mut self, id: &str, group: FpcGroup) -> Result<VertexId, GogError> {
        let names = (1..=group.rank()).map(|i| format!("{id}.{i}")).collect();
        self.add_vertex_named(id, group, names)
    }

    /// Adds a vertex with explicit factor names.
    pub fn add_vertex_named(
        &mut self,
        id: &str,
        group: FpcGroup,
        names: Vec<String>,
    ) -> Result<VertexId, GogError> {
        if names.len() != group.rank() {
            return Err(GogError::FactorNames {
                vertex: id.to_string(),
                names: names.len(),
                factors: group.rank(),
            });
        }
        let v = self.graph.add_vertex(id)?;
        self.vertex_groups.push(group);
        self.factor_names.push(names);
        Ok(v)
    }

    /// Adds an edge pair with trivial edge group.
    pub fn add_edge(&mut self, id: &str, inv: &str, from: VertexId, to: VertexId) -> Result<EdgeId, GogError> {
        self.add_edge_with_group(id, inv, from, to, 1, FpcWord::identity(), FpcWord::identity())
    }

    /// Adds an edge pair with cyclic edge group of the given order (`0` =
    /// infinite, `1` = trivial) and generator images `alpha ∈ A_from`,
    /// `omega ∈ A_to`.
    #[allow(clippy::too_many_arguments)]
    pub fn add_edge_with_group(
        &mut self,
        id: &str,
        inv: &str,
        from: VertexId,
        to: VertexId,
        order: u64,
        alpha: FpcWord,
        omega: FpcWord,
    ) -> Result<EdgeId, GogError> {
        for (v, w) in [(from, &alpha), (to, &omega)] {
            if !self.graph.has_vertex(v) {
                return Err(GraphError::UnknownVertex(format!("#{v}")).into());
            }
            self.check_boundary(id, v, order, w)?;
        }
        let e = self.graph.add_edge(id, inv, from, to)?;
        self.edge_orders.extend([order, order]);
        self.boundary.extend([alpha, omega]);
        Ok(e)
    }

    fn check_boundary(&self, edge: &str, v: VertexId, order: u64, w: &FpcWord) -> Result<(), GogError> {
        let group = &self.vertex_groups[v];
        group.validate(w).map_err(|source| GogError::Group {
            vertex: self.graph.vertex_name(v).to_string(),
            source,
        })?;
        let got = group.order_of(w);
        if got != order {
            return Err(GogError::BoundaryOrder { edge: edge.to_string(), expected: order, got });
        }
        Ok(())
    }

    /// Re-checks every invariant (useful after the mutating setters).
    pub fn validate(&self) -> Result<(), GogError> {
        for v in self.graph.vertices() {
            if self.factor_names[v].len() != self.vertex_groups[v].rank() {
                return Err(GogError::FactorNames {
                    vertex: self.graph.vertex_name(v).to_string(),
                    names: self.factor_names[v].len(),
                    factors: self.vertex_groups[v].rank(),
                });
            }
        }
        for e in self.graph.edges() {
            if self.edge_orders[e] != self.edge_orders[e ^ 1] {
                return Err(GogError::EdgeGroupMismatch { edge: self.graph.edge_name(e).to_string() });
            }
            self.check_boundary(self.graph.edge_name(e), self.graph.alpha(e), self.edge_orders[e], &self.boundary[e])?;
        }
        Ok(())
    }

    /// Underlying graph.
    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    /// Vertex group `A_v`.
    pub fn vertex_group(&self, v: VertexId) -> &FpcGroup {
        &self.vertex_groups[v]
    }

    /// Factor names of `A_v`.
    pub fn factor_names(&self, v: VertexId) -> &[String] {
        &self.factor_names[v]
    }

    /// Order of the edge group `A_e` (`0` infinite, `1` trivial).
    pub fn edge_order(&self, e: EdgeId) -> u64 {
        self.edge_orders[e]
    }

    /// Whether `A_e` is trivial.
    pub fn edge_is_trivial(&self, e: EdgeId) -> bool {
        self.edge_orders[e] == 1
    }

    /// Image `α_e(c) ∈ A_{α(e)}` of the edge-group generator `c`.
    pub fn boundary(&self, e: EdgeId) -> &FpcWord {
        &self.boundary[e]
    }

    /// `α_e(cⁿ)`.
    pub fn boundary_pow(&self, e: EdgeId, n: i64) -> FpcWord {
        self.vertex_groups[self.graph.alpha(e)].pow(&self.boundary[e], n)
    }

    /// Whether every edge group is trivial.
    pub fn has_trivial_edge_groups(&self) -> bool {
        self.edge_orders.iter().all(|&o| o == 1)
    }

    /// Fails with the first nontrivial edge group, if any.
    pub fn require_trivial_edge_groups(&self) -> Result<(), GogError> {
        match self.graph.edges().find(|&e| !self.edge_is_trivial(e)) {
            Some(e) => Err(GogError::NontrivialEdgeGroup(self.graph.edge_name(e).to_string())),
            None => Ok(()),
        }
    }

    /// Replaces a vertex group (and its factor names) without validation;
    /// boundary words at `v` must be updated by the caller.
    pub fn set_vertex_group(&mut self, v: VertexId, group: FpcGroup, names: Vec<String>) {
        self.vertex_groups[v] = group;
        self.factor_names[v] = names;
    }

    /// Replaces the boundary image of `e` without validation.
    pub fn set_boundary(&mut self, e: EdgeId, w: FpcWord) {
        self.boundary[e] = w;
    }

    /// Makes the edge group of the pair of `e` trivial.
    pub fn trivialize_edge_group(&mut self, e: EdgeId) {
        for x in [e, e ^ 1] {
            self.edge_orders[x] = 1;
            self.boundary[x] = FpcWord::identity();
        }
    }

    /// Renders an element of `A_v` with its factor names.
    pub fn format_elem(&self, v: VertexId, w: &FpcWord) -> String {
        w.format_with(&self.factor_names[v])
    }

    /// The carried sub-graph of groups obtained by deleting the edge pairs
    /// in `removed` (closed under inversion); returns it with the edge map.
    pub fn subgraph_of_groups(&self, removed: &[EdgeId]) -> Result<(GraphOfGroups, Vec<Option<EdgeId>>), GogError> {
        let (graph, map) = self.graph.without_edges(removed)?;
        let mut edge_orders = vec![1; graph.edge_count()];
        let mut boundary = vec![FpcWord::identity(); graph.edge_count()];
        for e in self.graph.edges() {
            if let Some(ne) = map[e] {
                edge_orders[ne] = self.edge_orders[e];
                boundary[ne] = self.boundary[e].clone();
            }
        }
        let sub = GraphOfGroups {
            graph,
            vertex_groups: self.vertex_groups.clone(),
            factor_names: self.factor_names.clone(),
            edge_orders,
            boundary,
        };
        Ok((sub, map))
    }

    /// The connected component of `v` as a graph of groups, with the maps
    /// old vertex → new vertex and old edge → new edge.
    pub fn component(&self, v: VertexId) -> (GraphOfGroups, Vec<Option<VertexId>>, Vec<Option<EdgeId>>) {
        let labels = self.graph.components();
        let mut out = GraphOfGroups::new();
        let mut vmap = vec![None; self.graph.vertex_count()];
        for x in self.graph.vertices().filter(|&x| labels[x] == labels[v]) {
            let nx = out
                .add_vertex_named(self.graph.vertex_name(x), self.vertex_groups[x].clone(), self.factor_names[x].clone())
                .expect("copy of valid data");
            vmap[x] = Some(nx);
        }
        let mut emap = vec![None; self.graph.edge_count()];
        for e in self.graph.positive_edges() {
            if let (Some(a), Some(b)) = (vmap[self.graph.alpha(e)], vmap[self.graph.omega(e)]) {
                let ne = out
                    .add_edge_with_group(
                        self.graph.edge_name(e),
                        self.graph.edge_name(e ^ 1),
                        a,
                        b,
                        self.edge_orders[e],
                        self.boundary[e].clone(),
                        self.boundary[e ^ 1].clone(),
                    )
                    .expect("copy of valid data");
                emap[e] = Some(ne);
                emap[e ^ 1] = Some(ne ^ 1);
            }
        }
        (out, vmap, emap)
    }

    /// DOT export of the underlying graph labelled with the vertex groups.
    pub fn to_dot(&self, name: &str) -> String {
        self.graph.to_dot(name, &|v| {
            let orders = self.vertex_groups[v].orders();
            if orders.is_empty() {
                Some("1".to_string())
            } else {
                Some(
                    orders
                        .iter()
                        .map(|&p| if p == 0 { "Z".to_string() } else { format!("Z{p}") })
                        .collect::<Vec<_>>()
                        .join("*"),
                )
            }
        })
    }
}
