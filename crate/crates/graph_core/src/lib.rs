//! Finite graphs in the sense of Serre: a vertex set, an edge set, a
//! fixed-point-free involution `e ↦ e⁻¹` and incidence maps `α`, `ω` with
//! `ω(e) = α(e⁻¹)`.  Loops (`α(e) = ω(e)`) are rejected, multi-edges are
//! allowed.
//!
//! Edges are stored in pairs: the edge with index `2k` is the *positive*
//! member of the `k`-th pair and `2k + 1` is its inverse, so `inv(e) = e ^ 1`.
//! Vertex and edge ids exposed to users are opaque strings; internally every
//! algorithm works on dense indices.

use std::collections::{HashMap, VecDeque};

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Dense vertex index.
pub type VertexId = usize;
/// Dense oriented-edge index (`inv(e) = e ^ 1`).
pub type EdgeId = usize;

/// Errors raised while building or querying a [`Graph`].
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("unknown vertex id `{0}`")]
    UnknownVertex(String),
    #[error("unknown edge id `{0}`")]
    UnknownEdge(String),
    #[error("duplicate id `{0}`")]
    DuplicateId(String),
    #[error("edge `{0}` is a loop (alpha = omega), loops are not allowed")]
    Loop(String),
    #[error("edge `{0}` is its own inverse; the involution must be fixed-point free")]
    SelfInverse(String),
    #[error("edge set to remove is not closed under inversion (edge `{0}`)")]
    NotInvClosed(String),
    #[error("edges do not form a path: `{0}` does not start where the previous edge ends")]
    NotAPath(String),
}

/// One oriented edge.
#[derive(Debug, Clone, PartialEq, Eq)]
struct EdgeData {
    name: String,
    alpha: VertexId,
    omega: VertexId,
}

/// A finite graph with edge involution and no loops.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "GraphSpec", into = "GraphSpec")]
pub struct Graph {
    vertex_names: Vec<String>,
    edges: Vec<EdgeData>,
    stars: Vec<Vec<EdgeId>>,
    vertex_index: HashMap<String, VertexId>,
    edge_index: HashMap<String, EdgeId>,
}

/// JSON form of a graph: every edge pair appears once.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphSpec {
    pub vertices: Vec<String>,
    pub edges: Vec<EdgeSpec>,
}

/// JSON form of an edge pair (`id` runs `from → to`, `inv` runs back).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeSpec {
    pub id: String,
    pub inv: String,
    pub from: String,
    pub to: String,
}

impl TryFrom<GraphSpec> for Graph {
    type Error = GraphError;

    fn try_from(spec: GraphSpec) -> Result<Self, Self::Error> {
        let mut g = Graph::new();
        for v in &spec.vertices {
            g.add_vertex(v)?;
        }
        for e in &spec.edges {
            let from = g.vertex_by_name(&e.from)?;
            let to = g.vertex_by_name(&e.to)?;
            g.add_edge(&e.id, &e.inv, from, to)?;
        }
        Ok(g)
    }
}

impl From<Graph> for GraphSpec {
    fn from(g: Graph) -> Self {
        let vertices = g.vertex_names.clone();
        let edges = g
            .positive_edges()
            .map(|e| EdgeSpec {
                id: g.edges[e].name.clone(),
                inv: g.edges[e ^ 1].name.clone(),
                from: g.vertex_names[g.edges[e].alpha].clone(),
                to: g.vertex_names[g.edges[e].omega].clone(),
            })
            .collect();
        GraphSpec { vertices, edges }
    }
}

impl Default for Graph {
    fn default() -> Self {
        Self::new()
    }
}

impl Graph {
    /// The empty graph.
    pub fn new() -> Self {
        Graph {
            vertex_names: Vec::new(),
            edges: Vec::new(),
            stars: Vec::new(),
            vertex_index: HashMap::new(),
            edge_index: HashMap::new(),
        }
    }

    /// Adds a vertex with the given id and returns its index.
    pub fn add_vertex(&mut self, name: &str) -> Result<VertexId, GraphError> {
        if self.vertex_index.contains_key(name) {
            return Err(GraphError::DuplicateId(name.to_string()));
        }
        let id = self.vertex_names.len();
        self.vertex_names.push(name.to_string());
        self.vertex_index.insert(name.to_string(), id);
        self.stars.push(Vec::new());
        Ok(id)
    }

    /// Adds an edge pair `id: from → to`, `inv: to → from` and returns the
    /// index of `id` (the positive member of the pair).
    pub fn add_edge(
        &mut self,
        id: &str,
        inv: &str,
        from: VertexId,
        to: VertexId,
    ) -> Result<EdgeId, GraphError> {
        if id == inv {
            return Err(GraphError::SelfInverse(id.to_string()));
        }
        for name in [id, inv] {
            if self.edge_index.contains_key(name) {
                return Err(GraphError::DuplicateId(name.to_string()));
            }
        }
        for v in [from, to] {
            if v >= self.vertex_names.len() {
                return Err(GraphError::UnknownVertex(format!("#{v}")));
            }
        }
        if from == to {
            return Err(GraphError::Loop(id.to_string()));
        }
        let e = self.edges.len();
        self.edges.push(EdgeData { name: id.to_string(), alpha: from, omega: to });
        self.edges.push(EdgeData { name: inv.to_string(), alpha: to, omega: from });
        self.edge_index.insert(id.to_string(), e);
        self.edge_index.insert(inv.to_string(), e + 1);
        self.stars[from].push(e);
        self.stars[to].push(e + 1);
        Ok(e)
    }

    /// Number of vertices.
    pub fn vertex_count(&self) -> usize {
        self.vertex_names.len()
    }

    /// Number of oriented edges (twice the number of edge pairs).
    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Number of edge pairs.
    pub fn pair_count(&self) -> usize {
        self.edges.len() / 2
    }

    /// All vertex indices.
    pub fn vertices(&self) -> std::ops::Range<VertexId> {
        0..self.vertex_names.len()
    }

    /// All oriented edge indices.
    pub fn edges(&self) -> std::ops::Range<EdgeId> {
        0..self.edges.len()
    }

    /// The positive member of every edge pair.
    pub fn positive_edges(&self) -> impl Iterator<Item = EdgeId> + '_ {
        (0..self.edges.len()).step_by(2)
    }

    /// Whether `e` is the positive member of its pair.
    pub fn is_positive(&self, e: EdgeId) -> bool {
        e % 2 == 0
    }

    /// Initial vertex `α(e)`.
    pub fn alpha(&self, e: EdgeId) -> VertexId {
        self.edges[e].alpha
    }

    /// Terminal vertex `ω(e) = α(e⁻¹)`.
    pub fn omega(&self, e: EdgeId) -> VertexId {
        self.edges[e].omega
    }

    /// The inverse edge `e⁻¹`.
    pub fn inv(&self, e: EdgeId) -> EdgeId {
        e ^ 1
    }

    /// The id of vertex `v`.
    pub fn vertex_name(&self, v: VertexId) -> &str {
        &self.vertex_names[v]
    }

    /// The id of edge `e`.
    pub fn edge_name(&self, e: EdgeId) -> &str {
        &self.edges[e].name
    }

    /// Looks up a vertex by id.
    pub fn vertex_by_name(&self, name: &str) -> Result<VertexId, GraphError> {
        self.vertex_index
            .get(name)
            .copied()
            .ok_or_else(|| GraphError::UnknownVertex(name.to_string()))
    }

    /// Looks up an edge by id.
    pub fn edge_by_name(&self, name: &str) -> Result<EdgeId, GraphError> {
        self.edge_index
            .get(name)
            .copied()
            .ok_or_else(|| GraphError::UnknownEdge(name.to_string()))
    }

    /// Whether `v` is a vertex index of this graph.
    pub fn has_vertex(&self, v: VertexId) -> bool {
        v < self.vertex_names.len()
    }

    /// Whether `e` is an edge index of this graph.
    pub fn has_edge(&self, e: EdgeId) -> bool {
        e < self.edges.len()
    }

    /// The star `st(v) = { e | α(e) = v }`, in increasing edge order.
    pub fn star(&self, v: VertexId) -> &[EdgeId] {
        &self.stars[v]
    }

    /// Star of a vertex given by id.
    pub fn star_by_name(&self, name: &str) -> Result<Vec<String>, GraphError> {
        let v = self.vertex_by_name(name)?;
        Ok(self.star(v).iter().map(|&e| self.edge_name(e).to_string()).collect())
    }

    /// Checks that `edges` is an edge path starting at `start` and returns
    /// its terminal vertex.
    pub fn path_end(&self, start: VertexId, edges: &[EdgeId]) -> Result<VertexId, GraphError> {
        if !self.has_vertex(start) {
            return Err(GraphError::UnknownVertex(format!("#{start}")));
        }
        let mut at = start;
        for &e in edges {
            if !self.has_edge(e) {
                return Err(GraphError::UnknownEdge(format!("#{e}")));
            }
            if self.alpha(e) != at {
                return Err(GraphError::NotAPath(self.edge_name(e).to_string()));
            }
            at = self.omega(e);
        }
        Ok(at)
    }

    /// Connected-component label of every vertex (labels are `0..count`,
    /// assigned in order of the smallest vertex of each component).
    pub fn components(&self) -> Vec<usize> {
        let n = self.vertex_count();
        let mut label = vec![usize::MAX; n];
        let mut next = 0;
        for s in 0..n {
            if label[s] != usize::MAX {
                continue;
            }
            label[s] = next;
            let mut queue = VecDeque::from([s]);
            while let Some(v) = queue.pop_front() {
                for &e in self.star(v) {
                    let w = self.omega(e);
                    if label[w] == usize::MAX {
                        label[w] = next;
                        queue.push_back(w);
                    }
                }
            }
            next += 1;
        }
        label
    }

    /// Number of connected components.
    pub fn component_count(&self) -> usize {
        self.components().into_iter().max().map_or(0, |m| m + 1)
    }

    /// Whether the graph is connected (the empty graph counts as connected).
    pub fn is_connected(&self) -> bool {
        self.component_count() <= 1
    }

    /// First Betti number `|edge pairs| − |vertices| + |components|`.
    pub fn first_betti(&self) -> usize {
        self.pair_count() + self.component_count() - self.vertex_count()
    }

    /// Breadth-first spanning tree of the component of `root`.  Stars are
    /// scanned in edge order, so the tree is deterministic.
    pub fn spanning_tree(&self, root: VertexId) -> SpanningTree {
        let n = self.vertex_count();
        let mut parent = vec![None; n];
        let mut seen = vec![false; n];
        let mut order = vec![root];
        seen[root] = true;
        let mut head = 0;
        while head < order.len() {
            let v = order[head];
            head += 1;
            for &e in self.star(v) {
                let w = self.omega(e);
                if !seen[w] {
                    seen[w] = true;
                    parent[w] = Some(e);
                    order.push(w);
                }
            }
        }
        SpanningTree { root, parent, order }
    }

    /// Removes the given edges (which must be closed under inversion) and
    /// returns the new graph together with the map old edge → new edge.
    /// Vertices are kept with the same indices.
    pub fn without_edges(
        &self,
        removed: &[EdgeId],
    ) -> Result<(Graph, Vec<Option<EdgeId>>), GraphError> {
        let mut drop = vec![false; self.edge_count()];
        for &e in removed {
            if !self.has_edge(e) {
                return Err(GraphError::UnknownEdge(format!("#{e}")));
            }
            drop[e] = true;
        }
        for e in self.edges() {
            if drop[e] != drop[e ^ 1] {
                return Err(GraphError::NotInvClosed(self.edge_name(e).to_string()));
            }
        }
        let mut g = Graph::new();
        for v in self.vertices() {
            g.add_vertex(self.vertex_name(v)).expect("names are unique");
        }
        let mut map = vec![None; self.edge_count()];
        for e in self.positive_edges() {
            if drop[e] {
                continue;
            }
            let ne = g
                .add_edge(self.edge_name(e), self.edge_name(e ^ 1), self.alpha(e), self.omega(e))
                .expect("edge data already valid");
            map[e] = Some(ne);
            map[e ^ 1] = Some(ne ^ 1);
        }
        Ok((g, map))
    }

    /// DOT rendering; `vertex_label` supplies an optional extra label line.
    pub fn to_dot(&self, name: &str, vertex_label: &dyn Fn(VertexId) -> Option<String>) -> String {
        let mut out = format!("graph \"{}\" {{\n", escape(name));
        for v in self.vertices() {
            let label = match vertex_label(v) {
                Some(extra) => format!("{}\\n{}", escape(self.vertex_name(v)), escape(&extra)),
                None => escape(self.vertex_name(v)),
            };
            out.push_str(&format!("  \"{}\" [label=\"{}\"];\n", escape(self.vertex_name(v)), label));
        }
        for e in self.positive_edges() {
            out.push_str(&format!(
                "  \"{}\" -- \"{}\" [label=\"{}\"];\n",
                escape(self.vertex_name(self.alpha(e))),
                escape(self.vertex_name(self.omega(e))),
                escape(self.edge_name(e))
            ));
        }
        out.push_str("}\n");
        out
    }
}

fn escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

/// A rooted spanning tree of one component.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpanningTree {
    /// The root vertex.
    pub root: VertexId,
    /// For every reached vertex other than the root, the tree edge whose
    /// terminal vertex it is.
    pub parent: Vec<Option<EdgeId>>,
    /// Vertices of the component in breadth-first order.
    pub order: Vec<VertexId>,
}

impl SpanningTree {
    /// Whether `v` lies in the tree's component.
    pub fn contains(&self, v: VertexId) -> bool {
        v == self.root || self.parent[v].is_some()
    }

    /// Whether `e` (either orientation) is a tree edge.
    pub fn is_tree_edge(&self, g: &Graph, e: EdgeId) -> bool {
        self.parent[g.omega(e)] == Some(e) || self.parent[g.alpha(e)] == Some(e ^ 1)
    }

    /// The edge path from the root to `v` inside the tree.
    pub fn path_from_root(&self, g: &Graph, v: VertexId) -> Vec<EdgeId> {
        let mut path = Vec::new();
        let mut at = v;
        while let Some(e) = self.parent[at] {
            path.push(e);
            at = g.alpha(e);
        }
        path.reverse();
        path
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn two_vertex_multi(k: usize) -> Graph {
        let mut g = Graph::new();
        let a = g.add_vertex("a").unwrap();
        let b = g.add_vertex("b").unwrap();
        for i in 0..k {
            g.add_edge(&format!("e{i}"), &format!("e{i}'"), a, b).unwrap();
        }
        g
    }

    #[test]
    fn star_of_single_pair() {
        let g = two_vertex_multi(1);
        assert_eq!(g.star_by_name("a").unwrap(), vec!["e0".to_string()]);
        assert_eq!(g.star_by_name("b").unwrap(), vec!["e0'".to_string()]);
    }

    #[test]
    fn isolated_vertex_has_empty_star() {
        let mut g = Graph::new();
        let v = g.add_vertex("v").unwrap();
        assert!(g.star(v).is_empty());
    }

    #[test]
    fn loops_and_duplicates_rejected() {
        let mut g = Graph::new();
        let a = g.add_vertex("a").unwrap();
        assert_eq!(g.add_edge("e", "f", a, a), Err(GraphError::Loop("e".into())));
        assert_eq!(g.add_vertex("a"), Err(GraphError::DuplicateId("a".into())));
        let b = g.add_vertex("b").unwrap();
        assert_eq!(g.add_edge("e", "e", a, b), Err(GraphError::SelfInverse("e".into())));
    }

    #[test]
    fn betti_of_small_graphs() {
        let g = two_vertex_multi(2);
        assert!(g.is_connected());
        assert_eq!(g.first_betti(), 1);
        let mut t = Graph::new();
        let v: Vec<_> = (0..3).map(|i| t.add_vertex(&format!("v{i}")).unwrap()).collect();
        t.add_edge("x", "x'", v[0], v[1]).unwrap();
        t.add_edge("y", "y'", v[1], v[2]).unwrap();
        assert!(t.is_connected());
        assert_eq!(t.first_betti(), 0);
    }

    #[test]
    fn spanning_tree_paths() {
        let g = two_vertex_multi(3);
        let tree = g.spanning_tree(0);
        assert_eq!(tree.path_from_root(&g, 1), vec![0]);
        assert!(tree.is_tree_edge(&g, 0) && tree.is_tree_edge(&g, 1));
        assert!(!tree.is_tree_edge(&g, 2));
    }

    #[test]
    fn remove_edges_requires_inv_closure() {
        let g = two_vertex_multi(2);
        assert!(matches!(g.without_edges(&[0]), Err(GraphError::NotInvClosed(_))));
        let (h, map) = g.without_edges(&[0, 1]).unwrap();
        assert_eq!(h.pair_count(), 1);
        assert_eq!(map[2], Some(0));
        assert_eq!(map[0], None);
    }
}
