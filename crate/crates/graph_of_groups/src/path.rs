//! A-paths: alternating sequences of vertex-group elements and edges, their
//! reduction and transversal normal forms.

use fpc_words::FpcWord;
use graph_core::{EdgeId, VertexId};
use serde::{Deserialize, Serialize};

use crate::gog::{GogError, GraphOfGroups};

/// An A-path `a_0, e_1, a_1, …, e_k, a_k` starting at `start`, with
/// `a_0 ∈ A_start` and `a_i ∈ A_{ω(e_i)}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct APath {
    pub start: VertexId,
    pub elems: Vec<FpcWord>,
    pub edges: Vec<EdgeId>,
}

impl APath {
    /// Number of edges.
    pub fn len(&self) -> usize {
        self.edges.len()
    }

    /// Whether the path has no edges.
    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }
}

/// JSON form of an A-path using vertex and edge ids.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PathSpec {
    pub start: String,
    pub elems: Vec<FpcWord>,
    pub edges: Vec<String>,
}

/// Order in which backtracking subpaths are removed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Strategy {
    /// Single left-to-right pass with a stack.
    LeftFirst,
    /// Repeatedly removes the rightmost backtracking subpath.
    RightFirst,
}

impl GraphOfGroups {
    /// The path of length 0 carrying the identity at `v`.
    pub fn trivial_path(&self, v: VertexId) -> APath {
        APath { start: v, elems: vec![FpcWord::identity()], edges: Vec::new() }
    }

    /// The path of length 0 carrying `a ∈ A_v`.
    pub fn elem_path(&self, v: VertexId, a: FpcWord) -> APath {
        APath { start: v, elems: vec![a], edges: Vec::new() }
    }

    /// The path `1, e, 1`.
    pub fn edge_path(&self, e: EdgeId) -> APath {
        APath {
            start: self.graph().alpha(e),
            elems: vec![FpcWord::identity(), FpcWord::identity()],
            edges: vec![e],
        }
    }

    /// Builds and validates a path.
    pub fn path(&self, start: VertexId, elems: Vec<FpcWord>, edges: Vec<EdgeId>) -> Result<APath, GogError> {
        let p = APath { start, elems, edges };
        self.validate_path(&p)?;
        Ok(p)
    }

    /// Checks the A-path invariants.
    pub fn validate_path(&self, p: &APath) -> Result<(), GogError> {
        if p.elems.len() != p.edges.len() + 1 {
            return Err(GogError::InvalidPath(format!(
                "{} elements for {} edges",
                p.elems.len(),
                p.edges.len()
            )));
        }
        self.graph().path_end(p.start, &p.edges)?;
        let mut at = p.start;
        for (i, a) in p.elems.iter().enumerate() {
            if i > 0 {
                at = self.graph().omega(p.edges[i - 1]);
            }
            self.vertex_group(at)
                .validate(a)
                .map_err(|err| GogError::InvalidPath(format!("element {i}: {err}")))?;
        }
        Ok(())
    }

    /// Terminal vertex.
    pub fn path_end(&self, p: &APath) -> VertexId {
        p.edges.last().map_or(p.start, |&e| self.graph().omega(e))
    }

    /// Whether the path is closed.
    pub fn is_closed(&self, p: &APath) -> bool {
        self.path_end(p) == p.start
    }

    /// The vertex carrying element `i` of the path.
    pub fn elem_vertex(&self, p: &APath, i: usize) -> VertexId {
        if i == 0 {
            p.start
        } else {
            self.graph().omega(p.edges[i - 1])
        }
    }

    /// Concatenation `p·q` (the last element of `p` is multiplied with the
    /// first element of `q`).
    pub fn concat(&self, p: &APath, q: &APath) -> Result<APath, GogError> {
        let end = self.path_end(p);
        if end != q.start {
            return Err(GogError::InvalidPath(format!(
                "cannot concatenate: path ends at `{}`, next starts at `{}`",
                self.graph().vertex_name(end),
                self.graph().vertex_name(q.start)
            )));
        }
        let mut out = p.clone();
        let last = out.elems.pop().expect("paths have at least one element");
        out.elems.push(self.vertex_group(end).mul(&last, &q.elems[0]));
        out.elems.extend(q.elems[1..].iter().cloned());
        out.edges.extend(q.edges.iter().copied());
        Ok(out)
    }

    /// Concatenation of several paths.
    pub fn concat_all(&self, parts: &[APath]) -> Result<APath, GogError> {
        let mut it = parts.iter();
        let mut out = it
            .next()
            .cloned()
            .ok_or_else(|| GogError::InvalidPath("empty concatenation".into()))?;
        for p in it {
            out = self.concat(&out, p)?;
        }
        Ok(out)
    }

    /// The inverse path `a_k⁻¹, e_k⁻¹, …, e_1⁻¹, a_0⁻¹`.
    pub fn inverse_path(&self, p: &APath) -> APath {
        let mut elems = Vec::with_capacity(p.elems.len());
        for i in (0..p.elems.len()).rev() {
            elems.push(self.vertex_group(self.elem_vertex(p, i)).inv(&p.elems[i]));
        }
        let edges = p.edges.iter().rev().map(|&e| e ^ 1).collect();
        APath { start: self.path_end(p), elems, edges }
    }

    /// If `e_in, x, e_in⁻¹` backtracks (`x ∈ ω_{e_in}(A_{e_in})`), returns the
    /// exponent `n` with `x = ω_{e_in}(cⁿ)`.
    fn backtrack_exponent(&self, e_in: EdgeId, x: &FpcWord, e_out: EdgeId) -> Option<i64> {
        if e_out != e_in ^ 1 {
            return None;
        }
        if self.edge_is_trivial(e_out) {
            return x.is_identity().then_some(0);
        }
        let v = self.graph().alpha(e_out);
        self.vertex_group(v)
            .is_power_of(x, self.boundary(e_out))
            .expect("boundary of a nontrivial edge group is nontrivial")
    }

    /// Whether no subpath `a, e, ω_e(c), e⁻¹, a′` remains.
    pub fn is_reduced(&self, p: &APath) -> bool {
        (1..p.edges.len()).all(|i| self.backtrack_exponent(p.edges[i - 1], &p.elems[i], p.edges[i]).is_none())
    }

    /// Reduction with the default (left-first) strategy.
    pub fn reduce(&self, p: &APath) -> APath {
        self.reduce_with(p, Strategy::LeftFirst)
    }

    /// Removes backtracking subpaths `a, e, ω_e(c), e⁻¹, a′ ↦ a·α_e(c)·a′`
    /// until none remains.
    pub fn reduce_with(&self, p: &APath, strategy: Strategy) -> APath {
        match strategy {
            Strategy::LeftFirst => self.reduce_stack(p),
            Strategy::RightFirst => self.reduce_rightmost(p),
        }
    }

    fn reduce_stack(&self, p: &APath) -> APath {
        let mut elems = vec![p.elems[0].clone()];
        let mut edges: Vec<EdgeId> = Vec::new();
        for (i, &e) in p.edges.iter().enumerate() {
            let a = &p.elems[i + 1];
            if let Some(&last) = edges.last() {
                let middle = elems.last().expect("nonempty");
                if let Some(n) = self.backtrack_exponent(last, middle, e) {
                    elems.pop();
                    edges.pop();
                    let v = self.graph().alpha(last);
                    let g = self.vertex_group(v);
                    let prev = elems.pop().expect("nonempty");
                    elems.push(g.product([&prev, &self.boundary_pow(last, n), a]));
                    continue;
                }
            }
            edges.push(e);
            elems.push(a.clone());
        }
        APath { start: p.start, elems, edges }
    }

    fn reduce_rightmost(&self, p: &APath) -> APath {
        let mut q = p.clone();
        loop {
            let hit = (1..q.edges.len())
                .rev()
                .find_map(|i| self.backtrack_exponent(q.edges[i - 1], &q.elems[i], q.edges[i]).map(|n| (i, n)));
            let Some((i, n)) = hit else { return q };
            let last = q.edges[i - 1];
            let g = self.vertex_group(self.graph().alpha(last));
            let merged = g.product([&q.elems[i - 1], &self.boundary_pow(last, n), &q.elems[i + 1]]);
            q.elems.splice(i - 1..=i + 1, [merged]);
            q.edges.drain(i - 1..=i);
        }
    }

    /// Normal form: reduce, then, scanning left to right, replace each
    /// `a_i` (`i < k`) by its canonical representative modulo
    /// `α_{e_{i+1}}(A_{e_{i+1}})` and push the correction across `e_{i+1}`.
    /// Two A-paths are equivalent iff their normal forms coincide.
    pub fn normalize(&self, p: &APath) -> APath {
        let mut q = self.reduce(p);
        for i in 0..q.edges.len() {
            let e = q.edges[i];
            if self.edge_is_trivial(e) {
                continue;
            }
            let v = self.graph().alpha(e);
            let (rep, n) = self
                .vertex_group(v)
                .coset_min_rep(&q.elems[i], self.boundary(e))
                .expect("boundary of a nontrivial edge group is nontrivial");
            if n != 0 {
                let w = self.graph().omega(e);
                let correction = self.boundary_pow(e ^ 1, n);
                q.elems[i + 1] = self.vertex_group(w).mul(&correction, &q.elems[i + 1]);
            }
            q.elems[i] = rep;
        }
        q
    }

    /// Whether two A-paths are equivalent.
    pub fn equivalent(&self, p: &APath, q: &APath) -> bool {
        p.start == q.start && self.normalize(p) == self.normalize(q)
    }

    /// Human-readable rendering `a_0, e_1, a_1, …`.
    pub fn format_path(&self, p: &APath) -> String {
        let mut parts = vec![self.format_elem(p.start, &p.elems[0])];
        for (i, &e) in p.edges.iter().enumerate() {
            parts.push(self.graph().edge_name(e).to_string());
            parts.push(self.format_elem(self.graph().omega(e), &p.elems[i + 1]));
        }
        parts.join(", ")
    }

    /// JSON form of a path.
    pub fn path_to_spec(&self, p: &APath) -> PathSpec {
        PathSpec {
            start: self.graph().vertex_name(p.start).to_string(),
            elems: p.elems.clone(),
            edges: p.edges.iter().map(|&e| self.graph().edge_name(e).to_string()).collect(),
        }
    }

    /// Parses and validates a path given in JSON form.
    pub fn path_from_spec(&self, spec: &PathSpec) -> Result<APath, GogError> {
        let start = self.graph().vertex_by_name(&spec.start)?;
        let edges = spec
            .edges
            .iter()
            .map(|e| self.graph().edge_by_name(e))
            .collect::<Result<Vec<_>, _>>()?;
        self.path(start, spec.elems.clone(), edges)
    }
}
