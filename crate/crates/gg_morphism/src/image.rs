//! Induced maps on A-paths and on fundamental groups.

use fpc_words::FpcWord;
use graph_of_groups::{APath, GogError, Pi1Element};

use crate::morphism::GGMorphism;

impl GGMorphism {
    /// Image of a source A-path `b_0, f_1, b_1, …, f_k, b_k`:
    /// `a_0 = φ(b_0)·o_{f_1}`, `a_i = t_{f_i}·φ(b_i)·o_{f_{i+1}}`,
    /// `a_k = t_{f_k}·φ(b_k)`, edges `φ(f_i)`.
    pub fn induced_image(&self, q: &APath) -> Result<APath, GogError> {
        self.source.validate_path(q)?;
        let k = q.edges.len();
        let mut elems = Vec::with_capacity(k + 1);
        for i in 0..=k {
            let u = self.source.elem_vertex(q, i);
            let group = self.target.vertex_group(self.vertex_map[u]);
            let mut a = self.vertex_homs[u].apply(&q.elems[i]);
            if i > 0 {
                a = group.mul(&self.t[q.edges[i - 1]], &a);
            }
            if i < k {
                a = group.mul(&a, &self.o[q.edges[i]]);
            }
            elems.push(a);
        }
        Ok(APath {
            start: self.vertex_map[q.start],
            elems,
            edges: q.edges.iter().map(|&f| self.edge_map[f]).collect(),
        })
    }

    /// The induced homomorphism `φ_* : π1(𝔹, u) → π1(𝔸, φ(u))`.
    pub fn induced_hom(&self, x: &Pi1Element) -> Result<Pi1Element, GogError> {
        let p = self.induced_image(&x.path)?;
        self.target.pi1_from_path(&p)
    }

    /// Image of a single vertex-group element.
    pub fn vertex_image(&self, u: usize, b: &FpcWord) -> FpcWord {
        self.vertex_homs[u].apply(b)
    }
}
