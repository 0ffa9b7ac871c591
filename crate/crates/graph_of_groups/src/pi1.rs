//! The fundamental group `π1(𝔸, v)` as normalized closed A-paths.

use graph_core::VertexId;

use crate::gog::{GogError, GraphOfGroups};
use crate::path::APath;

/// An element of `π1(𝔸, base)`: the normal form of a closed A-path at
/// `base`.  Structural equality is group equality.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Pi1Element {
    pub base: VertexId,
    pub path: APath,
}

impl Pi1Element {
    /// Whether this is the identity.
    pub fn is_identity(&self) -> bool {
        self.path.edges.is_empty() && self.path.elems[0].is_identity()
    }

    /// Syllable norm: number of edges plus syllables of all elements.
    pub fn norm(&self) -> usize {
        self.path.edges.len() + self.path.elems.iter().map(|a| a.len()).sum::<usize>()
    }
}

impl GraphOfGroups {
    /// The identity of `π1(𝔸, base)`.
    pub fn pi1_identity(&self, base: VertexId) -> Pi1Element {
        Pi1Element { base, path: self.trivial_path(base) }
    }

    /// The class of a closed A-path.
    pub fn pi1_from_path(&self, p: &APath) -> Result<Pi1Element, GogError> {
        self.validate_path(p)?;
        if !self.is_closed(p) {
            return Err(GogError::OpenPath);
        }
        Ok(Pi1Element { base: p.start, path: self.normalize(p) })
    }

    /// Product `xy`.
    pub fn pi1_mul(&self, x: &Pi1Element, y: &Pi1Element) -> Result<Pi1Element, GogError> {
        if x.base != y.base {
            return Err(GogError::BaseMismatch(
                self.graph().vertex_name(x.base).to_string(),
                self.graph().vertex_name(y.base).to_string(),
            ));
        }
        let p = self.concat(&x.path, &y.path)?;
        Ok(Pi1Element { base: x.base, path: self.normalize(&p) })
    }

    /// Inverse `x⁻¹`.
    pub fn pi1_inv(&self, x: &Pi1Element) -> Pi1Element {
        Pi1Element { base: x.base, path: self.normalize(&self.inverse_path(&x.path)) }
    }

    /// Power `xⁿ`.
    pub fn pi1_pow(&self, x: &Pi1Element, n: i64) -> Pi1Element {
        let base = if n < 0 { self.pi1_inv(x) } else { x.clone() };
        let mut acc = self.pi1_identity(x.base);
        for _ in 0..n.unsigned_abs() {
            acc = self.pi1_mul(&acc, &base).expect("same base");
        }
        acc
    }

    /// Conjugate `g·x·g⁻¹`.
    pub fn pi1_conj(&self, g: &Pi1Element, x: &Pi1Element) -> Result<Pi1Element, GogError> {
        let gx = self.pi1_mul(g, x)?;
        self.pi1_mul(&gx, &self.pi1_inv(g))
    }

    /// Group equality (normal-form equality).
    pub fn pi1_eq(&self, x: &Pi1Element, y: &Pi1Element) -> bool {
        x.base == y.base && self.normalize(&x.path) == self.normalize(&y.path)
    }
}
