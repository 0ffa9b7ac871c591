//! Orbifold descriptors and the small / sufficiently-large predicates.

use serde::{Deserialize, Serialize};

use crate::OrbifoldError;

/// A compact orbifold `F(p_1, …, p_r)`.  For orientable `F` the genus is
/// the number of handles (so `p = 2·genus` generators `a_i`); for
/// non-orientable `F` it is the number of cross-caps (`p = genus ≥ 1`).
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct OrbifoldSpec {
    pub orientable: bool,
    pub genus: usize,
    /// Number `q` of boundary components.
    pub boundary_count: usize,
    /// Orders `p_1, …, p_r` of the cone points, in the given order.
    pub cone_orders: Vec<u64>,
}

impl OrbifoldSpec {
    /// A validated descriptor.
    pub fn new(orientable: bool, genus: usize, boundary_count: usize, cone_orders: Vec<u64>) -> Result<Self, OrbifoldError> {
        let spec = OrbifoldSpec { orientable, genus, boundary_count, cone_orders };
        spec.validate()?;
        Ok(spec)
    }

    /// Checks cone orders `≥ 2` and `genus ≥ 1` for non-orientable surfaces.
    pub fn validate(&self) -> Result<(), OrbifoldError> {
        if let Some((index, &order)) = self.cone_orders.iter().enumerate().find(|(_, &p)| p < 2) {
            return Err(OrbifoldError::ConeOrder { index: index + 1, order });
        }
        if !self.orientable && self.genus == 0 {
            return Err(OrbifoldError::NonOrientableGenus);
        }
        Ok(())
    }

    /// Whether the underlying surface is closed (`q = 0`).
    pub fn is_closed(&self) -> bool {
        self.boundary_count == 0
    }

    /// Number `p` of surface generators `a_i`.
    pub fn surface_generator_count(&self) -> usize {
        if self.orientable {
            2 * self.genus
        } else {
            self.genus
        }
    }

    /// Number `r` of cone points.
    pub fn cone_count(&self) -> usize {
        self.cone_orders.len()
    }

    /// Whether this is a Möbius band (non-orientable genus 1, one boundary
    /// component, no cone points).
    pub fn is_moebius_band(&self) -> bool {
        !self.orientable && self.genus == 1 && self.boundary_count == 1 && self.cone_orders.is_empty()
    }

    /// Small orbifolds: the Möbius band, or a sphere with `q ≥ 1` disks
    /// removed and `0 ≤ r ≤ 2` cone points, where `r = 2` if `q = 1`.
    pub fn is_small(&self) -> bool {
        if self.is_moebius_band() {
            return true;
        }
        let (q, r) = (self.boundary_count, self.cone_count());
        self.orientable && self.genus == 0 && q >= 1 && r <= 2 && (q != 1 || r == 2)
    }

    /// Sufficiently large orbifolds: closed, with at least four cone points
    /// if the surface is a sphere and at least two if it is a projective
    /// plane.
    pub fn is_sufficiently_large(&self) -> bool {
        if !self.is_closed() {
            return false;
        }
        match (self.orientable, self.genus) {
            (true, 0) => self.cone_count() >= 4,
            (false, 1) => self.cone_count() >= 2,
            _ => true,
        }
    }

    /// Short name such as `T²(3, 2)`, `S²(2, 2, 2)` or
    /// `N_3 with 2 boundary components (5)`.
    pub fn name(&self) -> String {
        let surface = match (self.orientable, self.genus, self.boundary_count) {
            (true, 0, 0) => "S²".to_string(),
            (true, 0, 1) => "D²".to_string(),
            (true, 0, 2) => "A".to_string(),
            (true, 1, 0) => "T²".to_string(),
            (false, 1, 0) => "ℝP²".to_string(),
            (false, 1, 1) => "Mb".to_string(),
            (false, 2, 0) => "K".to_string(),
            (true, g, 0) => format!("Σ_{g}"),
            (false, g, 0) => format!("N_{g}"),
            (true, g, q) => format!("Σ_{g},{q}"),
            (false, g, q) => format!("N_{g},{q}"),
        };
        if self.cone_orders.is_empty() {
            surface
        } else {
            let orders: Vec<String> = self.cone_orders.iter().map(u64::to_string).collect();
            format!("{surface}({})", orders.join(", "))
        }
    }
}
