//! Graphs of groups whose vertex groups are free products of cyclic groups
//! and whose edge groups are cyclic, together with A-paths, their
//! reduction and transversal normal forms, and the fundamental group
//! realised as normalized closed A-paths.
//!
//! For an oriented edge `e` the boundary monomorphism `α_e : A_e → A_{α(e)}`
//! is recorded by the image of the edge-group generator; `ω_e` is `α_{e⁻¹}`.

mod gog;
mod path;
mod pi1;
pub mod random;
mod tree;

pub use gog::{EdgeGroupSpec, GogError, GogSpec, GraphOfGroups, VertexGroupSpec};
pub use path::{APath, PathSpec, Strategy};
pub use pi1::Pi1Element;
pub use tree::TreeBasis;
