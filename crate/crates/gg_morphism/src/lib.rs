//! Morphisms of graphs of groups `φ : 𝔹 → 𝔸`: a graph map together with
//! vertex homomorphisms `φ_u : B_u → A_{φ(u)}`, edge homomorphisms
//! `φ_f : B_f → A_{φ(f)}` and elements `o_f ∈ A_{α(φ(f))}`,
//! `t_f ∈ A_{ω(φ(f))}` such that
//! `φ_{α(f)} ∘ α_f = i_{o_f} ∘ α_{φ(f)} ∘ φ_f` and `t_f = o_{f⁻¹}⁻¹`.
//!
//! The crate computes induced maps on A-paths and on `π1`, composes
//! morphisms, checks the folded conditions (F0)–(F2) and local
//! surjectivity, and evaluates the complexity measures of a morphism.

mod complexity;
mod compose;
mod folded;
mod image;
mod morphism;
pub mod random;

pub use complexity::{edge_index, ComplexityReport};
pub use folded::{F1Witness, F2Witness, FoldReport, FoldVerdict, LocalSurjectivity, SEARCH_BOUND};
pub use morphism::{edge_data_table, EdgeImageSpec, GGMorphism, MorphismError, MorphismSpec, VertexImageSpec, Violation};
