//! Auxiliary moves A0 (conjugation), A1 (Bass–Serre move) and A2 (simple
//! adjustment).

use fpc_words::FpcWord;
use gg_morphism::GGMorphism;
use graph_core::{EdgeId, VertexId};

use crate::{validated, MoveError, MoveResult};

/// A0 at `u` with `g ∈ A_{φ(u)}`: `φ'_u = i_g ∘ φ_u` and `o'_f = g·o_f`
/// for every `f ∈ st(u)`.  Induces the same map on `π1` at any base
/// vertex other than `u`.
pub fn move_a0(m: &GGMorphism, u: VertexId, g: &FpcWord) -> Result<GGMorphism, MoveError> {
    let a = m.target.vertex_group(m.vertex_map[u]);
    a.validate(g)?;
    let mut out = m.clone();
    out.vertex_homs[u] = m.vertex_homs[u].conjugated(g);
    for &f in m.source.graph().star(u) {
        out.set_o(f, a.mul(g, &m.o[f]));
    }
    validated(out)
}

/// A1 at `f` with `c = γⁿ ∈ A_{φ(f)}` (`γ` the edge-group generator):
/// `o'_f = o_f·α_{φ(f)}(c⁻¹)`, `t'_f = ω_{φ(f)}(c)·t_f`; the edge
/// homomorphism is unchanged since edge groups are abelian.
pub fn move_a1(m: &GGMorphism, f: EdgeId, n: i64) -> Result<GGMorphism, MoveError> {
    let e = m.edge_map[f];
    let tg = m.target.graph();
    let (a, w) = (m.target.vertex_group(tg.alpha(e)), m.target.vertex_group(tg.omega(e)));
    let o = a.mul(&m.o[f], &m.target.boundary_pow(e, -n));
    let t = w.mul(&m.target.boundary_pow(e ^ 1, n), &m.t[f]);
    let mut out = m.clone();
    out.set_o(f, o);
    out.set_t(f, t);
    validated(out)
}

/// A2 at `f` with `b ∈ B_{α(f)}`: `α'_f = i_b ∘ α_f` and
/// `o'_f = φ_{α(f)}(b)·o_f`.  Returns `σ : 𝔹 → 𝔹'` (identity data except
/// `o^σ_f = b⁻¹`) with `φ' ∘ σ = φ`.
pub fn move_a2(m: &GGMorphism, f: EdgeId, b: &FpcWord) -> Result<MoveResult, MoveError> {
    let u = m.source.graph().alpha(f);
    let bu = m.source.vertex_group(u);
    bu.validate(b)?;
    let mut source = m.source.clone();
    if !source.edge_is_trivial(f) {
        let nb = bu.conj(b, source.boundary(f));
        source.set_boundary(f, nb);
    }
    let a = m.target.vertex_group(m.vertex_map[u]);
    let mut phi = m.clone();
    phi.source = source.clone();
    phi.set_o(f, a.mul(&m.vertex_homs[u].apply(b), &m.o[f]));
    let mut sigma = GGMorphism::identity(&m.source);
    sigma.target = source;
    sigma.set_o(f, bu.inv(b));
    Ok(MoveResult { morphism: validated(phi)?, sigma: validated(sigma)? })
}
