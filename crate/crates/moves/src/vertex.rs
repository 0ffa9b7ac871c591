//! Vertex morphisms: replacing `B_u` by `B_u / ker(φ_u)`.

use fpc_words::{FpcGroup, FpcHom, Injectivity};
use gg_morphism::GGMorphism;
use graph_core::VertexId;

use crate::{validated, MoveError, MoveResult};

/// Vertex morphism at `u`.  The kernel must be generated by powers of the
/// factor generators: with `o_i` the order of `φ_u(x_i)`, the induced map
/// from `∗ Z_{o_i}` (factors with `o_i = 1` dropped) must be injective;
/// otherwise the move is reported as unsupported rather than producing a
/// wrong quotient.  Edge groups at `u` must be trivial.  Returns `σ`
/// (identity except the projection at `u`) with `φ' ∘ σ = φ`.
pub fn vertex_morphism(m: &GGMorphism, u: VertexId) -> Result<MoveResult, MoveError> {
    let g = m.source.graph();
    if let Some(&f) = g.star(u).iter().find(|&&f| !m.source.edge_is_trivial(f)) {
        return Err(MoveError::Unsupported(format!("edge {} at the vertex has nontrivial group", g.edge_name(f))));
    }
    let hom = &m.vertex_homs[u];
    let bu = m.source.vertex_group(u);
    if hom.injectivity() == Injectivity::Injective {
        return Ok(MoveResult { morphism: m.clone(), sigma: GGMorphism::identity(&m.source) });
    }
    let a = hom.target();
    let mut orders = Vec::new();
    let mut images = Vec::new();
    let mut names = Vec::new();
    let mut position = vec![None; bu.rank()];
    for (i, img) in hom.images().iter().enumerate() {
        let o = a.order_of(img);
        if o == 1 {
            continue;
        }
        position[i] = Some(orders.len());
        orders.push(o);
        images.push(img.clone());
        names.push(m.source.factor_names(u)[i].clone());
    }
    let quotient = FpcGroup::new(orders)?;
    let reduced = FpcHom::new(quotient.clone(), a.clone(), images)?;
    match reduced.injectivity() {
        Injectivity::Injective => {}
        Injectivity::NotInjective(w) => {
            return Err(MoveError::Unsupported(format!(
                "kernel is not generated by factor powers (witness {})",
                w.format_with(&names)
            )))
        }
        Injectivity::Unknown => return Err(MoveError::Unsupported("kernel could not be determined".into())),
    }
    let projection = FpcHom::new(
        bu.clone(),
        quotient.clone(),
        position.iter().map(|p| p.map_or_else(fpc_words::FpcWord::identity, |j| quotient.generator(j))).collect(),
    )?;
    let mut source = m.source.clone();
    source.set_vertex_group(u, quotient, names);
    let mut phi = m.clone();
    phi.source = source.clone();
    phi.vertex_homs[u] = reduced;
    let mut sigma = GGMorphism::identity(&m.source);
    sigma.target = source;
    sigma.vertex_homs[u] = projection;
    Ok(MoveResult { morphism: validated(phi)?, sigma: validated(sigma)? })
}
