//! Unfolding along an edge with nontrivial group.

use fpc_words::{FpcGroup, FpcHom, FpcWord, Preimage};
use gg_morphism::GGMorphism;
use graph_core::EdgeId;
use serde::{Deserialize, Serialize};

use crate::{validated, MoveError, MoveResult};

/// State bound for the surjectivity check of a splitting witness.
const MAX_STATES: usize = 1 << 14;

/// Witness of a splitting `B_u = C_u ∗ (∗_{f ∈ st₁(u)} b_f·α_f(B_f)·b_f⁻¹)`
/// where `st₁(u)` are the edges at `u` with nontrivial group.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct UnfoldWitness {
    /// Generators of the cyclic factors of `C_u`.
    pub complement: Vec<FpcWord>,
    /// Conjugators `b_f` (missing edges use `b_f = 1`).
    pub conjugators: Vec<(EdgeId, FpcWord)>,
}

/// Unfold along `g` (with `u = α(g)`): `B_u` is replaced by
/// `B'_u = C_u ∗ (∗_{f ∈ st₁(u) − {g}} ⟨y_f⟩)` with `α'_f = y_f`, the edge
/// group of `g` becomes trivial, `φ'_u = φ_u ∘ ι` and `o'_f = φ_u(b_f)·o_f`.
/// Returns `σ : 𝔹' → 𝔹` (`σ_u = ι`, `o^σ_f = b_f`) with `φ ∘ σ = φ'`.
pub fn unfold(m: &GGMorphism, g: EdgeId, witness: &UnfoldWitness) -> Result<MoveResult, MoveError> {
    let gr = m.source.graph();
    let u = gr.alpha(g);
    let bu = m.source.vertex_group(u);
    if m.source.edge_is_trivial(g) {
        return Err(MoveError::Precondition(format!("edge {} has trivial group", gr.edge_name(g))));
    }
    let st1: Vec<EdgeId> = gr.star(u).iter().copied().filter(|&f| !m.source.edge_is_trivial(f)).collect();
    let conj = |f: EdgeId| -> FpcWord {
        witness.conjugators.iter().find(|(e, _)| *e == f).map_or_else(FpcWord::identity, |(_, b)| b.clone())
    };
    // The free product P of the claimed factors and its map onto B_u.
    let mut orders = Vec::new();
    let mut images = Vec::new();
    for c in &witness.complement {
        bu.validate(c)?;
        let o = bu.order_of(c);
        if o == 1 {
            return Err(MoveError::Witness("complement generator is trivial".into()));
        }
        orders.push(o);
        images.push(c.clone());
    }
    for &f in &st1 {
        let b = conj(f);
        bu.validate(&b)?;
        orders.push(m.source.edge_order(f));
        images.push(bu.conj(&b, m.source.boundary(f)));
    }
    // P and B_u are free products of cyclic groups; they are isomorphic iff
    // the factor orders agree as multisets, and then a surjection P → B_u is
    // an isomorphism because such groups are Hopfian.
    let mut claimed = orders.clone();
    let mut actual = bu.orders().to_vec();
    claimed.sort_unstable();
    actual.sort_unstable();
    if claimed != actual {
        return Err(MoveError::Witness("factor orders of the splitting differ from those of the vertex group".into()));
    }
    let p = FpcGroup::new(orders.clone())?;
    let iso = FpcHom::new(p, bu.clone(), images.clone())?;
    if !iso.is_visibly_surjective() {
        for i in 0..bu.rank() {
            if !matches!(iso.preimage(&bu.generator(i), MAX_STATES), Preimage::Found(_)) {
                return Err(MoveError::Witness(format!("factor {} not generated", m.source.factor_names(u)[i])));
            }
        }
    }
    // B'_u drops the factor of g.
    let gpos = witness.complement.len() + st1.iter().position(|&f| f == g).expect("g ∈ st₁(u)");
    let keep: Vec<usize> = (0..orders.len()).filter(|&i| i != gpos).collect();
    let new_group = FpcGroup::new(keep.iter().map(|&i| orders[i]).collect())?;
    let u_name = gr.vertex_name(u);
    let new_names: Vec<String> = keep
        .iter()
        .map(|&i| match i.checked_sub(witness.complement.len()) {
            None => format!("{u_name}.c{}", i + 1),
            Some(j) => format!("{u_name}.{}", gr.edge_name(st1[j])),
        })
        .collect();
    let iota = FpcHom::new(new_group.clone(), bu.clone(), keep.iter().map(|&i| images[i].clone()).collect())?;
    let mut source = m.source.clone();
    source.set_vertex_group(u, new_group.clone(), new_names);
    for (j, &f) in st1.iter().enumerate() {
        if f == g {
            continue;
        }
        let pos = keep.iter().position(|&i| i == witness.complement.len() + j).expect("kept");
        source.set_boundary(f, new_group.generator(pos));
    }
    source.trivialize_edge_group(g);
    source.validate()?;

    let a = m.target.vertex_group(m.vertex_map[u]);
    let mut phi = m.clone();
    phi.source = source.clone();
    phi.vertex_homs[u] = m.vertex_homs[u].compose(&iota)?;
    phi.edge_exps[g] = 0;
    phi.edge_exps[g ^ 1] = 0;
    for &f in &st1 {
        phi.set_o(f, a.mul(&m.vertex_homs[u].apply(&conj(f)), &m.o[f]));
    }
    let mut sigma = GGMorphism::identity(&source);
    sigma.target = m.source.clone();
    sigma.vertex_homs[u] = iota;
    for &f in &st1 {
        sigma.set_o(f, conj(f));
    }
    Ok(MoveResult { morphism: validated(phi)?, sigma: validated(sigma)? })
}
