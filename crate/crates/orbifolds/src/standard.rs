//! Standard generating tuples
//! `(a_1, …, a_p, t_{j_1}, …, t_{j_{q'}}, s_{i_1}^{ν_1}, …, s_{i_{r'}}^{ν_{r'}})`
//! with `q' + r' = q + r − 1`, strictly increasing indices and exponents
//! coprime to the cone orders.

use fpc_words::{gcd, FpcGroup, FpcHom, FpcWord, Preimage};
use serde::{Deserialize, Serialize};

use crate::presentation::{presentation, FpcModel, PresWord};
use crate::spec::OrbifoldSpec;
use crate::OrbifoldError;

/// A standard generating tuple.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StandardTuple {
    /// Entries as presentation words.
    pub words: Vec<PresWord>,
    /// Entries rendered with generator names.
    pub display: Vec<String>,
    /// Entries in the free-product model (orbifolds with boundary only).
    pub model_words: Option<Vec<FpcWord>>,
}

fn check_indices(kind: &'static str, indices: &[usize], max: usize) -> Result<(), OrbifoldError> {
    let increasing = indices.windows(2).all(|w| w[0] < w[1]);
    let in_range = indices.iter().all(|&i| (1..=max).contains(&i));
    if increasing && in_range {
        Ok(())
    } else {
        Err(OrbifoldError::SelectionIndices { kind, indices: indices.to_vec(), max })
    }
}

/// The standard tuple selecting boundary components `boundary` and cone
/// points `cones` (1-based, strictly increasing) with exponents `exponents`
/// (one per selected cone point, positive and coprime to its order).  For a
/// closed orbifold without cone points (`q = r = 0`) both selections must be
/// empty and the tuple consists of the `a`'s.
pub fn standard_tuple(
    spec: &OrbifoldSpec,
    boundary: &[usize],
    cones: &[usize],
    exponents: &[i64],
) -> Result<StandardTuple, OrbifoldError> {
    spec.validate()?;
    let (q, r) = (spec.boundary_count, spec.cone_count());
    let expected = (q + r).saturating_sub(1);
    if boundary.len() + cones.len() != expected {
        return Err(OrbifoldError::SelectionSize { q_sel: boundary.len(), r_sel: cones.len(), q, r });
    }
    check_indices("boundary", boundary, q)?;
    check_indices("cone", cones, r)?;
    if exponents.len() != cones.len() {
        return Err(OrbifoldError::ExponentCount { expected: cones.len(), got: exponents.len() });
    }
    for (&i, &nu) in cones.iter().zip(exponents) {
        let order = spec.cone_orders[i - 1];
        if nu < 1 || gcd(nu as u64, order) != 1 {
            return Err(OrbifoldError::Exponent { index: i, nu, order });
        }
    }
    let pres = presentation(spec);
    let (a, t, s) = pres.blocks();
    let mut words: Vec<PresWord> = a.map(|i| PresWord(vec![(i, 1)])).collect();
    words.extend(boundary.iter().map(|&j| PresWord(vec![(t.start + j - 1, 1)])));
    words.extend(cones.iter().zip(exponents).map(|(&i, &nu)| PresWord(vec![(s.start + i - 1, nu)])));
    let display = words.iter().map(|w| w.format_with(&pres.generators)).collect();
    let model_words = pres.fpc_model.as_ref().map(|m| words.iter().map(|w| m.eval(w)).collect());
    Ok(StandardTuple { words, display, model_words })
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k > n {
        return Vec::new();
    }
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (1..=k).collect();
    loop {
        out.push(cur.clone());
        // Advance to the next increasing k-subset of 1..=n.
        let Some(pos) = (0..k).rev().find(|&i| cur[i] < n - (k - 1 - i)) else { return out };
        cur[pos] += 1;
        for i in pos + 1..k {
            cur[i] = cur[i - 1] + 1;
        }
    }
}

/// All admissible `(boundary, cones)` index selections, ordered by the
/// number of boundary indices and then lexicographically.
pub fn admissible_selections(spec: &OrbifoldSpec) -> Vec<(Vec<usize>, Vec<usize>)> {
    let (q, r) = (spec.boundary_count, spec.cone_count());
    if q + r == 0 {
        return vec![(Vec::new(), Vec::new())];
    }
    let total = q + r - 1;
    let mut out = Vec::new();
    for qs in 0..=q.min(total) {
        let rs = total - qs;
        if rs > r {
            continue;
        }
        for b in subsets(q, qs) {
            for c in subsets(r, rs) {
                out.push((b.clone(), c));
            }
        }
    }
    out
}

/// Whether `words` generate the model group: `Some(true)` if a generation
/// certificate or a preimage of every factor generator is found,
/// `Some(false)` if some generator is provably outside the generated
/// subgroup, `None` if the bounded search is inconclusive.
pub fn tuple_generates(model: &FpcModel, words: &[FpcWord], max_states: usize) -> Option<bool> {
    let g = &model.group;
    let words: Vec<FpcWord> = words.iter().filter(|w| !w.is_identity()).cloned().collect();
    let orders: Vec<u64> = words.iter().map(|w| g.order_of(w)).collect();
    let source = FpcGroup::new(orders).expect("element orders are valid factor orders");
    let hom = FpcHom::new(source, g.clone(), words).expect("orders match");
    if hom.is_visibly_surjective() {
        return Some(true);
    }
    for i in 0..g.rank() {
        match hom.preimage(&g.generator(i), max_states) {
            Preimage::Found(_) => {}
            Preimage::NotInImage => return Some(false),
            Preimage::Unknown => return None,
        }
    }
    Some(true)
}
