//! Tuples and the elementary Nielsen transformations.

use serde::{Deserialize, Serialize};

use crate::oracle::GroupOracle;
use crate::NielsenError;

/// An elementary Nielsen transformation (0-based indices).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(tag = "move")]
pub enum NielsenMove {
    /// Replace `g_i` by `g_i⁻¹`.
    T1 { i: usize },
    /// Swap `g_i` and `g_j`.
    T2 { i: usize, j: usize },
    /// Replace `g_i` by `g_i·g_j`.
    T3 { i: usize, j: usize },
}

impl std::fmt::Display for NielsenMove {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            NielsenMove::T1 { i } => write!(f, "T1({i})"),
            NielsenMove::T2 { i, j } => write!(f, "T2({i},{j})"),
            NielsenMove::T3 { i, j } => write!(f, "T3({i},{j})"),
        }
    }
}

/// A tuple of group elements.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct NielsenTuple<E> {
    pub entries: Vec<E>,
}

impl<E: Clone> NielsenTuple<E> {
    pub fn new(entries: Vec<E>) -> Self {
        NielsenTuple { entries }
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

/// Applies one elementary transformation.
pub fn apply<G: GroupOracle>(
    g: &G,
    t: &NielsenTuple<G::Elem>,
    mv: NielsenMove,
) -> Result<NielsenTuple<G::Elem>, NielsenError> {
    let size = t.len();
    let check = |index: usize| if index < size { Ok(()) } else { Err(NielsenError::Index { index, size }) };
    let mut out = t.clone();
    match mv {
        NielsenMove::T1 { i } => {
            check(i)?;
            out.entries[i] = g.inv(&t.entries[i]);
        }
        NielsenMove::T2 { i, j } | NielsenMove::T3 { i, j } => {
            check(i)?;
            check(j)?;
            if i == j {
                return Err(NielsenError::SameIndex(mv.to_string()));
            }
            if matches!(mv, NielsenMove::T2 { .. }) {
                out.entries.swap(i, j);
            } else {
                out.entries[i] = g.mul(&t.entries[i], &t.entries[j]);
            }
        }
    }
    Ok(out)
}

/// Applies a sequence of transformations.
pub fn replay<G: GroupOracle>(
    g: &G,
    t: &NielsenTuple<G::Elem>,
    trace: &[NielsenMove],
) -> Result<NielsenTuple<G::Elem>, NielsenError> {
    trace.iter().try_fold(t.clone(), |acc, &mv| apply(g, &acc, mv))
}

/// A trace undoing `trace`: T1 and T2 are involutions and T3(i, j) is
/// undone by T1(j), T3(i, j), T1(j).
pub fn invert_trace(trace: &[NielsenMove]) -> Vec<NielsenMove> {
    let mut out = Vec::new();
    for &mv in trace.iter().rev() {
        match mv {
            NielsenMove::T3 { i, j } => {
                out.extend([NielsenMove::T1 { i: j }, NielsenMove::T3 { i, j }, NielsenMove::T1 { i: j }])
            }
            other => out.push(other),
        }
    }
    out
}
