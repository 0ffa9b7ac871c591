//! Bounded bidirectional search for Nielsen equivalence.
//!
//! States are identified up to T1/T2 through [`canonical_key`] (entries
//! replaced by the smaller of `g`, `g⁻¹` and sorted).  Neighbours replace
//! one entry `g_i` by `g_i·g_j`, `g_i·g_j⁻¹`, `g_j⁻¹·g_i` or `g_j·g_i`, each
//! realised by a short sequence of elementary moves.  Two states with the
//! same key are connected by explicit T1/T2 moves.

use std::collections::{HashMap, VecDeque};

use serde::{Deserialize, Serialize};

use crate::oracle::GroupOracle;
use crate::tuple::{invert_trace, replay, NielsenMove, NielsenTuple};
use crate::NielsenError;

use NielsenMove::{T1, T2, T3};

/// Search limits: total norm of a tuple and number of stored states.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchBounds {
    pub max_norm: usize,
    pub max_states: usize,
}

impl SearchBounds {
    /// Default limits: the larger input norm plus 8, and 10⁶ states.
    pub fn for_tuples<G: GroupOracle>(g: &G, a: &NielsenTuple<G::Elem>, b: &NielsenTuple<G::Elem>) -> Self {
        SearchBounds { max_norm: tuple_norm(g, a).max(tuple_norm(g, b)) + 8, max_states: 1_000_000 }
    }
}

/// Result of a bounded search.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum SearchVerdict {
    /// A trace taking the first tuple to the second.
    Equivalent(Vec<NielsenMove>),
    /// No trace found within the bounds.
    Unknown,
}

fn tuple_norm<G: GroupOracle>(g: &G, t: &NielsenTuple<G::Elem>) -> usize {
    t.entries.iter().map(|e| g.norm(e)).sum()
}

/// Key of the T1/T2-orbit of a tuple.
pub fn canonical_key<G: GroupOracle>(g: &G, t: &NielsenTuple<G::Elem>) -> Vec<G::Elem> {
    let mut key: Vec<G::Elem> = t
        .entries
        .iter()
        .map(|e| {
            let i = g.inv(e);
            if i < *e {
                i
            } else {
                e.clone()
            }
        })
        .collect();
    key.sort();
    key
}

/// T1/T2 moves taking `from` to `to` (which must have the same key).
fn align<G: GroupOracle>(g: &G, from: &NielsenTuple<G::Elem>, to: &NielsenTuple<G::Elem>) -> Vec<NielsenMove> {
    let mut cur = from.entries.clone();
    let mut moves = Vec::new();
    for pos in 0..to.entries.len() {
        let target = &to.entries[pos];
        let exact = (pos..cur.len()).find(|&k| cur[k] == *target);
        let k = exact.or_else(|| (pos..cur.len()).find(|&k| g.inv(&cur[k]) == *target)).expect("same key");
        if k != pos {
            moves.push(T2 { i: pos, j: k });
            cur.swap(pos, k);
        }
        if exact.is_none() {
            moves.push(T1 { i: pos });
            cur[pos] = g.inv(&cur[pos]);
        }
    }
    moves
}

/// Neighbours of a tuple: `(new tuple, elementary moves)` in a fixed order.
fn neighbours<G: GroupOracle>(g: &G, t: &NielsenTuple<G::Elem>) -> Vec<(NielsenTuple<G::Elem>, Vec<NielsenMove>)> {
    let n = t.len();
    let mut out = Vec::new();
    for i in 0..n {
        for j in (0..n).filter(|&j| j != i) {
            let (gi, gj) = (&t.entries[i], &t.entries[j]);
            let ij = g.inv(gj);
            let variants = [
                (g.mul(gi, gj), vec![T3 { i, j }]),
                (g.mul(gi, &ij), vec![T1 { i: j }, T3 { i, j }, T1 { i: j }]),
                (g.mul(&ij, gi), vec![T1 { i }, T3 { i, j }, T1 { i }]),
                (g.mul(gj, gi), vec![T1 { i }, T1 { i: j }, T3 { i, j }, T1 { i }, T1 { i: j }]),
            ];
            for (entry, moves) in variants {
                let mut next = t.clone();
                next.entries[i] = entry;
                out.push((next, moves));
            }
        }
    }
    out
}

/// One side of the search: states by key with the tuple reached and the
/// parent key plus the moves leading from the parent's tuple.
struct Side<E> {
    nodes: HashMap<Vec<E>, (NielsenTuple<E>, Option<(Vec<E>, Vec<NielsenMove>)>)>,
    frontier: VecDeque<Vec<E>>,
}

impl<E: Clone + Eq + std::hash::Hash> Side<E> {
    fn new(key: Vec<E>, t: NielsenTuple<E>) -> Self {
        Side { nodes: HashMap::from([(key.clone(), (t, None))]), frontier: VecDeque::from([key]) }
    }

    /// Moves from the root tuple to the tuple stored at `key`.
    fn trace_to(&self, key: &Vec<E>) -> Vec<NielsenMove> {
        let mut chunks = Vec::new();
        let mut at = key.clone();
        while let Some((_, Some((parent, moves)))) = self.nodes.get(&at) {
            chunks.push(moves.clone());
            at = parent.clone();
        }
        chunks.into_iter().rev().flatten().collect()
    }
}

/// Expands one layer of `side`; returns a key also present in `other`.
fn expand<G: GroupOracle>(
    g: &G,
    side: &mut Side<G::Elem>,
    other: &Side<G::Elem>,
    bounds: &SearchBounds,
    total: &mut usize,
) -> Result<Option<Vec<G::Elem>>, ()> {
    let layer: Vec<Vec<G::Elem>> = side.frontier.drain(..).collect();
    for key in layer {
        let tuple = side.nodes[&key].0.clone();
        for (next, moves) in neighbours(g, &tuple) {
            if tuple_norm(g, &next) > bounds.max_norm {
                continue;
            }
            let nk = canonical_key(g, &next);
            if side.nodes.contains_key(&nk) {
                continue;
            }
            if *total >= bounds.max_states {
                return Err(());
            }
            *total += 1;
            side.nodes.insert(nk.clone(), (next, Some((key.clone(), moves))));
            if other.nodes.contains_key(&nk) {
                return Ok(Some(nk));
            }
            side.frontier.push_back(nk);
        }
    }
    Ok(None)
}

/// Bidirectional breadth-first search for a trace taking `a` to `b`.
/// Returned traces are replayed before being reported.
pub fn equivalent_bounded<G: GroupOracle>(
    g: &G,
    a: &NielsenTuple<G::Elem>,
    b: &NielsenTuple<G::Elem>,
    bounds: &SearchBounds,
) -> Result<SearchVerdict, NielsenError> {
    if a.len() != b.len() {
        return Err(NielsenError::SizeMismatch(a.len(), b.len()));
    }
    let (ka, kb) = (canonical_key(g, a), canonical_key(g, b));
    let mut fwd = Side::new(ka.clone(), a.clone());
    let mut bwd = Side::new(kb.clone(), b.clone());
    let mut total = 2;
    let mut meet = (ka == kb).then_some(ka);
    while meet.is_none() {
        if fwd.frontier.is_empty() && bwd.frontier.is_empty() {
            return Ok(SearchVerdict::Unknown);
        }
        let forward = !fwd.frontier.is_empty() && (bwd.frontier.is_empty() || fwd.frontier.len() <= bwd.frontier.len());
        let step = if forward {
            expand(g, &mut fwd, &bwd, bounds, &mut total)
        } else {
            expand(g, &mut bwd, &fwd, bounds, &mut total)
        };
        match step {
            Ok(found) => meet = found,
            Err(()) => return Ok(SearchVerdict::Unknown),
        }
    }
    let key = meet.expect("loop exits with a meeting key");
    let (x, y) = (&fwd.nodes[&key].0, &bwd.nodes[&key].0);
    let mut trace = fwd.trace_to(&key);
    trace.extend(align(g, x, y));
    trace.extend(invert_trace(&bwd.trace_to(&key)));
    if replay(g, a, &trace)? == *b {
        Ok(SearchVerdict::Equivalent(trace))
    } else {
        Ok(SearchVerdict::Unknown)
    }
}

/// Searches for a trace taking `t` to a tuple whose last entry is the
/// identity.
pub fn is_reducible_witness<G: GroupOracle>(
    g: &G,
    t: &NielsenTuple<G::Elem>,
    bounds: &SearchBounds,
) -> Result<Option<Vec<NielsenMove>>, NielsenError> {
    let n = t.len();
    let id = g.identity();
    // Moves bringing an identity entry to the last slot.
    let finish = |tuple: &NielsenTuple<G::Elem>| -> Option<Vec<NielsenMove>> {
        let k = tuple.entries.iter().rposition(|e| *e == id)?;
        Some(if k == n - 1 { Vec::new() } else { vec![T2 { i: k, j: n - 1 }] })
    };
    if n == 0 {
        return Ok(None);
    }
    let root = canonical_key(g, t);
    let mut side = Side::new(root.clone(), t.clone());
    let mut queue = VecDeque::from([root]);
    while let Some(key) = queue.pop_front() {
        let tuple = side.nodes[&key].0.clone();
        if let Some(tail) = finish(&tuple) {
            let mut trace = side.trace_to(&key);
            trace.extend(tail);
            debug_assert_eq!(replay(g, t, &trace)?.entries[n - 1], id);
            return Ok(Some(trace));
        }
        for (next, moves) in neighbours(g, &tuple) {
            if tuple_norm(g, &next) > bounds.max_norm {
                continue;
            }
            let nk = canonical_key(g, &next);
            if side.nodes.contains_key(&nk) {
                continue;
            }
            if side.nodes.len() >= bounds.max_states {
                return Ok(None);
            }
            side.nodes.insert(nk.clone(), (next, Some((key.clone(), moves))));
            queue.push_back(nk);
        }
    }
    Ok(None)
}
