//! Local graphs `Γ^u`, the path formulas they satisfy, and
//! S-trivialization of interval components.

use fpc_words::FpcWord;
use gg_morphism::GGMorphism;
use graph_core::{EdgeId, VertexId};
use graph_of_groups::APath;
use serde::{Deserialize, Serialize};

use crate::ao::SmallOrbGraph;
use crate::group::{transport_witness, ProjectionWitness, PREIMAGE_STATES};
use crate::morphism::DecoratedMorphism;
use crate::tame::folds_squares;
use crate::DecoratedError;

/// A local edge `f ↦ g` with label `(j, b)`: `p_j` contains
/// `f⁻¹, b, g` (cyclically; at the wrap-around `b = b_k·b_0`).  `path` is
/// 0-based.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LocalEdge {
    pub from: EdgeId,
    pub to: EdgeId,
    pub path: usize,
    pub elem: FpcWord,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ComponentKind {
    Interval,
    Circle,
}

/// A component: nodes `f_1, …, f_l` in order and the local edges
/// `f_t ↦ f_{t+1}` (indices into [`LocalGraph::edges`]); a circle also
/// contains `f_l ↦ f_1` as its last edge.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LocalComponent {
    pub kind: ComponentKind,
    pub nodes: Vec<EdgeId>,
    pub edges: Vec<usize>,
}

/// The local graph at a vertex `u` of the source.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LocalGraph {
    pub vertex: VertexId,
    /// `st(u)` in star order.
    pub nodes: Vec<EdgeId>,
    pub edges: Vec<LocalEdge>,
    pub components: Vec<LocalComponent>,
}

/// Builds `Γ^u`.  The decorated morphism must not fold squares (labels are
/// then well defined and all in/out-degrees are at most one).
pub fn local_graph(dm: &DecoratedMorphism, u: VertexId) -> Result<LocalGraph, DecoratedError> {
    if let Some(s) = folds_squares(dm) {
        return Err(DecoratedError::FoldsSquares(format!("{s:?}")));
    }
    let src = dm.source();
    let g = src.graph();
    let mut edges = Vec::new();
    for (j, p) in dm.paths.iter().enumerate() {
        let k = p.edges.len();
        for m in 1..=k {
            let arrive = p.edges[m - 1];
            if g.omega(arrive) != u {
                continue;
            }
            let (next, elem) = if m == k {
                (p.edges[0], src.vertex_group(u).mul(&p.elems[k], &p.elems[0]))
            } else {
                (p.edges[m], p.elems[m].clone())
            };
            edges.push(LocalEdge { from: arrive ^ 1, to: next, path: j, elem });
        }
    }
    let nodes = g.star(u).to_vec();
    let pos = |f: EdgeId| nodes.iter().position(|&x| x == f).expect("star node");
    let mut out: Vec<Option<usize>> = vec![None; nodes.len()];
    let mut inn: Vec<Option<usize>> = vec![None; nodes.len()];
    for (idx, e) in edges.iter().enumerate() {
        let (a, b) = (pos(e.from), pos(e.to));
        if out[a].replace(idx).is_some() || inn[b].replace(idx).is_some() {
            return Err(DecoratedError::Invalid(format!("local graph at `{}` has a node of degree > 1", g.vertex_name(u))));
        }
    }
    let mut visited = vec![false; nodes.len()];
    let mut components = Vec::new();
    let walk = |start: usize, visited: &mut Vec<bool>, circle: bool| {
        let mut comp = LocalComponent {
            kind: if circle { ComponentKind::Circle } else { ComponentKind::Interval },
            nodes: Vec::new(),
            edges: Vec::new(),
        };
        let mut at = start;
        loop {
            visited[at] = true;
            comp.nodes.push(nodes[at]);
            match out[at] {
                Some(e) => {
                    let next = pos(edges[e].to);
                    comp.edges.push(e);
                    if next == start {
                        break;
                    }
                    at = next;
                }
                None => break,
            }
        }
        comp
    };
    for s in 0..nodes.len() {
        if !visited[s] && inn[s].is_none() {
            components.push(walk(s, &mut visited, false));
        }
    }
    for s in 0..nodes.len() {
        if !visited[s] {
            components.push(walk(s, &mut visited, true));
        }
    }
    Ok(LocalGraph { vertex: u, nodes, edges, components })
}

impl LocalGraph {
    /// The component containing a node.
    pub fn component_of(&self, f: EdgeId) -> Option<usize> {
        self.components.iter().position(|c| c.nodes.contains(&f))
    }

    /// Local edges as `(from, to, j, b)` with names, `j` 1-based.
    pub fn edge_list(&self, dm: &DecoratedMorphism) -> Vec<(String, String, usize, String)> {
        let src = dm.source();
        let g = src.graph();
        self.edges
            .iter()
            .map(|e| {
                (
                    g.edge_name(e.from).to_string(),
                    g.edge_name(e.to).to_string(),
                    e.path + 1,
                    src.format_elem(self.vertex, &e.elem),
                )
            })
            .collect()
    }

    /// DOT rendering with `(j, b)` edge labels.
    pub fn to_dot(&self, dm: &DecoratedMorphism) -> String {
        let g = dm.source().graph();
        let mut out = format!("digraph \"local_{}\" {{\n", g.vertex_name(self.vertex));
        for &f in &self.nodes {
            out.push_str(&format!("  \"{}\";\n", g.edge_name(f)));
        }
        for (from, to, j, b) in self.edge_list(dm) {
            out.push_str(&format!("  \"{from}\" -> \"{to}\" [label=\"({j}, {b})\"];\n"));
        }
        out.push_str("}\n");
        out
    }
}

/// Outcome of checking the path formulas on one component.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LocalPathReport {
    pub kind: ComponentKind,
    pub length: usize,
    /// Named checks and whether they hold.
    pub checks: Vec<(String, bool)>,
}

impl LocalPathReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|(_, ok)| *ok)
    }
}

/// Verifies on the component `comp` of `Γ^u`, with nodes `f_1, …, f_l`
/// and labels `(j_t, b_t)` on `f_t ↦ f_{t+1}`, writing `v = φ(u)` and
/// `σ_v = +1` for `v = v1`, `−1` for `v = v2`:
///
/// * (i) `o_{f_{t+1}} = φ_u(b_1⋯b_t)⁻¹·o_{f_1}·s_v^{ε_{i(j_1)}+…+ε_{i(j_t)}}`;
/// * (ii) `φ(f_{t+1})` has index `idx(f_1) − σ_v·t`;
/// * (iii) `i(j_t) ≡ i(j_1) − σ_v·(t−1)`, and `i(j_t)` is determined by
///   `φ(f_t)`;
///
/// and for circles of length `l`: `q | l`, `ε`-sum `= k = l/q`,
/// `φ_u(b_1⋯b_l) = s_v^k ∈ φ_u(B_u)`, exactly `k` nodes over each edge of
/// `st(v)`, and `A_v = ⋃ φ_u(B_u)·o_f` over those nodes.
pub fn check_local_path_formulas(
    sg: &SmallOrbGraph,
    dm: &DecoratedMorphism,
    lg: &LocalGraph,
    comp: usize,
) -> LocalPathReport {
    let c = &lg.components[comp];
    let m = &dm.morphism;
    let u = lg.vertex;
    let v = m.vertex_map[u];
    let cyc = sg.cyclic(v);
    let sign: i64 = if sg.side(v) == 1 { 1 } else { -1 };
    let q = sg.q() as i64;
    let idx = |f: EdgeId| sg.edge_index(m.edge_map[f]) as i64;
    let bu = dm.source().vertex_group(u);
    let o_exp = |f: EdgeId| cyc.exp(&m.o[f]);
    let mut checks = Vec::new();
    let l = c.nodes.len();
    let labels: Vec<&LocalEdge> = c.edges.iter().map(|&e| &lg.edges[e]).collect();
    let i_of = |e: &LocalEdge| dm.decompositions[e.path].i as i64;
    let mut prod = FpcWord::identity();
    let mut eps_sum = 0i64;
    let (mut ok_i, mut ok_ii, mut ok_iii, mut ok_idx) = (true, true, true, true);
    for (t, e) in labels.iter().enumerate() {
        let t1 = t as i64 + 1;
        prod = bu.mul(&prod, &e.elem);
        eps_sum += sg.epsilon(i_of(e));
        let next = c.nodes[(t + 1) % l];
        let expected = cyc.exp(&m.vertex_homs[u].apply(&prod)) * -1 + o_exp(c.nodes[0]) + eps_sum;
        ok_i &= cyc.reduce(expected) == o_exp(next);
        ok_ii &= sg.index(idx(c.nodes[0]) - sign * t1) as i64 == idx(next);
        ok_iii &= sg.index(i_of(labels[0]) - sign * (t1 - 1)) as i64 == i_of(e);
        let from_edge = if sign == 1 { idx(c.nodes[t]) - 1 } else { idx(c.nodes[t]) };
        ok_idx &= sg.index(from_edge) as i64 == i_of(e);
    }
    checks.push(("(i) o-formula".to_string(), ok_i));
    checks.push(("(ii) edge images".to_string(), ok_ii));
    checks.push(("(iii) boundary indices".to_string(), ok_iii));
    checks.push(("(iii) index of φ(f_t)".to_string(), ok_idx));
    if c.kind == ComponentKind::Circle {
        let divides = l as i64 % q == 0;
        checks.push(("q divides l".to_string(), divides));
        let k = l as i64 / q;
        checks.push(("ε-sum equals k".to_string(), eps_sum == k));
        let loop_exp = cyc.exp(&m.vertex_homs[u].apply(&prod));
        checks.push(("φ(b_1⋯b_l) = s^k".to_string(), loop_exp == cyc.reduce(k)));
        let d = cyc.subgroup(bu.orders().iter().enumerate().map(|(r, _)| cyc.exp(&m.vertex_homs[u].apply(&bu.generator(r)))));
        checks.push(("s^k ∈ φ_u(B_u)".to_string(), cyc.contains(d, k)));
        let mut counts_ok = true;
        let mut cover_ok = true;
        for i in 1..=q {
            let e = if sign == 1 { sg.edge(i) } else { sg.edge(i) ^ 1 };
            let over: Vec<EdgeId> = c.nodes.iter().copied().filter(|&f| m.edge_map[f] == e).collect();
            counts_ok &= over.len() as i64 == k;
            let mut hit = vec![false; d.max(1) as usize];
            for &f in &over {
                hit[cyc.reduce(o_exp(f)).rem_euclid(d.max(1) as i64) as usize] = true;
            }
            cover_ok &= hit.iter().all(|&h| h);
        }
        checks.push(("k nodes over each edge".to_string(), counts_ok));
        checks.push(("cosets cover A_v".to_string(), cover_ok));
    }
    LocalPathReport { kind: c.kind, length: l, checks }
}

/// Result of S-trivializing an interval component.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct STrivialOutcome {
    pub dm: DecoratedMorphism,
    /// `σ : 𝔹 → 𝔹'` (composite of the A2 moves).
    pub sigma: GGMorphism,
    /// Projection witness from the old to the new decorated group.
    pub witness: ProjectionWitness,
}

/// Makes the interval component containing `node` of `Γ^u` trivial: first
/// redecorate so that no path starts at `u`, then apply A2 at `f_t`
/// (`t = 2, …, l`) with the current label of `f_{t−1} ↦ f_t`, which is
/// `b_1⋯b_{t−1}`.  Afterwards every label on the interval is `(j_t, 1)`.
pub fn make_s_trivial(
    sg: &SmallOrbGraph,
    dm: &DecoratedMorphism,
    u: VertexId,
    node: EdgeId,
) -> Result<STrivialOutcome, DecoratedError> {
    let lg = local_graph(dm, u)?;
    let comp = lg
        .component_of(node)
        .ok_or_else(|| DecoratedError::Precondition("node is not in the star of u".into()))?;
    if lg.components[comp].kind == ComponentKind::Circle {
        return Err(DecoratedError::Precondition("component is a circle".into()));
    }
    let nodes = lg.components[comp].nodes.clone();
    let shifts: Vec<usize> = dm.paths.iter().map(|p| usize::from(p.start == u)).collect();
    let (mut cur, prefixes) = dm.redecorate_shifts(sg, &shifts)?;
    let mut sigma = GGMorphism::identity(dm.source());
    for t in 1..nodes.len() {
        let lg = local_graph(&cur, u)?;
        let label = lg
            .edges
            .iter()
            .find(|e| e.from == nodes[t - 1] && e.to == nodes[t])
            .ok_or_else(|| DecoratedError::Invalid("interval changed during S-trivialization".into()))?
            .elem
            .clone();
        if label.is_identity() {
            continue;
        }
        let (next, s) = cur.apply_a2(sg, nodes[t], &label)?;
        sigma = s.compose(&sigma)?;
        cur = next;
    }
    let lg = local_graph(&cur, u)?;
    let trivial = lg
        .edges
        .iter()
        .filter(|e| nodes.contains(&e.from) && nodes.contains(&e.to))
        .all(|e| e.elem.is_identity());
    if !trivial {
        return Err(DecoratedError::Invalid("labels did not become trivial".into()));
    }
    let connectors = prefixes.iter().map(|p| sigma.induced_image(p)).collect::<Result<Vec<APath>, _>>()?;
    let witness = transport_witness(sg, dm, &cur, &sigma, &connectors, PREIMAGE_STATES)?;
    Ok(STrivialOutcome { dm: cur, sigma, witness })
}
