//! Named scenarios: scripted pipelines that print one pass/fail line per
//! assertion.  Randomized scenarios draw from a ChaCha stream seeded by the
//! caller, so equal seeds give byte-identical reports.

use decorated::constructions::{cyclic_cover, d2_2_2_example, degree_one_cover};
use decorated::random::{random_square_instance, random_tame_dm};
use decorated::{
    adjoin_unfold, check_local_path_formulas, extract_almost_cover, fold_a2_square, fold_to_square, folds_squares,
    induced_decorated_group, is_tame, local_graph, make_s_trivial, verify_projection, ComponentKind, DecoratedError,
    DecoratedMorphism, SmallOrbGraph,
};
use fpc_words::{FpcGroup, FpcWord};
use nielsen::{equivalent_bounded, replay, NielsenTuple, SearchBounds, SearchVerdict};
use orbifolds::OrbifoldSpec;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::CliError;

/// Registered scenarios with one-line descriptions.
pub const REGISTRY: &[(&str, &str)] = &[
    ("d2-2-2-local-graph", "peripheral types and the local graph of the disc with two cone points of order 2"),
    ("fold-commutes-a2", "a fold and an A2 move commute up to decorated isomorphism on generated instances"),
    ("degree-one-cover", "almost-cover descriptors of the degree-one covers of small orbifolds"),
    ("degree-two-cover", "almost-cover descriptor of a two-sheeted cover of D²(3,4) and the special flag"),
    ("adjoin-finite", "adjoining a finite subgroup by an unfold, then folding, produces a square"),
    ("local-graph-lemmas", "circle formulas and S-trivialization on generated tame decorated morphisms"),
    ("nielsen-z2-z", "Nielsen equivalences in Z2 ∗ Z with replayed traces"),
];

/// One assertion of a scenario.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Check {
    pub passed: bool,
    pub label: String,
    pub detail: Option<String>,
}

/// The outcome of a scenario run.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScenarioReport {
    pub name: String,
    /// Present for randomized scenarios.
    pub seed: Option<u64>,
    pub checks: Vec<Check>,
}

impl ScenarioReport {
    fn new(name: &str, seed: Option<u64>) -> Self {
        ScenarioReport { name: name.to_string(), seed, checks: Vec::new() }
    }

    fn check(&mut self, passed: bool, label: impl Into<String>) {
        self.checks.push(Check { passed, label: label.into(), detail: None });
    }

    /// Records a fallible assertion; an error counts as a failure.
    fn check_result(&mut self, label: impl Into<String>, result: Result<bool, DecoratedError>) {
        let (passed, detail) = match result {
            Ok(ok) => (ok, None),
            Err(e) => (false, Some(e.to_string())),
        };
        self.checks.push(Check { passed, label: label.into(), detail });
    }

    pub fn passed(&self) -> bool {
        !self.checks.is_empty() && self.checks.iter().all(|c| c.passed)
    }

    /// The printed report: header, one line per assertion, summary.
    pub fn render(&self) -> String {
        let mut out = format!("scenario {}\n", self.name);
        if let Some(seed) = self.seed {
            out.push_str(&format!("seed {seed}\n"));
        }
        for c in &self.checks {
            out.push_str(if c.passed { "PASS " } else { "FAIL " });
            out.push_str(&c.label);
            if let Some(d) = &c.detail {
                out.push_str(&format!(" ({d})"));
            }
            out.push('\n');
        }
        let ok = self.checks.iter().filter(|c| c.passed).count();
        out.push_str(&format!("{} {ok}/{} assertions passed\n", if self.passed() { "PASS" } else { "FAIL" }, self.checks.len()));
        out
    }
}

/// Runs a registered scenario.
pub fn run_scenario(name: &str, seed: u64) -> Result<ScenarioReport, CliError> {
    let report = match name {
        "d2-2-2-local-graph" => d2_2_2_local_graph(),
        "fold-commutes-a2" => fold_commutes_a2(seed),
        "degree-one-cover" => degree_one(),
        "degree-two-cover" => degree_two(),
        "adjoin-finite" => adjoin_finite(),
        "local-graph-lemmas" => local_graph_lemmas(seed),
        "nielsen-z2-z" => nielsen_z2_z(),
        other => {
            let known: Vec<&str> = REGISTRY.iter().map(|(n, _)| *n).collect();
            return Err(CliError::Usage(format!("unknown scenario `{other}` (known: {})", known.join(", "))));
        }
    };
    Ok(report)
}

fn spec(q: usize, cones: &[u64]) -> OrbifoldSpec {
    OrbifoldSpec::new(true, 0, q, cones.to_vec()).expect("registered orbifold specs are valid")
}

fn spec_label(s: &OrbifoldSpec) -> String {
    format!("q={} cones={:?}", s.boundary_count, s.cone_orders)
}

/// Small orbifolds used by the randomized scenarios.
const SMALL: &[(usize, &[u64])] = &[(1, &[2, 2]), (1, &[2, 3]), (1, &[3, 4]), (2, &[3]), (2, &[]), (3, &[2]), (2, &[2, 3]), (4, &[])];

fn d2_2_2_local_graph() -> ScenarioReport {
    let mut r = ScenarioReport::new("d2-2-2-local-graph", None);
    let (sg, dm) = match d2_2_2_example() {
        Ok(x) => x,
        Err(e) => {
            r.check_result("build the decorated morphism over D²(2,2)", Err(e));
            return r;
        }
    };
    r.check(true, "build the decorated morphism over D²(2,2)");
    match induced_decorated_group(&sg, &dm) {
        Ok(dg) => {
            r.check(dg.check(&sg).is_ok(), "induced decorated group is well formed");
            let types = dg.types(&sg);
            r.check(types.first() == Some(&("1".to_string(), 1, 1)), "type of the first peripheral subgroup is (1, 1)");
            // s⁻¹ = s in Z_2.
            r.check(types.get(1) == Some(&("s1".to_string(), 1, 1)), "type of the second peripheral subgroup is (s1⁻¹, 1)");
        }
        Err(e) => r.check_result("induced decorated group", Err(e)),
    }
    match local_graph(&dm, dm.base) {
        Ok(lg) => {
            let edges = lg.edge_list(&dm);
            for (from, to, j) in [("f2", "f1", 1), ("f3", "f2", 2)] {
                let found = edges.iter().any(|e| e.0 == from && e.1 == to && e.2 == j && e.3 == "1");
                r.check(found, format!("local edge {from} ↦ {to} labelled ({j}, 1)"));
            }
            r.check(edges.len() == 2, "local graph at u1 has exactly two edges");
            let interval = lg.components.len() == 1 && lg.components[0].kind == ComponentKind::Interval;
            r.check(interval, "local graph at u1 is a single interval f3 ↦ f2 ↦ f1");
            let formulas = (0..lg.components.len()).all(|c| check_local_path_formulas(&sg, &dm, &lg, c).passed());
            r.check(formulas, "local path formulas hold on every component");
        }
        Err(e) => r.check_result("local graph at u1", Err(e)),
    }
    r
}

fn fold_commutes_a2(seed: u64) -> ScenarioReport {
    const INSTANCES: usize = 12;
    const ATTEMPTS: usize = 400;
    let mut r = ScenarioReport::new("fold-commutes-a2", Some(seed));
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut found = 0;
    for attempt in 0..ATTEMPTS {
        if found == INSTANCES {
            break;
        }
        let (q, cones) = SMALL[attempt % SMALL.len()];
        let s = spec(q, cones);
        let sg = match SmallOrbGraph::build(&s) {
            Ok(sg) => sg,
            Err(e) => {
                r.check_result(format!("small orbifold {}", spec_label(&s)), Err(e));
                continue;
            }
        };
        let instance = match random_square_instance(&mut rng, &sg) {
            Ok(Some(x)) => x,
            Ok(None) => continue,
            Err(e) => {
                r.check_result(format!("generate instance over {}", spec_label(&s)), Err(e));
                continue;
            }
        };
        found += 1;
        let (dm, f1, f2, f, b) = instance;
        let g = dm.source().graph();
        let label = format!(
            "instance {found} over {}: fold({}, {}) and A2({}, {}) commute",
            spec_label(&s),
            g.edge_name(f1),
            g.edge_name(f2),
            g.edge_name(f),
            dm.source().format_elem(g.alpha(f), &b)
        );
        r.check_result(label, fold_a2_square(&sg, &dm, f1, f2, f, &b).map(|sq| sq.passed()));
    }
    r.check(found == INSTANCES, format!("{INSTANCES} instances with an (F1) pair generated"));
    r
}

fn degree_one() -> ScenarioReport {
    let mut r = ScenarioReport::new("degree-one-cover", None);
    let specs: &[(usize, &[u64])] = &[(1, &[2, 2]), (1, &[2, 3]), (1, &[3, 5]), (2, &[4]), (2, &[]), (3, &[]), (3, &[2, 5]), (4, &[3])];
    for &(q, cones) in specs {
        let s = spec(q, cones);
        let result = degree_one_cover(&s).and_then(|(sg, dm)| {
            let desc = extract_almost_cover(&sg, &dm, dm.base)?;
            let boundary: Vec<(usize, u64)> = (1..=q).map(|i| (i, 1)).collect();
            Ok(desc.degree == 1
                && desc.k_u == 1
                && desc.l_u == q
                && desc.boundary == boundary
                && desc.d == sg.cone_order(1)
                && desc.special == (desc.k_u <= desc.exceptional_order))
        });
        r.check_result(format!("degree-one cover of {}: degree 1, one boundary component per c_i, special", spec_label(&s)), result);
    }
    r
}

fn degree_two() -> ScenarioReport {
    let mut r = ScenarioReport::new("degree-two-cover", None);
    let two = cyclic_cover(3, 4, 2, 3).and_then(|(sg, dm)| extract_almost_cover(&sg, &dm, dm.base));
    match two {
        Ok(desc) => {
            r.check((desc.degree, desc.k_u, desc.l_u) == (2, 2, 2), "two-sheeted cover of D²(3,4): degree 2, k_u = 2, l_u = 2");
            r.check(desc.d == 3 && desc.adjoined_order == 1, "B_u = ⟨b_u⟩ (d = 3, nothing adjoined)");
            r.check(desc.boundary == vec![(1, 2)], "boundary: one path covering c_1 twice");
            r.check(desc.cone_orders.iter().all(|(_, p)| *p == 4) && desc.cone_orders.len() == 2, "two cone vertices of order 4");
            r.check(desc.special && desc.k_u <= desc.exceptional_order, "special since k_u = 2 ≤ |A_v| = 3");
        }
        Err(e) => r.check_result("extract the two-sheeted cover of D²(3,4)", Err(e)),
    }
    let three = cyclic_cover(2, 3, 3, 1).and_then(|(sg, dm)| extract_almost_cover(&sg, &dm, dm.base));
    r.check_result(
        "three-sheeted cover of D²(2,3) is not special (k_u = 3 > |A_v| = 2)",
        three.map(|d| !d.special && d.k_u == 3 && d.exceptional_order == 2),
    );
    r
}

fn adjoin_finite() -> ScenarioReport {
    let mut r = ScenarioReport::new("adjoin-finite", None);
    let run = || -> Result<Vec<(bool, &'static str)>, DecoratedError> {
        let (sg, dm) = cyclic_cover(3, 4, 2, 1)?;
        let desc = extract_almost_cover(&sg, &dm, dm.base)?;
        let mut out = vec![((desc.d, desc.k_u) == (1, 2), "almost cover with d = 1 < k_u = 2")];
        let adj = adjoin_unfold(&sg, &dm, dm.base)?;
        out.push((adj.iiia_round_trip, "IIIA on the new edge pair undoes the unfold"));
        out.push((adj.dm.source().vertex_group(adj.dm.base).cardinality() == Some(3), "B_u becomes the finite factor of order 3"));
        let before = induced_decorated_group(&sg, &dm)?;
        let after = induced_decorated_group(&sg, &adj.dm)?;
        out.push((verify_projection(&sg, &after, &before, &adj.witness)?.passed, "projection after → before verifies"));
        out.push((verify_projection(&sg, &before, &after, &adj.reverse)?.passed, "projection before → after verifies"));
        let sq = fold_to_square(&sg, &adj.dm, adj.new_edge)?;
        out.push((folds_squares(&sq.dm).is_some(), "one fold later the decorated morphism folds squares"));
        Ok(out)
    };
    match run() {
        Ok(checks) => {
            for (ok, label) in checks {
                r.check(ok, label);
            }
        }
        Err(e) => r.check_result("adjoin-unfold pipeline on the two-sheeted cover of D²(3,4)", Err(e)),
    }
    r
}

/// Checks every local graph of a tame decorated morphism; returns the
/// numbers of circles and of S-trivialized intervals.
pub fn check_local_graph_lemmas(sg: &SmallOrbGraph, dm: &DecoratedMorphism) -> Result<(usize, usize), String> {
    let fail = |e: DecoratedError| e.to_string();
    let g = induced_decorated_group(sg, dm).map_err(fail)?;
    let (mut circles, mut intervals) = (0, 0);
    for u in dm.source().graph().vertices() {
        let lg = local_graph(dm, u).map_err(fail)?;
        for (c, comp) in lg.components.iter().enumerate() {
            match comp.kind {
                ComponentKind::Circle => {
                    let rep = check_local_path_formulas(sg, dm, &lg, c);
                    if !rep.passed() {
                        return Err(format!("circle formulas fail at {}: {rep:?}", dm.source().graph().vertex_name(u)));
                    }
                    circles += 1;
                }
                ComponentKind::Interval => {
                    let out = make_s_trivial(sg, dm, u, comp.nodes[0]).map_err(fail)?;
                    let after = local_graph(&out.dm, u).map_err(fail)?;
                    if !after.edges.iter().filter(|e| comp.nodes.contains(&e.from)).all(|e| e.elem.is_identity()) {
                        return Err("interval labels not trivial after S-trivialization".into());
                    }
                    let h = induced_decorated_group(sg, &out.dm).map_err(fail)?;
                    if !verify_projection(sg, &g, &h, &out.witness).map_err(fail)?.passed {
                        return Err("S-trivialization witness rejected".into());
                    }
                    intervals += 1;
                }
            }
        }
    }
    Ok((circles, intervals))
}

fn local_graph_lemmas(seed: u64) -> ScenarioReport {
    const COUNT: usize = 40;
    let mut r = ScenarioReport::new("local-graph-lemmas", Some(seed));
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for k in 0..COUNT {
        let (q, cones) = SMALL[k % SMALL.len()];
        let s = spec(q, cones);
        let result = SmallOrbGraph::build(&s)
            .and_then(|sg| random_tame_dm(&mut rng, &sg).map(|dm| (sg, dm)))
            .map_err(|e| e.to_string())
            .and_then(|(sg, dm)| {
                if !is_tame(&dm).is_tame() {
                    return Err("generated decorated morphism is not tame".into());
                }
                check_local_graph_lemmas(&sg, &dm)
            });
        match result {
            Ok((c, i)) => r.check(true, format!("tame morphism {} over {}: {c} circles, {i} intervals S-trivialized", k + 1, spec_label(&s))),
            Err(e) => r.checks.push(Check { passed: false, label: format!("tame morphism {} over {}", k + 1, spec_label(&s)), detail: Some(e) }),
        }
    }
    r
}

fn nielsen_z2_z() -> ScenarioReport {
    let mut r = ScenarioReport::new("nielsen-z2-z", None);
    let g = FpcGroup::new(vec![2, 0]).expect("Z2 ∗ Z");
    let w = |s: &[(usize, i64)]| FpcWord(s.to_vec());
    let bounds = SearchBounds { max_norm: 6, max_states: 20_000 };
    let (s, t) = (w(&[(0, 1)]), w(&[(1, 1)]));
    let cases = [
        ("(st, t) ~ (s, t) within 3 moves", vec![w(&[(0, 1), (1, 1)]), t.clone()], vec![s.clone(), t.clone()], 3),
        ("(s, t) ~ (t, s) within 1 move", vec![s.clone(), t.clone()], vec![t.clone(), s.clone()], 1),
        ("(s, t) ~ (t⁻¹, s) within 2 moves", vec![s.clone(), t.clone()], vec![w(&[(1, -1)]), s.clone()], 2),
        ("(s, t) ~ (s, t⁻¹) within 1 move", vec![s.clone(), t.clone()], vec![s.clone(), w(&[(1, -1)])], 1),
    ];
    for (label, a, b, depth) in cases {
        let (a, b) = (NielsenTuple::new(a), NielsenTuple::new(b));
        let ok = match equivalent_bounded(&g, &a, &b, &bounds) {
            Ok(SearchVerdict::Equivalent(trace)) => trace.len() <= depth && replay(&g, &a, &trace).map(|x| x == b).unwrap_or(false),
            _ => false,
        };
        r.check(ok, format!("{label}; trace replays"));
    }
    // (s, s) generates only Z2: no trace to (s, t).
    let a = NielsenTuple::new(vec![s.clone(), s.clone()]);
    let b = NielsenTuple::new(vec![s, t]);
    let unknown = matches!(equivalent_bounded(&g, &a, &b, &bounds), Ok(SearchVerdict::Unknown));
    r.check(unknown, "(s, s) and (s, t) are not found equivalent");
    r
}
