//! Decorated groups `(G, η, {G_j})`, projection witnesses and the
//! predicates used in the minimality argument.

use std::collections::{HashSet, VecDeque};

use fpc_words::{gcd, FpcGroup, FpcHom, FpcWord, Preimage};
use gg_morphism::GGMorphism;
use graph_of_groups::{APath, TreeBasis};
use serde::{Deserialize, Serialize};

use crate::ao::SmallOrbGraph;
use crate::morphism::DecoratedMorphism;
use crate::DecoratedError;

/// Default state bound for preimage searches in witness construction.
pub const PREIMAGE_STATES: usize = 1 << 16;

/// A peripheral subgroup `G_j = ⟨g_j⟩` of type `(o, i)` with
/// `η(g_j) = o·[c_i]^z·o⁻¹`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Peripheral {
    /// The generator `g_j` as a word in the group basis.
    pub generator: FpcWord,
    /// `o_{G_j} ∈ π1(𝔸^𝒪, v1)` as a basis word of [`SmallOrbGraph::basis`].
    pub o: FpcWord,
    /// Boundary index `i ∈ 1..=q`.
    pub i: usize,
    pub z: u64,
}

/// A decorated group: a free product of cyclic groups `G`, a homomorphism
/// `η : G → π1(𝔸^𝒪, v1)` given on the basis, and peripheral subgroups.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DecoratedGroup {
    pub group: FpcGroup,
    pub names: Vec<String>,
    /// `η` on the basis, as words of [`SmallOrbGraph::basis`].
    pub eta: Vec<FpcWord>,
    pub peripherals: Vec<Peripheral>,
}

impl DecoratedGroup {
    /// `η` as a homomorphism.
    pub fn eta_hom(&self, sg: &SmallOrbGraph) -> Result<FpcHom, DecoratedError> {
        Ok(FpcHom::new(self.group.clone(), sg.group().clone(), self.eta.clone())?)
    }

    /// Verifies `η(g_j) = o_j·[c_{i_j}]^{z_j}·o_j⁻¹ ≠ 1` for every
    /// peripheral subgroup.
    pub fn check(&self, sg: &SmallOrbGraph) -> Result<(), DecoratedError> {
        let eta = self.eta_hom(sg)?;
        let a = sg.group();
        for (j, per) in self.peripherals.iter().enumerate() {
            let expected = a.conj(&per.o, &a.pow(sg.c_word(per.i as i64), per.z as i64));
            let got = eta.apply(&per.generator);
            if got != expected {
                return Err(DecoratedError::Invalid(format!("η(g_{}) is not o·c_i^z·o⁻¹", j + 1)));
            }
            if got.is_identity() || per.z == 0 {
                return Err(DecoratedError::Invalid(format!("peripheral subgroup {} has trivial image", j + 1)));
            }
        }
        Ok(())
    }

    /// The types `(o_j, i_j)` rendered with the names of `𝔸^𝒪`'s basis.
    pub fn types(&self, sg: &SmallOrbGraph) -> Vec<(String, usize, u64)> {
        self.peripherals
            .iter()
            .map(|p| {
                let o = if p.o.is_identity() { "1".to_string() } else { p.o.format_with(&sg.basis().names) };
                (o, p.i, p.z)
            })
            .collect()
    }
}

/// The decorated group `(π1(𝔹, u_1), φ_*, {H(p_j, γ_j)})` with
/// `H(p_j, γ_j) = ⟨[γ_j p_j γ_j⁻¹]⟩` of type `([φ(γ_j p_{j,1})·a_j], i(j))`.
pub fn induced_decorated_group(sg: &SmallOrbGraph, dm: &DecoratedMorphism) -> Result<DecoratedGroup, DecoratedError> {
    let src = dm.source();
    let basis = TreeBasis::new(src, dm.base)?;
    let m = &dm.morphism;
    let eta = (0..basis.rank())
        .map(|k| Ok(sg.word(&m.induced_image(&basis.generator_path(src, k))?)))
        .collect::<Result<Vec<_>, DecoratedError>>()?;
    let mut peripherals = Vec::with_capacity(dm.n());
    for j in 0..dm.n() {
        let d = &dm.decompositions[j];
        let g = &dm.gammas[j];
        let loop_path = src.concat_all(&[g.clone(), dm.paths[j].clone(), src.inverse_path(g)])?;
        let generator = basis.word_of(src, &loop_path);
        let to_shift = m.induced_image(&src.concat(g, &dm.prefix_path(j))?)?;
        let o_path = sg.gog().concat(&to_shift, &sg.gog().elem_path(sg.vertex(1), d.a.clone()))?;
        peripherals.push(Peripheral { generator, o: sg.word(&o_path), i: d.i, z: d.z });
    }
    Ok(DecoratedGroup { group: basis.group, names: basis.names, eta, peripherals })
}

/// Witness for a projection `σ : (G, η, {G_j}) → (H, λ, {H_k})`:
/// `λ∘σ = η`, `σ` onto, and for each `j`:
/// `σ(G_j) = h_j·H_{τ(j)}·h_j⁻¹`, `i_{G_j} = i_{H_{τ(j)}}` and
/// `o_{G_j} = λ(h_j)·o_{H_{τ(j)}}·[c_i]^{z_j}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProjectionWitness {
    /// `σ` on the basis of `G`, as words of `H`.
    pub sigma: Vec<FpcWord>,
    pub tau: Vec<usize>,
    /// `h_j ∈ H`.
    pub h: Vec<FpcWord>,
    pub z: Vec<i64>,
    /// Words of `G` mapping onto the basis of `H`.
    pub surjectivity: Vec<FpcWord>,
}

/// Outcome of [`verify_projection`]; `failure` names the violated
/// condition.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProjectionCheck {
    pub passed: bool,
    pub failure: Option<String>,
}

impl ProjectionCheck {
    fn fail(msg: String) -> Self {
        ProjectionCheck { passed: false, failure: Some(msg) }
    }
}

/// Verifies a projection witness (never searches).
pub fn verify_projection(
    sg: &SmallOrbGraph,
    g: &DecoratedGroup,
    h: &DecoratedGroup,
    w: &ProjectionWitness,
) -> Result<ProjectionCheck, DecoratedError> {
    let n = g.peripherals.len();
    if w.sigma.len() != g.group.rank() {
        return Err(DecoratedError::IncompleteWitness(format!("σ has {} images for rank {}", w.sigma.len(), g.group.rank())));
    }
    if w.tau.len() != n || w.h.len() != n || w.z.len() != n {
        return Err(DecoratedError::IncompleteWitness("τ, h and z need one entry per peripheral subgroup".into()));
    }
    if w.surjectivity.len() != h.group.rank() {
        return Err(DecoratedError::IncompleteWitness("surjectivity certificate needs one word per basis element of H".into()));
    }
    if h.peripherals.len() != n {
        return Ok(ProjectionCheck::fail(format!("{} peripheral subgroups against {}", n, h.peripherals.len())));
    }
    let mut seen = vec![false; n];
    for &k in &w.tau {
        if k >= n || seen[k] {
            return Ok(ProjectionCheck::fail("τ is not a bijection".into()));
        }
        seen[k] = true;
    }
    let sigma = match FpcHom::new(g.group.clone(), h.group.clone(), w.sigma.clone()) {
        Ok(s) => s,
        Err(e) => return Ok(ProjectionCheck::fail(format!("σ is not a homomorphism: {e}"))),
    };
    for x in w.sigma.iter().chain(&w.h) {
        if h.group.validate(x).is_err() {
            return Ok(ProjectionCheck::fail("witness word outside H".into()));
        }
    }
    for x in &w.surjectivity {
        if g.group.validate(x).is_err() {
            return Ok(ProjectionCheck::fail("surjectivity word outside G".into()));
        }
    }
    let eta = g.eta_hom(sg)?;
    let lambda = h.eta_hom(sg)?;
    let a = sg.group();
    for k in 0..g.group.rank() {
        let x = g.group.generator(k);
        if lambda.apply(&sigma.apply(&x)) != eta.apply(&x) {
            return Ok(ProjectionCheck::fail(format!("λ∘σ ≠ η on basis element {}", g.names[k])));
        }
    }
    for (k, pre) in w.surjectivity.iter().enumerate() {
        if sigma.apply(pre) != h.group.generator(k) {
            return Ok(ProjectionCheck::fail(format!("surjectivity certificate fails for {}", h.names[k])));
        }
    }
    for j in 0..n {
        let (pg, ph) = (&g.peripherals[j], &h.peripherals[w.tau[j]]);
        if pg.i != ph.i {
            return Ok(ProjectionCheck::fail(format!("(ii) boundary indices differ for G_{}", j + 1)));
        }
        let image = sigma.apply(&pg.generator);
        let hj = &w.h[j];
        let matches = [1i64, -1].iter().any(|&e| image == h.group.conj(hj, &h.group.pow(&ph.generator, e)));
        if !matches {
            return Ok(ProjectionCheck::fail(format!("(i) σ(G_{}) ≠ h·H_{}·h⁻¹", j + 1, w.tau[j] + 1)));
        }
        let rhs = a.product([&lambda.apply(hj), &ph.o, &a.pow(sg.c_word(pg.i as i64), w.z[j])]);
        if rhs != pg.o {
            return Ok(ProjectionCheck::fail(format!("(iii) o_{{G_{}}} ≠ λ(h)·o_H·t^z", j + 1)));
        }
    }
    Ok(ProjectionCheck { passed: true, failure: None })
}

/// Words of the source mapping onto every basis element of the target:
/// peel syllables of factors already reached off the ends of the image
/// words, interleaved with length-reducing Nielsen moves `w_i ↦ w_j^{±1}·w_i`
/// or `w_i·w_j^{±1}` between image words; factors still unreached are
/// looked up by bounded breadth-first preimage search.
pub fn surjectivity_certificate(hom: &FpcHom, max_states: usize) -> Option<Vec<FpcWord>> {
    let (s, t) = (hom.source(), hom.target());
    let mut pre: Vec<Option<FpcWord>> = vec![None; t.rank()];
    let mut words: Vec<(FpcWord, FpcWord)> =
        hom.images().iter().enumerate().map(|(k, img)| (img.clone(), s.generator(k))).collect();
    loop {
        peel(s, t, &mut words, &mut pre);
        if pre.iter().all(Option::is_some) || !nielsen_step(s, t, &mut words) {
            break;
        }
    }
    (0..t.rank())
        .map(|i| match pre[i].take() {
            Some(w) => Some(w),
            None => match hom.preimage(&t.generator(i), max_states) {
                Preimage::Found(w) => Some(w),
                _ => None,
            },
        })
        .collect()
}

/// Removes end syllables of reached factors and records factors reached
/// by single-syllable words whose exponent is a unit.
fn peel(s: &FpcGroup, t: &FpcGroup, words: &mut [(FpcWord, FpcWord)], pre: &mut [Option<FpcWord>]) {
    let mut changed = true;
    while changed {
        changed = false;
        for (w, src) in words.iter_mut() {
            loop {
                match w.0.clone().as_slice() {
                    [] => break,
                    [(i, e)] => {
                        if pre[*i].is_none() {
                            if let Some(k) = unit_inverse(t.order(*i), *e) {
                                pre[*i] = Some(s.pow(src, k));
                                changed = true;
                            }
                        }
                        break;
                    }
                    [(i, e), ..] if pre[*i].is_some() => {
                        let p = pre[*i].as_ref().expect("checked");
                        *w = t.mul(&t.syllable(*i, -*e), w);
                        *src = s.mul(&s.pow(p, -*e), src);
                    }
                    [.., (i, e)] if pre[*i].is_some() => {
                        let p = pre[*i].as_ref().expect("checked");
                        *w = t.mul(w, &t.syllable(*i, -*e));
                        *src = s.mul(src, &s.pow(p, -*e));
                    }
                    _ => break,
                }
                changed = true;
            }
        }
    }
}

/// Applies the first Nielsen move that strictly decreases
/// (syllable length, exponent norm) of an image word.
fn nielsen_step(s: &FpcGroup, t: &FpcGroup, words: &mut [(FpcWord, FpcWord)]) -> bool {
    let key = |w: &FpcWord| (w.len(), w.norm());
    for i in 0..words.len() {
        for j in (0..words.len()).filter(|&j| j != i && !words[j].0.is_identity()) {
            for e in [1, -1] {
                let (wj, sj) = (t.pow(&words[j].0, e), s.pow(&words[j].1, e));
                let (wi, si) = (&words[i].0, &words[i].1);
                for (w, src) in [(t.mul(&wj, wi), s.mul(&sj, si)), (t.mul(wi, &wj), s.mul(si, &sj))] {
                    if key(&w) < key(wi) {
                        words[i] = (w, src);
                        return true;
                    }
                }
            }
        }
    }
    false
}

/// `k` with `(s^e)^k = s` in a cyclic factor of order `n` (`0` = infinite).
fn unit_inverse(n: u64, e: i64) -> Option<i64> {
    if n == 0 {
        return match e {
            1 => Some(1),
            -1 => Some(-1),
            _ => None,
        };
    }
    let e = e.rem_euclid(n as i64);
    if gcd(e as u64, n) != 1 {
        return None;
    }
    (1..=n as i64).find(|k| (k * e).rem_euclid(n as i64) == 1 % n as i64)
}

/// Builds the witness for `σ_* : π1(𝔹, u_1) → π1(𝔹', u_1')` comparing the
/// decorated groups of `g` (on `𝔹`) and `h` (on `𝔹'`), where `σ : 𝔹 → 𝔹'`
/// satisfies `φ' ∘ σ = φ` on `π1` and the connectors `c_j` (paths in `𝔹'`
/// from `σ(α(p_j))` to `α(p'_j)`) satisfy `c_j⁻¹·σ(p_j)·c_j ≃ p'_j`.
/// Then `h_j = [σ(γ_j)·c_j·γ'_j⁻¹]`, `τ = id`, and `z_j` solves condition
/// (iii).
pub fn transport_witness(
    sg: &SmallOrbGraph,
    g: &DecoratedMorphism,
    h: &DecoratedMorphism,
    sigma: &GGMorphism,
    connectors: &[APath],
    max_states: usize,
) -> Result<ProjectionWitness, DecoratedError> {
    if connectors.len() != g.n() || h.n() != g.n() {
        return Err(DecoratedError::IncompleteWitness("one connector per path required".into()));
    }
    let (bg, bh) = (g.source(), h.source());
    let basis_g = TreeBasis::new(bg, g.base)?;
    let basis_h = TreeBasis::new(bh, h.base)?;
    let sigma_words = (0..basis_g.rank())
        .map(|k| Ok(basis_h.word_of(bh, &sigma.induced_image(&basis_g.generator_path(bg, k))?)))
        .collect::<Result<Vec<_>, DecoratedError>>()?;
    let mut hs = Vec::with_capacity(g.n());
    for j in 0..g.n() {
        let path = bh.concat_all(&[
            sigma.induced_image(&g.gammas[j])?,
            connectors[j].clone(),
            bh.inverse_path(&h.gammas[j]),
        ])?;
        hs.push(basis_h.word_of(bh, &path));
    }
    let dg = induced_decorated_group(sg, g)?;
    let dh = induced_decorated_group(sg, h)?;
    let tau: Vec<usize> = (0..g.n()).collect();
    finish_witness(sg, &dg, &dh, sigma_words, tau, hs, max_states)
}

/// Completes a witness from `σ`, `τ` and `h` by solving for `z_j` and
/// searching for a surjectivity certificate.
pub fn finish_witness(
    sg: &SmallOrbGraph,
    dg: &DecoratedGroup,
    dh: &DecoratedGroup,
    sigma: Vec<FpcWord>,
    tau: Vec<usize>,
    h: Vec<FpcWord>,
    max_states: usize,
) -> Result<ProjectionWitness, DecoratedError> {
    let lambda = dh.eta_hom(sg)?;
    let a = sg.group();
    let mut z = Vec::with_capacity(h.len());
    for (j, hj) in h.iter().enumerate() {
        let (pg, ph) = (&dg.peripherals[j], &dh.peripherals[tau[j]]);
        let w = a.mul(&a.inv(&a.mul(&lambda.apply(hj), &ph.o)), &pg.o);
        let zj = sg
            .c_power(pg.i as i64, &w)
            .ok_or_else(|| DecoratedError::WitnessRejected(format!("o_{{G_{}}} is not in λ(h)·o_H·⟨t_i⟩", j + 1)))?;
        z.push(zj);
    }
    let hom = FpcHom::new(dg.group.clone(), dh.group.clone(), sigma.clone())?;
    let surjectivity = surjectivity_certificate(&hom, max_states)
        .ok_or_else(|| DecoratedError::IncompleteWitness("no surjectivity certificate found".into()))?;
    Ok(ProjectionWitness { sigma, tau, h, z, surjectivity })
}

/// The reverse witness `H → G` of an isomorphism witness `G → H` whose
/// surjectivity words define the inverse map.
pub fn reverse_witness(
    sg: &SmallOrbGraph,
    dg: &DecoratedGroup,
    dh: &DecoratedGroup,
    w: &ProjectionWitness,
    max_states: usize,
) -> Result<ProjectionWitness, DecoratedError> {
    let inverse = FpcHom::new(dh.group.clone(), dg.group.clone(), w.surjectivity.clone())?;
    let n = w.tau.len();
    let mut tau = vec![0; n];
    let mut h = vec![FpcWord::identity(); n];
    for j in 0..n {
        tau[w.tau[j]] = j;
        h[w.tau[j]] = dg.group.inv(&inverse.apply(&w.h[j]));
    }
    finish_witness(sg, dh, dg, w.surjectivity.clone(), tau, h, max_states)
}

/// Composes witnesses `G → H` and `H → K` into a witness `G → K`:
/// `σ = σ_b ∘ σ_a`, `τ = τ_b ∘ τ_a`, `h_j = σ_b(h^a_j)·h^b_{τ_a(j)}`,
/// `z_j = z^a_j + z^b_{τ_a(j)}`, and surjectivity words substituted.
pub fn compose_witness(
    dg: &DecoratedGroup,
    dh: &DecoratedGroup,
    dk: &DecoratedGroup,
    wa: &ProjectionWitness,
    wb: &ProjectionWitness,
) -> Result<ProjectionWitness, DecoratedError> {
    if wa.tau.len() != dg.peripherals.len() || wb.tau.len() != dh.peripherals.len() || wa.tau.iter().any(|&k| k >= wb.tau.len()) {
        return Err(DecoratedError::IncompleteWitness("witnesses do not compose".into()));
    }
    let sb = FpcHom::new(dh.group.clone(), dk.group.clone(), wb.sigma.clone())?;
    let back = FpcHom::new(dh.group.clone(), dg.group.clone(), wa.surjectivity.clone())?;
    let sigma = wa.sigma.iter().map(|x| sb.apply(x)).collect();
    let tau = wa.tau.iter().map(|&k| wb.tau[k]).collect();
    let h = wa.h.iter().zip(&wa.tau).map(|(x, &k)| dk.group.mul(&sb.apply(x), &wb.h[k])).collect();
    let z = wa.z.iter().zip(&wa.tau).map(|(&za, &k)| za + wb.z[k]).collect();
    let surjectivity = wb.surjectivity.iter().map(|x| back.apply(x)).collect();
    Ok(ProjectionWitness { sigma, tau, h, z, surjectivity })
}

/// A splitting `G = G_0 ∗ G_1 ∗ ⋯ ∗ G_n`, given by generators of `G_0`
/// as words of `G`.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct Splitting {
    pub complement: Vec<FpcWord>,
}

/// Result of the bounded search for folding peripheral subgroups.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum PeripheralFoldSearch {
    /// `o_{G_l} = η(g)·o_{G_k}·t_i^z` with `g ∈ G_0 ∗ ∗_{j≠l} G_j`
    /// (`k`, `l` are 0-based).
    Witness { k: usize, l: usize, g: FpcWord, z: i64 },
    /// No witness with `g` of length at most the bound (inconclusive).
    NotFound,
}

/// Elements of the subgroup generated by `gens`, as products of at most
/// `max_norm` generators or inverses, in breadth-first order.
fn subgroup_ball(group: &FpcGroup, gens: &[FpcWord], max_norm: usize, max_states: usize) -> Vec<FpcWord> {
    let mut steps = Vec::new();
    for x in gens {
        if x.is_identity() {
            continue;
        }
        steps.push(x.clone());
        let inv = group.inv(x);
        if inv != *x {
            steps.push(inv);
        }
    }
    let mut seen = HashSet::from([FpcWord::identity()]);
    let mut out = vec![FpcWord::identity()];
    let mut queue = VecDeque::from([(FpcWord::identity(), 0usize)]);
    while let Some((x, d)) = queue.pop_front() {
        if d == max_norm {
            continue;
        }
        for s in &steps {
            let y = group.mul(&x, s);
            if out.len() >= max_states {
                return out;
            }
            if seen.insert(y.clone()) {
                out.push(y.clone());
                queue.push_back((y, d + 1));
            }
        }
    }
    out
}

/// Bounded search for `k ≠ l` with `i_k = i_l` and
/// `o_{G_l} = η(g)·o_{G_k}·[c_i]^z` for some `g ∈ G_0 ∗ ∗_{j≠l} G_j` of
/// length at most `max_norm` in the generators.  Sound but incomplete.
pub fn folds_peripheral_subgroups(
    sg: &SmallOrbGraph,
    dg: &DecoratedGroup,
    splitting: &Splitting,
    max_norm: usize,
) -> Result<PeripheralFoldSearch, DecoratedError> {
    let eta = dg.eta_hom(sg)?;
    let a = sg.group();
    let n = dg.peripherals.len();
    for l in 0..n {
        let mut gens = splitting.complement.clone();
        gens.extend(dg.peripherals.iter().enumerate().filter(|&(j, _)| j != l).map(|(_, p)| p.generator.clone()));
        let ball = subgroup_ball(&dg.group, &gens, max_norm, 1 << 16);
        for k in 0..n {
            let (pk, pl) = (&dg.peripherals[k], &dg.peripherals[l]);
            if k == l || pk.i != pl.i {
                continue;
            }
            for g in &ball {
                let w = a.mul(&a.inv(&a.mul(&eta.apply(g), &pk.o)), &pl.o);
                if let Some(z) = sg.c_power(pk.i as i64, &w) {
                    return Ok(PeripheralFoldSearch::Witness { k, l, g: g.clone(), z });
                }
            }
        }
    }
    Ok(PeripheralFoldSearch::NotFound)
}

/// Verifies an obvious-relation witness for `G_k` (0-based): `expression`
/// is a word `∏ x_r^{e_r}` in the generators of
/// `Ḡ = G_0 ∗ ∗_{j≠k} G_j` (complement generators first, then the other
/// peripheral generators in order) whose image is `o_k·[c_i]^{z'}·o_k⁻¹`.
/// Returns whether `0 < |z'| < z_k`; a failing witness is an error.
pub fn has_obvious_relation(
    sg: &SmallOrbGraph,
    dg: &DecoratedGroup,
    splitting: &Splitting,
    k: usize,
    z_prime: i64,
    expression: &[(usize, i64)],
) -> Result<bool, DecoratedError> {
    let pk = dg
        .peripherals
        .get(k)
        .ok_or_else(|| DecoratedError::IncompleteWitness(format!("no peripheral subgroup {}", k + 1)))?;
    let mut gens = splitting.complement.clone();
    gens.extend(dg.peripherals.iter().enumerate().filter(|&(j, _)| j != k).map(|(_, p)| p.generator.clone()));
    let mut w = FpcWord::identity();
    for &(r, e) in expression {
        let x = gens
            .get(r)
            .ok_or_else(|| DecoratedError::IncompleteWitness(format!("generator index {r} out of range")))?;
        w = dg.group.mul(&w, &dg.group.pow(x, e));
    }
    let a = sg.group();
    let expected = a.conj(&pk.o, &a.pow(sg.c_word(pk.i as i64), z_prime));
    if dg.eta_hom(sg)?.apply(&w) != expected {
        return Err(DecoratedError::WitnessRejected("the expressing word does not map to o·t^{z'}·o⁻¹".into()));
    }
    Ok(z_prime != 0 && z_prime.unsigned_abs() < pk.z)
}
