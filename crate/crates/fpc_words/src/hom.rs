//! Homomorphisms between free products of cyclic groups.

use std::collections::{HashMap, HashSet, VecDeque};

use serde::{Deserialize, Serialize};

use crate::gcd;
use crate::group::{FpcError, FpcGroup, FpcWord};

/// A homomorphism determined by the images of the factor generators.
///
/// Construction verifies that the image of a generator of a finite factor
/// of order `p` has order dividing `p`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawHom", into = "RawHom")]
pub struct FpcHom {
    source: FpcGroup,
    target: FpcGroup,
    images: Vec<FpcWord>,
}

#[derive(Serialize, Deserialize)]
struct RawHom {
    source: FpcGroup,
    target: FpcGroup,
    images: Vec<FpcWord>,
}

impl TryFrom<RawHom> for FpcHom {
    type Error = FpcError;
    fn try_from(raw: RawHom) -> Result<Self, FpcError> {
        FpcHom::new(raw.source, raw.target, raw.images)
    }
}

impl From<FpcHom> for RawHom {
    fn from(h: FpcHom) -> Self {
        RawHom { source: h.source, target: h.target, images: h.images }
    }
}

/// Verdict of an injectivity test.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum Injectivity {
    /// The homomorphism is injective.
    Injective,
    /// A nontrivial source element with trivial image.
    NotInjective(FpcWord),
    /// No decision within the search bounds.
    Unknown,
}

/// Result of a preimage search.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum Preimage {
    /// A source word mapping onto the requested element.
    Found(FpcWord),
    /// The (finite) image was enumerated completely without success.
    NotInImage,
    /// The search bound was exhausted.
    Unknown,
}

impl FpcHom {
    /// Builds and validates a homomorphism.
    pub fn new(source: FpcGroup, target: FpcGroup, images: Vec<FpcWord>) -> Result<Self, FpcError> {
        if images.len() != source.rank() {
            return Err(FpcError::ImageCount { expected: source.rank(), got: images.len() });
        }
        for (factor, y) in images.iter().enumerate() {
            target.validate(y)?;
            let order = source.order(factor);
            if order != 0 {
                let image_order = target.order_of(y);
                if image_order == 0 || order % image_order != 0 {
                    return Err(FpcError::OrderMismatch { factor, order, image_order });
                }
            }
        }
        Ok(FpcHom { source, target, images })
    }

    /// The identity of `g`.
    pub fn identity(g: &FpcGroup) -> Self {
        let images = (0..g.rank()).map(|f| g.generator(f)).collect();
        FpcHom { source: g.clone(), target: g.clone(), images }
    }

    /// The trivial homomorphism.
    pub fn trivial(source: &FpcGroup, target: &FpcGroup) -> Self {
        FpcHom {
            source: source.clone(),
            target: target.clone(),
            images: vec![FpcWord::identity(); source.rank()],
        }
    }

    /// Source group.
    pub fn source(&self) -> &FpcGroup {
        &self.source
    }

    /// Target group.
    pub fn target(&self) -> &FpcGroup {
        &self.target
    }

    /// Generator images.
    pub fn images(&self) -> &[FpcWord] {
        &self.images
    }

    /// Image of `w`.
    pub fn apply(&self, w: &FpcWord) -> FpcWord {
        let mut out = FpcWord::identity();
        for &(f, e) in w.syllables() {
            out = self.target.mul(&out, &self.target.pow(&self.images[f], e));
        }
        out
    }

    /// `self ∘ inner`.
    pub fn compose(&self, inner: &FpcHom) -> Result<FpcHom, FpcError> {
        if inner.target != self.source {
            return Err(FpcError::GroupMismatch);
        }
        let images = inner.images.iter().map(|y| self.apply(y)).collect();
        Ok(FpcHom { source: inner.source.clone(), target: self.target.clone(), images })
    }

    /// `i_g ∘ self`: every image conjugated by `g`.
    pub fn conjugated(&self, g: &FpcWord) -> FpcHom {
        let images = self.images.iter().map(|y| self.target.conj(g, y)).collect();
        FpcHom { source: self.source.clone(), target: self.target.clone(), images }
    }

    /// Whether two homomorphisms agree on every generator.
    pub fn same_map(&self, other: &FpcHom) -> bool {
        self.source == other.source && self.target == other.target && self.images == other.images
    }

    /// Decides injectivity where an exact criterion applies, otherwise
    /// searches for a short kernel element.
    pub fn injectivity(&self) -> Injectivity {
        let (s, t) = (&self.source, &self.target);
        // Each factor must embed: compare generator orders.
        for (f, y) in self.images.iter().enumerate() {
            let image_order = t.order_of(y);
            let order = s.order(f);
            if image_order != order {
                // image_order is finite here (divisibility was checked).
                return Injectivity::NotInjective(s.syllable(f, image_order as i64));
            }
        }
        if s.rank() <= 1 {
            return Injectivity::Injective;
        }
        // Commuting images of two distinct factors: the commutator of the
        // generators is nontrivial in the source.
        for i in 0..s.rank() {
            for j in i + 1..s.rank() {
                let c = t.commutator(&self.images[i], &self.images[j]);
                if c.is_identity() {
                    return Injectivity::NotInjective(
                        s.commutator(&s.generator(i), &s.generator(j)),
                    );
                }
            }
        }
        // Single syllables in pairwise distinct factors, one conjugator `c`
        // for all of them: y_i = c x_i c⁻¹.  The reduced conjugator of y_i is
        // `c` with a trailing syllable in the factor of x_i removed.
        let reduced: Vec<(FpcWord, FpcWord)> = self.images.iter().map(|y| t.cyclic_reduce(y)).collect();
        let mut factors = HashSet::new();
        if reduced.iter().all(|(_, core)| core.len() == 1 && factors.insert(core.0[0].0)) {
            let c = reduced.iter().map(|(u, _)| u).max_by_key(|u| u.len()).expect("rank ≥ 2");
            let common = reduced.iter().all(|(u, core)| {
                let f = core.0[0].0;
                let stripped = match c.syllables().last() {
                    Some(&(g, _)) if g == f => FpcWord(c.0[..c.len() - 1].to_vec()),
                    _ => c.clone(),
                };
                stripped == *u
            });
            if common {
                return Injectivity::Injective;
            }
        }
        if t.orders().iter().all(|&p| p == 0) {
            // Free target, free source (finite factors were excluded by the
            // order comparison): the images form a free basis iff the folded
            // core graph has rank equal to their number.
            if stallings_rank(t.rank(), &self.images) == self.images.len() {
                return Injectivity::Injective;
            }
            if let Some(w) = self.search_kernel(4, 200_000) {
                return Injectivity::NotInjective(w);
            }
            return Injectivity::Unknown;
        }
        match self.search_kernel(4, 200_000) {
            Some(w) => Injectivity::NotInjective(w),
            None => Injectivity::Unknown,
        }
    }

    /// Enumerates source words of syllable length ≤ `max_len` (exponents of
    /// infinite factors bounded by 2) and returns the first nontrivial one
    /// mapping to the identity.
    pub fn search_kernel(&self, max_len: usize, max_words: usize) -> Option<FpcWord> {
        let s = &self.source;
        let letters: Vec<(usize, i64)> = (0..s.rank())
            .flat_map(|f| {
                let exps: Vec<i64> = match s.order(f) {
                    0 => vec![1, -1, 2, -2],
                    p => (1..p as i64).collect(),
                };
                exps.into_iter().map(move |e| (f, e))
            })
            .collect();
        let mut frontier: Vec<(FpcWord, FpcWord)> = vec![(FpcWord::identity(), FpcWord::identity())];
        let mut visited = 0usize;
        for _ in 0..max_len {
            let mut next = Vec::new();
            for (w, img) in &frontier {
                for &(f, e) in &letters {
                    if w.syllables().last().is_some_and(|&(g, _)| g == f) {
                        continue;
                    }
                    let mut nw = w.clone();
                    nw.0.push((f, e));
                    let nimg = self.target.mul(img, &self.target.pow(&self.images[f], e));
                    if nimg.is_identity() {
                        return Some(nw);
                    }
                    visited += 1;
                    if visited > max_words {
                        return None;
                    }
                    next.push((nw, nimg));
                }
            }
            frontier = next;
        }
        None
    }

    /// Cheap surjectivity certificate.  A target factor counts as generated
    /// once some image word has been reduced to a single syllable generating
    /// it; image words are reduced by cancelling leading and trailing
    /// syllables that lie in factors already generated.  `true` proves that
    /// the map is onto; `false` is inconclusive.
    pub fn is_visibly_surjective(&self) -> bool {
        let t = &self.target;
        let generates = |i: usize, e: i64| match t.order(i) {
            0 => e.abs() == 1,
            n => gcd(e.rem_euclid(n as i64) as u64, n) == 1,
        };
        let mut known = vec![false; t.rank()];
        let mut words = self.images.clone();
        let mut changed = true;
        while changed {
            changed = false;
            for w in &mut words {
                loop {
                    match w.0.as_slice() {
                        [] => break,
                        [(i, e)] => {
                            if !known[*i] && generates(*i, *e) {
                                known[*i] = true;
                                changed = true;
                            }
                            break;
                        }
                        [(i, e), ..] if known[*i] => *w = t.mul(&t.syllable(*i, -*e), w),
                        [.., (j, e)] if known[*j] => *w = t.mul(w, &t.syllable(*j, -*e)),
                        _ => break,
                    }
                    changed = true;
                }
            }
        }
        known.iter().all(|&k| k)
    }

    /// Breadth-first search for a source word with image `y`.  The search
    /// walks the image subgroup element by element; if that subgroup is
    /// finite and is exhausted the answer `NotInImage` is exact.
    pub fn preimage(&self, y: &FpcWord, max_states: usize) -> Preimage {
        let t = &self.target;
        let mut steps: Vec<(FpcWord, usize, i64)> = Vec::new();
        for (f, img) in self.images.iter().enumerate() {
            if img.is_identity() {
                continue;
            }
            steps.push((img.clone(), f, 1));
            let inv = t.inv(img);
            if inv != *img {
                steps.push((inv, f, -1));
            }
        }
        let mut parent: HashMap<FpcWord, Option<(FpcWord, usize, i64)>> = HashMap::new();
        parent.insert(FpcWord::identity(), None);
        let mut queue = VecDeque::from([FpcWord::identity()]);
        while let Some(x) = queue.pop_front() {
            if x == *y {
                let mut letters = Vec::new();
                let mut at = x;
                while let Some(Some((prev, f, e))) = parent.get(&at).cloned() {
                    letters.push((f, e));
                    at = prev;
                }
                letters.reverse();
                let w = self.source.normalize(&letters).expect("factor indices valid");
                return Preimage::Found(w);
            }
            for (step, f, e) in &steps {
                let nx = t.mul(&x, step);
                if parent.contains_key(&nx) {
                    continue;
                }
                if parent.len() >= max_states {
                    return Preimage::Unknown;
                }
                parent.insert(nx.clone(), Some((x.clone(), *f, *e)));
                queue.push_back(nx);
            }
        }
        Preimage::NotInImage
    }

    /// All elements of the image subgroup, if it has at most `max_states`
    /// elements.
    pub fn image_elements(&self, max_states: usize) -> Option<Vec<FpcWord>> {
        let t = &self.target;
        let mut seen = HashSet::from([FpcWord::identity()]);
        let mut order = vec![FpcWord::identity()];
        let mut head = 0;
        while head < order.len() {
            let x = order[head].clone();
            head += 1;
            for img in &self.images {
                for step in [img.clone(), t.inv(img)] {
                    let nx = t.mul(&x, &step);
                    if seen.insert(nx.clone()) {
                        if seen.len() > max_states {
                            return None;
                        }
                        order.push(nx);
                    }
                }
            }
        }
        order.sort();
        Some(order)
    }
}

/// Rank of the subgroup of the free group of rank `n` generated by `gens`,
/// computed by Stallings folding of the bouquet of the generators.
pub(crate) fn stallings_rank(_n: usize, gens: &[FpcWord]) -> usize {
    // Vertices are integers; edges (from, letter, to) with letter a factor
    // index read in the positive direction.
    let mut next_vertex = 1usize;
    let mut edges: Vec<(usize, usize, usize)> = Vec::new();
    for w in gens {
        let letters: Vec<(usize, bool)> = w
            .syllables()
            .iter()
            .flat_map(|&(f, e)| std::iter::repeat_n((f, e > 0), e.unsigned_abs() as usize))
            .collect();
        let mut at = 0usize;
        for (k, &(f, positive)) in letters.iter().enumerate() {
            let to = if k + 1 == letters.len() {
                0
            } else {
                next_vertex += 1;
                next_vertex - 1
            };
            if positive {
                edges.push((at, f, to));
            } else {
                edges.push((to, f, at));
            }
            at = to;
        }
    }
    let mut parent: Vec<usize> = (0..next_vertex).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while p[r] != r {
            r = p[r];
        }
        let mut c = x;
        while p[c] != r {
            let n = p[c];
            p[c] = r;
            c = n;
        }
        r
    }
    loop {
        let mut changed = false;
        let mut out_map: HashMap<(usize, usize), usize> = HashMap::new();
        let mut in_map: HashMap<(usize, usize), usize> = HashMap::new();
        let mut kept: HashSet<(usize, usize, usize)> = HashSet::new();
        for &(a, f, b) in &edges {
            let (a, b) = (find(&mut parent, a), find(&mut parent, b));
            if let Some(&b2) = out_map.get(&(a, f)) {
                let b2 = find(&mut parent, b2);
                if b2 != b {
                    parent[b2] = b;
                    changed = true;
                }
                continue;
            }
            if let Some(&a2) = in_map.get(&(b, f)) {
                let a2 = find(&mut parent, a2);
                if a2 != a {
                    parent[a2] = a;
                    changed = true;
                }
                continue;
            }
            out_map.insert((a, f), b);
            in_map.insert((b, f), a);
            kept.insert((a, f, b));
        }
        let mut next: Vec<(usize, usize, usize)> = kept
            .into_iter()
            .map(|(a, f, b)| (find(&mut parent, a), f, find(&mut parent, b)))
            .collect();
        next.sort_unstable();
        next.dedup();
        if !changed && next.len() == edges.len() {
            edges = next;
            break;
        }
        edges = next;
    }
    let mut vertices: HashSet<usize> = HashSet::from([find(&mut parent, 0)]);
    for &(a, _, b) in &edges {
        vertices.insert(a);
        vertices.insert(b);
    }
    edges.len() + 1 - vertices.len()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn stallings_ranks() {
        let g = FpcGroup::free(2);
        let a = g.generator(0);
        let b = g.generator(1);
        assert_eq!(stallings_rank(2, &[a.clone(), b.clone()]), 2);
        assert_eq!(stallings_rank(2, &[a.clone(), g.pow(&a, 2)]), 1);
        let ab = g.mul(&a, &b);
        assert_eq!(stallings_rank(2, &[ab.clone(), a.clone(), b.clone()]), 2);
        assert_eq!(stallings_rank(2, &[g.conj(&b, &a), a.clone()]), 2);
    }
}
