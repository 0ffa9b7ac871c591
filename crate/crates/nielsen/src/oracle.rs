//! Groups in which Nielsen transformations are computed.

use std::fmt::Debug;
use std::hash::Hash;

use fpc_words::{FpcGroup, FpcWord};
use graph_core::VertexId;
use graph_of_groups::{APath, GogError, GraphOfGroups, TreeBasis};

/// A group with a solved word problem: elements are canonical, so equality
/// of elements is equality of representatives.
pub trait GroupOracle {
    type Elem: Clone + Eq + Hash + Ord + Debug;
    fn identity(&self) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn inv(&self, a: &Self::Elem) -> Self::Elem;
    /// A length function used to bound searches.
    fn norm(&self, a: &Self::Elem) -> usize;
    fn format(&self, a: &Self::Elem) -> String;
}

/// Word length of a normal form, with exponents of finite factors counted
/// in the symmetric range.
fn word_length(g: &FpcGroup, w: &FpcWord) -> usize {
    w.0.iter()
        .map(|&(f, e)| match g.order(f) {
            0 => e.unsigned_abs() as usize,
            n => {
                let e = e.rem_euclid(n as i64) as u64;
                e.min(n - e) as usize
            }
        })
        .sum()
}

impl GroupOracle for FpcGroup {
    type Elem = FpcWord;

    fn identity(&self) -> FpcWord {
        FpcWord::identity()
    }

    fn mul(&self, a: &FpcWord, b: &FpcWord) -> FpcWord {
        FpcGroup::mul(self, a, b)
    }

    fn inv(&self, a: &FpcWord) -> FpcWord {
        FpcGroup::inv(self, a)
    }

    fn norm(&self, a: &FpcWord) -> usize {
        word_length(self, a)
    }

    fn format(&self, a: &FpcWord) -> String {
        let names: Vec<String> = (0..self.rank()).map(|i| format!("x{i}")).collect();
        a.format_with(&names)
    }
}

/// `π1(𝔸, base)` of a graph of groups with trivial edge groups, computed in
/// the free-product model obtained by collapsing a spanning tree.
#[derive(Debug, Clone)]
pub struct Pi1Oracle {
    pub gog: GraphOfGroups,
    pub basis: TreeBasis,
}

impl Pi1Oracle {
    pub fn new(gog: &GraphOfGroups, base: VertexId) -> Result<Self, GogError> {
        Ok(Pi1Oracle { gog: gog.clone(), basis: TreeBasis::new(gog, base)? })
    }

    /// The element represented by a closed A-path at the base vertex.
    pub fn element(&self, p: &APath) -> FpcWord {
        self.basis.word_of(&self.gog, p)
    }

    /// A closed A-path representing `w`.
    pub fn path(&self, w: &FpcWord) -> APath {
        self.basis.path_of(&self.gog, w)
    }
}

impl GroupOracle for Pi1Oracle {
    type Elem = FpcWord;

    fn identity(&self) -> FpcWord {
        FpcWord::identity()
    }

    fn mul(&self, a: &FpcWord, b: &FpcWord) -> FpcWord {
        self.basis.group.mul(a, b)
    }

    fn inv(&self, a: &FpcWord) -> FpcWord {
        self.basis.group.inv(a)
    }

    fn norm(&self, a: &FpcWord) -> usize {
        word_length(&self.basis.group, a)
    }

    fn format(&self, a: &FpcWord) -> String {
        self.gog.format_path(&self.path(a))
    }
}
