//! Finite graded posets, families of their elements and exact chain counts.
//!
//! A [`GradedPoset`] is stored as a ranked ground set `0..len` together with
//! the strict up-set and down-set of every element as bitsets. All counts are
//! arbitrary precision ([`ChainCount`]).

mod checks;
mod profile;

pub use checks::{
    check_descending, check_homogeneity_consequence, check_symmetry, decomposition_identity_check,
    double_counting_check, DescentClass, DescentReport, DoubleCountingCheck, HomogeneityReport,
    HomogeneityWitness, IdentityCheck, Sampling, SymmetryReport, SymmetryWitness,
};
pub use profile::RankProfile;

use std::fmt;

use fixedbitset::FixedBitSet;
use itertools::Itertools;
use num_bigint::BigUint;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Exact, nonnegative chain count.
pub type ChainCount = BigUint;

/// Index of an element in the ground set of a [`GradedPoset`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ElementId(pub usize);

impl ElementId {
    pub fn index(self) -> usize {
        self.0
    }
}

impl fmt::Display for ElementId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}", self.0)
    }
}

/// A sorted set of ranks.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct RankSet(Vec<usize>);

impl RankSet {
    pub fn new(ranks: impl IntoIterator<Item = usize>) -> Self {
        let mut v: Vec<usize> = ranks.into_iter().collect();
        v.sort_unstable();
        v.dedup();
        RankSet(v)
    }

    pub fn empty() -> Self {
        RankSet(Vec::new())
    }

    /// The integer interval `[lo, hi]`; empty when `lo > hi`.
    pub fn interval(lo: usize, hi: usize) -> Self {
        RankSet((lo..=hi).collect())
    }

    /// Ranks `r` with bit `r` set in `mask`.
    pub fn from_mask(mask: u64) -> Self {
        RankSet((0..64).filter(|r| mask >> r & 1 == 1).collect())
    }

    /// Bit mask of the ranks. Panics if a rank is 64 or larger.
    pub fn to_mask(&self) -> u64 {
        self.0.iter().fold(0u64, |m, &r| {
            assert!(r < 64, "rank {r} does not fit in a 64-bit mask");
            m | 1 << r
        })
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, r: usize) -> bool {
        self.0.binary_search(&r).is_ok()
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().copied()
    }

    pub fn min(&self) -> Option<usize> {
        self.0.first().copied()
    }

    pub fn max(&self) -> Option<usize> {
        self.0.last().copied()
    }

    /// `n - I`. Ranks above `n` are dropped.
    pub fn reflect(&self, n: usize) -> Self {
        RankSet::new(self.0.iter().filter(|&&r| r <= n).map(|&r| n - r))
    }

    pub fn is_disjoint(&self, other: &RankSet) -> bool {
        self.0.iter().all(|&r| !other.contains(r))
    }

    pub fn union(&self, other: &RankSet) -> Self {
        RankSet::new(self.0.iter().chain(other.0.iter()).copied())
    }

    pub fn difference(&self, other: &RankSet) -> Self {
        RankSet(self.0.iter().copied().filter(|&r| !other.contains(r)).collect())
    }

    /// `J - s`, or `None` if some rank would become negative.
    pub fn shift_down(&self, s: usize) -> Option<Self> {
        self.0
            .iter()
            .map(|&r| r.checked_sub(s))
            .collect::<Option<Vec<_>>>()
            .map(RankSet)
    }

    /// All subsets of the given size, in lexicographic order.
    pub fn subsets(&self, size: usize) -> impl Iterator<Item = RankSet> + '_ {
        self.0.iter().copied().combinations(size).map(RankSet)
    }
}

impl FromIterator<usize> for RankSet {
    fn from_iter<T: IntoIterator<Item = usize>>(iter: T) -> Self {
        RankSet::new(iter)
    }
}

impl fmt::Display for RankSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}}}", self.0.iter().join(","))
    }
}

/// A validated chain, stored in increasing rank order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Chain {
    elements: Vec<ElementId>,
    ranks: RankSet,
}

impl Chain {
    pub fn elements(&self) -> &[ElementId] {
        &self.elements
    }

    pub fn ranks(&self) -> &RankSet {
        &self.ranks
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }
}

/// A finite graded poset of height `n + 1`.
#[derive(Clone, Debug)]
pub struct GradedPoset {
    n: usize,
    rank: Vec<usize>,
    levels: Vec<Vec<ElementId>>,
    level_bits: Vec<FixedBitSet>,
    above: Vec<FixedBitSet>,
    below: Vec<FixedBitSet>,
    labels: Vec<String>,
}

impl GradedPoset {
    /// Builds a poset from a rank assignment and a strict order predicate,
    /// then checks that it is a graded partial order with exactly those ranks.
    pub fn new(
        rank: Vec<usize>,
        less: impl Fn(ElementId, ElementId) -> bool,
        labels: Option<Vec<String>>,
    ) -> Result<Self> {
        let poset = Self::from_relation_unchecked(rank, less, labels)?;
        poset.validate()?;
        Ok(poset)
    }

    /// Like [`GradedPoset::new`] but skips the cubic-time order validation.
    /// Used by the built-in lattices, whose order is correct by construction.
    pub(crate) fn from_relation_unchecked(
        rank: Vec<usize>,
        less: impl Fn(ElementId, ElementId) -> bool,
        labels: Option<Vec<String>>,
    ) -> Result<Self> {
        let len = rank.len();
        if len == 0 {
            return Err(Error::InvalidPoset("empty ground set".into()));
        }
        let n = *rank.iter().max().expect("nonempty");
        let mut levels = vec![Vec::new(); n + 1];
        let mut level_bits = vec![FixedBitSet::with_capacity(len); n + 1];
        for (x, &r) in rank.iter().enumerate() {
            levels[r].push(ElementId(x));
            level_bits[r].insert(x);
        }
        if let Some(i) = levels.iter().position(|l| l.is_empty()) {
            return Err(Error::InvalidPoset(format!("rank level {i} is empty")));
        }
        let mut above = vec![FixedBitSet::with_capacity(len); len];
        let mut below = vec![FixedBitSet::with_capacity(len); len];
        for x in 0..len {
            for y in 0..len {
                if x != y && less(ElementId(x), ElementId(y)) {
                    if rank[x] >= rank[y] {
                        return Err(Error::InvalidPoset(format!(
                            "#{x} < #{y} but rank {} >= rank {}",
                            rank[x], rank[y]
                        )));
                    }
                    above[x].insert(y);
                    below[y].insert(x);
                }
            }
        }
        let labels = match labels {
            Some(l) if l.len() == len => l,
            Some(l) => {
                return Err(Error::InvalidPoset(format!(
                    "{} labels for {len} elements",
                    l.len()
                )))
            }
            None => (0..len).map(|x| x.to_string()).collect(),
        };
        Ok(GradedPoset {
            n,
            rank,
            levels,
            level_bits,
            above,
            below,
            labels,
        })
    }

    /// The total order `0 < 1 < ... < n`.
    pub fn chain(n: usize) -> Self {
        Self::from_relation_unchecked((0..=n).collect(), |x, y| x.0 < y.0, None)
            .expect("a chain is a valid graded poset")
    }

    /// Checks transitivity and gradedness (every maximal chain meets every rank).
    pub fn validate(&self) -> Result<()> {
        for x in 0..self.len() {
            if self.above[x].contains(x) {
                return Err(Error::InvalidPoset(format!("#{x} < #{x}")));
            }
            for y in self.above[x].ones() {
                if !self.above[y].is_subset(&self.above[x]) {
                    return Err(Error::InvalidPoset(format!(
                        "order is not transitive through #{x} < #{y}"
                    )));
                }
            }
            let r = self.rank[x];
            if r < self.n && self.above[x].is_disjoint(&self.level_bits[r + 1]) {
                return Err(Error::InvalidPoset(format!(
                    "#{x} of rank {r} has no upper cover at rank {}",
                    r + 1
                )));
            }
            if r > 0 && self.below[x].is_disjoint(&self.level_bits[r - 1]) {
                return Err(Error::InvalidPoset(format!(
                    "#{x} of rank {r} has no lower cover at rank {}",
                    r - 1
                )));
            }
            for y in self.above[x].ones() {
                if self.rank[y] > r + 1 {
                    let mut between = self.above[x].clone();
                    between.intersect_with(&self.below[y]);
                    if between.is_disjoint(&self.level_bits[r + 1]) {
                        return Err(Error::InvalidPoset(format!(
                            "#{x} < #{y} skips rank {} (not graded)",
                            r + 1
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    /// Largest rank; the height of the poset is `n + 1`.
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.rank.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rank.is_empty()
    }

    pub fn elements(&self) -> impl Iterator<Item = ElementId> {
        (0..self.len()).map(ElementId)
    }

    pub fn rank(&self, x: ElementId) -> usize {
        self.rank[x.0]
    }

    pub fn level(&self, i: usize) -> &[ElementId] {
        self.levels.get(i).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn level_bits(&self, i: usize) -> &FixedBitSet {
        &self.level_bits[i]
    }

    /// `|P_i|` for every rank `i`.
    pub fn level_sizes(&self) -> Vec<ChainCount> {
        self.levels.iter().map(|l| BigUint::from(l.len())).collect()
    }

    pub fn less(&self, x: ElementId, y: ElementId) -> bool {
        self.above[x.0].contains(y.0)
    }

    pub fn comparable(&self, x: ElementId, y: ElementId) -> bool {
        self.less(x, y) || self.less(y, x)
    }

    /// Strict up-set of `x`.
    pub fn above(&self, x: ElementId) -> &FixedBitSet {
        &self.above[x.0]
    }

    /// Strict down-set of `x`.
    pub fn below(&self, x: ElementId) -> &FixedBitSet {
        &self.below[x.0]
    }

    pub fn upper_covers(&self, x: ElementId) -> Vec<ElementId> {
        let r = self.rank(x);
        if r == self.n {
            return Vec::new();
        }
        self.levels[r + 1]
            .iter()
            .copied()
            .filter(|&y| self.less(x, y))
            .collect()
    }

    pub fn label(&self, x: ElementId) -> &str {
        &self.labels[x.0]
    }

    pub fn contains(&self, x: ElementId) -> bool {
        x.0 < self.len()
    }

    /// Validates `ids` as a chain and returns it sorted by rank.
    pub fn chain_from(&self, ids: impl IntoIterator<Item = ElementId>) -> Result<Chain> {
        let mut elements: Vec<ElementId> = ids.into_iter().collect();
        for &x in &elements {
            if !self.contains(x) {
                return Err(Error::UnknownElement(x));
            }
        }
        elements.sort_by_key(|&x| (self.rank(x), x));
        elements.dedup();
        for w in elements.windows(2) {
            if !self.less(w[0], w[1]) {
                return Err(Error::NotAChain(w[0], w[1]));
            }
        }
        let ranks = RankSet(elements.iter().map(|&x| self.rank(x)).collect());
        Ok(Chain { elements, ranks })
    }

    /// The deterministic chain with rank set `ranks`: at each rank in
    /// increasing order, the least-indexed element above the partial chain.
    pub fn canonical_chain(&self, ranks: &RankSet) -> Result<Chain> {
        let mut elements: Vec<ElementId> = Vec::with_capacity(ranks.len());
        for r in ranks.iter() {
            if r > self.n {
                return Err(Error::RankOutOfRange { rank: r, n: self.n });
            }
            let next = self.levels[r]
                .iter()
                .copied()
                .find(|&y| elements.last().is_none_or(|&x| self.less(x, y)))
                .ok_or_else(|| {
                    Error::InvalidArgument(format!("no chain has rank set {ranks}"))
                })?;
            elements.push(next);
        }
        Ok(Chain {
            elements,
            ranks: ranks.clone(),
        })
    }

    /// Number of chains `M ⊇ L` whose elements outside `L` have rank set
    /// exactly `extra`. `extra` must be disjoint from the ranks of `L`.
    pub(crate) fn count_exact_extensions(&self, chain: &Chain, extra: &RankSet) -> ChainCount {
        enum Step {
            Fixed(ElementId),
            Free(usize),
        }
        let mut steps: Vec<(usize, Step)> = chain
            .elements
            .iter()
            .map(|&x| (self.rank(x), Step::Fixed(x)))
            .chain(extra.iter().map(|r| (r, Step::Free(r))))
            .collect();
        steps.sort_by_key(|(r, _)| *r);

        let mut frontier: Option<Vec<(ElementId, BigUint)>> = None;
        for (_, step) in steps {
            let candidates: &[ElementId] = match &step {
                Step::Fixed(x) => std::slice::from_ref(x),
                Step::Free(r) => self.level(*r),
            };
            let next: Vec<(ElementId, BigUint)> = candidates
                .iter()
                .filter_map(|&y| {
                    let ways = match &frontier {
                        None => BigUint::one(),
                        Some(prev) => prev
                            .iter()
                            .filter(|(x, _)| self.less(*x, y))
                            .map(|(_, w)| w)
                            .sum(),
                    };
                    (!ways.is_zero()).then_some((y, ways))
                })
                .collect();
            if next.is_empty() {
                return BigUint::zero();
            }
            frontier = Some(next);
        }
        frontier.map_or_else(BigUint::one, |f| f.into_iter().map(|(_, w)| w).sum())
    }

    /// `c_k'(L, J)`: the number of `k`-chains containing `L` whose remaining
    /// elements have ranks in `J`, counted on the concrete order.
    pub fn ck_prime_chain(&self, chain: &Chain, extra: &RankSet, k: usize) -> Result<ChainCount> {
        if chain.len() > k {
            return Err(Error::InvalidArgument(format!(
                "chain of length {} cannot lie in a {k}-chain",
                chain.len()
            )));
        }
        if !chain.ranks.is_disjoint(extra) {
            return Err(Error::InvalidArgument(format!(
                "ranks {} of the chain meet J = {extra}",
                chain.ranks
            )));
        }
        let usable = RankSet(extra.iter().filter(|&r| r <= self.n).collect());
        Ok(usable
            .subsets(k - chain.len())
            .map(|sub| self.count_exact_extensions(chain, &sub))
            .sum())
    }

    /// `c_k'(I, J)` evaluated on the canonical chain with rank set `I`.
    pub fn ck_prime_ranks(&self, base: &RankSet, extra: &RankSet, k: usize) -> Result<ChainCount> {
        let chain = self.canonical_chain(base)?;
        self.ck_prime_chain(&chain, extra, k)
    }

    /// Every chain whose rank set is exactly `ranks`.
    pub fn chains_with_ranks(&self, ranks: &RankSet) -> Vec<Chain> {
        let mut out = Vec::new();
        let mut stack: Vec<ElementId> = Vec::with_capacity(ranks.len());
        self.extend_chains(ranks.as_slice(), &mut stack, &mut out);
        out
    }

    fn extend_chains(&self, ranks: &[usize], stack: &mut Vec<ElementId>, out: &mut Vec<Chain>) {
        let Some((&r, rest)) = ranks.split_first() else {
            out.push(Chain {
                ranks: RankSet(stack.iter().map(|&x| self.rank(x)).collect()),
                elements: stack.clone(),
            });
            return;
        };
        for &y in self.level(r) {
            if stack.last().is_none_or(|&x| self.less(x, y)) {
                stack.push(y);
                self.extend_chains(rest, stack, out);
                stack.pop();
            }
        }
    }
}

/// A subset of the ground set of a poset.
#[derive(Clone, Debug)]
pub struct Family<'p> {
    poset: &'p GradedPoset,
    members: FixedBitSet,
}

impl PartialEq for Family<'_> {
    fn eq(&self, other: &Self) -> bool {
        std::ptr::eq(self.poset, other.poset) && self.members == other.members
    }
}

impl<'p> Family<'p> {
    pub fn new(poset: &'p GradedPoset, members: impl IntoIterator<Item = ElementId>) -> Result<Self> {
        let mut bits = FixedBitSet::with_capacity(poset.len());
        for x in members {
            if !poset.contains(x) {
                return Err(Error::UnknownElement(x));
            }
            bits.insert(x.0);
        }
        Ok(Family {
            poset,
            members: bits,
        })
    }

    pub fn empty(poset: &'p GradedPoset) -> Self {
        Family {
            poset,
            members: FixedBitSet::with_capacity(poset.len()),
        }
    }

    pub fn full(poset: &'p GradedPoset) -> Self {
        let mut members = FixedBitSet::with_capacity(poset.len());
        members.insert_range(..);
        Family { poset, members }
    }

    /// The union of the rank levels listed in `ranks`.
    pub fn from_levels(poset: &'p GradedPoset, ranks: &RankSet) -> Self {
        let mut members = FixedBitSet::with_capacity(poset.len());
        for r in ranks.iter().filter(|&r| r <= poset.n()) {
            members.union_with(poset.level_bits(r));
        }
        Family { poset, members }
    }

    /// Family whose members are the set bits of `mask` (posets of at most 64 elements).
    pub fn from_mask(poset: &'p GradedPoset, mask: u64) -> Result<Self> {
        if poset.len() < 64 && mask >> poset.len() != 0 {
            return Err(Error::InvalidArgument(format!(
                "mask {mask:#x} has bits beyond {} elements",
                poset.len()
            )));
        }
        Family::new(poset, (0..64).filter(|b| mask >> b & 1 == 1).map(ElementId))
    }

    pub fn poset(&self) -> &'p GradedPoset {
        self.poset
    }

    pub fn contains(&self, x: ElementId) -> bool {
        self.members.contains(x.0)
    }

    pub fn insert(&mut self, x: ElementId) {
        self.members.insert(x.0);
    }

    pub fn remove(&mut self, x: ElementId) {
        self.members.set(x.0, false);
    }

    pub fn len(&self) -> usize {
        self.members.count_ones(..)
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_clear()
    }

    pub fn members(&self) -> impl Iterator<Item = ElementId> + '_ {
        self.members.ones().map(ElementId)
    }

    pub fn bits(&self) -> &FixedBitSet {
        &self.members
    }

    pub fn is_subset(&self, other: &Family<'_>) -> bool {
        self.members.is_subset(&other.members)
    }

    /// `c_k(A)`, the number of `k`-element chains inside the family.
    ///
    /// Dynamic programme over members in rank order: for each member the
    /// number of `j`-chains whose top element it is. `c_0 = 1`.
    pub fn count_chains(&self, k: usize) -> ChainCount {
        if k == 0 {
            return BigUint::one();
        }
        let mut order: Vec<ElementId> = self.members().collect();
        order.sort_by_key(|&x| (self.poset.rank(x), x));
        let mut slot = vec![usize::MAX; self.poset.len()];
        for (i, x) in order.iter().enumerate() {
            slot[x.0] = i;
        }
        let mut ends: Vec<Vec<BigUint>> = Vec::with_capacity(order.len());
        let mut total = BigUint::zero();
        for &x in &order {
            let mut row = vec![BigUint::zero(); k + 1];
            row[1] = BigUint::one();
            for y in self.poset.below(x).intersection(&self.members) {
                let prev = &ends[slot[y]];
                for j in 2..=k {
                    if !prev[j - 1].is_zero() {
                        row[j] += &prev[j - 1];
                    }
                }
            }
            total += &row[k];
            ends.push(row);
        }
        total
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattices::{boolean_lattice, enumerate_subspaces};

    fn mask_ids(masks: &[usize]) -> Vec<ElementId> {
        masks.iter().map(|&m| ElementId(m)).collect()
    }

    #[test]
    fn level_sizes_of_small_lattices() {
        let b3 = boolean_lattice(3).unwrap();
        assert_eq!(b3.level_sizes(), [1u32, 3, 3, 1].map(BigUint::from));
        let b0 = boolean_lattice(0).unwrap();
        assert_eq!(b0.level_sizes(), vec![BigUint::one()]);
        let v22 = enumerate_subspaces(2, 2).unwrap();
        assert_eq!(v22.poset().level_sizes(), [1u32, 3, 1].map(BigUint::from));
    }

    #[test]
    fn count_chains_examples() {
        let b3 = boolean_lattice(3).unwrap();
        assert!(Family::empty(&b3).count_chains(2).is_zero());
        assert_eq!(Family::full(&b3).count_chains(3), BigUint::from(18u32));
        let ends = Family::from_levels(&b3, &RankSet::new([0, 3]));
        assert_eq!(ends.count_chains(2), BigUint::one());
        assert!(Family::full(&b3).count_chains(5).is_zero());
        assert_eq!(Family::full(&b3).count_chains(0), BigUint::one());
    }

    #[test]
    fn ck_prime_chain_examples() {
        let b3 = boolean_lattice(3).unwrap();
        let full = b3.chain_from(mask_ids(&[0b000, 0b001, 0b011, 0b111])).unwrap();
        assert_eq!(
            b3.ck_prime_chain(&full, &RankSet::empty(), 4).unwrap(),
            BigUint::one()
        );
        let single = b3.chain_from([ElementId(0b001)]).unwrap();
        assert_eq!(
            b3.ck_prime_chain(&single, &RankSet::new([2, 3]), 3).unwrap(),
            BigUint::from(2u32)
        );
        let empty = b3.chain_from([]).unwrap();
        assert_eq!(
            b3.ck_prime_chain(&empty, &RankSet::new([1, 3]), 2).unwrap(),
            BigUint::from(3u32)
        );
    }

    #[test]
    fn ck_prime_chain_rejects_bad_input() {
        let b3 = boolean_lattice(3).unwrap();
        assert!(matches!(
            b3.chain_from(mask_ids(&[0b001, 0b010])),
            Err(Error::NotAChain(_, _))
        ));
        let single = b3.chain_from([ElementId(0b001)]).unwrap();
        assert!(b3.ck_prime_chain(&single, &RankSet::new([1, 2]), 3).is_err());
        assert!(b3.ck_prime_chain(&single, &RankSet::new([2]), 0).is_err());
    }

    #[test]
    fn ck_prime_ranks_examples() {
        let b3 = boolean_lattice(3).unwrap();
        assert_eq!(
            b3.ck_prime_ranks(&RankSet::new([0]), &RankSet::new([1, 2]), 3)
                .unwrap(),
            BigUint::from(6u32)
        );
        let b4 = boolean_lattice(4).unwrap();
        assert_eq!(
            b4.ck_prime_ranks(&RankSet::new([1]), &RankSet::new([2]), 2)
                .unwrap(),
            BigUint::from(3u32)
        );
        let i = RankSet::new([0, 2, 3]);
        assert_eq!(
            b4.ck_prime_ranks(&i, &RankSet::empty(), 3).unwrap(),
            BigUint::one()
        );
        assert!(matches!(
            b4.ck_prime_ranks(&RankSet::new([5]), &RankSet::empty(), 1),
            Err(Error::RankOutOfRange { .. })
        ));
    }

    #[test]
    fn chains_with_ranks_matches_extension_count() {
        let b4 = boolean_lattice(4).unwrap();
        let ranks = RankSet::new([1, 3]);
        let chains = b4.chains_with_ranks(&ranks);
        let empty = b4.chain_from([]).unwrap();
        assert_eq!(
            BigUint::from(chains.len()),
            b4.count_exact_extensions(&empty, &ranks)
        );
        assert_eq!(chains.len(), 4 * 3);
    }

    #[test]
    fn validate_rejects_ungraded_order() {
        // 0 < 1 < 2 plus 0 < 3 with 3 maximal at rank 1: a short maximal chain.
        let rank = vec![0, 1, 2, 1];
        let less = |x: ElementId, y: ElementId| matches!((x.0, y.0), (0, 1) | (1, 2) | (0, 2) | (0, 3));
        assert!(GradedPoset::new(rank, less, None).is_err());
        assert!(GradedPoset::new(vec![0, 1], |x, y| x.0 > y.0, None).is_err());
    }

    #[test]
    fn rank_set_helpers() {
        let s = RankSet::new([3, 1, 1, 2]);
        assert_eq!(s.as_slice(), &[1, 2, 3]);
        assert_eq!(s.reflect(4), RankSet::new([1, 2, 3]));
        assert_eq!(s.reflect(5), RankSet::new([2, 3, 4]));
        assert_eq!(RankSet::from_mask(s.to_mask()), s);
        assert_eq!(s.shift_down(2), None);
        assert_eq!(s.shift_down(1), Some(RankSet::new([0, 1, 2])));
        assert_eq!(s.to_string(), "{1,2,3}");
    }
}
