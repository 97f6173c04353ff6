use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::Serialize;

use super::{ChainCount, GradedPoset, RankSet};
use crate::error::{Error, Result};

/// Rank-level data of a homogeneous graded poset: the level sizes `|P_i|`
/// and the upward pair counts `c_2'(i, j)` for `i < j`.
///
/// For a homogeneous poset every chain count depends only on ranks, and the
/// number of chains with rank set exactly `{s_1 < ... < s_m}` telescopes to
/// `|P_{s_1}| * prod c_2'(s_j, s_{j+1})`. All `c_k'` values follow from that.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RankProfile {
    #[serde(serialize_with = "crate::report::ser_biguints")]
    levels: Vec<BigUint>,
    #[serde(serialize_with = "crate::report::ser_biguint_rows")]
    up: Vec<Vec<BigUint>>,
}

impl RankProfile {
    /// `up(i, j)` is called for every `0 <= i < j <= n`.
    pub fn new(levels: Vec<BigUint>, up: impl Fn(usize, usize) -> BigUint) -> Result<Self> {
        if levels.is_empty() {
            return Err(Error::InvalidPoset("no rank levels".into()));
        }
        if let Some(i) = levels.iter().position(Zero::is_zero) {
            return Err(Error::InvalidPoset(format!("rank level {i} is empty")));
        }
        let m = levels.len();
        let mut table = vec![vec![BigUint::zero(); m]; m];
        for i in 0..m {
            for j in i + 1..m {
                let c = up(i, j);
                if c.is_zero() {
                    return Err(Error::InvalidPoset(format!(
                        "no element of rank {j} lies above rank {i}"
                    )));
                }
                if !(&levels[i] * &c).is_multiple_of(&levels[j]) {
                    return Err(Error::InvalidPoset(format!(
                        "|P_{i}| * c2'({i},{j}) is not divisible by |P_{j}|"
                    )));
                }
                table[i][j] = c;
            }
        }
        Ok(RankProfile { levels, up: table })
    }

    /// Reads level sizes and `c_2'` off a concrete poset, using the first
    /// element of each level. Meaningful when the poset is homogeneous.
    pub fn from_poset(poset: &GradedPoset) -> Self {
        let levels = poset.level_sizes();
        let up = |i: usize, j: usize| {
            let x = poset.level(i)[0];
            let mut hits = poset.above(x).clone();
            hits.intersect_with(poset.level_bits(j));
            BigUint::from(hits.count_ones(..))
        };
        RankProfile::new(levels, up).expect("level data of a graded poset is consistent")
    }

    pub fn n(&self) -> usize {
        self.levels.len() - 1
    }

    pub fn levels(&self) -> &[BigUint] {
        &self.levels
    }

    pub fn level_size(&self, i: usize) -> &BigUint {
        &self.levels[i]
    }

    /// `|P|`.
    pub fn total(&self) -> BigUint {
        self.levels.iter().sum()
    }

    /// `c_2'(i, j)`: elements of rank `j` comparable with a fixed element of
    /// rank `i`. For `i > j` this is the downward count `|P_j| c_2'(j,i) / |P_i|`.
    pub fn c2_prime(&self, i: usize, j: usize) -> BigUint {
        match i.cmp(&j) {
            std::cmp::Ordering::Less => self.up[i][j].clone(),
            std::cmp::Ordering::Greater => &self.levels[j] * &self.up[j][i] / &self.levels[i],
            std::cmp::Ordering::Equal => BigUint::zero(),
        }
    }

    /// Number of chains whose rank set is exactly `ranks` (1 for the empty set).
    pub fn chains_with_ranks(&self, ranks: &[usize]) -> ChainCount {
        let Some(&first) = ranks.first() else {
            return BigUint::one();
        };
        ranks
            .windows(2)
            .fold(self.levels[first].clone(), |acc, w| acc * &self.up[w[0]][w[1]])
    }

    fn check_ranks(&self, ranks: &RankSet) -> Result<()> {
        match ranks.max() {
            Some(r) if r > self.n() => Err(Error::RankOutOfRange { rank: r, n: self.n() }),
            _ => Ok(()),
        }
    }

    /// `c_k'(I, J)` by the product formula:
    /// `sum over J' ⊆ J, |J'| = k - |I|` of `N(I ∪ J') / N(I)`.
    pub fn ck_prime(&self, base: &RankSet, extra: &RankSet, k: usize) -> Result<ChainCount> {
        self.check_ranks(base)?;
        if base.len() > k {
            return Err(Error::InvalidArgument(format!(
                "rank set {base} cannot lie in a {k}-chain"
            )));
        }
        if !base.is_disjoint(extra) {
            return Err(Error::InvalidArgument(format!("{base} meets {extra}")));
        }
        let usable: RankSet = extra.iter().filter(|&r| r <= self.n()).collect();
        let denom = self.chains_with_ranks(base.as_slice());
        let numer: BigUint = usable
            .subsets(k - base.len())
            .map(|sub| self.chains_with_ranks(base.union(&sub).as_slice()))
            .sum();
        let (q, r) = numer.div_rem(&denom);
        if !r.is_zero() {
            return Err(Error::Invariant(format!(
                "chain counts through {base} are not uniform; the profile is not homogeneous"
            )));
        }
        Ok(q)
    }

    /// `c_k` of the union of the rank levels in `ranks`.
    pub fn ck_of_levels(&self, ranks: &RankSet, k: usize) -> ChainCount {
        if k == 0 {
            return BigUint::one();
        }
        ranks
            .iter()
            .filter(|&r| r <= self.n())
            .collect::<RankSet>()
            .subsets(k)
            .map(|sub| self.chains_with_ranks(sub.as_slice()))
            .sum()
    }

    /// `|P_i| = |P_{n-i}|` for every `i`.
    pub fn is_palindromic(&self) -> bool {
        let n = self.n();
        (0..=n).all(|i| self.levels[i] == self.levels[n - i])
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattices::boolean_lattice;

    #[test]
    fn boolean_profile_from_poset() {
        let b4 = boolean_lattice(4).unwrap();
        let p = RankProfile::from_poset(&b4);
        assert_eq!(p.n(), 4);
        assert_eq!(p.c2_prime(1, 3), BigUint::from(3u32));
        assert_eq!(p.c2_prime(3, 1), BigUint::from(3u32));
        assert_eq!(p.c2_prime(2, 0), BigUint::one());
        assert_eq!(p.chains_with_ranks(&[0, 2, 4]), BigUint::from(6u32));
        assert_eq!(p.total(), BigUint::from(16u32));
        assert!(p.is_palindromic());
    }

    #[test]
    fn ck_prime_product_examples() {
        let p = RankProfile::from_poset(&boolean_lattice(3).unwrap());
        let c = p
            .ck_prime(&RankSet::new([0]), &RankSet::new([1, 2]), 3)
            .unwrap();
        assert_eq!(c, BigUint::from(6u32));
        assert_eq!(
            p.ck_of_levels(&RankSet::interval(0, 3), 3),
            BigUint::from(18u32)
        );
        assert_eq!(
            p.ck_of_levels(&RankSet::new([1, 2]), 2),
            BigUint::from(6u32)
        );
        assert!(p.ck_prime(&RankSet::new([4]), &RankSet::empty(), 1).is_err());
        assert!(p
            .ck_prime(&RankSet::new([1]), &RankSet::new([1, 2]), 2)
            .is_err());
    }

    #[test]
    fn rejects_inconsistent_levels() {
        let levels = vec![BigUint::from(1u32), BigUint::from(2u32)];
        assert!(RankProfile::new(levels.clone(), |_, _| BigUint::zero()).is_err());
        assert!(RankProfile::new(levels, |_, _| BigUint::one()).is_err());
    }
}
