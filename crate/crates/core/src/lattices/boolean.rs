use itertools::Itertools;
use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::poset::{ChainCount, ElementId, GradedPoset, RankProfile};

/// Largest `n` for which the boolean lattice is materialised (4096 elements).
pub const MAX_BOOLEAN_N: usize = 12;

pub fn binomial(n: usize, k: usize) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    (0..k).fold(BigUint::one(), |acc, i| acc * (n - i) / (i + 1))
}

/// Subsets of `{1..n}` ordered by inclusion. Element `#m` is the subset with
/// bit mask `m`; its rank is the popcount.
pub fn boolean_lattice(n: usize) -> Result<GradedPoset> {
    if n > MAX_BOOLEAN_N {
        return Err(Error::ResourceGuard(format!(
            "boolean lattice is materialised only for n <= {MAX_BOOLEAN_N}"
        )));
    }
    let len = 1usize << n;
    let rank = (0..len).map(|m| m.count_ones() as usize).collect();
    let labels = (0..len)
        .map(|m| {
            let items = (0..n).filter(|b| m >> b & 1 == 1).map(|b| b + 1).join(",");
            format!("{{{items}}}")
        })
        .collect();
    let less = |x: ElementId, y: ElementId| x.0 != y.0 && x.0 & y.0 == x.0;
    GradedPoset::from_relation_unchecked(rank, less, Some(labels))
}

/// Closed-form profile: `|P_i| = C(n, i)`, `c_2'(i, j) = C(n-i, j-i)`.
pub fn boolean_profile(n: usize) -> RankProfile {
    let levels = (0..=n).map(|i| binomial(n, i)).collect();
    RankProfile::new(levels, |i, j| binomial(n - i, j - i)).expect("boolean profile is consistent")
}

/// `c_2'(i, j) = C(n-i, j-i)` for `0 <= i < j <= n`.
pub fn boolean_c2_prime(n: usize, i: usize, j: usize) -> Result<ChainCount> {
    if i >= j || j > n {
        return Err(Error::InvalidArgument(format!(
            "need 0 <= i < j <= n, got i={i}, j={j}, n={n}"
        )));
    }
    Ok(binomial(n - i, j - i))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poset::RankSet;

    #[test]
    fn c2_prime_examples() {
        assert_eq!(boolean_c2_prime(4, 1, 2).unwrap(), BigUint::from(3u32));
        assert!(boolean_c2_prime(4, 2, 2).is_err());
        assert!(boolean_c2_prime(4, 2, 5).is_err());
        assert_eq!(boolean_c2_prime(5, 2, 5).unwrap(), BigUint::one());
    }

    #[test]
    fn closed_form_matches_enumeration() {
        for n in 0..=6 {
            let poset = boolean_lattice(n).unwrap();
            poset.validate().unwrap();
            let profile = boolean_profile(n);
            assert_eq!(profile, RankProfile::from_poset(&poset));
            for i in 0..=n {
                for j in i + 1..=n {
                    let counted = poset
                        .ck_prime_ranks(&RankSet::new([i]), &RankSet::new([j]), 2)
                        .unwrap();
                    assert_eq!(counted, boolean_c2_prime(n, i, j).unwrap());
                }
            }
        }
    }

    #[test]
    fn strictly_descending_up_to_twelve() {
        for n in 1..=12 {
            for i in 1..=n {
                for j in i + 1..=n {
                    let here = boolean_c2_prime(n, i, j).unwrap();
                    let shifted = boolean_c2_prime(n, i - 1, j - 1).unwrap();
                    assert!(here < shifted, "n={n} i={i} j={j}");
                }
            }
        }
    }

    #[test]
    fn labels_and_guard() {
        let b3 = boolean_lattice(3).unwrap();
        assert_eq!(b3.label(ElementId(0b101)), "{1,3}");
        assert_eq!(b3.label(ElementId(0)), "{}");
        assert!(boolean_lattice(MAX_BOOLEAN_N + 1).is_err());
    }
}
