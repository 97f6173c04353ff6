use std::cmp::Ordering;

use itertools::Itertools;
use num_bigint::BigUint;
use num_traits::{One, Pow, Zero};

use super::field::{prime_power_decomposition, GaloisField};
use crate::error::{Error, Result};
use crate::poset::{ChainCount, ElementId, GradedPoset, RankProfile};

/// Upper bound on `q^n` for exhaustive enumeration.
pub const MAX_VECTORS: u64 = 1 << 14;
/// Upper bound on the number of subspaces materialised.
pub const MAX_SUBSPACE_ELEMENTS: u64 = 4096;

/// `[m, r]_q`, the number of `r`-dimensional subspaces of `F_q^m`.
pub fn gaussian_binomial(m: usize, r: usize, q: u64) -> BigUint {
    if r > m {
        return BigUint::zero();
    }
    let q = BigUint::from(q);
    let pow = |e: usize| -> BigUint { Pow::pow(&q, e) };
    let (num, den) = (0..r).fold((BigUint::one(), BigUint::one()), |(num, den), l| {
        (num * (pow(m) - pow(l)), den * (pow(r) - pow(l)))
    });
    num / den
}

fn check_order(q: u64) -> Result<()> {
    let ok = u32::try_from(q).ok().and_then(prime_power_decomposition).is_some();
    if ok {
        Ok(())
    } else {
        Err(Error::InvalidArgument(format!("{q} is not a prime power")))
    }
}

/// Closed-form profile: `|P_i| = [n, i]_q` and `c_2'(i, j) = [n-i, j-i]_q`.
pub fn subspace_profile(q: u64, n: usize) -> Result<RankProfile> {
    check_order(q)?;
    let levels = (0..=n).map(|i| gaussian_binomial(n, i, q)).collect();
    RankProfile::new(levels, |i, j| gaussian_binomial(n - i, j - i, q))
}

/// Number of `j`-dimensional subspaces containing a fixed `i`-dimensional one.
pub fn subspace_c2_prime(q: u64, n: usize, i: usize, j: usize) -> Result<ChainCount> {
    check_order(q)?;
    if i >= j || j > n {
        return Err(Error::InvalidArgument(format!(
            "need 0 <= i < j <= n, got i={i}, j={j}, n={n}"
        )));
    }
    Ok(gaussian_binomial(n - i, j - i, q))
}

/// A subspace of `F_q^n`, stored as its reduced row echelon basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Subspace {
    rows: Vec<Vec<u32>>,
}

impl Subspace {
    pub fn dimension(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[Vec<u32>] {
        &self.rows
    }

    fn pivot(row: &[u32]) -> usize {
        row.iter().position(|&c| c != 0).expect("RREF rows are nonzero")
    }

    /// Membership of `v` by elimination against the pivots.
    pub fn contains_vector(&self, field: &GaloisField, v: &[u32]) -> bool {
        let mut v = v.to_vec();
        for row in &self.rows {
            let c = v[Self::pivot(row)];
            if c != 0 {
                for (x, &r) in v.iter_mut().zip(row) {
                    *x = field.sub(*x, field.mul(c, r));
                }
            }
        }
        v.iter().all(|&x| x == 0)
    }

    pub fn is_subspace_of(&self, field: &GaloisField, other: &Subspace) -> bool {
        self.rows.iter().all(|r| other.contains_vector(field, r))
    }

    fn label(&self, q: u32) -> String {
        let sep = if q <= 10 { "" } else { "." };
        let rows = self.rows.iter().map(|r| r.iter().join(sep)).join(",");
        format!("<{rows}>")
    }
}

/// All subspaces of `F_q^n` ordered by inclusion.
///
/// Elements are indexed by dimension, then lexicographically by RREF rows.
#[derive(Clone, Debug)]
pub struct SubspaceLattice {
    field: GaloisField,
    n: usize,
    subspaces: Vec<Subspace>,
    poset: GradedPoset,
}

impl SubspaceLattice {
    pub fn field(&self) -> &GaloisField {
        &self.field
    }

    pub fn dimension(&self) -> usize {
        self.n
    }

    pub fn subspaces(&self) -> &[Subspace] {
        &self.subspaces
    }

    pub fn subspace(&self, x: ElementId) -> &Subspace {
        &self.subspaces[x.0]
    }

    pub fn poset(&self) -> &GradedPoset {
        &self.poset
    }

    pub fn into_poset(self) -> GradedPoset {
        self.poset
    }
}

/// Enumerates every RREF matrix over `F_q` with `n` columns.
pub fn enumerate_subspaces(q: u32, n: usize) -> Result<SubspaceLattice> {
    let field = GaloisField::new(q)?;
    let vectors = (q as u64).checked_pow(n as u32).unwrap_or(u64::MAX);
    if vectors > MAX_VECTORS {
        return Err(Error::ResourceGuard(format!(
            "q^n = {q}^{n} exceeds {MAX_VECTORS}"
        )));
    }
    let count: BigUint = (0..=n).map(|i| gaussian_binomial(n, i, q as u64)).sum();
    if count > BigUint::from(MAX_SUBSPACE_ELEMENTS) {
        return Err(Error::ResourceGuard(format!(
            "{count} subspaces exceed the limit of {MAX_SUBSPACE_ELEMENTS}"
        )));
    }

    let mut subspaces = Vec::new();
    for dim in 0..=n {
        for pivots in (0..n).combinations(dim) {
            let free: Vec<(usize, usize)> = pivots
                .iter()
                .enumerate()
                .flat_map(|(row, &p)| {
                    (p + 1..n)
                        .filter(|c| !pivots.contains(c))
                        .map(move |c| (row, c))
                })
                .collect();
            let assignments = (q as u64).pow(free.len() as u32);
            for mut code in 0..assignments {
                let mut rows = vec![vec![0u32; n]; dim];
                for (row, &p) in pivots.iter().enumerate() {
                    rows[row][p] = 1;
                }
                for &(row, col) in &free {
                    rows[row][col] = (code % q as u64) as u32;
                    code /= q as u64;
                }
                subspaces.push(Subspace { rows });
            }
        }
    }
    subspaces.sort_by(|a, b| match a.dimension().cmp(&b.dimension()) {
        Ordering::Equal => a.rows.cmp(&b.rows),
        other => other,
    });

    let rank = subspaces.iter().map(Subspace::dimension).collect();
    let labels = subspaces.iter().map(|s| s.label(q)).collect();
    let less = |x: ElementId, y: ElementId| {
        let (a, b) = (&subspaces[x.0], &subspaces[y.0]);
        a.dimension() < b.dimension() && a.is_subspace_of(&field, b)
    };
    let poset = GradedPoset::from_relation_unchecked(rank, less, Some(labels))?;
    Ok(SubspaceLattice {
        field,
        n,
        subspaces,
        poset,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poset::RankSet;
    use std::collections::HashSet;

    #[test]
    fn gaussian_binomial_examples() {
        assert_eq!(gaussian_binomial(2, 1, 2), BigUint::from(3u32));
        assert_eq!(gaussian_binomial(7, 0, 5), BigUint::one());
        assert_eq!(gaussian_binomial(4, 2, 2), BigUint::from(35u32));
        assert_eq!(gaussian_binomial(3, 1, 2), BigUint::from(7u32));
        assert_eq!(gaussian_binomial(2, 3, 2), BigUint::zero());
    }

    #[test]
    fn c2_prime_examples() {
        assert_eq!(subspace_c2_prime(2, 3, 1, 2).unwrap(), BigUint::from(3u32));
        assert_eq!(subspace_c2_prime(2, 3, 0, 3).unwrap(), BigUint::one());
        assert_eq!(subspace_c2_prime(3, 2, 0, 1).unwrap(), BigUint::from(4u32));
        assert!(subspace_c2_prime(2, 3, 2, 1).is_err());
        assert!(subspace_c2_prime(6, 3, 0, 1).is_err());
    }

    #[test]
    fn enumeration_level_sizes() {
        let l = enumerate_subspaces(2, 2).unwrap();
        assert_eq!(l.poset().len(), 5);
        assert_eq!(l.poset().level_sizes(), [1u32, 3, 1].map(BigUint::from));
        let l = enumerate_subspaces(2, 3).unwrap();
        assert_eq!(l.poset().len(), 16);
        assert_eq!(l.poset().level_sizes(), [1u32, 7, 7, 1].map(BigUint::from));
        let l = enumerate_subspaces(5, 0).unwrap();
        assert_eq!(l.poset().len(), 1);
    }

    #[test]
    fn enumeration_matches_closed_form() {
        for (q, n) in [(2u32, 1usize), (2, 2), (2, 3), (2, 4), (3, 2), (3, 3), (4, 2), (5, 2)] {
            let l = enumerate_subspaces(q, n).unwrap();
            l.poset().validate().unwrap();
            let distinct: HashSet<&Subspace> = l.subspaces().iter().collect();
            assert_eq!(distinct.len(), l.subspaces().len());
            let profile = subspace_profile(q as u64, n).unwrap();
            assert_eq!(profile, RankProfile::from_poset(l.poset()), "q={q} n={n}");
            for i in 0..=n {
                for j in i + 1..=n {
                    let counted = l
                        .poset()
                        .ck_prime_ranks(&RankSet::new([i]), &RankSet::new([j]), 2)
                        .unwrap();
                    assert_eq!(counted, subspace_c2_prime(q as u64, n, i, j).unwrap());
                }
            }
        }
    }

    #[test]
    fn strict_descent_on_grid() {
        for q in [2u64, 3, 4, 5, 7] {
            for n in 1..=7 {
                for i in 1..=n {
                    for j in i + 1..=n {
                        assert!(
                            subspace_c2_prime(q, n, i, j).unwrap()
                                < subspace_c2_prime(q, n, i - 1, j - 1).unwrap()
                        );
                    }
                }
                assert!(subspace_profile(q, n).unwrap().is_palindromic());
            }
        }
    }

    #[test]
    fn resource_guard() {
        assert!(matches!(enumerate_subspaces(2, 15), Err(Error::ResourceGuard(_))));
        assert!(matches!(enumerate_subspaces(2, 7), Err(Error::ResourceGuard(_))));
        assert!(enumerate_subspaces(6, 2).is_err());
    }

    #[test]
    fn labels_are_rref_rows() {
        let l = enumerate_subspaces(2, 2).unwrap();
        let labels: Vec<&str> = l.poset().elements().map(|x| l.poset().label(x)).collect();
        assert_eq!(labels, ["<>", "<01>", "<10>", "<11>", "<10,01>"]);
    }
}
