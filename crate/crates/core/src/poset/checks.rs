//! Falsification checks for the structural properties the chain-minimisation
//! results rely on: symmetry, descent and the observable consequence of
//! homogeneity (chain counts through a chain depend only on its ranks).

use num_bigint::BigUint;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::{Chain, ChainCount, ElementId, GradedPoset, RankSet};
use crate::error::Result;

/// Random sub-sampling of an otherwise exhaustive check.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Sampling {
    pub samples: usize,
    pub seed: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum SymmetryWitness {
    Levels {
        rank: usize,
        #[serde(serialize_with = "crate::report::ser_biguint")]
        size: ChainCount,
        #[serde(serialize_with = "crate::report::ser_biguint")]
        mirror_size: ChainCount,
    },
    Counts {
        base: RankSet,
        extra: RankSet,
        k: usize,
        #[serde(serialize_with = "crate::report::ser_biguint")]
        count: ChainCount,
        #[serde(serialize_with = "crate::report::ser_biguint")]
        mirrored: ChainCount,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SymmetryReport {
    pub passed: bool,
    pub pairs_checked: usize,
    pub witness: Option<SymmetryWitness>,
}

/// Checks `|P_i| = |P_{n-i}|` and `c_j'(I, J) = c_j'(n-I, n-J)` for all
/// `j <= k` and disjoint `I, J` (or a random sample of such pairs).
pub fn check_symmetry(poset: &GradedPoset, k: usize, sampling: Option<Sampling>) -> Result<SymmetryReport> {
    let n = poset.n();
    let sizes = poset.level_sizes();
    for i in 0..=n {
        if sizes[i] != sizes[n - i] {
            return Ok(SymmetryReport {
                passed: false,
                pairs_checked: 0,
                witness: Some(SymmetryWitness::Levels {
                    rank: i,
                    size: sizes[i].clone(),
                    mirror_size: sizes[n - i].clone(),
                }),
            });
        }
    }

    let pairs = rank_set_pairs(n, k, sampling);
    for (idx, (base, extra, kk)) in pairs.iter().enumerate() {
        let count = poset.ck_prime_ranks(base, extra, *kk)?;
        let mirrored = poset.ck_prime_ranks(&base.reflect(n), &extra.reflect(n), *kk)?;
        if count != mirrored {
            return Ok(SymmetryReport {
                passed: false,
                pairs_checked: idx + 1,
                witness: Some(SymmetryWitness::Counts {
                    base: base.clone(),
                    extra: extra.clone(),
                    k: *kk,
                    count,
                    mirrored,
                }),
            });
        }
    }
    Ok(SymmetryReport {
        passed: true,
        pairs_checked: pairs.len(),
        witness: None,
    })
}

/// `(I, J, k)` triples with `1 <= k <= k_max`, `|I| <= k` and `I ∩ J = ∅`.
fn rank_set_pairs(n: usize, k_max: usize, sampling: Option<Sampling>) -> Vec<(RankSet, RankSet, usize)> {
    let all = RankSet::interval(0, n);
    let mut out = Vec::new();
    for k in 1..=k_max {
        for size in 0..=k.min(n + 1) {
            for base in all.subsets(size) {
                let rest = all.difference(&base);
                for extra_size in 0..=rest.len() {
                    for extra in rest.subsets(extra_size) {
                        out.push((base.clone(), extra, k));
                    }
                }
            }
        }
    }
    if let Some(s) = sampling {
        if out.len() > s.samples {
            let mut rng = ChaCha8Rng::seed_from_u64(s.seed);
            out.shuffle(&mut rng);
            out.truncate(s.samples);
        }
    }
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum DescentClass {
    StrictlyDescending,
    Descending,
    Neither,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DescentViolation {
    pub i: usize,
    pub j: usize,
    #[serde(serialize_with = "crate::report::ser_biguint")]
    pub count: ChainCount,
    #[serde(serialize_with = "crate::report::ser_biguint")]
    pub shifted: ChainCount,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DescentReport {
    pub class: DescentClass,
    /// Pairs with `c_2'(i, j) = c_2'(i-1, j-1)`.
    pub tight: Vec<(usize, usize)>,
    /// Pairs with `c_2'(i, j) > c_2'(i-1, j-1)`.
    pub violations: Vec<DescentViolation>,
}

/// Compares `c_2'(i, j)` with `c_2'(i-1, j-1)` for all `0 < i < j <= n`.
pub fn check_descending(poset: &GradedPoset) -> Result<DescentReport> {
    let n = poset.n();
    let c2 = |i: usize, j: usize| poset.ck_prime_ranks(&RankSet::new([i]), &RankSet::new([j]), 2);
    let mut tight = Vec::new();
    let mut violations = Vec::new();
    for i in 1..=n {
        for j in i + 1..=n {
            let count = c2(i, j)?;
            let shifted = c2(i - 1, j - 1)?;
            match count.cmp(&shifted) {
                std::cmp::Ordering::Less => {}
                std::cmp::Ordering::Equal => tight.push((i, j)),
                std::cmp::Ordering::Greater => violations.push(DescentViolation { i, j, count, shifted }),
            }
        }
    }
    let class = if !violations.is_empty() {
        DescentClass::Neither
    } else if !tight.is_empty() {
        DescentClass::Descending
    } else {
        DescentClass::StrictlyDescending
    };
    Ok(DescentReport {
        class,
        tight,
        violations,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HomogeneityWitness {
    pub base: RankSet,
    pub extra: RankSet,
    pub k: usize,
    pub first: Vec<ElementId>,
    pub second: Vec<ElementId>,
    #[serde(serialize_with = "crate::report::ser_biguint")]
    pub first_count: ChainCount,
    #[serde(serialize_with = "crate::report::ser_biguint")]
    pub second_count: ChainCount,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HomogeneityReport {
    pub passed: bool,
    pub rank_sets_checked: usize,
    pub chains_checked: usize,
    pub witness: Option<HomogeneityWitness>,
}

/// For every nonempty rank set `I` with `|I| <= k_max`, compares the chain
/// counts `c_k'(L, J)` over all chains `L` with `r(L) = I`. With `sampling`,
/// at most `samples` chains per rank set are compared.
///
/// Comparing the counts of extensions with rank set exactly `J'` for every
/// `J'` is equivalent to comparing `c_k'(L, J)` for every `J`.
pub fn check_homogeneity_consequence(
    poset: &GradedPoset,
    k_max: usize,
    sampling: Option<Sampling>,
) -> Result<HomogeneityReport> {
    let n = poset.n();
    let all = RankSet::interval(0, n);
    let mut rng = sampling.map(|s| ChaCha8Rng::seed_from_u64(s.seed));
    let mut rank_sets_checked = 0;
    let mut chains_checked = 0;
    for size in 1..=k_max.min(n + 1) {
        for base in all.subsets(size) {
            rank_sets_checked += 1;
            let mut chains = poset.chains_with_ranks(&base);
            if let (Some(s), Some(rng)) = (sampling, rng.as_mut()) {
                if chains.len() > s.samples {
                    chains.shuffle(rng);
                    chains.truncate(s.samples.max(2));
                }
            }
            let rest = all.difference(&base);
            let extras: Vec<RankSet> = (0..=(k_max - size).min(rest.len()))
                .flat_map(|m| rest.subsets(m).collect::<Vec<_>>())
                .collect();
            let signature = |chain: &Chain| -> Vec<BigUint> {
                extras
                    .iter()
                    .map(|e| poset.count_exact_extensions(chain, e))
                    .collect()
            };
            let Some((first, others)) = chains.split_first() else {
                continue;
            };
            let reference = signature(first);
            chains_checked += 1;
            for other in others {
                chains_checked += 1;
                let sig = signature(other);
                if let Some(pos) = (0..extras.len()).find(|&p| sig[p] != reference[p]) {
                    return Ok(HomogeneityReport {
                        passed: false,
                        rank_sets_checked,
                        chains_checked,
                        witness: Some(HomogeneityWitness {
                            base: base.clone(),
                            extra: extras[pos].clone(),
                            k: size + extras[pos].len(),
                            first: first.elements().to_vec(),
                            second: other.elements().to_vec(),
                            first_count: reference[pos].clone(),
                            second_count: sig[pos].clone(),
                        }),
                    });
                }
            }
        }
    }
    Ok(HomogeneityReport {
        passed: true,
        rank_sets_checked,
        chains_checked,
        witness: None,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IdentityCheck {
    #[serde(serialize_with = "crate::report::ser_biguint")]
    pub lhs: ChainCount,
    #[serde(serialize_with = "crate::report::ser_biguint")]
    pub rhs: ChainCount,
    pub holds: bool,
}

/// `c_k(∪_{i∈I} P_i)` against the sum of `c_k'(∅, S)` over `k`-subsets `S ⊆ I`,
/// both counted on the concrete order.
pub fn decomposition_identity_check(poset: &GradedPoset, ranks: &RankSet, k: usize) -> Result<IdentityCheck> {
    let lhs = super::Family::from_levels(poset, ranks).count_chains(k);
    let usable: RankSet = ranks.iter().filter(|&r| r <= poset.n()).collect();
    let empty = poset.chain_from([])?;
    let rhs: BigUint = usable
        .subsets(k)
        .map(|s| poset.ck_prime_chain(&empty, &s, k))
        .sum::<Result<BigUint>>()?;
    Ok(IdentityCheck {
        holds: lhs == rhs,
        lhs,
        rhs,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DoubleCountingCheck {
    /// `|P_i| * c_2'(i, j)`
    #[serde(serialize_with = "crate::report::ser_biguint")]
    pub from_i: ChainCount,
    /// `c_2'(∅, {i, j})`
    #[serde(serialize_with = "crate::report::ser_biguint")]
    pub pairs: ChainCount,
    /// `|P_j| * c_2'(j, i)`
    #[serde(serialize_with = "crate::report::ser_biguint")]
    pub from_j: ChainCount,
    pub holds: bool,
}

/// Counts comparable pairs between levels `i` and `j` three ways.
pub fn double_counting_check(poset: &GradedPoset, i: usize, j: usize) -> Result<DoubleCountingCheck> {
    if i == j {
        return Err(crate::Error::InvalidArgument("double counting needs i != j".into()));
    }
    let sizes = poset.level_sizes();
    for r in [i, j] {
        if r > poset.n() {
            return Err(crate::Error::RankOutOfRange { rank: r, n: poset.n() });
        }
    }
    let from_i = &sizes[i] * poset.ck_prime_ranks(&RankSet::new([i]), &RankSet::new([j]), 2)?;
    let from_j = &sizes[j] * poset.ck_prime_ranks(&RankSet::new([j]), &RankSet::new([i]), 2)?;
    let pairs = poset.ck_prime_ranks(&RankSet::empty(), &RankSet::new([i, j]), 2)?;
    Ok(DoubleCountingCheck {
        holds: from_i == pairs && pairs == from_j,
        from_i,
        pairs,
        from_j,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattices::{boolean_lattice, enumerate_subspaces};

    fn v_poset() -> GradedPoset {
        GradedPoset::new(vec![0, 1, 1], |x, y| x.0 == 0 && y.0 != 0, None).unwrap()
    }

    #[test]
    fn symmetry_of_lattices() {
        assert!(check_symmetry(&boolean_lattice(3).unwrap(), 4, None).unwrap().passed);
        let v23 = enumerate_subspaces(2, 3).unwrap();
        assert!(check_symmetry(v23.poset(), 4, None).unwrap().passed);
    }

    #[test]
    fn symmetry_fails_on_v_poset() {
        let report = check_symmetry(&v_poset(), 2, None).unwrap();
        assert!(!report.passed);
        assert!(matches!(
            report.witness,
            Some(SymmetryWitness::Levels { rank: 0, .. })
        ));
    }

    #[test]
    fn descent_classes() {
        let b4 = check_descending(&boolean_lattice(4).unwrap()).unwrap();
        assert_eq!(b4.class, DescentClass::StrictlyDescending);
        let v23 = enumerate_subspaces(2, 3).unwrap();
        assert_eq!(
            check_descending(v23.poset()).unwrap().class,
            DescentClass::StrictlyDescending
        );
        let chain = check_descending(&GradedPoset::chain(2)).unwrap();
        assert_eq!(chain.class, DescentClass::Descending);
        assert_eq!(chain.tight, vec![(1, 2)]);
        // a single rank: vacuously strict
        assert_eq!(
            check_descending(&boolean_lattice(0).unwrap()).unwrap().class,
            DescentClass::StrictlyDescending
        );
    }

    #[test]
    fn homogeneity_consequence() {
        let b3 = boolean_lattice(3).unwrap();
        assert!(check_homogeneity_consequence(&b3, 4, None).unwrap().passed);
        let v22 = enumerate_subspaces(2, 2).unwrap();
        assert!(check_homogeneity_consequence(v22.poset(), 3, None).unwrap().passed);

        // B_3 without the singleton {1} (mask 0b001).
        let keep: Vec<usize> = (0..8usize).filter(|&m| m != 0b001).collect();
        let rank = keep.iter().map(|m| m.count_ones() as usize).collect();
        let less = |x: ElementId, y: ElementId| {
            let (a, b) = (keep[x.0], keep[y.0]);
            a != b && a & b == a
        };
        let damaged = GradedPoset::new(rank, less, None).unwrap();
        let report = check_homogeneity_consequence(&damaged, 4, None).unwrap();
        assert!(!report.passed);
        let w = report.witness.unwrap();
        assert_ne!(w.first_count, w.second_count);
    }

    #[test]
    fn decomposition_identity_examples() {
        let b3 = boolean_lattice(3).unwrap();
        let full = decomposition_identity_check(&b3, &RankSet::interval(0, 3), 3).unwrap();
        assert!(full.holds);
        assert_eq!(full.lhs, BigUint::from(18u32));
        let small = decomposition_identity_check(&b3, &RankSet::new([1]), 2).unwrap();
        assert!(small.holds);
        assert_eq!(small.lhs, BigUint::from(0u32));
        let mid = decomposition_identity_check(&b3, &RankSet::new([1, 2]), 2).unwrap();
        assert!(mid.holds);
        assert_eq!(mid.rhs, BigUint::from(6u32));
    }

    #[test]
    fn double_counting_examples() {
        let b4 = boolean_lattice(4).unwrap();
        let c = double_counting_check(&b4, 1, 3).unwrap();
        assert!(c.holds);
        assert_eq!(c.pairs, BigUint::from(12u32));
        let chain = double_counting_check(&GradedPoset::chain(1), 0, 1).unwrap();
        assert!(chain.holds);
        assert_eq!(chain.pairs, BigUint::from(1u32));
        let v23 = enumerate_subspaces(2, 3).unwrap();
        let c = double_counting_check(v23.poset(), 1, 2).unwrap();
        assert!(c.holds);
        assert_eq!(c.pairs, BigUint::from(21u32));
        assert!(double_counting_check(&b4, 2, 2).is_err());
    }
}
