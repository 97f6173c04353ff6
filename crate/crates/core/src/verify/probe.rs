use num_bigint::BigUint;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::exhaustive::Counterexample;
use super::mask::{MaskPoset, MAX_MASK_K};
use crate::centred::MkCurve;
use crate::error::{Error, Result};
use crate::poset::{ChainCount, ElementId, GradedPoset, RankProfile};

/// Steps between full recounts of the running chain count.
pub const AUDIT_INTERVAL: u64 = 1 << 10;

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Strategy {
    /// Accept non-worsening swaps; restart from a fresh random family after
    /// `patience` steps without a new best.
    HillClimb { patience: u64 },
    /// Metropolis acceptance with geometric cooling from `t0`.
    Annealing { t0: f64, cooling: f64 },
}

impl Default for Strategy {
    fn default() -> Self {
        Strategy::HillClimb { patience: 2000 }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SearchProbe {
    pub strategy: Strategy,
    pub k: usize,
    pub a: usize,
    pub budget: u64,
    pub seed: u64,
    pub restarts: u64,
    pub audits: u64,
    #[serde(serialize_with = "crate::report::ser_biguint")]
    pub best_ck: ChainCount,
    pub best_members: Vec<ElementId>,
    #[serde(serialize_with = "crate::report::ser_biguint")]
    pub mk: ChainCount,
    /// Set only if a family below `m_k(a)` survives an exact recount.
    pub counterexample: Option<Counterexample>,
}

impl SearchProbe {
    pub fn reached_bound(&self) -> bool {
        self.best_ck == self.mk
    }
}

fn random_family(rng: &mut ChaCha8Rng, len: usize, a: usize) -> u64 {
    let mut bits: Vec<usize> = (0..len).collect();
    bits.shuffle(rng);
    bits[..a].iter().fold(0, |m, &b| m | 1 << b)
}

fn pick_bit(rng: &mut ChaCha8Rng, mask: u64) -> usize {
    let mut idx = rng.gen_range(0..mask.count_ones());
    let mut m = mask;
    loop {
        let b = m.trailing_zeros();
        if idx == 0 {
            return b as usize;
        }
        idx -= 1;
        m &= m - 1;
    }
}

/// Local search over `a`-element families by single swaps. The running count
/// is updated by the chains through the swapped elements and recounted in
/// full every [`AUDIT_INTERVAL`] steps.
pub fn probe_minimize(
    poset: &GradedPoset,
    k: usize,
    a: usize,
    strategy: Strategy,
    budget: u64,
    seed: u64,
) -> Result<SearchProbe> {
    let mp = MaskPoset::new(poset)?;
    let len = mp.len();
    if a > len {
        return Err(Error::InvalidArgument(format!("a = {a} exceeds |P| = {len}")));
    }
    if k == 0 || k >= MAX_MASK_K {
        return Err(Error::InvalidArgument(format!("k must lie in 1..{MAX_MASK_K}")));
    }
    let mk = MkCurve::new(&RankProfile::from_poset(poset), k)?.eval(&BigUint::from(a))?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let full = mp.full_mask();

    let mut current = random_family(&mut rng, len, a);
    let mut count = mp.count_chains(current, k);
    let (mut best, mut best_count) = (current, count);
    let (mut restarts, mut audits, mut stale) = (0u64, 0u64, 0u64);
    let mut temperature = match strategy {
        Strategy::Annealing { t0, .. } => t0,
        Strategy::HillClimb { .. } => 0.0,
    };
    let swappable = a > 0 && a < len;

    for step in 1..=budget {
        if swappable {
            let out = pick_bit(&mut rng, current);
            let inn = pick_bit(&mut rng, full & !current);
            let without = current & !(1 << out);
            let removed = mp.chains_through(out, without, k);
            let added = mp.chains_through(inn, without, k);
            let proposed = count - removed + added;
            let accept = match strategy {
                Strategy::HillClimb { .. } => proposed <= count,
                Strategy::Annealing { .. } => {
                    proposed <= count
                        || rng.gen::<f64>() < (-((proposed - count) as f64) / temperature.max(1e-12)).exp()
                }
            };
            if accept {
                current = without | 1 << inn;
                count = proposed;
            }
            if count < best_count {
                (best, best_count) = (current, count);
                stale = 0;
            } else {
                stale += 1;
            }
        }
        match strategy {
            Strategy::HillClimb { patience } if swappable && stale >= patience => {
                current = random_family(&mut rng, len, a);
                count = mp.count_chains(current, k);
                restarts += 1;
                stale = 0;
            }
            Strategy::Annealing { cooling, .. } => temperature *= cooling,
            _ => {}
        }
        if step % AUDIT_INTERVAL == 0 {
            audits += 1;
            let recount = mp.count_chains(current, k);
            if recount != count {
                return Err(Error::Invariant(format!(
                    "running count {count} drifted from recount {recount} at step {step}"
                )));
            }
        }
    }

    let exact = mp.count_chains_exact(best, k);
    if exact != BigUint::from(best_count) {
        return Err(Error::Invariant(format!("best count {best_count} fails exact recount {exact}")));
    }
    let counterexample = (exact < mk).then(|| Counterexample {
        poset: None,
        k,
        members: mp.members(best),
        ck: exact.clone(),
        mk: mk.clone(),
        seed: Some(seed),
        reason: "family with fewer than m_k(a) chains".into(),
    });
    Ok(SearchProbe {
        strategy,
        k,
        a,
        budget,
        seed,
        restarts,
        audits,
        best_ck: exact,
        best_members: mp.members(best),
        mk,
        counterexample,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattices::boolean_lattice;
    use crate::poset::Family;

    #[test]
    fn zero_budget_reports_initial_family() {
        let b4 = boolean_lattice(4).unwrap();
        let p = probe_minimize(&b4, 2, 7, Strategy::default(), 0, 5).unwrap();
        let fam = Family::new(&b4, p.best_members.iter().copied()).unwrap();
        assert_eq!(fam.len(), 7);
        assert_eq!(fam.count_chains(2), p.best_ck);
        assert!(p.counterexample.is_none());
    }

    #[test]
    fn hill_climb_finds_the_bound_on_b4() {
        let b4 = boolean_lattice(4).unwrap();
        for a in [5, 8, 11, 14] {
            let p = probe_minimize(&b4, 2, a, Strategy::default(), 20_000, a as u64).unwrap();
            assert!(p.reached_bound(), "a={a}: {} vs {}", p.best_ck, p.mk);
            assert!(p.audits > 0);
        }
    }

    #[test]
    fn annealing_is_deterministic() {
        let b5 = boolean_lattice(5).unwrap();
        let s = Strategy::Annealing { t0: 4.0, cooling: 0.999 };
        let x = probe_minimize(&b5, 3, 20, s, 5000, 1).unwrap();
        let y = probe_minimize(&b5, 3, 20, s, 5000, 1).unwrap();
        assert_eq!(x, y);
        assert!(x.best_ck >= x.mk);
    }

    #[test]
    fn extreme_sizes() {
        let b3 = boolean_lattice(3).unwrap();
        let p = probe_minimize(&b3, 2, 8, Strategy::default(), 100, 0).unwrap();
        assert_eq!(p.best_ck, BigUint::from(19u32));
        let p = probe_minimize(&b3, 2, 0, Strategy::default(), 100, 0).unwrap();
        assert_eq!(p.best_ck, BigUint::from(0u32));
    }
}
