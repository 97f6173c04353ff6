//! Rank-level product distributions and the compression operator `Φ`, which
//! pushes probability mass from outer rank levels towards the middle without
//! increasing the expected number of `k`-chains `w_k`.
//!
//! A distribution is stored as integral per-level expected counts
//! `c_i = p_i |P_i|`, so membership in the domain is exact by construction.

use std::fmt::Write as _;

use num_bigint::{BigInt, BigUint, RandBigInt};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::Rng;
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::centred::{is_centred_rank_set, CentredOrdering, MkCurve};
use crate::error::{Error, Result};
use crate::poset::{ChainCount, RankProfile, RankSet};
use crate::report::rational_string;

fn q(x: &BigUint) -> BigRational {
    BigRational::from_integer(BigInt::from(x.clone()))
}

/// `(p_0, ..., p_n)` with every `p_i |P_i|` a nonnegative integer `<= |P_i|`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RankDistribution {
    sizes: Vec<BigUint>,
    counts: Vec<BigUint>,
}

impl RankDistribution {
    pub fn from_counts(profile: &RankProfile, counts: Vec<BigUint>) -> Result<Self> {
        let sizes = profile.levels().to_vec();
        if counts.len() != sizes.len() {
            return Err(Error::NotAdmissible(format!(
                "{} coordinates for {} levels",
                counts.len(),
                sizes.len()
            )));
        }
        if let Some(i) = (0..sizes.len()).find(|&i| counts[i] > sizes[i]) {
            return Err(Error::NotAdmissible(format!("p_{i} exceeds 1")));
        }
        Ok(RankDistribution { sizes, counts })
    }

    pub fn from_probabilities(profile: &RankProfile, p: &[BigRational]) -> Result<Self> {
        let counts = p
            .iter()
            .zip(profile.levels())
            .enumerate()
            .map(|(i, (p, size))| {
                let c = p * q(size);
                if p.is_negative() || !c.is_integer() {
                    return Err(Error::NotAdmissible(format!(
                        "p_{i} |P_{i}| = {} is not a nonnegative integer",
                        rational_string(&c)
                    )));
                }
                Ok(c.to_integer().to_biguint().expect("nonnegative"))
            })
            .collect::<Result<Vec<_>>>()?;
        if counts.len() != profile.levels().len() {
            return Err(Error::NotAdmissible("wrong number of coordinates".into()));
        }
        Self::from_counts(profile, counts)
    }

    /// The characteristic vector of a set of ranks.
    pub fn characteristic(profile: &RankProfile, ranks: &RankSet) -> Result<Self> {
        if ranks.max().is_some_and(|r| r > profile.n()) {
            return Err(Error::RankOutOfRange {
                rank: ranks.max().expect("nonempty"),
                n: profile.n(),
            });
        }
        let counts = (0..=profile.n())
            .map(|i| {
                if ranks.contains(i) {
                    profile.level_size(i).clone()
                } else {
                    BigUint::zero()
                }
            })
            .collect();
        Self::from_counts(profile, counts)
    }

    /// Independent uniform counts `c_i ∈ [0, |P_i|]`.
    pub fn random(profile: &RankProfile, rng: &mut impl Rng) -> Self {
        let counts = profile
            .levels()
            .iter()
            .map(|s| rng.gen_biguint_below(&(s + 1u32)))
            .collect();
        RankDistribution {
            sizes: profile.levels().to_vec(),
            counts,
        }
    }

    pub fn n(&self) -> usize {
        self.sizes.len() - 1
    }

    pub fn counts(&self) -> &[BigUint] {
        &self.counts
    }

    pub fn count(&self, i: usize) -> &BigUint {
        &self.counts[i]
    }

    pub fn size(&self, i: usize) -> &BigUint {
        &self.sizes[i]
    }

    pub fn p(&self, i: usize) -> BigRational {
        BigRational::new(BigInt::from(self.counts[i].clone()), BigInt::from(self.sizes[i].clone()))
    }

    pub fn probabilities(&self) -> Vec<BigRational> {
        (0..=self.n()).map(|i| self.p(i)).collect()
    }

    fn is_zero_at(&self, i: usize) -> bool {
        self.counts[i].is_zero()
    }

    fn is_full_at(&self, i: usize) -> bool {
        self.counts[i] == self.sizes[i]
    }

    /// `a = Σ p_i |P_i|`, the expected size.
    pub fn total(&self) -> BigUint {
        self.counts.iter().sum()
    }

    /// `p̄ = (p_n, ..., p_0)`. Needs a symmetric profile to stay admissible.
    pub fn reversed(&self) -> Self {
        let mut counts = self.counts.clone();
        counts.reverse();
        RankDistribution {
            sizes: self.sizes.clone(),
            counts,
        }
    }

    /// `h(p) = Σ |2i - n| p_i |P_i|`.
    pub fn h(&self) -> BigUint {
        let n = self.n();
        self.counts
            .iter()
            .enumerate()
            .map(|(i, c)| c * (2 * i).abs_diff(n))
            .sum()
    }

    /// Every coordinate is 0 or 1.
    pub fn is_characteristic(&self) -> bool {
        (0..=self.n()).all(|i| self.is_zero_at(i) || self.is_full_at(i))
    }

    pub fn support(&self) -> RankSet {
        RankSet::new((0..=self.n()).filter(|&i| !self.is_zero_at(i)))
    }
}

impl Serialize for RankDistribution {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("RankDistribution", 2)?;
        let counts: Vec<String> = self.counts.iter().map(ToString::to_string).collect();
        let p: Vec<String> = self.probabilities().iter().map(rational_string).collect();
        st.serialize_field("counts", &counts)?;
        st.serialize_field("p", &p)?;
        st.end()
    }
}

fn check_shape(profile: &RankProfile, dist: &RankDistribution) -> Result<()> {
    if dist.sizes != profile.levels() {
        return Err(Error::NotAdmissible("distribution belongs to a different profile".into()));
    }
    if !profile.is_palindromic() {
        return Err(Error::InvalidPoset("compression needs symmetric level sizes".into()));
    }
    Ok(())
}

/// `w_k(p) = E[c_k(R)] = Σ_{|J| = k} c_k'(∅, J) Π_{j∈J} p_j` for the random
/// set `R` keeping each element of rank `j` independently with probability `p_j`.
pub fn w_k(profile: &RankProfile, dist: &RankDistribution, k: usize) -> BigRational {
    let support = dist.support();
    support
        .subsets(k)
        .map(|j| {
            let weight = q(&profile.chains_with_ranks(j.as_slice()));
            j.iter().fold(weight, |acc, r| acc * dist.p(r))
        })
        .sum()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum FixpointReason {
    /// All coordinates vanish (`a = 0`).
    Empty,
    /// No coordinate after `i` is below 1 up to `n - i`.
    Saturated,
    /// `i' = n - i` and `p_{i'} = 0`.
    MirrorEmpty,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum StepOutcome {
    Fixpoint {
        reason: FixpointReason,
    },
    Transfer {
        i: usize,
        i_prime: usize,
        /// `t = δ |P_i| = δ' |P_{i'}|`, the expected number of elements moved.
        #[serde(serialize_with = "crate::report::ser_biguint")]
        moved: BigUint,
        #[serde(serialize_with = "crate::report::ser_rational")]
        delta: BigRational,
        #[serde(serialize_with = "crate::report::ser_rational")]
        delta_prime: BigRational,
    },
}

/// One application of `Φ`. Reversal is part of the operator, so `output`
/// is expressed in the (possibly reversed) coordinates of `normalized`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CompressionStep {
    pub input: RankDistribution,
    pub reversed: bool,
    pub normalized: RankDistribution,
    pub outcome: StepOutcome,
    pub output: RankDistribution,
}

impl CompressionStep {
    pub fn is_fixpoint(&self) -> bool {
        matches!(self.outcome, StepOutcome::Fixpoint { .. })
    }

    /// A transfer into the mirror level `i' = n - i`.
    pub fn is_mirror_transfer(&self) -> bool {
        matches!(self.outcome, StepOutcome::Transfer { i, i_prime, .. } if i + i_prime == self.input.n())
    }
}

pub fn phi_step(profile: &RankProfile, dist: &RankDistribution) -> Result<CompressionStep> {
    check_shape(profile, dist)?;
    let n = dist.n();
    let fixpoint = |reason| CompressionStep {
        input: dist.clone(),
        reversed: false,
        normalized: dist.clone(),
        outcome: StepOutcome::Fixpoint { reason },
        output: dist.clone(),
    };
    let Some(i) = (0..=n).find(|&i| !dist.is_zero_at(i) || !dist.is_zero_at(n - i)) else {
        return Ok(fixpoint(FixpointReason::Empty));
    };
    let mut reversed = dist.is_zero_at(i);
    let mut p = if reversed { dist.reversed() } else { dist.clone() };
    let i_prime = (i + 1..=n).find(|&j| !p.is_full_at(j)).unwrap_or(n + 1);
    if i_prime + i > n {
        return Ok(fixpoint(FixpointReason::Saturated));
    }
    if i_prime + i == n {
        if p.is_zero_at(i_prime) {
            return Ok(fixpoint(FixpointReason::MirrorEmpty));
        }
        if p.p(i) > p.p(i_prime) {
            p = p.reversed();
            reversed = !reversed;
        }
    }
    let room = p.size(i_prime) - p.count(i_prime);
    let moved = p.count(i).clone().min(room);
    let mut out = p.clone();
    out.counts[i] -= &moved;
    out.counts[i_prime] += &moved;
    let delta = BigRational::new(BigInt::from(moved.clone()), BigInt::from(p.size(i).clone()));
    let delta_prime = BigRational::new(BigInt::from(moved.clone()), BigInt::from(p.size(i_prime).clone()));
    Ok(CompressionStep {
        input: dist.clone(),
        reversed,
        normalized: p,
        outcome: StepOutcome::Transfer {
            i,
            i_prime,
            moved,
            delta,
            delta_prime,
        },
        output: out,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum OrderingKind {
    Minus,
    Plus,
}

impl OrderingKind {
    pub fn ordering(self, n: usize) -> CentredOrdering {
        match self {
            OrderingKind::Minus => CentredOrdering::minus(n),
            OrderingKind::Plus => CentredOrdering::plus(n),
        }
    }
}

/// `p_{μ(m)} = 1` for `m < ℓ` and `p_{μ(m)} = 0` for `m > ℓ`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct EndpointForm {
    pub ordering: OrderingKind,
    pub ell: usize,
}

/// The extremal form, preferring `μ₊` when both orderings fit.
pub fn endpoint_form(dist: &RankDistribution) -> Option<EndpointForm> {
    let n = dist.n();
    [OrderingKind::Plus, OrderingKind::Minus].into_iter().find_map(|kind| {
        let mu = kind.ordering(n);
        let ell = (1..=n + 1).find(|&m| !dist.is_full_at(mu.at(m))).unwrap_or(n + 1);
        (ell + 1..=n + 1)
            .all(|m| dist.is_zero_at(mu.at(m)))
            .then_some(EndpointForm { ordering: kind, ell })
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TrajectoryPoint {
    #[serde(serialize_with = "crate::report::ser_rational")]
    pub w: BigRational,
    #[serde(serialize_with = "crate::report::ser_biguint")]
    pub h: BigUint,
}

/// Per-step change of `w_k`, for mapping where a single step is strict.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StepStrictness {
    pub step: usize,
    pub i: usize,
    pub i_prime: usize,
    pub mirror: bool,
    /// The step started from a 0/1 vector.
    pub from_characteristic: bool,
    #[serde(serialize_with = "crate::report::ser_rational")]
    pub decrease: BigRational,
    pub strict: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TrajectoryChecks {
    /// Transfer steps `<= h(start) + n`.
    pub within_bound: bool,
    pub wk_nonincreasing: bool,
    /// `h` strictly decreases on every non-mirror transfer.
    pub h_decreasing: bool,
    pub endpoint_form: bool,
    pub endpoint_is_mk: bool,
}

impl TrajectoryChecks {
    pub fn all(&self) -> bool {
        self.within_bound && self.wk_nonincreasing && self.h_decreasing && self.endpoint_form && self.endpoint_is_mk
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Trajectory {
    pub k: usize,
    #[serde(serialize_with = "crate::report::ser_biguint")]
    pub a: BigUint,
    pub start: RankDistribution,
    /// Transfer steps only; the closing fixpoint step is not repeated.
    pub steps: Vec<CompressionStep>,
    /// `w_k` and `h` at the start and after each step.
    pub points: Vec<TrajectoryPoint>,
    pub endpoint: RankDistribution,
    pub form: Option<EndpointForm>,
    #[serde(serialize_with = "crate::report::ser_biguint")]
    pub mk: ChainCount,
    pub strictness: Vec<StepStrictness>,
    pub checks: TrajectoryChecks,
}

impl Trajectory {
    pub fn w_values(&self) -> Vec<BigRational> {
        self.points.iter().map(|p| p.w.clone()).collect()
    }

    /// `step,i,i_prime,reversed,moved,h,w_num,w_den`; row 0 is the start.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("step,i,i_prime,reversed,moved,h,w_num,w_den\n");
        let p0 = &self.points[0];
        writeln!(out, "0,,,,,{},{},{}", p0.h, p0.w.numer(), p0.w.denom()).expect("string");
        for (s, (step, pt)) in self.steps.iter().zip(&self.points[1..]).enumerate() {
            if let StepOutcome::Transfer { i, i_prime, moved, .. } = &step.outcome {
                writeln!(
                    out,
                    "{},{i},{i_prime},{},{moved},{},{},{}",
                    s + 1,
                    u8::from(step.reversed),
                    pt.h,
                    pt.w.numer(),
                    pt.w.denom()
                )
                .expect("string");
            }
        }
        out
    }
}

pub fn compress_to_fixpoint(profile: &RankProfile, start: &RankDistribution, k: usize) -> Result<Trajectory> {
    check_shape(profile, start)?;
    let curve = MkCurve::new(profile, k)?;
    let n = start.n();
    let h0 = start.h();
    let bound = &h0 + n;
    // h bounds the number of non-mirror transfers; each mirror transfer is
    // followed by at most one reversal-only step and then a fixpoint
    let cap = bound.to_usize().unwrap_or(usize::MAX).saturating_add(n + 2);

    let mut current = start.clone();
    let mut steps = Vec::new();
    let mut points = vec![TrajectoryPoint {
        w: w_k(profile, start, k),
        h: h0,
    }];
    let mut strictness = Vec::new();
    let mut h_decreasing = true;
    loop {
        let step = phi_step(profile, &current)?;
        if step.is_fixpoint() {
            break;
        }
        if steps.len() >= cap {
            return Err(Error::Invariant(format!("compression did not stop within {cap} steps")));
        }
        let prev = points.last().expect("start point").clone();
        let point = TrajectoryPoint {
            w: w_k(profile, &step.output, k),
            h: step.output.h(),
        };
        let StepOutcome::Transfer { i, i_prime, .. } = step.outcome else {
            unreachable!("fixpoints stop the loop")
        };
        let mirror = step.is_mirror_transfer();
        if !mirror && point.h >= prev.h {
            h_decreasing = false;
        }
        let decrease = &prev.w - &point.w;
        strictness.push(StepStrictness {
            step: steps.len() + 1,
            i,
            i_prime,
            mirror,
            from_characteristic: current.is_characteristic(),
            strict: decrease.is_positive(),
            decrease,
        });
        current = step.output.clone();
        steps.push(step);
        points.push(point);
    }

    let a = start.total();
    let mk = curve.eval(&a)?;
    let form = endpoint_form(&current);
    let checks = TrajectoryChecks {
        within_bound: BigUint::from(steps.len()) <= bound,
        wk_nonincreasing: points.windows(2).all(|w| w[1].w <= w[0].w),
        h_decreasing,
        endpoint_form: form.is_some(),
        endpoint_is_mk: points.last().expect("start point").w == q(&mk),
    };
    Ok(Trajectory {
        k,
        a,
        start: start.clone(),
        steps,
        points,
        endpoint: current,
        form,
        mk,
        strictness,
        checks,
    })
}

/// The three sums in the exact expansion of `w_k(p) - w_k(Φ(p))`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WkChange {
    /// `Σ_{J∈J1} c_k'(∅, J ∪ {i}) δ Π_J p_j`
    #[serde(serialize_with = "crate::report::ser_rational")]
    pub sum1: BigRational,
    /// `Σ_{J∈J1} c_k'(∅, J ∪ {i'}) δ' Π_J p_j` (subtracted)
    #[serde(serialize_with = "crate::report::ser_rational")]
    pub sum2: BigRational,
    /// `Σ_{J∈J2} c_k'(∅, J ∪ {i, i'}) (p_i p_{i'} - (p_i - δ)(p_{i'} + δ')) Π_J p_j`
    #[serde(serialize_with = "crate::report::ser_rational")]
    pub sum3: BigRational,
    #[serde(serialize_with = "crate::report::ser_rational")]
    pub total: BigRational,
    /// `w_k(p) - w_k(Φ(p))` computed directly.
    #[serde(serialize_with = "crate::report::ser_rational")]
    pub direct: BigRational,
    pub matches: bool,
    /// `p_i p_{i'} - (p_i - δ)(p_{i'} + δ') >= 0`.
    pub pair_term_nonnegative: bool,
}

/// Evaluated on the normalized (post-reversal) coordinates of the step.
pub fn wk_change_decomposition(profile: &RankProfile, step: &CompressionStep, k: usize) -> WkChange {
    let zero = BigRational::zero();
    let StepOutcome::Transfer {
        i,
        i_prime,
        delta,
        delta_prime,
        ..
    } = &step.outcome
    else {
        return WkChange {
            sum1: zero.clone(),
            sum2: zero.clone(),
            sum3: zero.clone(),
            total: zero.clone(),
            direct: zero,
            matches: true,
            pair_term_nonnegative: true,
        };
    };
    let (i, ip) = (*i, *i_prime);
    let p = &step.normalized;
    let n = p.n();
    let others = RankSet::new((0..=n).filter(|&j| j != i && j != ip));
    let prod = |j: &RankSet| j.iter().fold(BigRational::one(), |acc, r| acc * p.p(r));
    let chains = |j: &RankSet, extra: &[usize]| {
        let all = j.union(&RankSet::new(extra.iter().copied()));
        q(&profile.chains_with_ranks(all.as_slice()))
    };
    let (mut sum1, mut sum2, mut sum3) = (zero.clone(), zero.clone(), zero.clone());
    if k >= 1 {
        for j in others.subsets(k - 1) {
            let pr = prod(&j);
            sum1 += chains(&j, &[i]) * delta * &pr;
            sum2 += chains(&j, &[ip]) * delta_prime * &pr;
        }
    }
    let pair = p.p(i) * p.p(ip) - (p.p(i) - delta) * (p.p(ip) + delta_prime);
    if k >= 2 {
        for j in others.subsets(k - 2) {
            sum3 += chains(&j, &[i, ip]) * &pair * prod(&j);
        }
    }
    let total = &sum1 - &sum2 + &sum3;
    let direct = w_k(profile, &step.input, k) - w_k(profile, &step.output, k);
    WkChange {
        matches: total == direct,
        pair_term_nonnegative: !pair.is_negative(),
        sum1,
        sum2,
        sum3,
        total,
        direct,
    }
}

/// `σ` reverses the interval `[i+1, i'-1]` and fixes everything else.
pub fn sigma(i: usize, i_prime: usize, j: usize) -> usize {
    if i < j && j < i_prime {
        i + i_prime - j
    } else {
        j
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DeltaComparison {
    pub sigma_j: RankSet,
    #[serde(serialize_with = "crate::report::ser_rational")]
    pub lhs: BigRational,
    #[serde(serialize_with = "crate::report::ser_rational")]
    pub rhs: BigRational,
    pub holds: bool,
    pub strict: bool,
}

/// `δ c_k'(∅, J ∪ {i}) >= δ' c_k'(∅, σ(J) ∪ {i'})` with `δ = 1` and
/// `δ' = |P_i| / |P_{i'}|` (the inequality is invariant under scaling `δ`).
pub fn delta_ck_comparison(
    profile: &RankProfile,
    k: usize,
    i: usize,
    i_prime: usize,
    j: &RankSet,
) -> Result<DeltaComparison> {
    let n = profile.n();
    if !(i < i_prime && i + i_prime <= n) {
        return Err(Error::InvalidArgument(format!("need i < i' <= n - i, got i={i}, i'={i_prime}")));
    }
    if k == 0 || j.len() != k - 1 {
        return Err(Error::InvalidArgument(format!("J must have k - 1 = {} ranks", k.saturating_sub(1))));
    }
    if j.contains(i) || j.contains(i_prime) {
        return Err(Error::InvalidArgument(format!("J = {j} contains i or i'")));
    }
    if j.iter().any(|r| r <= i || r + i >= n) {
        return Err(Error::InvalidArgument(format!("J = {j} leaves [{}, {}]", i + 1, n - i - 1)));
    }
    let delta = BigRational::one();
    let delta_prime = BigRational::new(
        BigInt::from(profile.level_size(i).clone()),
        BigInt::from(profile.level_size(i_prime).clone()),
    );
    let sigma_j = RankSet::new(j.iter().map(|r| sigma(i, i_prime, r)));
    let with = |set: &RankSet, r: usize| q(&profile.chains_with_ranks(set.union(&RankSet::new([r])).as_slice()));
    let lhs = delta * with(j, i);
    let rhs = delta_prime * with(&sigma_j, i_prime);
    Ok(DeltaComparison {
        holds: lhs >= rhs,
        strict: lhs > rhs,
        sigma_j,
        lhs,
        rhs,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LevelUnionCase {
    pub ranks: RankSet,
    #[serde(serialize_with = "crate::report::ser_biguint")]
    pub ck: ChainCount,
    #[serde(serialize_with = "crate::report::ser_biguint")]
    pub mk: ChainCount,
    pub centred: bool,
    /// `c_k >= m_k`, strict exactly when `|I| >= k` and `I` is not centred.
    pub as_expected: bool,
}

/// `c_k(∪_{i∈I} P_i)` against `m_k(Σ_{i∈I} |P_i|)` for every `I ⊆ [0, n]`.
pub fn level_union_sweep(profile: &RankProfile, k: usize) -> Result<Vec<LevelUnionCase>> {
    let n = profile.n();
    if n >= 63 {
        return Err(Error::ResourceGuard("too many rank sets".into()));
    }
    let curve = MkCurve::new(profile, k)?;
    (0..1u64 << (n + 1))
        .map(|mask| {
            let ranks = RankSet::from_mask(mask);
            let size: BigUint = ranks.iter().map(|r| profile.level_size(r)).sum();
            let ck = profile.ck_of_levels(&ranks, k);
            let mk = curve.eval(&size)?;
            let centred = is_centred_rank_set(n, &ranks);
            let expect_strict = ranks.len() >= k && !centred;
            let as_expected = if expect_strict { ck > mk } else { ck == mk };
            Ok(LevelUnionCase {
                ranks,
                ck,
                mk,
                centred,
                as_expected,
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattices::{boolean_lattice, boolean_profile, subspace_profile};
    use crate::poset::Family;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn r(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    fn dist(profile: &RankProfile, p: &[(i64, i64)]) -> RankDistribution {
        let p: Vec<BigRational> = p.iter().map(|&(a, b)| r(a, b)).collect();
        RankDistribution::from_probabilities(profile, &p).unwrap()
    }

    #[test]
    fn wk_examples() {
        let b3 = boolean_profile(3);
        assert_eq!(w_k(&b3, &dist(&b3, &[(1, 1), (0, 1), (0, 1), (1, 1)]), 2), r(1, 1));
        assert_eq!(w_k(&b3, &dist(&b3, &[(0, 1), (1, 3), (1, 3), (0, 1)]), 2), r(2, 3));
        let q = RankDistribution::characteristic(&b3, &RankSet::new([2])).unwrap();
        assert!(w_k(&b3, &q, 2).is_zero());
    }

    #[test]
    fn wk_of_characteristic_vectors_is_a_chain_count() {
        let poset = boolean_lattice(4).unwrap();
        let profile = boolean_profile(4);
        for mask in 0..32u64 {
            let ranks = RankSet::from_mask(mask);
            let q = RankDistribution::characteristic(&profile, &ranks).unwrap();
            let fam = Family::from_levels(&poset, &ranks);
            for k in 1..=5 {
                assert_eq!(w_k(&profile, &q, k), BigRational::from_integer(fam.count_chains(k).into()));
            }
        }
    }

    #[test]
    fn wk_is_mean_of_sampled_chain_counts() {
        let poset = boolean_lattice(3).unwrap();
        let profile = boolean_profile(3);
        let d = dist(&profile, &[(0, 1), (2, 3), (1, 3), (1, 1)]);
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let samples = 20_000;
        let mut sum = 0f64;
        let mut sq = 0f64;
        for _ in 0..samples {
            let members = poset.elements().filter(|&x| {
                let p = d.p(poset.rank(x));
                rng.gen_bool(p.to_f64_lossy())
            });
            let c = Family::new(&poset, members).unwrap().count_chains(2).to_f64().unwrap();
            sum += c;
            sq += c * c;
        }
        let mean = sum / samples as f64;
        let se = ((sq / samples as f64 - mean * mean) / samples as f64).sqrt();
        let exact = w_k(&profile, &d, 2).to_f64_lossy();
        assert!((mean - exact).abs() < 4.0 * se, "{mean} vs {exact}");
    }

    trait Lossy {
        fn to_f64_lossy(&self) -> f64;
    }

    impl Lossy for BigRational {
        fn to_f64_lossy(&self) -> f64 {
            self.numer().to_f64().unwrap() / self.denom().to_f64().unwrap()
        }
    }

    #[test]
    fn membership_is_exact() {
        let b3 = boolean_profile(3);
        assert!(RankDistribution::from_probabilities(&b3, &[r(1, 2), r(0, 1), r(0, 1), r(0, 1)]).is_err());
        assert!(RankDistribution::from_probabilities(&b3, &[r(0, 1), r(4, 3), r(0, 1), r(0, 1)]).is_err());
        assert!(RankDistribution::from_probabilities(&b3, &[r(0, 1), r(-1, 3), r(0, 1), r(0, 1)]).is_err());
    }

    #[test]
    fn phi_examples() {
        let b3 = boolean_profile(3);
        let s = phi_step(&b3, &dist(&b3, &[(1, 1), (0, 1), (0, 1), (1, 1)])).unwrap();
        assert!(!s.reversed);
        assert_eq!(
            s.outcome,
            StepOutcome::Transfer {
                i: 0,
                i_prime: 1,
                moved: BigUint::one(),
                delta: r(1, 1),
                delta_prime: r(1, 3),
            }
        );
        assert_eq!(s.output, dist(&b3, &[(0, 1), (1, 3), (0, 1), (1, 1)]));

        let s = phi_step(&b3, &s.output).unwrap();
        assert!(s.reversed);
        assert_eq!(s.normalized, dist(&b3, &[(1, 1), (0, 1), (1, 3), (0, 1)]));
        assert_eq!(s.output, dist(&b3, &[(0, 1), (1, 3), (1, 3), (0, 1)]));

        let full = dist(&b3, &[(1, 1), (1, 1), (1, 1), (1, 1)]);
        let s = phi_step(&b3, &full).unwrap();
        assert!(s.is_fixpoint() && s.output == full);
        let empty = dist(&b3, &[(0, 1), (0, 1), (0, 1), (0, 1)]);
        assert_eq!(
            phi_step(&b3, &empty).unwrap().outcome,
            StepOutcome::Fixpoint {
                reason: FixpointReason::Empty
            }
        );
    }

    #[test]
    fn mirror_step_may_only_reverse() {
        // p_1 = 1 > p_2: normalization reverses and nothing can move
        let b3 = boolean_profile(3);
        let d = dist(&b3, &[(0, 1), (1, 1), (1, 3), (0, 1)]);
        let s = phi_step(&b3, &d).unwrap();
        assert!(s.reversed);
        assert!(matches!(&s.outcome, StepOutcome::Transfer { moved, .. } if moved.is_zero()));
        assert_eq!(s.output, d.reversed());
        assert!(phi_step(&b3, &s.output).unwrap().is_fixpoint());
    }

    #[test]
    fn top_and_bottom_trajectory() {
        let b3 = boolean_profile(3);
        let q = RankDistribution::characteristic(&b3, &RankSet::new([0, 3])).unwrap();
        let t = compress_to_fixpoint(&b3, &q, 2).unwrap();
        assert_eq!(t.w_values(), vec![r(1, 1), r(1, 1), r(2, 3), r(0, 1)]);
        assert_eq!(t.endpoint, dist(&b3, &[(0, 1), (0, 1), (2, 3), (0, 1)]));
        assert!(t.checks.all());
        assert!(t.mk.is_zero());
        let strict: Vec<bool> = t.strictness.iter().map(|s| s.strict).collect();
        assert_eq!(strict, vec![false, true, true]);
        assert!(t.strictness[0].from_characteristic);
        assert_eq!(
            t.form,
            Some(EndpointForm {
                ordering: OrderingKind::Plus,
                ell: 1
            })
        );
    }

    #[test]
    fn centred_start_is_stable() {
        let b4 = boolean_profile(4);
        for ranks in [RankSet::new([2]), RankSet::new([1, 2]), RankSet::new([1, 2, 3])] {
            let q = RankDistribution::characteristic(&b4, &ranks).unwrap();
            let t = compress_to_fixpoint(&b4, &q, 2).unwrap();
            assert!(t.steps.len() <= 1);
            assert!(t.w_values().iter().all(|w| *w == t.points[0].w));
            assert!(t.checks.all());
        }
    }

    #[test]
    fn uniform_start_reaches_mk() {
        let b4 = boolean_profile(4);
        // a = 8: half of every level
        let d = dist(&b4, &[(0, 1), (2, 4), (3, 6), (2, 4), (1, 1)]);
        let t = compress_to_fixpoint(&b4, &d, 2).unwrap();
        assert!(t.checks.all());
        assert_eq!(t.mk, BigUint::from(6u32));
    }

    #[test]
    fn random_trajectories() {
        let profiles = [boolean_profile(3), boolean_profile(5), subspace_profile(2, 3).unwrap()];
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for profile in &profiles {
            for _ in 0..30 {
                let d = RankDistribution::random(profile, &mut rng);
                for k in 1..=profile.n() + 1 {
                    assert_eq!(w_k(profile, &d, k), w_k(profile, &d.reversed(), k));
                    let t = compress_to_fixpoint(profile, &d, k).unwrap();
                    assert!(t.checks.all(), "{:?}", t.checks);
                    for step in &t.steps {
                        let change = wk_change_decomposition(profile, step, k);
                        assert!(change.matches && change.pair_term_nonnegative);
                        assert!(!change.total.is_negative());
                        assert_eq!(step.output.total(), d.total());
                    }
                }
            }
        }
    }

    #[test]
    fn decomposition_examples() {
        let b3 = boolean_profile(3);
        let s = phi_step(&b3, &dist(&b3, &[(1, 1), (0, 1), (0, 1), (1, 1)])).unwrap();
        let c = wk_change_decomposition(&b3, &s, 2);
        assert!(c.total.is_zero() && c.matches);
        assert_eq!(c.sum1, c.sum2);

        let s = phi_step(&b3, &dist(&b3, &[(1, 1), (0, 1), (1, 3), (0, 1)])).unwrap();
        let c = wk_change_decomposition(&b3, &s, 2);
        assert_eq!(c.total, r(1, 3));
        assert!(c.matches);

        let full = dist(&b3, &[(1, 1), (1, 1), (1, 1), (1, 1)]);
        let c = wk_change_decomposition(&b3, &phi_step(&b3, &full).unwrap(), 2);
        assert!(c.total.is_zero() && c.sum1.is_zero() && c.sum3.is_zero());
    }

    #[test]
    fn delta_comparison_examples() {
        let b3 = boolean_profile(3);
        let c = delta_ck_comparison(&b3, 2, 0, 1, &RankSet::new([2])).unwrap();
        assert_eq!((c.lhs.clone(), c.rhs.clone()), (r(3, 1), r(2, 1)));
        assert!(c.strict);
        assert_eq!(c.sigma_j, RankSet::new([2]));
        assert_eq!(sigma(0, 1, 2), 2);
        assert_eq!(sigma(1, 5, 2), 4);
        let b5 = boolean_profile(5);
        assert!(delta_ck_comparison(&b5, 3, 1, 2, &RankSet::new([2, 3])).is_err());
    }

    #[test]
    fn delta_comparison_sweep() {
        for profile in [boolean_profile(6), boolean_profile(7), subspace_profile(2, 5).unwrap()] {
            let n = profile.n();
            for k in 2..=4 {
                for i in 0..n {
                    for ip in i + 1..=n - i {
                        if ip + i > n {
                            continue;
                        }
                        let allowed = RankSet::new((i + 1..n - i).filter(|&j| j != ip));
                        for j in allowed.subsets(k - 1) {
                            let c = delta_ck_comparison(&profile, k, i, ip, &j).unwrap();
                            assert!(c.holds);
                            if ip + i < n {
                                assert!(c.strict, "i={i} i'={ip} J={j}");
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn level_unions() {
        for n in 0..=6 {
            let p = boolean_profile(n);
            for k in 2..=4 {
                assert!(level_union_sweep(&p, k).unwrap().iter().all(|c| c.as_expected), "n={n} k={k}");
            }
        }
    }
}
