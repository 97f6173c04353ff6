//! Uniform random maximal chains and the averaging argument behind the
//! extremal bound: for `f(X) = m_k(Σ_{x∈X} |P_{r(x)}|) - c_k(∪_{x∈X} P_{r(x)})`,
//! `E[f(A ∩ C)] <= 0` over a uniform maximal chain `C`, the `c_k` term is an
//! unbiased estimator of `c_k(A)` and the weighted size one of `|A|`.

use num_bigint::{BigInt, BigUint, RandBigInt};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::centred::{breakpoints, is_centred_rank_set, CentredOrdering, MkCurve, MkTable, MAX_TABLE_LEN};
use crate::error::{Error, Result};
use crate::jensen::{discrete_jensen_check, IntegerDistribution, JensenCheck, TabulatedFunction};
use crate::poset::{ChainCount, ElementId, Family, GradedPoset, RankProfile, RankSet};

/// Largest number of maximal chains enumerated in exact mode.
pub const MAX_ENUMERATED_CHAINS: u64 = 1_000_000;

/// One element per rank, `elements[i]` of rank `i`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct MaximalChain {
    pub elements: Vec<ElementId>,
}

impl MaximalChain {
    pub fn contains(&self, x: ElementId, poset: &GradedPoset) -> bool {
        self.elements.get(poset.rank(x)) == Some(&x)
    }

    /// `A ∩ C` in rank order.
    pub fn intersect(&self, family: &Family<'_>) -> Vec<ElementId> {
        self.elements.iter().copied().filter(|&x| family.contains(x)).collect()
    }
}

fn covers(poset: &GradedPoset) -> Vec<Vec<ElementId>> {
    poset.elements().map(|x| poset.upper_covers(x)).collect()
}

/// Number of saturated chains from `x` up to rank `n`, for every `x`.
fn up_counts(poset: &GradedPoset, covers: &[Vec<ElementId>]) -> Vec<BigUint> {
    let mut up = vec![BigUint::zero(); poset.len()];
    for r in (0..=poset.n()).rev() {
        for &x in poset.level(r) {
            up[x.0] = if r == poset.n() {
                BigUint::one()
            } else {
                covers[x.0].iter().map(|y| &up[y.0]).sum()
            };
        }
    }
    up
}

/// Number of maximal chains passing through every element of `pinned`
/// (which need not be a chain; incomparable pins give 0).
pub fn chains_through(poset: &GradedPoset, pinned: &[ElementId]) -> ChainCount {
    let mut pin = vec![None; poset.n() + 1];
    for &x in pinned {
        match pin[poset.rank(x)] {
            Some(y) if y != x => return BigUint::zero(),
            _ => pin[poset.rank(x)] = Some(x),
        }
    }
    let allowed = |x: ElementId| pin[poset.rank(x)].is_none_or(|p| p == x);
    let mut ways = vec![BigUint::zero(); poset.len()];
    for &x in poset.level(0) {
        if allowed(x) {
            ways[x.0] = BigUint::one();
        }
    }
    for r in 0..poset.n() {
        for &x in poset.level(r) {
            if ways[x.0].is_zero() {
                continue;
            }
            let w = ways[x.0].clone();
            for y in poset.upper_covers(x) {
                if allowed(y) {
                    ways[y.0] += &w;
                }
            }
        }
    }
    poset.level(poset.n()).iter().map(|x| &ways[x.0]).sum()
}

pub fn count_maximal_chains(poset: &GradedPoset) -> ChainCount {
    chains_through(poset, &[])
}

/// Depth-first enumeration of all maximal chains, in lexicographic order of
/// element indices.
pub struct MaximalChains {
    covers: Vec<Vec<ElementId>>,
    roots: Vec<ElementId>,
    n: usize,
    /// `(candidates at this depth, next index)`
    stack: Vec<(usize, usize)>,
    current: Vec<ElementId>,
    started: bool,
}

impl MaximalChains {
    fn candidates(&self, depth: usize) -> &[ElementId] {
        if depth == 0 {
            &self.roots
        } else {
            &self.covers[self.current[depth - 1].0]
        }
    }
}

impl Iterator for MaximalChains {
    type Item = MaximalChain;

    fn next(&mut self) -> Option<MaximalChain> {
        if !self.started {
            self.started = true;
            self.stack.push((0, 0));
        }
        while let Some(&(depth, idx)) = self.stack.last() {
            let cands = self.candidates(depth);
            if idx >= cands.len() {
                self.stack.pop();
                self.current.pop();
                continue;
            }
            let x = cands[idx];
            self.stack.last_mut().expect("nonempty").1 += 1;
            self.current.truncate(depth);
            self.current.push(x);
            if depth == self.n {
                let chain = MaximalChain {
                    elements: self.current.clone(),
                };
                self.current.pop();
                return Some(chain);
            }
            self.stack.push((depth + 1, 0));
        }
        None
    }
}

/// All maximal chains, or a resource-guard error above
/// [`MAX_ENUMERATED_CHAINS`].
pub fn maximal_chains(poset: &GradedPoset) -> Result<MaximalChains> {
    let total = count_maximal_chains(poset);
    if total > BigUint::from(MAX_ENUMERATED_CHAINS) {
        return Err(Error::ResourceGuard(format!(
            "{total} maximal chains exceed the enumeration limit of {MAX_ENUMERATED_CHAINS}"
        )));
    }
    Ok(MaximalChains {
        covers: covers(poset),
        roots: poset.level(0).to_vec(),
        n: poset.n(),
        stack: Vec::new(),
        current: Vec::new(),
        started: false,
    })
}

/// Exactly uniform maximal chains: each step picks an upper cover with
/// probability proportional to the number of maximal chains through it.
pub struct ChainSampler<'p> {
    poset: &'p GradedPoset,
    covers: Vec<Vec<ElementId>>,
    up: Vec<BigUint>,
    total: BigUint,
    rng: ChaCha8Rng,
}

impl<'p> ChainSampler<'p> {
    pub fn new(poset: &'p GradedPoset, seed: u64) -> Self {
        let covers = covers(poset);
        let up = up_counts(poset, &covers);
        let total = poset.level(0).iter().map(|x| &up[x.0]).sum();
        ChainSampler {
            poset,
            covers,
            up,
            total,
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    pub fn total(&self) -> &BigUint {
        &self.total
    }

    fn pick(&mut self, options: &[ElementId], weight: &BigUint) -> ElementId {
        let mut r = self.rng.gen_biguint_below(weight);
        for &x in options {
            if r < self.up[x.0] {
                return x;
            }
            r -= &self.up[x.0];
        }
        unreachable!("weights sum to the total")
    }

    pub fn sample(&mut self) -> MaximalChain {
        let roots = self.poset.level(0).to_vec();
        let total = self.total.clone();
        let mut x = self.pick(&roots, &total);
        let mut elements = vec![x];
        while elements.len() <= self.poset.n() {
            let options = self.covers[x.0].clone();
            let weight = self.up[x.0].clone();
            x = self.pick(&options, &weight);
            elements.push(x);
        }
        MaximalChain { elements }
    }
}

/// `f(X) = m_k(Σ_{x∈X} |P_{r(x)}|) - c_k(∪_{x∈X} P_{r(x)})` on chains `X`.
#[derive(Clone, Debug)]
pub struct ChainFunctional<'p> {
    poset: &'p GradedPoset,
    profile: RankProfile,
    curve: MkCurve,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FunctionalTerms {
    pub weighted_size: BigUint,
    pub mk_term: BigUint,
    pub ck_term: BigUint,
}

impl FunctionalTerms {
    pub fn f(&self) -> BigInt {
        BigInt::from(self.mk_term.clone()) - BigInt::from(self.ck_term.clone())
    }
}

impl<'p> ChainFunctional<'p> {
    pub fn new(poset: &'p GradedPoset, k: usize) -> Result<Self> {
        let profile = RankProfile::from_poset(poset);
        let curve = MkCurve::new(&profile, k)?;
        Ok(ChainFunctional { poset, profile, curve })
    }

    pub fn k(&self) -> usize {
        self.curve.k()
    }

    pub fn profile(&self) -> &RankProfile {
        &self.profile
    }

    pub fn curve(&self) -> &MkCurve {
        &self.curve
    }

    /// Terms for `X` given in increasing rank order; no chain check.
    pub fn terms_unchecked(&self, chain: &[ElementId]) -> FunctionalTerms {
        let ranks = RankSet::new(chain.iter().map(|&x| self.poset.rank(x)));
        let weighted_size: BigUint = ranks.iter().map(|r| self.profile.level_size(r)).sum();
        FunctionalTerms {
            mk_term: self.curve.eval(&weighted_size).expect("weighted size <= |P|"),
            ck_term: self.profile.ck_of_levels(&ranks, self.k()),
            weighted_size,
        }
    }

    pub fn terms(&self, xs: &[ElementId]) -> Result<FunctionalTerms> {
        let chain = self.poset.chain_from(xs.iter().copied())?;
        Ok(self.terms_unchecked(chain.elements()))
    }

    pub fn f_value(&self, xs: &[ElementId]) -> Result<BigInt> {
        Ok(self.terms(xs)?.f())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EqualityPropagation {
    /// `ℓ` with `a_ℓ <= |A| < a_{ℓ+1}`.
    pub ell: usize,
    /// Every maximal chain meets `A` in a centred rank set of size `ℓ` or `ℓ + 1`.
    pub holds: bool,
    pub witness: Option<MaximalChain>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExpectationChecks {
    /// `f(A ∩ C) <= 0` for every maximal chain.
    pub f_nonpositive: bool,
    /// `E[c_k term] = c_k(A)`.
    pub ck_unbiased: bool,
    /// `E[weighted size] = |A|`.
    pub size_unbiased: bool,
    /// `m_k(|A|) <= E[m_k term]`.
    pub jensen: bool,
    /// `c_k(A) >= m_k(|A|)`.
    pub conclusion: bool,
}

impl ExpectationChecks {
    pub fn all(&self) -> bool {
        self.f_nonpositive && self.ck_unbiased && self.size_unbiased && self.jensen && self.conclusion
    }
}

/// Exact expectations over all maximal chains.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExpectationReport {
    pub k: usize,
    pub size: usize,
    #[serde(serialize_with = "crate::report::ser_biguint")]
    pub chains: BigUint,
    #[serde(serialize_with = "crate::report::ser_rational")]
    pub e_f: BigRational,
    #[serde(serialize_with = "crate::report::ser_rational")]
    pub e_mk_term: BigRational,
    #[serde(serialize_with = "crate::report::ser_rational")]
    pub e_ck_term: BigRational,
    #[serde(serialize_with = "crate::report::ser_rational")]
    pub e_weighted_size: BigRational,
    #[serde(serialize_with = "crate::report::ser_bigint")]
    pub max_f: BigInt,
    #[serde(serialize_with = "crate::report::ser_biguint")]
    pub ck: BigUint,
    #[serde(serialize_with = "crate::report::ser_biguint")]
    pub mk: BigUint,
    pub checks: ExpectationChecks,
    /// Discrete Jensen applied to the weighted size and the tabulated `m_k`,
    /// when `|P|` is small enough to tabulate.
    pub jensen: Option<JensenCheck>,
    /// Present when `c_k(A) = m_k(|A|) > 0`.
    pub equality: Option<EqualityPropagation>,
}

fn ratio(num: &BigInt, den: &BigUint) -> BigRational {
    BigRational::new(num.clone(), BigInt::from(den.clone()))
}

pub fn expectation_report(family: &Family<'_>, k: usize) -> Result<ExpectationReport> {
    let poset = family.poset();
    let functional = ChainFunctional::new(poset, k)?;
    let profile = functional.profile().clone();
    let mut chains = BigUint::zero();
    let (mut sum_f, mut sum_mk, mut sum_ck, mut sum_w) =
        (BigInt::zero(), BigInt::zero(), BigInt::zero(), BigInt::zero());
    let mut max_f: Option<BigInt> = None;
    let mut sizes: Vec<i64> = Vec::new();
    let mut per_chain: Vec<(MaximalChain, RankSet)> = Vec::new();
    for chain in maximal_chains(poset)? {
        let meet = chain.intersect(family);
        let terms = functional.terms_unchecked(&meet);
        let f = terms.f();
        sum_f += &f;
        sum_mk += BigInt::from(terms.mk_term.clone());
        sum_ck += BigInt::from(terms.ck_term.clone());
        sum_w += BigInt::from(terms.weighted_size.clone());
        if max_f.as_ref().is_none_or(|m| f > *m) {
            max_f = Some(f);
        }
        sizes.push(terms.weighted_size.to_i64().expect("bounded by |P|"));
        per_chain.push((chain, RankSet::new(meet.iter().map(|&x| poset.rank(x)))));
        chains += 1u32;
    }
    let ck = family.count_chains(k);
    let size = family.len();
    let mk = functional.curve().eval(&BigUint::from(size))?;
    let e_f = ratio(&sum_f, &chains);
    let e_mk_term = ratio(&sum_mk, &chains);
    let e_ck_term = ratio(&sum_ck, &chains);
    let e_weighted_size = ratio(&sum_w, &chains);
    let max_f = max_f.expect("at least one maximal chain");
    let as_q = |x: &BigUint| BigRational::from_integer(BigInt::from(x.clone()));
    let checks = ExpectationChecks {
        f_nonpositive: !max_f.is_positive(),
        ck_unbiased: e_ck_term == as_q(&ck),
        size_unbiased: e_weighted_size == BigRational::from_integer(size.into()),
        jensen: as_q(&mk) <= e_mk_term,
        conclusion: ck >= mk,
    };

    let jensen = if profile.total() <= BigUint::from(MAX_TABLE_LEN) {
        let table = MkTable::new(&profile, k)?;
        let f = TabulatedFunction::new(0, table.values.iter().map(|v| BigInt::from(v.clone())).collect());
        Some(discrete_jensen_check(&f, &IntegerDistribution::empirical(sizes)?)?)
    } else {
        None
    };

    let equality = (!mk.is_zero() && ck == mk).then(|| {
        let points = breakpoints(&profile, &CentredOrdering::minus(poset.n()));
        let a = BigUint::from(size);
        let ell = points.iter().rposition(|p| *p <= a).expect("a_0 = 0");
        let witness = per_chain
            .iter()
            .find(|(_, ranks)| {
                !(is_centred_rank_set(poset.n(), ranks) && (ranks.len() == ell || ranks.len() == ell + 1))
            })
            .map(|(c, _)| c.clone());
        EqualityPropagation {
            ell,
            holds: witness.is_none(),
            witness,
        }
    });

    Ok(ExpectationReport {
        k,
        size,
        chains,
        e_f,
        e_mk_term,
        e_ck_term,
        e_weighted_size,
        max_f,
        ck,
        mk,
        checks,
        jensen,
        equality,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Estimate {
    pub mean: f64,
    pub std_error: f64,
}

impl Estimate {
    fn from_samples(xs: &[f64]) -> Self {
        let n = xs.len() as f64;
        let mean = xs.iter().sum::<f64>() / n;
        let var = if xs.len() > 1 {
            xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1.0)
        } else {
            0.0
        };
        Estimate {
            mean,
            std_error: (var / n).sqrt(),
        }
    }

    /// `|mean - target| <= z * std_error` (with a small absolute slack when
    /// the sample variance vanishes).
    pub fn covers(&self, target: f64, z: f64) -> bool {
        (self.mean - target).abs() <= z * self.std_error + 1e-9 * target.abs().max(1.0)
    }
}

/// Monte Carlo estimates from sampled maximal chains. A falsification probe
/// only; the inequalities themselves are checked in exact mode.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MonteCarloReport {
    pub k: usize,
    pub size: usize,
    pub samples: usize,
    pub seed: u64,
    pub f: Estimate,
    pub ck_term: Estimate,
    pub weighted_size: Estimate,
    #[serde(serialize_with = "crate::report::ser_bigint")]
    pub max_f: BigInt,
    #[serde(serialize_with = "crate::report::ser_biguint")]
    pub ck: BigUint,
    #[serde(serialize_with = "crate::report::ser_biguint")]
    pub mk: BigUint,
    /// Both unbiased estimators within four standard errors of their targets
    /// and no sampled chain with `f > 0`.
    pub consistent: bool,
}

pub fn monte_carlo_report(family: &Family<'_>, k: usize, samples: usize, seed: u64) -> Result<MonteCarloReport> {
    if samples == 0 {
        return Err(Error::InvalidArgument("need at least one sample".into()));
    }
    let poset = family.poset();
    let functional = ChainFunctional::new(poset, k)?;
    let mut sampler = ChainSampler::new(poset, seed);
    let (mut fs, mut cks, mut ws) = (Vec::new(), Vec::new(), Vec::new());
    let mut max_f: Option<BigInt> = None;
    let as_f64 = |x: &BigUint| x.to_f64().unwrap_or(f64::INFINITY);
    for _ in 0..samples {
        let meet = sampler.sample().intersect(family);
        let t = functional.terms_unchecked(&meet);
        let f = t.f();
        fs.push(f.to_f64().unwrap_or(f64::NAN));
        cks.push(as_f64(&t.ck_term));
        ws.push(as_f64(&t.weighted_size));
        if max_f.as_ref().is_none_or(|m| f > *m) {
            max_f = Some(f);
        }
    }
    let ck = family.count_chains(k);
    let size = family.len();
    let mk = functional.curve().eval(&BigUint::from(size))?;
    let ck_term = Estimate::from_samples(&cks);
    let weighted_size = Estimate::from_samples(&ws);
    let max_f = max_f.expect("samples > 0");
    let consistent = ck_term.covers(as_f64(&ck), 4.0)
        && weighted_size.covers(size as f64, 4.0)
        && !max_f.is_positive();
    Ok(MonteCarloReport {
        k,
        size,
        samples,
        seed,
        f: Estimate::from_samples(&fs),
        ck_term,
        weighted_size,
        max_f,
        ck,
        mk,
        consistent,
    })
}

/// `Pr(x ∈ C) · |P_{r(x)}| = 1` for every `x`; returns the first failure.
pub fn membership_identity(poset: &GradedPoset) -> Option<ElementId> {
    let total = count_maximal_chains(poset);
    let sizes = poset.level_sizes();
    poset
        .elements()
        .find(|&x| chains_through(poset, &[x]) * &sizes[poset.rank(x)] != total)
}

/// `Pr({x_1..x_k} ⊆ C) · c_k(∪_j P_{r(x_j)}) = 1` for a chain `x_1 < ... < x_k`.
pub fn tuple_identity(poset: &GradedPoset, xs: &[ElementId]) -> Result<bool> {
    let chain = poset.chain_from(xs.iter().copied())?;
    let profile = RankProfile::from_poset(poset);
    let exact = profile.chains_with_ranks(chain.ranks().as_slice());
    Ok(chains_through(poset, chain.elements()) * exact == count_maximal_chains(poset))
}
