use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};
use serde::Serialize;

use super::mask::{combinations, MaskPoset};
use crate::centred::{a_ell, MkCurve};
use crate::error::{Error, Result};
use crate::lattices::binomial;
use crate::poset::{ChainCount, ElementId, GradedPoset, RankProfile};

/// Most families examined by one exhaustive minimisation.
pub const MAX_FAMILIES: u64 = 1 << 24;
/// Largest ground set swept in full by [`verify_kleitman_suite`].
pub const MAX_SUITE_ELEMENTS: usize = 20;
/// Minimizers kept per `(a, k)` in reports.
pub const MINIMIZER_SAMPLE: usize = 64;

/// A family that breaks an expected property, replayable from its fields.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Counterexample {
    pub poset: Option<String>,
    pub k: usize,
    pub members: Vec<ElementId>,
    #[serde(serialize_with = "crate::report::ser_biguint")]
    pub ck: ChainCount,
    #[serde(serialize_with = "crate::report::ser_biguint")]
    pub mk: ChainCount,
    pub seed: Option<u64>,
    pub reason: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MinimizationResult {
    pub k: usize,
    pub a: usize,
    #[serde(serialize_with = "crate::report::ser_biguint")]
    pub min_ck: ChainCount,
    #[serde(serialize_with = "crate::report::ser_biguint")]
    pub mk: ChainCount,
    pub families: u64,
    pub minimizers: u64,
    pub centred_minimizers: u64,
    pub all_minimizers_centred: bool,
    /// At most [`MINIMIZER_SAMPLE`] minimizers.
    pub sample: Vec<Vec<ElementId>>,
}

impl MinimizationResult {
    pub fn min_matches(&self) -> bool {
        self.min_ck == self.mk
    }

    /// The minimum is `m_k(a)`, and when it is positive every minimizer is centred.
    pub fn passes(&self) -> bool {
        self.min_matches() && (self.mk.is_zero() || self.all_minimizers_centred)
    }
}

struct Accumulator {
    min: u128,
    families: u64,
    minimizers: u64,
    centred: u64,
    sample: Vec<u64>,
}

impl Accumulator {
    fn new() -> Self {
        Accumulator {
            min: u128::MAX,
            families: 0,
            minimizers: 0,
            centred: 0,
            sample: Vec::new(),
        }
    }

    fn add_minimizer(&mut self, mask: u64, centred: bool) {
        self.minimizers += 1;
        self.centred += u64::from(centred);
        if self.sample.len() < MINIMIZER_SAMPLE {
            self.sample.push(mask);
        }
    }

    fn finish(self, mp: &MaskPoset<'_>, k: usize, a: usize, mk: ChainCount) -> MinimizationResult {
        MinimizationResult {
            k,
            a,
            min_ck: BigUint::from(self.min),
            mk,
            families: self.families,
            minimizers: self.minimizers,
            centred_minimizers: self.centred,
            all_minimizers_centred: self.minimizers == self.centred,
            sample: self.sample.iter().map(|&m| mp.members(m)).collect(),
        }
    }
}

/// Minimum of `c_k` over every `a`-element family, with each minimizer
/// classified as centred or not.
pub fn exhaustive_minimize(poset: &GradedPoset, k: usize, a: usize) -> Result<MinimizationResult> {
    let mp = MaskPoset::new(poset)?;
    if a > mp.len() {
        return Err(Error::InvalidArgument(format!("a = {a} exceeds |P| = {}", mp.len())));
    }
    let families = binomial(mp.len(), a);
    if families > BigUint::from(MAX_FAMILIES) {
        return Err(Error::ResourceGuard(format!(
            "C({}, {a}) = {families} families exceed the limit of {MAX_FAMILIES}",
            mp.len()
        )));
    }
    let mk = MkCurve::new(&RankProfile::from_poset(poset), k)?.eval(&BigUint::from(a))?;
    let mut acc = Accumulator::new();
    for mask in combinations(mp.len(), a) {
        acc.families += 1;
        acc.min = acc.min.min(mp.count_chains(mask, k));
    }
    for mask in combinations(mp.len(), a) {
        if mp.count_chains(mask, k) == acc.min {
            acc.add_minimizer(mask, mp.is_centred(mask));
        }
    }
    Ok(acc.finish(&mp, k, a, mk))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SuiteReport {
    pub ks: Vec<usize>,
    /// One row per `(k, a)`, `k` major.
    pub rows: Vec<MinimizationResult>,
    pub passed: bool,
    pub counterexample: Option<Counterexample>,
}

impl SuiteReport {
    /// `k,a,min_ck,m_k,families,minimizers,centred_minimizers,pass`
    pub fn to_csv(&self) -> String {
        let mut out = String::from("k,a,min_ck,m_k,families,minimizers,centred_minimizers,pass\n");
        for r in &self.rows {
            out.push_str(&format!(
                "{},{},{},{},{},{},{},{}\n",
                r.k,
                r.a,
                r.min_ck,
                r.mk,
                r.families,
                r.minimizers,
                r.centred_minimizers,
                u8::from(r.passes())
            ));
        }
        out
    }
}

/// Sweeps every family of the poset once per pass: the first pass finds the
/// minimum of `c_k` for each size and `k`, the second classifies minimizers.
pub fn verify_kleitman_suite(poset: &GradedPoset, ks: &[usize]) -> Result<SuiteReport> {
    let mp = MaskPoset::new(poset)?;
    if mp.len() > MAX_SUITE_ELEMENTS {
        return Err(Error::ResourceGuard(format!(
            "full sweeps need at most {MAX_SUITE_ELEMENTS} elements, got {}",
            mp.len()
        )));
    }
    if ks.is_empty() || ks.contains(&0) {
        return Err(Error::InvalidArgument("k values must be positive".into()));
    }
    let profile = RankProfile::from_poset(poset);
    let curves = ks
        .iter()
        .map(|&k| MkCurve::new(&profile, k))
        .collect::<Result<Vec<_>>>()?;
    let len = mp.len();
    let mut acc: Vec<Vec<Accumulator>> = ks.iter().map(|_| (0..=len).map(|_| Accumulator::new()).collect()).collect();

    for mask in 0..=mp.full_mask() {
        let a = mask.count_ones() as usize;
        for (ki, &k) in ks.iter().enumerate() {
            let slot = &mut acc[ki][a];
            slot.families += 1;
            slot.min = slot.min.min(mp.count_chains(mask, k));
        }
    }
    for mask in 0..=mp.full_mask() {
        let a = mask.count_ones() as usize;
        let mut centred = None;
        for (ki, &k) in ks.iter().enumerate() {
            if mp.count_chains(mask, k) == acc[ki][a].min {
                let c = *centred.get_or_insert_with(|| mp.is_centred(mask));
                acc[ki][a].add_minimizer(mask, c);
            }
        }
    }

    let mut rows = Vec::new();
    let mut counterexample = None;
    for (ki, (per_a, curve)) in acc.into_iter().zip(&curves).enumerate() {
        let k = ks[ki];
        for (a, slot) in per_a.into_iter().enumerate() {
            let mk = curve.eval(&BigUint::from(a))?;
            let row = slot.finish(&mp, k, a, mk);
            if counterexample.is_none() && !row.passes() {
                counterexample = Some(suite_counterexample(&mp, &row)?);
            }
            rows.push(row);
        }
    }
    Ok(SuiteReport {
        ks: ks.to_vec(),
        passed: counterexample.is_none(),
        rows,
        counterexample,
    })
}

fn suite_counterexample(mp: &MaskPoset<'_>, row: &MinimizationResult) -> Result<Counterexample> {
    let reason = if !row.min_matches() {
        "minimum differs from m_k(a)"
    } else {
        "a minimizer is not centred"
    };
    let members = row
        .sample
        .iter()
        .find(|m| !row.min_matches() || !mp.is_centred(mp.mask_of(m.iter().copied())))
        .cloned()
        .or_else(|| {
            // the offending minimizer fell outside the sample; search again
            combinations(mp.len(), row.a)
                .find(|&m| BigUint::from(mp.count_chains(m, row.k)) == row.min_ck && !mp.is_centred(m))
                .map(|m| mp.members(m))
        })
        .ok_or_else(|| Error::Invariant("no witness for a failed row".into()))?;
    Ok(Counterexample {
        poset: None,
        k: row.k,
        ck: mp.count_chains_exact(mp.mask_of(members.iter().copied()), row.k),
        members,
        mk: row.mk.clone(),
        seed: None,
        reason: reason.into(),
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ErdosKatonaRow {
    pub t: usize,
    #[serde(serialize_with = "crate::report::ser_biguint")]
    pub mk: ChainCount,
    #[serde(serialize_with = "crate::report::ser_biguint")]
    pub expected: ChainCount,
    /// Exhaustive minimum when the lattice is small enough.
    #[serde(serialize_with = "ser_opt_biguint")]
    pub exhaustive: Option<ChainCount>,
}

fn ser_opt_biguint<S: serde::Serializer>(x: &Option<BigUint>, s: S) -> std::result::Result<S::Ok, S::Error> {
    match x {
        Some(v) => s.serialize_some(&v.to_string()),
        None => s.serialize_none(),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ErdosKatonaReport {
    pub n: usize,
    pub rows: Vec<ErdosKatonaRow>,
    pub holds: bool,
}

/// Largest `n` for which [`erdos_katona_check`] also minimises exhaustively.
pub const ERDOS_KATONA_EXHAUSTIVE_N: usize = 4;

/// A family of `C(n, ⌊n/2⌋) + t` subsets of `[n]` has at least
/// `t ⌈(n+1)/2⌉` comparable pairs, for `t` up to the second breakpoint.
pub fn erdos_katona_check(n: usize) -> Result<ErdosKatonaReport> {
    let profile = crate::lattices::boolean_profile(n);
    let curve = MkCurve::new(&profile, 2)?;
    let middle = binomial(n, n / 2).to_usize().expect("small n");
    let second = if n == 0 { middle } else { a_ell(&profile, 2)?.to_usize().expect("small n") };
    let lattice = (n <= ERDOS_KATONA_EXHAUSTIVE_N)
        .then(|| crate::lattices::boolean_lattice(n))
        .transpose()?;
    let slope = (n + 1).div_ceil(2);
    let mut rows = Vec::new();
    for t in 0..=second - middle {
        let a = middle + t;
        let exhaustive = match &lattice {
            Some(p) => Some(exhaustive_minimize(p, 2, a)?.min_ck),
            None => None,
        };
        rows.push(ErdosKatonaRow {
            t,
            mk: curve.eval(&BigUint::from(a))?,
            expected: BigUint::from(t * slope),
            exhaustive,
        });
    }
    let holds = rows
        .iter()
        .all(|r| r.mk == r.expected && r.exhaustive.as_ref().is_none_or(|e| *e == r.mk));
    Ok(ErdosKatonaReport { n, rows, holds })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattices::{boolean_lattice, enumerate_subspaces};

    #[test]
    fn minimization_examples() {
        let b3 = boolean_lattice(3).unwrap();
        let r = exhaustive_minimize(&b3, 2, 4).unwrap();
        assert_eq!(r.families, 70);
        assert_eq!(r.min_ck, BigUint::from(2u32));
        assert!(r.min_matches() && r.all_minimizers_centred);

        let r = exhaustive_minimize(&b3, 2, 3).unwrap();
        assert!(r.min_ck.is_zero() && r.passes());

        let b4 = boolean_lattice(4).unwrap();
        let r = exhaustive_minimize(&b4, 2, 7).unwrap();
        assert_eq!(r.families, 11440);
        assert_eq!(r.min_ck, BigUint::from(3u32));
        assert!(r.passes());
    }

    #[test]
    fn suites() {
        let b3 = boolean_lattice(3).unwrap();
        let r = verify_kleitman_suite(&b3, &[2, 3, 4]).unwrap();
        assert!(r.passed);
        assert_eq!(r.rows.len(), 3 * 9);
        let f22 = enumerate_subspaces(2, 2).unwrap().into_poset();
        assert!(verify_kleitman_suite(&f22, &[2, 3]).unwrap().passed);
    }

    #[test]
    fn suite_agrees_with_single_minimizations() {
        let b3 = boolean_lattice(3).unwrap();
        let suite = verify_kleitman_suite(&b3, &[2]).unwrap();
        for row in &suite.rows {
            let single = exhaustive_minimize(&b3, 2, row.a).unwrap();
            assert_eq!(&single, row);
        }
    }

    #[test]
    fn erdos_katona_small() {
        let r = erdos_katona_check(3).unwrap();
        assert!(r.holds);
        let t1 = &r.rows[1];
        assert_eq!((t1.t, t1.mk.clone()), (1, BigUint::from(2u32)));
        assert_eq!(r.rows[3].mk, BigUint::from(6u32));
        assert!(r.rows[0].mk.is_zero());
        assert!(erdos_katona_check(0).unwrap().holds);
    }

    #[test]
    fn guards() {
        let b4 = boolean_lattice(4).unwrap();
        assert!(exhaustive_minimize(&b4, 2, 17).is_err());
        let b5 = boolean_lattice(5).unwrap();
        assert!(matches!(verify_kleitman_suite(&b5, &[2]), Err(Error::ResourceGuard(_))));
        assert!(verify_kleitman_suite(&b4, &[0]).is_err());
    }
}
