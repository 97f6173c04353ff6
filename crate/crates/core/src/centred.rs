//! Centred orderings of ranks, the nested extremal families `X_a`, the
//! minimum chain-count function `m_k` and the centredness predicate.

use std::fmt::Write as _;

use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::poset::{ChainCount, ElementId, Family, GradedPoset, RankProfile, RankSet};

/// `|2r - n|`, twice the distance of rank `r` from the middle.
pub fn distance2(r: usize, n: usize) -> usize {
    (2 * r).abs_diff(n)
}

/// An ordering `μ: [n+1] → [0, n]` of the ranks with `|μ(ℓ) - n/2|`
/// nondecreasing in `ℓ`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CentredOrdering {
    n: usize,
    mu: Vec<usize>,
}

impl CentredOrdering {
    /// `μ₋(ℓ) = ⌊(n + (-1)^ℓ ℓ)/2⌋` for odd `n`, `⌈(n + (-1)^ℓ ℓ)/2⌉` for even `n`.
    pub fn minus(n: usize) -> Self {
        let mu = (1..=n as i64 + 1)
            .map(|l| {
                let signed = if l % 2 == 0 { l } else { -l };
                let numer = n as i64 + signed;
                let v = if n % 2 == 1 {
                    numer.div_euclid(2)
                } else {
                    (numer + 1).div_euclid(2)
                };
                v as usize
            })
            .collect();
        CentredOrdering { n, mu }
    }

    /// `μ₊ = n - μ₋`.
    pub fn plus(n: usize) -> Self {
        Self::minus(n).mirrored()
    }

    pub fn new(n: usize, mu: Vec<usize>) -> Result<Self> {
        let mut seen = vec![false; n + 1];
        if mu.len() != n + 1 {
            return Err(Error::InvalidArgument(format!(
                "ordering of [0,{n}] needs {} entries",
                n + 1
            )));
        }
        for &r in &mu {
            if r > n || std::mem::replace(&mut seen[r], true) {
                return Err(Error::InvalidArgument(format!("{mu:?} is not a permutation of [0,{n}]")));
            }
        }
        if mu.windows(2).any(|w| distance2(w[0], n) > distance2(w[1], n)) {
            return Err(Error::InvalidArgument(format!(
                "{mu:?} is not ordered by distance from the middle"
            )));
        }
        Ok(CentredOrdering { n, mu })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// `μ(ℓ)` for `1 <= ℓ <= n + 1`.
    pub fn at(&self, l: usize) -> usize {
        self.mu[l - 1]
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.mu
    }

    /// `μ⁻¹(r)`, 1-indexed.
    pub fn position(&self, r: usize) -> Option<usize> {
        self.mu.iter().position(|&x| x == r).map(|p| p + 1)
    }

    /// `μ([ℓ]) = {μ(1), ..., μ(ℓ)}`.
    pub fn prefix(&self, l: usize) -> RankSet {
        RankSet::new(self.mu[..l].iter().copied())
    }

    pub fn mirrored(&self) -> Self {
        CentredOrdering {
            n: self.n,
            mu: self.mu.iter().map(|&r| self.n - r).collect(),
        }
    }
}

/// The centred `ℓ`-element subsets of `[0, n]`: `μ₋([ℓ])` and `μ₊([ℓ])`, deduplicated.
pub fn centred_rank_sets(n: usize, l: usize) -> Result<Vec<RankSet>> {
    if l == 0 || l > n + 1 {
        return Err(Error::InvalidArgument(format!("need 1 <= ℓ <= {}", n + 1)));
    }
    let a = CentredOrdering::minus(n).prefix(l);
    let b = CentredOrdering::plus(n).prefix(l);
    Ok(if a == b { vec![a] } else { vec![a, b] })
}

/// Centredness of a set of ranks as a subset of the chain `0 < ... < n`.
/// Full or empty levels make the pairing condition vacuous, so only the
/// closure condition is checked.
pub fn is_centred_rank_set(n: usize, ranks: &RankSet) -> bool {
    let Some(dmax) = ranks.iter().map(|r| distance2(r, n)).max() else {
        return true;
    };
    (0..=n).all(|r| distance2(r, n) >= dmax || ranks.contains(r))
}

/// Breakpoints `a_0 = 0, a_1, ..., a_{n+1} = |P|` along `ordering`.
pub fn breakpoints(profile: &RankProfile, ordering: &CentredOrdering) -> Vec<BigUint> {
    let mut acc = BigUint::zero();
    let mut out = vec![acc.clone()];
    for &r in ordering.as_slice() {
        acc += profile.level_size(r);
        out.push(acc.clone());
    }
    out
}

/// `a_ℓ`, the number of elements in the `ℓ` largest rank levels. Fails if the
/// two centred `ℓ`-sets give different sums (the profile is not symmetric).
pub fn a_ell(profile: &RankProfile, l: usize) -> Result<ChainCount> {
    let n = profile.n();
    if l > n + 1 {
        return Err(Error::InvalidArgument(format!("need ℓ <= {}", n + 1)));
    }
    let minus = &breakpoints(profile, &CentredOrdering::minus(n))[l];
    let plus = &breakpoints(profile, &CentredOrdering::plus(n))[l];
    if minus != plus {
        return Err(Error::InvalidPoset(format!(
            "centred {l}-sets hold {minus} and {plus} elements; levels are not symmetric"
        )));
    }
    Ok(minus.clone())
}

/// Order in which elements inside one rank level are listed.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum TieOrder {
    #[default]
    Index,
    Reverse,
    Shuffled(u64),
}

/// The family `X_a` of the first `a` elements in the level-by-level listing.
#[derive(Clone, Debug)]
pub struct ExtremalPrefix<'p> {
    pub ordering: CentredOrdering,
    pub a: usize,
    /// Position `ℓ` in the ordering of the partially filled level; 0 when `a = 0`.
    pub boundary_level: usize,
    /// `x_1, ..., x_a`.
    pub listing: Vec<ElementId>,
    pub family: Family<'p>,
}

pub fn build_x<'p>(
    poset: &'p GradedPoset,
    a: usize,
    ordering: &CentredOrdering,
    tie: TieOrder,
) -> Result<ExtremalPrefix<'p>> {
    if a > poset.len() {
        return Err(Error::InvalidArgument(format!(
            "a = {a} exceeds |P| = {}",
            poset.len()
        )));
    }
    if ordering.n() != poset.n() {
        return Err(Error::InvalidArgument("ordering and poset heights differ".into()));
    }
    let mut rng = match tie {
        TieOrder::Shuffled(seed) => Some(ChaCha8Rng::seed_from_u64(seed)),
        _ => None,
    };
    let mut listing = Vec::with_capacity(a);
    let mut boundary_level = 0;
    for l in 1..=poset.n() + 1 {
        if listing.len() == a {
            break;
        }
        boundary_level = l;
        let mut level = poset.level(ordering.at(l)).to_vec();
        match tie {
            TieOrder::Index => {}
            TieOrder::Reverse => level.reverse(),
            TieOrder::Shuffled(_) => level.shuffle(rng.as_mut().expect("seeded")),
        }
        let take = (a - listing.len()).min(level.len());
        listing.extend_from_slice(&level[..take]);
    }
    let family = Family::new(poset, listing.iter().copied())?;
    Ok(ExtremalPrefix {
        ordering: ordering.clone(),
        a,
        boundary_level,
        listing,
        family,
    })
}

/// `(a_{ℓ-1}, base, slope)` per level `ℓ` with
/// `m_k(a) = base + (a - a_{ℓ-1}) * slope` on `(a_{ℓ-1}, a_ℓ]`.
fn level_pieces(profile: &RankProfile, k: usize) -> Result<Vec<(BigUint, BigUint, BigUint)>> {
    if k == 0 {
        return Err(Error::InvalidArgument("k must be positive".into()));
    }
    let ordering = CentredOrdering::minus(profile.n());
    let points = breakpoints(profile, &ordering);
    (1..=profile.n() + 1)
        .map(|l| {
            let inner = ordering.prefix(l - 1);
            let base = profile.ck_of_levels(&inner, k);
            let slope = profile.ck_prime(&RankSet::new([ordering.at(l)]), &inner, k)?;
            Ok((points[l - 1].clone(), base, slope))
        })
        .collect()
}

/// `m_k` as a piecewise-linear function, evaluable at any `0 <= a <= |P|`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MkCurve {
    k: usize,
    total: BigUint,
    pieces: Vec<(BigUint, BigUint, BigUint)>,
}

impl MkCurve {
    pub fn new(profile: &RankProfile, k: usize) -> Result<Self> {
        Ok(MkCurve {
            k,
            total: profile.total(),
            pieces: level_pieces(profile, k)?,
        })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn eval(&self, a: &BigUint) -> Result<ChainCount> {
        if a.is_zero() {
            return Ok(BigUint::zero());
        }
        if *a > self.total {
            return Err(Error::InvalidArgument(format!("a = {a} exceeds |P| = {}", self.total)));
        }
        let (start, base, slope) = self
            .pieces
            .iter()
            .rev()
            .find(|(start, _, _)| a > start)
            .expect("a > 0 = a_0");
        Ok(base + (a - start) * slope)
    }
}

/// `m_k(a)`, the number of `k`-chains in a centred `a`-element family,
/// in closed form: `c_k'(∅, μ([ℓ-1])) + (a - a_{ℓ-1}) c_k'(μ(ℓ), μ([ℓ-1]))`.
pub fn m_k(profile: &RankProfile, k: usize, a: &BigUint) -> Result<ChainCount> {
    MkCurve::new(profile, k)?.eval(a)
}

/// `m_k(0), ..., m_k(|P|)` for one `k`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MkTable {
    pub k: usize,
    #[serde(serialize_with = "crate::report::ser_biguints")]
    pub values: Vec<ChainCount>,
    /// `a_0, ..., a_{n+1}`
    #[serde(serialize_with = "crate::report::ser_biguints")]
    pub breakpoints: Vec<ChainCount>,
}

/// Largest `|P|` for which a full table is built.
pub const MAX_TABLE_LEN: usize = 1 << 20;

impl MkTable {
    pub fn new(profile: &RankProfile, k: usize) -> Result<Self> {
        let total = profile
            .total()
            .to_usize()
            .filter(|&t| t <= MAX_TABLE_LEN)
            .ok_or_else(|| Error::ResourceGuard(format!("|P| exceeds {MAX_TABLE_LEN}")))?;
        let pieces = level_pieces(profile, k)?;
        let mut values = Vec::with_capacity(total + 1);
        values.push(BigUint::zero());
        for (l, (start, base, slope)) in pieces.iter().enumerate() {
            let end = pieces.get(l + 1).map_or(total, |p| p.0.to_usize().expect("<= total"));
            let mut v = base.clone();
            for _ in start.to_usize().expect("<= total")..end {
                v += slope;
                values.push(v.clone());
            }
        }
        debug_assert_eq!(values.len(), total + 1);
        Ok(MkTable {
            k,
            values,
            breakpoints: breakpoints(profile, &CentredOrdering::minus(profile.n())),
        })
    }

    pub fn get(&self, a: usize) -> &ChainCount {
        &self.values[a]
    }

    /// `|P|`.
    pub fn total(&self) -> usize {
        self.values.len() - 1
    }

    /// `Δm_k(a) = m_k(a) - m_k(a-1)` for `a = 1..=|P|` (entry `a - 1`).
    pub fn delta(&self) -> Vec<ChainCount> {
        self.values.windows(2).map(|w| &w[1] - &w[0]).collect()
    }

    /// `a, m_k(a), delta, breakpoint` rows; `delta` is empty for `a = 0`.
    pub fn to_csv(&self) -> String {
        let delta = self.delta();
        let mut out = String::from("a,m_k,delta,breakpoint\n");
        for (a, m) in self.values.iter().enumerate() {
            let d = if a == 0 { String::new() } else { delta[a - 1].to_string() };
            let bp = self.breakpoints.iter().any(|b| b.to_usize() == Some(a));
            writeln!(out, "{a},{m},{d},{}", u8::from(bp)).expect("write to string");
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct JumpCheck {
    pub ell: usize,
    pub a_ell: usize,
    #[serde(serialize_with = "crate::report::ser_biguint")]
    pub before: ChainCount,
    #[serde(serialize_with = "crate::report::ser_biguint")]
    pub after: ChainCount,
    pub strict: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConvexityCertificate {
    pub k: usize,
    /// `Δm_k` is nondecreasing.
    pub convex: bool,
    /// First `a` with `Δm_k(a) > Δm_k(a+1)`.
    pub violation: Option<usize>,
    /// Required strict jumps `Δm_k(a_ℓ) < Δm_k(a_ℓ + 1)` for `k-1 <= ℓ <= n`.
    /// Empty for `k = 1`, where `Δm_1 ≡ 1`.
    pub jumps: Vec<JumpCheck>,
    pub jumps_strict: bool,
    /// Every `a` with `Δm_k(a) != Δm_k(a+1)`.
    pub change_points: Vec<usize>,
}

impl ConvexityCertificate {
    pub fn holds(&self) -> bool {
        self.convex && self.jumps_strict
    }
}

pub fn convexity_certificate(table: &MkTable) -> ConvexityCertificate {
    let delta = table.delta();
    // delta[a - 1] = Δ(a)
    let violation = (1..delta.len()).find(|&a| delta[a - 1] > delta[a]);
    let change_points = (1..delta.len()).filter(|&a| delta[a - 1] != delta[a]).collect();
    let n = table.breakpoints.len() - 2;
    let mut jumps = Vec::new();
    if table.k >= 2 {
        for l in (table.k - 1).max(1)..=n {
            let a_l = table.breakpoints[l].to_usize().expect("table-sized");
            let (before, after) = (delta[a_l - 1].clone(), delta[a_l].clone());
            jumps.push(JumpCheck {
                ell: l,
                a_ell: a_l,
                strict: before < after,
                before,
                after,
            });
        }
    }
    ConvexityCertificate {
        k: table.k,
        convex: violation.is_none(),
        violation,
        jumps_strict: jumps.iter().all(|j| j.strict),
        jumps,
        change_points,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum CentredViolation {
    /// `member` is in the family, `missing` is closer to the middle but is not.
    Distance { member: ElementId, missing: ElementId },
    /// Levels `rank` and `n - rank` are both partially filled and both the
    /// family and its complement contain a comparable pair across them.
    MirrorPairing {
        rank: usize,
        inside: (ElementId, ElementId),
        outside: (ElementId, ElementId),
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CentredVerdict {
    pub centred: bool,
    pub violation: Option<CentredViolation>,
}

pub fn is_centred(family: &Family<'_>) -> CentredVerdict {
    is_centred_by(family.poset(), |x| family.contains(x))
}

/// Centredness of the family given by a membership predicate.
pub fn is_centred_by(poset: &GradedPoset, contains: impl Fn(ElementId) -> bool) -> CentredVerdict {
    let n = poset.n();
    let fail = |v| CentredVerdict {
        centred: false,
        violation: Some(v),
    };

    let farthest = poset
        .elements()
        .filter(|&x| contains(x))
        .max_by_key(|&x| distance2(poset.rank(x), n));
    if let Some(member) = farthest {
        let d = distance2(poset.rank(member), n);
        if let Some(missing) = poset
            .elements()
            .find(|&y| distance2(poset.rank(y), n) < d && !contains(y))
        {
            return fail(CentredViolation::Distance { member, missing });
        }
    }

    let partial = |r: usize| {
        let inside = poset.level(r).iter().filter(|&&x| contains(x)).count();
        inside > 0 && inside < poset.level(r).len()
    };
    for i in (0..=n).take_while(|&i| 2 * i < n) {
        let j = n - i;
        if !(partial(i) && partial(j)) {
            continue;
        }
        let pair = |want: bool| {
            poset.level(i).iter().find_map(|&x| {
                if contains(x) != want {
                    return None;
                }
                poset
                    .level(j)
                    .iter()
                    .find(|&&y| contains(y) == want && poset.less(x, y))
                    .map(|&y| (x, y))
            })
        };
        if let (Some(inside), Some(outside)) = (pair(true), pair(false)) {
            return fail(CentredViolation::MirrorPairing {
                rank: i,
                inside,
                outside,
            });
        }
    }
    CentredVerdict {
        centred: true,
        violation: None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattices::{boolean_lattice, boolean_profile, enumerate_subspaces, subspace_profile};

    fn big(v: &[u64]) -> Vec<BigUint> {
        v.iter().map(|&x| BigUint::from(x)).collect()
    }

    #[test]
    fn orderings() {
        assert_eq!(CentredOrdering::minus(3).as_slice(), &[1, 2, 0, 3]);
        assert_eq!(CentredOrdering::minus(4).as_slice(), &[2, 3, 1, 4, 0]);
        assert_eq!(CentredOrdering::minus(0).as_slice(), &[0]);
        assert_eq!(CentredOrdering::plus(4).as_slice(), &[2, 1, 3, 0, 4]);
        for n in 0..12 {
            let m = CentredOrdering::minus(n);
            let p = CentredOrdering::plus(n);
            assert!(CentredOrdering::new(n, m.as_slice().to_vec()).is_ok());
            assert!(CentredOrdering::new(n, p.as_slice().to_vec()).is_ok());
            for l in 1..=n + 1 {
                assert_eq!(p.at(l), n - m.at(l));
            }
        }
        assert!(CentredOrdering::new(3, vec![0, 1, 2, 3]).is_err());
        assert!(CentredOrdering::new(3, vec![1, 1, 0, 3]).is_err());
    }

    #[test]
    fn centred_sets() {
        assert_eq!(centred_rank_sets(3, 2).unwrap(), vec![RankSet::new([1, 2])]);
        assert_eq!(
            centred_rank_sets(4, 2).unwrap(),
            vec![RankSet::new([2, 3]), RankSet::new([1, 2])]
        );
        assert_eq!(centred_rank_sets(5, 6).unwrap(), vec![RankSet::interval(0, 5)]);
        assert!(centred_rank_sets(3, 0).is_err());
    }

    #[test]
    fn centred_rank_sets_are_the_only_centred_sets() {
        for n in 0..=9usize {
            let chain = GradedPoset::chain(n);
            for mask in 0u64..1 << (n + 1) {
                let ranks = RankSet::from_mask(mask);
                let by_def = is_centred_by(&chain, |x| ranks.contains(x.0)).centred;
                assert_eq!(by_def, is_centred_rank_set(n, &ranks));
                let listed = ranks.is_empty()
                    || centred_rank_sets(n, ranks.len()).unwrap().contains(&ranks);
                assert_eq!(by_def, listed, "n={n} I={ranks}");
                if listed && !ranks.is_empty() {
                    let (lo, hi) = (RankSet::min(&ranks).unwrap(), RankSet::max(&ranks).unwrap());
                    assert_eq!(hi - lo + 1, ranks.len());
                    assert!((lo + hi).abs_diff(n) <= 1);
                }
            }
        }
    }

    #[test]
    fn a_ell_examples() {
        let b3 = boolean_profile(3);
        let got: Vec<BigUint> = (1..=4).map(|l| a_ell(&b3, l).unwrap()).collect();
        assert_eq!(got, big(&[3, 6, 7, 8]));
        assert_eq!(a_ell(&boolean_profile(4), 1).unwrap(), BigUint::from(6u32));
        assert_eq!(
            a_ell(&subspace_profile(2, 3).unwrap(), 2).unwrap(),
            BigUint::from(14u32)
        );
    }

    #[test]
    fn build_x_examples() {
        let b3 = boolean_lattice(3).unwrap();
        let x4 = build_x(&b3, 4, &CentredOrdering::minus(3), TieOrder::Index).unwrap();
        assert_eq!(
            x4.listing,
            [0b001, 0b010, 0b100, 0b011].map(ElementId).to_vec()
        );
        assert_eq!(x4.boundary_level, 2);
        assert!(is_centred(&x4.family).centred);
        let x0 = build_x(&b3, 0, &CentredOrdering::minus(3), TieOrder::Index).unwrap();
        assert!(x0.family.is_empty());
        let x8 = build_x(&b3, 8, &CentredOrdering::minus(3), TieOrder::Index).unwrap();
        assert_eq!(x8.family, Family::full(&b3));
        assert!(build_x(&b3, 9, &CentredOrdering::minus(3), TieOrder::Index).is_err());
    }

    #[test]
    fn mk_table_boolean_three() {
        let p = boolean_profile(3);
        let t2 = MkTable::new(&p, 2).unwrap();
        assert_eq!(t2.values, big(&[0, 0, 0, 0, 2, 4, 6, 12, 19]));
        assert_eq!(t2.delta(), big(&[0, 0, 0, 2, 2, 2, 6, 7]));
        let t3 = MkTable::new(&p, 3).unwrap();
        assert_eq!(t3.get(7), &BigUint::from(6u32));
        assert_eq!(t3.get(8), &BigUint::from(18u32));
        for a in 0..=8u32 {
            assert_eq!(&m_k(&p, 2, &BigUint::from(a)).unwrap(), t2.get(a as usize));
        }
        assert!(m_k(&p, 2, &BigUint::from(9u32)).is_err());
        assert!(MkTable::new(&p, 0).is_err());
    }

    #[test]
    fn mk_matches_direct_count_for_every_ordering_and_tie() {
        let cases: Vec<GradedPoset> = vec![
            boolean_lattice(3).unwrap(),
            boolean_lattice(4).unwrap(),
            enumerate_subspaces(2, 3).unwrap().into_poset(),
            enumerate_subspaces(3, 2).unwrap().into_poset(),
        ];
        for poset in &cases {
            let profile = RankProfile::from_poset(poset);
            let n = poset.n();
            for k in 1..=n + 2 {
                let table = MkTable::new(&profile, k).unwrap();
                for a in 0..=poset.len() {
                    for ordering in [CentredOrdering::minus(n), CentredOrdering::plus(n)] {
                        for tie in [TieOrder::Index, TieOrder::Reverse, TieOrder::Shuffled(a as u64)] {
                            let x = build_x(poset, a, &ordering, tie).unwrap();
                            assert_eq!(&x.family.count_chains(k), table.get(a));
                            assert!(is_centred(&x.family).centred);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn convexity_examples() {
        let cert = convexity_certificate(&MkTable::new(&boolean_profile(3), 2).unwrap());
        assert!(cert.holds());
        let at: Vec<usize> = cert.jumps.iter().map(|j| j.a_ell).collect();
        assert_eq!(at, vec![3, 6, 7]);
        assert_eq!(cert.change_points, vec![3, 6, 7]);

        let flat = MkTable::new(&boolean_profile(3), 5).unwrap();
        assert!(flat.delta().iter().all(Zero::is_zero));
        let flat_cert = convexity_certificate(&flat);
        assert!(flat_cert.holds() && flat_cert.jumps.is_empty());

        assert!(convexity_certificate(&MkTable::new(&boolean_profile(4), 2).unwrap()).holds());
        let linear = convexity_certificate(&MkTable::new(&boolean_profile(4), 1).unwrap());
        assert!(linear.holds() && linear.jumps.is_empty());
    }

    #[test]
    fn erdos_bound_is_a_k_minus_one() {
        for n in 0..=10 {
            let p = boolean_profile(n);
            for k in 2..=n + 1 {
                let t = MkTable::new(&p, k).unwrap();
                let last_zero = t.values.iter().rposition(Zero::is_zero).unwrap();
                assert_eq!(BigUint::from(last_zero), a_ell(&p, k - 1).unwrap());
            }
        }
    }

    #[test]
    fn is_centred_examples() {
        let b4 = boolean_lattice(4).unwrap();
        let p2: Vec<ElementId> = b4.level(2).to_vec();
        let with = |extra: &[usize]| {
            Family::new(&b4, p2.iter().copied().chain(extra.iter().map(|&m| ElementId(m)))).unwrap()
        };
        assert!(is_centred(&with(&[0b0001])).centred);

        let v = is_centred(&with(&[0b0000]));
        assert!(!v.centred);
        assert!(matches!(v.violation, Some(CentredViolation::Distance { .. })));

        let nested = with(&[0b0001, 0b0111]);
        let v = is_centred(&nested);
        assert!(matches!(v.violation, Some(CentredViolation::MirrorPairing { rank: 1, .. })));
        assert_eq!(nested.count_chains(2), BigUint::from(7u32));

        let apart = with(&[0b0001, 0b1110]);
        assert!(is_centred(&apart).centred);
        assert_eq!(apart.count_chains(2), BigUint::from(6u32));
        let m2 = MkTable::new(&boolean_profile(4), 2).unwrap();
        assert_eq!(m2.get(8), &BigUint::from(6u32));
    }

    #[test]
    fn mk_csv_rows() {
        let csv = MkTable::new(&boolean_profile(3), 2).unwrap().to_csv();
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines[0], "a,m_k,delta,breakpoint");
        assert_eq!(lines[1], "0,0,,1");
        assert_eq!(lines[4], "3,0,0,1");
        assert_eq!(lines[9], "8,19,7,1");
    }
}
