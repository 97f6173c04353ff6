//! Discrete Jensen inequality for convex functions on an integer interval,
//! with the exact equality case.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::report::rational_string;

/// A finitely supported distribution on the integers with exact probabilities.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntegerDistribution {
    support: Vec<i64>,
    probs: Vec<BigRational>,
}

impl IntegerDistribution {
    /// Merges repeated points and drops zero-probability ones.
    pub fn new(points: impl IntoIterator<Item = (i64, BigRational)>) -> Result<Self> {
        let mut pairs: Vec<(i64, BigRational)> = points.into_iter().collect();
        if pairs.iter().any(|(_, p)| p.is_negative()) {
            return Err(Error::InvalidArgument("negative probability".into()));
        }
        pairs.sort_by_key(|(x, _)| *x);
        let mut support: Vec<i64> = Vec::new();
        let mut probs: Vec<BigRational> = Vec::new();
        for (x, p) in pairs {
            if p.is_zero() {
                continue;
            }
            if support.last() == Some(&x) {
                *probs.last_mut().expect("parallel") += p;
            } else {
                support.push(x);
                probs.push(p);
            }
        }
        let total: BigRational = probs.iter().sum();
        if !total.is_one() {
            return Err(Error::InvalidArgument(format!(
                "probabilities sum to {}",
                rational_string(&total)
            )));
        }
        Ok(IntegerDistribution { support, probs })
    }

    /// Uniform over the given values, with multiplicity.
    pub fn empirical(values: impl IntoIterator<Item = i64>) -> Result<Self> {
        let values: Vec<i64> = values.into_iter().collect();
        if values.is_empty() {
            return Err(Error::InvalidArgument("empty sample".into()));
        }
        let w = BigRational::new(BigInt::one(), BigInt::from(values.len()));
        Self::new(values.into_iter().map(|x| (x, w.clone())))
    }

    pub fn point(x: i64) -> Self {
        IntegerDistribution {
            support: vec![x],
            probs: vec![BigRational::one()],
        }
    }

    pub fn support(&self) -> &[i64] {
        &self.support
    }

    pub fn probabilities(&self) -> &[BigRational] {
        &self.probs
    }

    pub fn min(&self) -> i64 {
        self.support[0]
    }

    pub fn max(&self) -> i64 {
        *self.support.last().expect("nonempty support")
    }

    pub fn mean(&self) -> BigRational {
        self.support
            .iter()
            .zip(&self.probs)
            .map(|(&x, p)| p * BigRational::from_integer(x.into()))
            .sum()
    }

    pub fn expect(&self, f: impl Fn(i64) -> BigRational) -> BigRational {
        self.support.iter().zip(&self.probs).map(|(&x, p)| p * f(x)).sum()
    }
}

/// `f(start), f(start + 1), ...` on a contiguous integer interval.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TabulatedFunction {
    pub start: i64,
    pub values: Vec<BigInt>,
}

impl TabulatedFunction {
    pub fn new(start: i64, values: Vec<BigInt>) -> Self {
        TabulatedFunction { start, values }
    }

    pub fn end(&self) -> i64 {
        self.start + self.values.len() as i64 - 1
    }

    pub fn get(&self, x: i64) -> Option<&BigInt> {
        usize::try_from(x - self.start).ok().and_then(|i| self.values.get(i))
    }

    /// `Δf(x) = f(x) - f(x-1)`.
    pub fn delta(&self, x: i64) -> Option<BigInt> {
        Some(self.get(x)? - self.get(x - 1)?)
    }

    /// First `x` with `Δf(x) > Δf(x+1)`, if any.
    pub fn convexity_violation(&self) -> Option<i64> {
        (self.start + 1..self.end()).find(|&x| self.delta(x) > self.delta(x + 1))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct JensenCheck {
    /// `E[f(X)] >= f(E[X])`.
    pub holds: bool,
    pub strict: bool,
    #[serde(serialize_with = "crate::report::ser_rational")]
    pub expected_value: BigRational,
    #[serde(serialize_with = "crate::report::ser_bigint")]
    pub value_at_mean: BigInt,
    pub mean: i64,
    /// On equality, integers `c <= d` with `Pr(c <= X <= d) = 1` and `Δf`
    /// constant on `[c+1, d]`.
    pub equality_window: Option<(i64, i64)>,
}

pub fn discrete_jensen_check(f: &TabulatedFunction, dist: &IntegerDistribution) -> Result<JensenCheck> {
    if let Some(x) = f.convexity_violation() {
        return Err(Error::NotConvex(x));
    }
    if dist.min() < f.start || dist.max() > f.end() {
        return Err(Error::InvalidArgument(format!(
            "support [{}, {}] leaves the domain [{}, {}]",
            dist.min(),
            dist.max(),
            f.start,
            f.end()
        )));
    }
    let mean = dist.mean();
    if !mean.is_integer() {
        return Err(Error::NonIntegralMean(rational_string(&mean)));
    }
    let mean = i64::try_from(mean.to_integer()).expect("mean lies inside the support hull");
    let expected_value = dist.expect(|x| BigRational::from_integer(f.get(x).expect("in domain").clone()));
    let value_at_mean = f.get(mean).expect("in domain").clone();
    let rhs = BigRational::from_integer(value_at_mean.clone());
    let (c, d) = (dist.min(), dist.max());
    let linear = (c + 1..=d).all(|x| f.delta(x) == f.delta(c + 1));
    Ok(JensenCheck {
        holds: expected_value >= rhs,
        strict: expected_value > rhs,
        equality_window: (expected_value == rhs && linear).then_some((c, d)),
        expected_value,
        value_at_mean,
        mean,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::centred::MkTable;
    use crate::lattices::boolean_profile;
    use proptest::prelude::*;

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    fn half() -> BigRational {
        BigRational::new(1.into(), 2.into())
    }

    #[test]
    fn identity_gives_equality() {
        let f = TabulatedFunction::new(0, ints(&[0, 1, 2, 3, 4, 5]));
        let d = IntegerDistribution::new([(1, half()), (5, half())]).unwrap();
        let r = discrete_jensen_check(&f, &d).unwrap();
        assert!(r.holds && !r.strict);
        assert_eq!(r.equality_window, Some((1, 5)));
    }

    #[test]
    fn mk_table_is_strict_across_a_breakpoint() {
        let t = MkTable::new(&boolean_profile(3), 2).unwrap();
        let f = TabulatedFunction::new(0, t.values.iter().map(|v| BigInt::from(v.clone())).collect());
        let d = IntegerDistribution::new([(2, half()), (4, half())]).unwrap();
        let r = discrete_jensen_check(&f, &d).unwrap();
        assert!(r.strict);
        assert_eq!(r.expected_value, BigRational::one());
        assert_eq!(r.value_at_mean, BigInt::zero());
        assert_eq!(r.equality_window, None);
    }

    #[test]
    fn point_mass() {
        let f = TabulatedFunction::new(-2, ints(&[4, 1, 0, 1, 4]));
        let r = discrete_jensen_check(&f, &IntegerDistribution::point(1)).unwrap();
        assert!(!r.strict);
        assert_eq!(r.equality_window, Some((1, 1)));
    }

    #[test]
    fn rejections() {
        let concave = TabulatedFunction::new(0, ints(&[0, 2, 3]));
        assert!(matches!(
            discrete_jensen_check(&concave, &IntegerDistribution::point(1)),
            Err(Error::NotConvex(1))
        ));
        let f = TabulatedFunction::new(0, ints(&[0, 0, 1]));
        let d = IntegerDistribution::new([(0, half()), (1, half())]).unwrap();
        assert!(matches!(discrete_jensen_check(&f, &d), Err(Error::NonIntegralMean(_))));
        assert!(IntegerDistribution::new([(0, half())]).is_err());
    }

    proptest! {
        #[test]
        fn jensen_on_random_convex_functions(
            slopes in prop::collection::vec(-5i64..5, 1..8),
            centre in 0usize..8,
            pairs in prop::collection::vec((0i64..8, 1u32..4), 1..5),
        ) {
            let mut slopes = slopes;
            slopes.sort();
            let mut values = vec![0i64];
            for s in &slopes {
                values.push(values.last().unwrap() + s);
            }
            let f = TabulatedFunction::new(0, ints(&values));
            let m = (centre % values.len()) as i64;
            let reach = m.min(f.end() - m);
            // symmetric pairs around m keep the mean at m
            let pts: Vec<(i64, u32)> = pairs
                .iter()
                .flat_map(|&(d, w)| {
                    let d = if reach == 0 { 0 } else { d % (reach + 1) };
                    [(m - d, w), (m + d, w)]
                })
                .collect();
            let total: u32 = pts.iter().map(|p| p.1).sum();
            let dist = IntegerDistribution::new(pts.iter().map(|&(x, w)| {
                (x, BigRational::new(w.into(), total.into()))
            })).unwrap();
            prop_assert_eq!(dist.mean(), BigRational::from_integer(m.into()));
            let r = discrete_jensen_check(&f, &dist).unwrap();
            prop_assert!(r.holds);
            // equality exactly when f is affine on the hull of the support
            let (c, d) = (dist.min(), dist.max());
            let affine = (c + 1..=d).all(|x| f.delta(x) == f.delta(c + 1));
            prop_assert_eq!(!r.strict, affine);
        }
    }
}
