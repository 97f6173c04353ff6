//! Text descriptors for posets (`boolean:N`, `subspace:Q,N`, or the JSON form
//! `{"type": "boolean", "n": 4}`), start distributions and families.

use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::compression::RankDistribution;
use crate::error::{Error, Result};
use crate::lattices::{boolean_lattice, boolean_profile, enumerate_subspaces, subspace_profile};
use crate::poset::{ElementId, Family, GradedPoset, RankProfile, RankSet};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum PosetDescriptor {
    Boolean { n: usize },
    Subspace { q: u32, n: usize },
}

impl PosetDescriptor {
    /// Materialises every element; subject to the lattice size guards.
    pub fn build(&self) -> Result<GradedPoset> {
        match *self {
            PosetDescriptor::Boolean { n } => boolean_lattice(n),
            PosetDescriptor::Subspace { q, n } => Ok(enumerate_subspaces(q, n)?.into_poset()),
        }
    }

    /// Closed-form level sizes and pair counts; no enumeration.
    pub fn profile(&self) -> Result<RankProfile> {
        match *self {
            PosetDescriptor::Boolean { n } => Ok(boolean_profile(n)),
            PosetDescriptor::Subspace { q, n } => subspace_profile(q as u64, n),
        }
    }
}

impl fmt::Display for PosetDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PosetDescriptor::Boolean { n } => write!(f, "boolean:{n}"),
            PosetDescriptor::Subspace { q, n } => write!(f, "subspace:{q},{n}"),
        }
    }
}

fn parse_list<T: FromStr>(s: &str, what: &str) -> Result<Vec<T>> {
    if s.trim().is_empty() {
        return Ok(Vec::new());
    }
    s.split(',')
        .map(|t| {
            t.trim()
                .parse()
                .map_err(|_| Error::Parse(format!("bad {what} `{t}`")))
        })
        .collect()
}

impl FromStr for PosetDescriptor {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.starts_with('{') {
            return serde_json::from_str(s).map_err(|e| Error::Parse(format!("poset descriptor: {e}")));
        }
        let (kind, args) = s
            .split_once(':')
            .ok_or_else(|| Error::Parse(format!("expected `boolean:N` or `subspace:Q,N`, got `{s}`")))?;
        let args: Vec<usize> = parse_list(args, "number")?;
        match (kind, args.as_slice()) {
            ("boolean", [n]) => Ok(PosetDescriptor::Boolean { n: *n }),
            ("subspace", [q, n]) => Ok(PosetDescriptor::Subspace {
                q: u32::try_from(*q).map_err(|_| Error::Parse("field order too large".into()))?,
                n: *n,
            }),
            _ => Err(Error::Parse(format!("unknown poset descriptor `{s}`"))),
        }
    }
}

/// Start distribution for compression.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum StartSpec {
    /// `levels:i,j,...`, the characteristic vector of those ranks.
    Levels(RankSet),
    /// `file:<path>`, a JSON array of probabilities (`"num/den"` strings or integers).
    File(PathBuf),
    /// `random`, uniform counts on every level (needs a seed).
    Random,
}

impl FromStr for StartSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if let Some(rest) = s.strip_prefix("levels:") {
            Ok(StartSpec::Levels(RankSet::new(parse_list(rest, "rank")?)))
        } else if let Some(rest) = s.strip_prefix("file:") {
            Ok(StartSpec::File(rest.into()))
        } else if s == "random" {
            Ok(StartSpec::Random)
        } else {
            Err(Error::Parse(format!("expected `levels:i,j`, `file:<path>` or `random`, got `{s}`")))
        }
    }
}

pub fn parse_rational(s: &str) -> Result<BigRational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("bad rational `{s}`"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d == BigInt::from(0) {
                return Err(bad());
            }
            Ok(BigRational::new(n, d))
        }
        None => Ok(BigRational::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

#[derive(Deserialize)]
#[serde(untagged)]
enum Coordinate {
    Int(i64),
    Text(String),
}

/// Reads a JSON array of probabilities.
pub fn parse_distribution_json(profile: &RankProfile, text: &str) -> Result<RankDistribution> {
    let coords: Vec<Coordinate> = serde_json::from_str(text)?;
    let p = coords
        .into_iter()
        .map(|c| match c {
            Coordinate::Int(v) => Ok(BigRational::from_integer(v.into())),
            Coordinate::Text(t) => parse_rational(&t),
        })
        .collect::<Result<Vec<_>>>()?;
    RankDistribution::from_probabilities(profile, &p)
}

/// A family: `levels:i,j`, `ids:3,5,6` or `random:a` (needs a seed).
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FamilySpec {
    Levels(RankSet),
    Ids(Vec<ElementId>),
    Random(usize),
}

impl FromStr for FamilySpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if let Some(rest) = s.strip_prefix("levels:") {
            Ok(FamilySpec::Levels(RankSet::new(parse_list(rest, "rank")?)))
        } else if let Some(rest) = s.strip_prefix("ids:") {
            Ok(FamilySpec::Ids(parse_list::<usize>(rest, "element")?.into_iter().map(ElementId).collect()))
        } else if let Some(rest) = s.strip_prefix("random:") {
            Ok(FamilySpec::Random(rest.trim().parse().map_err(|_| Error::Parse(format!("bad size `{rest}`")))?))
        } else {
            Err(Error::Parse(format!("expected `levels:..`, `ids:..` or `random:a`, got `{s}`")))
        }
    }
}

impl FamilySpec {
    pub fn build<'p>(&self, poset: &'p GradedPoset, seed: Option<u64>) -> Result<Family<'p>> {
        match self {
            FamilySpec::Levels(ranks) => {
                if let Some(r) = ranks.max().filter(|&r| r > poset.n()) {
                    return Err(Error::RankOutOfRange { rank: r, n: poset.n() });
                }
                Ok(Family::from_levels(poset, ranks))
            }
            FamilySpec::Ids(ids) => Family::new(poset, ids.iter().copied()),
            FamilySpec::Random(a) => {
                use rand::seq::index::sample;
                use rand::SeedableRng;
                let seed = seed.ok_or_else(|| Error::InvalidArgument("random families need --seed".into()))?;
                if *a > poset.len() {
                    return Err(Error::InvalidArgument(format!("a = {a} exceeds |P| = {}", poset.len())));
                }
                let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
                Family::new(poset, sample(&mut rng, poset.len(), *a).into_iter().map(ElementId))
            }
        }
    }
}
