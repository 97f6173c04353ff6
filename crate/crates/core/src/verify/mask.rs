use num_bigint::BigUint;

use crate::error::{Error, Result};
use crate::poset::{ElementId, GradedPoset};

/// Largest chain length handled by the mask counters.
pub const MAX_MASK_K: usize = 65;

/// A graded poset of at most 64 elements re-indexed level by level, so that
/// increasing bit index is a linear extension. Families are `u64` masks.
#[derive(Clone, Debug)]
pub struct MaskPoset<'p> {
    poset: &'p GradedPoset,
    ids: Vec<ElementId>,
    bit_of: Vec<u32>,
    below: Vec<u64>,
    above: Vec<u64>,
}

fn bits(mut m: u64) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        (m != 0).then(|| {
            let b = m.trailing_zeros() as usize;
            m &= m - 1;
            b
        })
    })
}

impl<'p> MaskPoset<'p> {
    pub fn new(poset: &'p GradedPoset) -> Result<Self> {
        if poset.len() > 64 {
            return Err(Error::ResourceGuard(format!(
                "mask search needs at most 64 elements, got {}",
                poset.len()
            )));
        }
        let ids: Vec<ElementId> = (0..=poset.n()).flat_map(|r| poset.level(r).iter().copied()).collect();
        let mut bit_of = vec![0u32; poset.len()];
        for (b, x) in ids.iter().enumerate() {
            bit_of[x.0] = b as u32;
        }
        let mask_of = |set: &fixedbitset::FixedBitSet| set.ones().fold(0u64, |m, x| m | 1 << bit_of[x]);
        let below = ids.iter().map(|&x| mask_of(poset.below(x))).collect();
        let above = ids.iter().map(|&x| mask_of(poset.above(x))).collect();
        Ok(MaskPoset {
            poset,
            ids,
            bit_of,
            below,
            above,
        })
    }

    pub fn poset(&self) -> &'p GradedPoset {
        self.poset
    }

    pub fn len(&self) -> usize {
        self.ids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ids.is_empty()
    }

    pub fn full_mask(&self) -> u64 {
        if self.len() == 64 {
            u64::MAX
        } else {
            (1u64 << self.len()) - 1
        }
    }

    pub fn element(&self, bit: usize) -> ElementId {
        self.ids[bit]
    }

    pub fn bit(&self, x: ElementId) -> usize {
        self.bit_of[x.0] as usize
    }

    pub fn members(&self, mask: u64) -> Vec<ElementId> {
        let mut out: Vec<ElementId> = bits(mask).map(|b| self.ids[b]).collect();
        out.sort();
        out
    }

    pub fn mask_of(&self, xs: impl IntoIterator<Item = ElementId>) -> u64 {
        xs.into_iter().fold(0, |m, x| m | 1 << self.bit(x))
    }

    /// `c_k` of the family `mask`, by dynamic programming over chain tops.
    pub fn count_chains(&self, mask: u64, k: usize) -> u128 {
        self.chains_in(mask, k, &self.below)
    }

    fn chains_in(&self, mask: u64, k: usize, below: &[u64]) -> u128 {
        match k {
            0 => return 1,
            1 => return mask.count_ones() as u128,
            _ => {}
        }
        let mut ends = [0u128; 64];
        for b in bits(mask) {
            ends[b] = 1;
        }
        for _ in 1..k {
            let mut next = [0u128; 64];
            for b in bits(mask) {
                next[b] = bits(below[b] & mask).map(|w| ends[w]).sum();
            }
            ends = next;
        }
        bits(mask).map(|b| ends[b]).sum()
    }

    /// Number of `j`-chains (`1 <= j <= k`) in `within ∪ {x}` with `x` as
    /// an end, on the side given by `rel`.
    fn one_sided(&self, x: usize, within: u64, k: usize, rel: &[u64], toward: &[u64]) -> [u128; MAX_MASK_K] {
        let set = rel[x] & within;
        let mut out = [0u128; MAX_MASK_K];
        out[1] = 1;
        if k < 2 || set == 0 {
            return out;
        }
        let mut ends = [0u128; 64];
        for b in bits(set) {
            ends[b] = 1;
        }
        out[2] = set.count_ones() as u128;
        for j in 3..=k {
            let mut next = [0u128; 64];
            for b in bits(set) {
                next[b] = bits(toward[b] & set).map(|w| ends[w]).sum();
            }
            ends = next;
            out[j] = bits(set).map(|b| ends[b]).sum();
        }
        out
    }

    /// Number of `k`-chains of `within ∪ {x}` that contain `x`.
    pub fn chains_through(&self, x: usize, within: u64, k: usize) -> u128 {
        assert!(k < MAX_MASK_K, "k too large for mask counters");
        if k == 0 {
            return 0;
        }
        let down = self.one_sided(x, within, k, &self.below, &self.below);
        let up = self.one_sided(x, within, k, &self.above, &self.above);
        (1..=k).map(|s| down[s] * up[k + 1 - s]).sum()
    }

    pub fn count_chains_exact(&self, mask: u64, k: usize) -> BigUint {
        crate::poset::Family::new(self.poset, self.members(mask))
            .expect("members belong to the poset")
            .count_chains(k)
    }

    pub fn is_centred(&self, mask: u64) -> bool {
        crate::centred::is_centred_by(self.poset, |x| mask >> self.bit(x) & 1 == 1).centred
    }
}

/// Every `a`-subset of `{0..len}` as a mask, in colexicographic order.
pub fn combinations(len: usize, a: usize) -> impl Iterator<Item = u64> {
    assert!(len <= 64);
    let limit = (1u128 << len) - 1;
    let mut next = (a <= len).then(|| (1u128 << a) - 1);
    std::iter::from_fn(move || {
        let cur = next?;
        next = if cur == 0 {
            None
        } else {
            // Gosper's hack
            let c = cur & cur.wrapping_neg();
            let r = cur + c;
            Some((((r ^ cur) >> 2) / c) | r).filter(|&n| n <= limit)
        };
        Some(cur as u64)
    })
}
