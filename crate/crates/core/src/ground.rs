//! Ground sets and subset bitmasks.
//!
//! Every object in this crate lives over a ground set {1, ..., n} with n
//! capped small enough for exhaustive sweeps. Subsets are u32 bitmasks
//! where bit k-1 encodes element k; enumeration in ascending bit order
//! doubles as the canonical lexicographic order used for witnesses and
//! argmax tie-breaking.

use crate::error::{DcaError, Result};

/// Default cap on the ground-set size.
pub const DEFAULT_MAX_N: u8 = 20;

/// Hard cap; requests beyond this are clamped.
pub const HARD_MAX_N: u8 = 24;

/// Default cap on `n` for multiple-exchange sweeps, which enumerate all
/// subsets of Y \ X per examined triple.
pub const DEFAULT_MULTI_EXCHANGE_CAP: u8 = 16;

/// The ground set {1, ..., n} together with the cap it was built under.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct GroundSet {
    n: u8,
    max_n: u8,
}

impl GroundSet {
    /// Ground set of size `n` under the default cap.
    pub fn new(n: u8) -> Result<GroundSet> {
        GroundSet::with_cap(n, DEFAULT_MAX_N)
    }

    /// Ground set of size `n` under an explicit cap. The cap itself is
    /// clamped to [`HARD_MAX_N`]. `n` must be at least 1.
    pub fn with_cap(n: u8, max_n: u8) -> Result<GroundSet> {
        let cap = max_n.min(HARD_MAX_N);
        if n == 0 {
            return Err(DcaError::EmptyGround);
        }
        if n > cap {
            return Err(DcaError::CapExceeded { n, max_n: cap });
        }
        Ok(GroundSet { n, max_n: cap })
    }

    /// Internal constructor that permits n = 0, used for the compact
    /// ground of an exchange pair when Y \ X is empty.
    pub(crate) fn relaxed(n: u8, max_n: u8) -> GroundSet {
        debug_assert!(n <= max_n.min(HARD_MAX_N));
        GroundSet { n, max_n }
    }

    pub fn n(&self) -> u8 {
        self.n
    }

    pub fn max_n(&self) -> u8 {
        self.max_n
    }

    /// Number of subsets, 2^n.
    pub fn size(&self) -> usize {
        1usize << self.n
    }

    /// Mask of the whole ground set.
    pub fn full_mask(&self) -> SubsetMask {
        SubsetMask(((1u64 << self.n) - 1) as u32)
    }

    /// All subsets in ascending bit order, from the empty set to the
    /// full ground set.
    pub fn masks(&self) -> impl Iterator<Item = SubsetMask> {
        (0..self.size() as u32).map(SubsetMask)
    }

    /// The elements 1..=n.
    pub fn elements(&self) -> impl Iterator<Item = u8> {
        1..=self.n
    }

    /// Ground set grown by `extra` fresh elements, under the same cap.
    pub fn extended(&self, extra: u8) -> Result<GroundSet> {
        let n2 = self.n as u16 + extra as u16;
        if n2 > self.max_n as u16 {
            return Err(DcaError::CapExceeded { n: n2.min(255) as u8, max_n: self.max_n });
        }
        Ok(GroundSet { n: n2 as u8, max_n: self.max_n })
    }
}

/// A subset of the ground set as a bitmask: bit k-1 encodes element k.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SubsetMask(u32);

impl SubsetMask {
    /// The empty set.
    pub const EMPTY: SubsetMask = SubsetMask(0);

    pub fn from_bits(bits: u32) -> SubsetMask {
        SubsetMask(bits)
    }

    /// Builds a mask from 1-based elements. Rejects zero, elements past
    /// the hard cap, and repeated elements.
    pub fn from_elements(elements: &[u8]) -> Result<SubsetMask> {
        let mut mask = 0u32;
        for &el in elements {
            if el == 0 || el > HARD_MAX_N {
                return Err(DcaError::InvalidElement { el, n: HARD_MAX_N });
            }
            let bit = 1u32 << (el - 1);
            if mask & bit != 0 {
                return Err(DcaError::DuplicateSubset(elements.to_vec()));
            }
            mask |= bit;
        }
        Ok(SubsetMask(mask))
    }

    pub fn bits(self) -> u32 {
        self.0
    }

    pub fn card(self) -> u8 {
        self.0.count_ones() as u8
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn contains(self, el: u8) -> bool {
        debug_assert!(el >= 1);
        self.0 >> (el - 1) & 1 == 1
    }

    /// Mask with element `el` added.
    pub fn with(self, el: u8) -> SubsetMask {
        debug_assert!(el >= 1);
        SubsetMask(self.0 | 1 << (el - 1))
    }

    /// Mask with element `el` removed.
    pub fn without(self, el: u8) -> SubsetMask {
        debug_assert!(el >= 1);
        SubsetMask(self.0 & !(1 << (el - 1)))
    }

    pub fn union(self, other: SubsetMask) -> SubsetMask {
        SubsetMask(self.0 | other.0)
    }

    pub fn intersect(self, other: SubsetMask) -> SubsetMask {
        SubsetMask(self.0 & other.0)
    }

    /// Set difference self \ other.
    pub fn diff(self, other: SubsetMask) -> SubsetMask {
        SubsetMask(self.0 & !other.0)
    }

    pub fn is_subset_of(self, other: SubsetMask) -> bool {
        self.0 & !other.0 == 0
    }

    /// 1-based elements in ascending order.
    pub fn elements(self) -> impl Iterator<Item = u8> {
        let bits = self.0;
        (0u8..32).filter(move |k| bits >> k & 1 == 1).map(|k| k + 1)
    }

    pub fn to_vec(self) -> Vec<u8> {
        self.elements().collect()
    }

    /// All submasks of self, the empty set and self included, in
    /// ascending bit order.
    pub fn subsets(self) -> Submasks {
        Submasks { of: self.0, next: Some(0) }
    }
}

/// Iterator over the submasks of a mask in ascending bit order.
pub struct Submasks {
    of: u32,
    next: Option<u32>,
}

impl Iterator for Submasks {
    type Item = SubsetMask;

    fn next(&mut self) -> Option<SubsetMask> {
        let cur = self.next?;
        // (cur - of) & of steps to the next submask in ascending order
        // and wraps to 0 after the full mask.
        let stepped = cur.wrapping_sub(self.of) & self.of;
        self.next = if stepped == 0 { None } else { Some(stepped) };
        Some(SubsetMask(cur))
    }
}
