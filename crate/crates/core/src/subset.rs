use alloc::vec::Vec;

use fixedbitset::FixedBitSet;

use crate::error::{Error, Result};

/// Dense bit-indexed subset of a flattened product space.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ProductSubset {
    bits: FixedBitSet,
}

impl ProductSubset {
    pub fn empty(universe: usize) -> Self {
        ProductSubset {
            bits: FixedBitSet::with_capacity(universe),
        }
    }

    pub fn full(universe: usize) -> Self {
        let mut bits = FixedBitSet::with_capacity(universe);
        bits.insert_range(..);
        ProductSubset { bits }
    }

    pub fn from_indices(universe: usize, members: impl IntoIterator<Item = usize>) -> Result<Self> {
        let mut s = Self::empty(universe);
        for m in members {
            if m >= universe {
                return Err(Error::InvalidProfile(alloc::format!(
                    "index {m} outside a universe of {universe}"
                )));
            }
            s.bits.insert(m);
        }
        Ok(s)
    }

    pub fn from_fn(universe: usize, mut pred: impl FnMut(usize) -> bool) -> Self {
        let mut s = Self::empty(universe);
        for k in 0..universe {
            if pred(k) {
                s.bits.insert(k);
            }
        }
        s
    }

    /// Size of the ambient space.
    pub fn universe(&self) -> usize {
        self.bits.len()
    }

    pub fn contains(&self, idx: usize) -> bool {
        self.bits.contains(idx)
    }

    pub fn insert(&mut self, idx: usize) {
        self.bits.insert(idx);
    }

    pub fn remove(&mut self, idx: usize) {
        self.bits.set(idx, false);
    }

    pub fn count(&self) -> usize {
        self.bits.count_ones(..)
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_clear()
    }

    pub fn is_full(&self) -> bool {
        self.count() == self.universe()
    }

    pub fn first(&self) -> Option<usize> {
        self.bits.ones().next()
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.bits.ones()
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }

    pub fn union(&self, other: &Self) -> Self {
        debug_assert_eq!(self.universe(), other.universe());
        let mut bits = self.bits.clone();
        bits.union_with(&other.bits);
        ProductSubset { bits }
    }

    pub fn intersection(&self, other: &Self) -> Self {
        debug_assert_eq!(self.universe(), other.universe());
        let mut bits = self.bits.clone();
        bits.intersect_with(&other.bits);
        ProductSubset { bits }
    }

    pub fn difference(&self, other: &Self) -> Self {
        debug_assert_eq!(self.universe(), other.universe());
        let mut bits = self.bits.clone();
        bits.difference_with(&other.bits);
        ProductSubset { bits }
    }

    pub fn complement(&self) -> Self {
        let mut bits = self.bits.clone();
        bits.toggle_range(..);
        ProductSubset { bits }
    }

    pub fn is_subset(&self, other: &Self) -> bool {
        self.bits.is_subset(&other.bits)
    }

    pub fn intersects(&self, other: &Self) -> bool {
        !self.bits.is_disjoint(&other.bits)
    }
}

#[cfg(feature = "serde")]
impl serde::Serialize for ProductSubset {
    fn serialize<S: serde::Serializer>(&self, s: S) -> core::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeSeq;
        let mut seq = s.serialize_seq(Some(self.count()))?;
        for m in self.iter() {
            seq.serialize_element(&m)?;
        }
        seq.end()
    }
}
