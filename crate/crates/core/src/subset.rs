//! Subsets of the ground set `[n]` as 64-bit masks.

use std::cmp::Ordering;
use std::fmt;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

/// Hard cap on the ground-set size.
pub const MAX_GROUND: usize = 64;

/// A set of 1-based ground-set elements. Bit `e - 1` marks element `e`.
///
/// Ordering is lexicographic on the ascending element lists, so
/// `{1,2,4} < {1,3,4,5} < {2,3,5}`.
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash)]
pub struct GroundSubset(u64);

impl GroundSubset {
    pub const EMPTY: Self = Self(0);

    pub fn from_bits(bits: u64) -> Self {
        Self(bits)
    }

    pub fn bits(self) -> u64 {
        self.0
    }

    /// `{1, ..., n}`.
    pub fn full(n: usize) -> Self {
        assert!(n <= MAX_GROUND);
        if n == 64 {
            Self(u64::MAX)
        } else {
            Self((1u64 << n) - 1)
        }
    }

    pub fn singleton(e: usize) -> Self {
        assert!((1..=MAX_GROUND).contains(&e), "element {e} out of range");
        Self(1 << (e - 1))
    }

    pub fn from_elements<I: IntoIterator<Item = usize>>(elements: I) -> Result<Self> {
        let mut bits = 0u64;
        for e in elements {
            if !(1..=MAX_GROUND).contains(&e) {
                return Err(Error::ElementOutOfRange(e));
            }
            bits |= 1 << (e - 1);
        }
        Ok(Self(bits))
    }

    /// Like [`from_elements`](Self::from_elements) but also checks `⊆ [n]`.
    pub fn within(n: usize, elements: &[usize]) -> Result<Self> {
        match elements.iter().find(|&&e| e == 0 || e > n) {
            Some(&e) => Err(Error::ElementOutOfRange(e)),
            None => Self::from_elements(elements.iter().copied()),
        }
    }

    pub fn contains(self, e: usize) -> bool {
        (1..=MAX_GROUND).contains(&e) && self.0 >> (e - 1) & 1 == 1
    }

    pub fn insert(&mut self, e: usize) {
        self.0 |= Self::singleton(e).0;
    }

    pub fn remove(&mut self, e: usize) {
        self.0 &= !Self::singleton(e).0;
    }

    pub fn with(self, e: usize) -> Self {
        Self(self.0 | Self::singleton(e).0)
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn is_subset(self, other: Self) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn is_disjoint(self, other: Self) -> bool {
        self.0 & other.0 == 0
    }

    pub fn union(self, other: Self) -> Self {
        Self(self.0 | other.0)
    }

    pub fn intersection(self, other: Self) -> Self {
        Self(self.0 & other.0)
    }

    pub fn difference(self, other: Self) -> Self {
        Self(self.0 & !other.0)
    }

    /// Largest element, if any.
    pub fn max(self) -> Option<usize> {
        (self.0 != 0).then(|| 64 - self.0.leading_zeros() as usize)
    }

    pub fn min(self) -> Option<usize> {
        (self.0 != 0).then(|| self.0.trailing_zeros() as usize + 1)
    }

    /// Elements in ascending order.
    pub fn iter(self) -> Elements {
        Elements(self.0)
    }

    pub fn to_vec(self) -> Vec<usize> {
        self.iter().collect()
    }
}

impl IntoIterator for GroundSubset {
    type Item = usize;
    type IntoIter = Elements;

    fn into_iter(self) -> Elements {
        self.iter()
    }
}

impl FromIterator<GroundSubset> for GroundSubset {
    fn from_iter<I: IntoIterator<Item = GroundSubset>>(iter: I) -> Self {
        iter.into_iter().fold(Self::EMPTY, Self::union)
    }
}

#[derive(Clone, Debug)]
pub struct Elements(u64);

impl Iterator for Elements {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let e = self.0.trailing_zeros() as usize + 1;
        self.0 &= self.0 - 1;
        Some(e)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let n = self.0.count_ones() as usize;
        (n, Some(n))
    }
}

impl ExactSizeIterator for Elements {}

impl Ord for GroundSubset {
    fn cmp(&self, other: &Self) -> Ordering {
        self.iter().cmp(other.iter())
    }
}

impl PartialOrd for GroundSubset {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for GroundSubset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, e) in self.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, "}}")
    }
}

impl fmt::Debug for GroundSubset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Serialize for GroundSubset {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(self.iter())
    }
}

/// Keeps only inclusion-maximal sets, sorted and deduplicated. Empty sets are
/// dropped.
pub fn maximal_sets<I: IntoIterator<Item = GroundSubset>>(sets: I) -> Vec<GroundSubset> {
    let mut all: Vec<GroundSubset> = sets.into_iter().filter(|s| !s.is_empty()).collect();
    all.sort();
    all.dedup();
    let keep: Vec<GroundSubset> = all
        .iter()
        .copied()
        .filter(|&s| !all.iter().any(|&o| o != s && s.is_subset(o)))
        .collect();
    keep
}

/// Builds a subset from a literal list; panics on bad input. For fixtures.
#[macro_export]
macro_rules! set {
    ($($e:expr),* $(,)?) => {
        $crate::subset::GroundSubset::from_elements([$($e),*]).unwrap()
    };
}
