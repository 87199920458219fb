use std::cmp::Ordering;
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};

/// A subset of the carrier `{0..n-1}` stored as a bitmask.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ElementSet {
    universe: usize,
    words: Vec<u64>,
}

impl ElementSet {
    pub fn empty(universe: usize) -> Self {
        ElementSet {
            universe,
            words: vec![0; universe.div_ceil(64).max(1)],
        }
    }

    pub fn full(universe: usize) -> Self {
        let mut set = Self::empty(universe);
        for x in 0..universe {
            set.insert(x);
        }
        set
    }

    pub fn singleton(universe: usize, x: usize) -> Self {
        let mut set = Self::empty(universe);
        set.insert(x);
        set
    }

    /// The set `{0}`.
    pub fn zero(universe: usize) -> Self {
        Self::singleton(universe, 0)
    }

    /// Panics if an element is out of range; use [`ElementSet::try_from_elements`]
    /// for untrusted input.
    pub fn from_elements(universe: usize, elements: impl IntoIterator<Item = usize>) -> Self {
        let mut set = Self::empty(universe);
        for x in elements {
            assert!(
                x < universe,
                "element {x} outside carrier of size {universe}"
            );
            set.insert(x);
        }
        set
    }

    pub fn try_from_elements(
        universe: usize,
        elements: impl IntoIterator<Item = usize>,
    ) -> Result<Self> {
        let mut set = Self::empty(universe);
        for x in elements {
            if x >= universe {
                return Err(Error::domain(format!(
                    "element {x} outside carrier of size {universe}"
                )));
            }
            set.insert(x);
        }
        Ok(set)
    }

    /// Builds a set from the low `universe` bits of `mask` (`universe <= 64`).
    pub fn from_mask(universe: usize, mask: u64) -> Self {
        assert!(universe <= 64);
        let mut set = Self::empty(universe);
        set.words[0] = if universe == 64 {
            mask
        } else {
            mask & ((1u64 << universe) - 1)
        };
        set
    }

    /// The low word of the bitmask; only meaningful for carriers of size <= 64.
    pub fn mask(&self) -> u64 {
        self.words[0]
    }

    pub fn universe(&self) -> usize {
        self.universe
    }

    #[inline]
    pub fn contains(&self, x: usize) -> bool {
        x < self.universe && self.words[x / 64] >> (x % 64) & 1 == 1
    }

    #[inline]
    pub fn insert(&mut self, x: usize) -> bool {
        debug_assert!(x < self.universe);
        let fresh = !self.contains(x);
        self.words[x / 64] |= 1 << (x % 64);
        fresh
    }

    pub fn remove(&mut self, x: usize) -> bool {
        let present = self.contains(x);
        self.words[x / 64] &= !(1 << (x % 64));
        present
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn is_full(&self) -> bool {
        self.len() == self.universe
    }

    /// True when the set is exactly `{0}`.
    pub fn is_zero(&self) -> bool {
        self.len() == 1 && self.contains(0)
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.universe).filter(move |&x| self.contains(x))
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }

    pub fn first(&self) -> Option<usize> {
        self.iter().next()
    }

    pub fn union(&self, other: &Self) -> Self {
        self.zip(other, |a, b| a | b)
    }

    pub fn intersection(&self, other: &Self) -> Self {
        self.zip(other, |a, b| a & b)
    }

    pub fn difference(&self, other: &Self) -> Self {
        self.zip(other, |a, b| a & !b)
    }

    pub fn complement(&self) -> Self {
        ElementSet::full(self.universe).difference(self)
    }

    pub fn is_subset(&self, other: &Self) -> bool {
        debug_assert_eq!(self.universe, other.universe);
        self.words
            .iter()
            .zip(&other.words)
            .all(|(a, b)| a & !b == 0)
    }

    pub fn is_disjoint(&self, other: &Self) -> bool {
        self.words.iter().zip(&other.words).all(|(a, b)| a & b == 0)
    }

    fn zip(&self, other: &Self, f: impl Fn(u64, u64) -> u64) -> Self {
        debug_assert_eq!(self.universe, other.universe);
        ElementSet {
            universe: self.universe,
            words: self
                .words
                .iter()
                .zip(&other.words)
                .map(|(&a, &b)| f(a, b))
                .collect(),
        }
    }

    /// Image of the set under `f`.
    pub fn map(&self, universe: usize, f: impl Fn(usize) -> usize) -> Self {
        ElementSet::from_elements(universe, self.iter().map(f))
    }
}

/// Orders by size, then lexicographically by sorted members.
impl Ord for ElementSet {
    fn cmp(&self, other: &Self) -> Ordering {
        self.universe
            .cmp(&other.universe)
            .then(self.len().cmp(&other.len()))
            .then_with(|| self.iter().cmp(other.iter()))
    }
}

impl PartialOrd for ElementSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for ElementSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, x) in self.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, "}}")
    }
}

impl fmt::Debug for ElementSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Serialize for ElementSet {
    fn serialize<S: serde::Serializer>(
        &self,
        serializer: S,
    ) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_seq(self.iter())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basic_operations() {
        let a = ElementSet::from_elements(5, [0, 1, 3]);
        let b = ElementSet::from_elements(5, [0, 3, 4]);
        assert_eq!(a.intersection(&b).to_vec(), vec![0, 3]);
        assert_eq!(a.union(&b).to_vec(), vec![0, 1, 3, 4]);
        assert_eq!(a.difference(&b).to_vec(), vec![1]);
        assert!(ElementSet::zero(5).is_subset(&a));
        assert!(!a.is_subset(&b));
        assert_eq!(a.to_string(), "{0,1,3}");
        assert_eq!(a.complement().to_vec(), vec![2, 4]);
    }

    #[test]
    fn large_universe_spans_words() {
        let mut s = ElementSet::empty(200);
        s.insert(0);
        s.insert(130);
        s.insert(199);
        assert_eq!(s.len(), 3);
        assert_eq!(s.to_vec(), vec![0, 130, 199]);
        assert!(!s.contains(131));
        assert_eq!(ElementSet::full(200).len(), 200);
    }

    #[test]
    fn ordering_is_by_size_then_members() {
        let mut v = [
            ElementSet::from_elements(4, [0, 1, 2]),
            ElementSet::from_elements(4, [0, 2]),
            ElementSet::from_elements(4, [0]),
            ElementSet::from_elements(4, [0, 1]),
        ];
        v.sort();
        let shown: Vec<String> = v.iter().map(|s| s.to_string()).collect();
        assert_eq!(shown, ["{0}", "{0,1}", "{0,2}", "{0,1,2}"]);
    }

    #[test]
    fn rejects_out_of_range() {
        assert!(ElementSet::try_from_elements(3, [0, 3]).is_err());
    }
}
