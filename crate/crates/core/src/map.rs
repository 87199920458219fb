use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::set::ElementSet;

/// A total map on a carrier `{0..n-1}`, stored as its value array.
///
/// Range checks against a codomain happen where the map is used, since the
/// same type also carries maps between different carriers.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct UnaryMap {
    values: Vec<usize>,
}

impl UnaryMap {
    pub fn new(values: Vec<usize>) -> Self {
        UnaryMap { values }
    }

    pub fn identity(n: usize) -> Self {
        UnaryMap::new((0..n).collect())
    }

    pub fn zero(n: usize) -> Self {
        UnaryMap::new(vec![0; n])
    }

    pub fn constant(n: usize, value: usize) -> Self {
        UnaryMap::new(vec![value; n])
    }

    pub fn domain_order(&self) -> usize {
        self.values.len()
    }

    pub fn values(&self) -> &[usize] {
        &self.values
    }

    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.values[x]
    }

    /// Checks the domain size and that every value lies in `{0..codomain-1}`.
    pub fn check(&self, domain: usize, codomain: usize) -> Result<()> {
        if self.values.len() != domain {
            return Err(Error::SizeMismatch {
                expected: domain,
                found: self.values.len(),
            });
        }
        if let Some((x, &v)) = self.values.iter().enumerate().find(|(_, &v)| v >= codomain) {
            return Err(Error::domain(format!(
                "map value {v} at {x} outside carrier of size {codomain}"
            )));
        }
        Ok(())
    }

    /// `self` after `inner`, i.e. `x -> self(inner(x))`.
    pub fn after(&self, inner: &UnaryMap) -> UnaryMap {
        UnaryMap::new(inner.values.iter().map(|&x| self.values[x]).collect())
    }

    pub fn is_idempotent(&self) -> bool {
        self.values.iter().all(|&v| self.values[v] == v)
    }

    pub fn is_injective(&self) -> bool {
        let mut seen = std::collections::HashSet::new();
        self.values.iter().all(|v| seen.insert(*v))
    }

    pub fn image(&self, codomain: usize) -> ElementSet {
        ElementSet::from_elements(codomain, self.values.iter().copied())
    }

    /// Preimage of `{0}`.
    pub fn kernel(&self) -> ElementSet {
        ElementSet::from_elements(
            self.values.len(),
            self.values
                .iter()
                .enumerate()
                .filter(|(_, &v)| v == 0)
                .map(|(x, _)| x),
        )
    }

    /// Every map `{0..n-1} -> {0..m-1}` in lexicographic order of value arrays.
    pub fn all(n: usize, m: usize) -> AllMaps {
        AllMaps {
            current: if m == 0 && n > 0 {
                None
            } else {
                Some(vec![0; n])
            },
            codomain: m,
        }
    }
}

impl fmt::Display for UnaryMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, v) in self.values.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, ")")
    }
}

impl fmt::Debug for UnaryMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Odometer over value arrays; see [`UnaryMap::all`].
pub struct AllMaps {
    current: Option<Vec<usize>>,
    codomain: usize,
}

impl Iterator for AllMaps {
    type Item = UnaryMap;

    fn next(&mut self) -> Option<UnaryMap> {
        let out = self.current.clone()?;
        let cur = self.current.as_mut().unwrap();
        let mut i = cur.len();
        loop {
            if i == 0 {
                self.current = None;
                break;
            }
            i -= 1;
            cur[i] += 1;
            if cur[i] < self.codomain {
                break;
            }
            cur[i] = 0;
        }
        Some(UnaryMap::new(out))
    }
}
