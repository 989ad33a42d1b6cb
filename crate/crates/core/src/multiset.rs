use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::ext_nat::ExtNat;

/// Finite-support multiset with multiplicities in ℕ ∪ {∞}. Zero multiplicities are never stored.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Multiset<T: Ord> {
    entries: BTreeMap<T, ExtNat>,
}

impl<T: Ord> Default for Multiset<T> {
    fn default() -> Self {
        Multiset { entries: BTreeMap::new() }
    }
}

impl<T: Ord + Clone> Multiset<T> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, key: T, n: ExtNat) {
        if n.is_zero() {
            return;
        }
        let slot = self.entries.entry(key).or_insert(ExtNat::ZERO);
        *slot = *slot + n;
    }

    pub fn insert_one(&mut self, key: T) {
        self.insert(key, ExtNat::ONE);
    }

    pub fn multiplicity(&self, key: &T) -> ExtNat {
        self.entries.get(key).copied().unwrap_or(ExtNat::ZERO)
    }

    pub fn contains(&self, key: &T) -> bool {
        self.entries.contains_key(key)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&T, ExtNat)> {
        self.entries.iter().map(|(k, v)| (k, *v))
    }

    pub fn support(&self) -> impl Iterator<Item = &T> {
        self.entries.keys()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Total multiplicity.
    pub fn cardinality(&self) -> ExtNat {
        self.entries.values().copied().sum()
    }

    pub fn is_set(&self) -> bool {
        self.entries.values().all(|&n| n == ExtNat::ONE)
    }
}

impl<T: Ord + Clone> FromIterator<T> for Multiset<T> {
    fn from_iter<I: IntoIterator<Item = T>>(iter: I) -> Self {
        let mut m = Multiset::new();
        for x in iter {
            m.insert_one(x);
        }
        m
    }
}

impl<T: Ord + Clone> FromIterator<(T, ExtNat)> for Multiset<T> {
    fn from_iter<I: IntoIterator<Item = (T, ExtNat)>>(iter: I) -> Self {
        let mut m = Multiset::new();
        for (x, n) in iter {
            m.insert(x, n);
        }
        m
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_multiplicity_is_absent() {
        let mut m: Multiset<u64> = Multiset::new();
        m.insert(3, ExtNat::ZERO);
        assert!(!m.contains(&3));
        assert!(m.is_empty());
        m.insert(3, ExtNat::Fin(2));
        m.insert_one(3);
        assert_eq!(m.multiplicity(&3), ExtNat::Fin(3));
        m.insert(3, ExtNat::Inf);
        assert_eq!(m.multiplicity(&3), ExtNat::Inf);
    }

    #[test]
    fn equality_is_multiplicitywise() {
        let a: Multiset<u64> = [2, 3, 2].into_iter().collect();
        let b: Multiset<u64> = [(2, ExtNat::Fin(2)), (3, ExtNat::ONE)].into_iter().collect();
        assert_eq!(a, b);
        assert_eq!(a.cardinality(), ExtNat::Fin(3));
        assert!(!a.is_set());
    }
}
