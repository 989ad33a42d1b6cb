//! Factorizations into atoms up to essential sameness, and length profiles.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::budget::Budget;
use crate::error::Result;
use crate::ext_nat::ExtNat;
use crate::monoid::{Element, Monoid};
use crate::multiset::Multiset;

/// A factorization, stored as the sorted list of canonical atom representatives.
///
/// Two factorizations are essentially the same iff these lists are equal.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Factorization {
    atoms: Vec<Element>,
}

impl Factorization {
    pub fn from_atoms(mut atoms: Vec<Element>) -> Self {
        atoms.sort();
        Factorization { atoms }
    }

    pub fn atoms(&self) -> &[Element] {
        &self.atoms
    }

    pub fn len(&self) -> usize {
        self.atoms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.atoms.is_empty()
    }

    pub fn as_multiset(&self) -> Multiset<Element> {
        self.atoms.iter().cloned().collect()
    }
}

/// Multiset of lengths: ℓ ↦ number of essentially different factorizations of length ℓ.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct LengthProfile {
    lengths: BTreeMap<u64, ExtNat>,
}

impl LengthProfile {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_counts<I: IntoIterator<Item = (u64, ExtNat)>>(it: I) -> Self {
        let mut p = LengthProfile::new();
        for (l, n) in it {
            p.add(l, n);
        }
        p
    }

    pub fn add(&mut self, len: u64, n: ExtNat) {
        if n.is_zero() {
            return;
        }
        let slot = self.lengths.entry(len).or_insert(ExtNat::ZERO);
        *slot = *slot + n;
    }

    pub fn multiplicity(&self, len: u64) -> ExtNat {
        self.lengths.get(&len).copied().unwrap_or(ExtNat::ZERO)
    }

    pub fn support(&self) -> impl Iterator<Item = u64> + '_ {
        self.lengths.keys().copied()
    }

    pub fn iter(&self) -> impl Iterator<Item = (u64, ExtNat)> + '_ {
        self.lengths.iter().map(|(&l, &n)| (l, n))
    }

    pub fn is_empty(&self) -> bool {
        self.lengths.is_empty()
    }

    pub fn min_length(&self) -> Option<u64> {
        self.lengths.keys().next().copied()
    }

    pub fn max_length(&self) -> Option<u64> {
        self.lengths.keys().next_back().copied()
    }

    /// Number of distinct lengths, i.e. `|L|` as a set.
    pub fn distinct_lengths(&self) -> usize {
        self.lengths.len()
    }

    pub fn as_multiset(&self) -> Multiset<u64> {
        self.iter().collect()
    }
}

/// All factorizations of `a` of length at most `max_len`, one per essential-sameness
/// class, ordered by length then atoms. A unit has exactly the empty factorization.
pub fn factorizations(m: &Monoid, a: &Element, max_len: u64, budget: &mut Budget) -> Result<Vec<Factorization>> {
    let atoms = m.atoms_dividing(a, budget)?;
    let mut search = Search { monoid: m, atoms: &atoms, max_len, budget, cur: Vec::new(), out: Vec::new() };
    search.descend(a.clone(), 0)?;
    let mut out: Vec<Factorization> = search
        .out
        .into_iter()
        .map(|idx| Factorization { atoms: idx.into_iter().map(|i| atoms[i].clone()).collect() })
        .collect();
    out.sort_by(|x, y| x.len().cmp(&y.len()).then_with(|| x.cmp(y)));
    Ok(out)
}

struct Search<'a> {
    monoid: &'a Monoid,
    atoms: &'a [Element],
    max_len: u64,
    budget: &'a mut Budget,
    cur: Vec<usize>,
    out: Vec<Vec<usize>>,
}

impl Search<'_> {
    // Atom indices are nondecreasing along a branch, so each multiset is produced once.
    fn descend(&mut self, rest: Element, start: usize) -> Result<()> {
        self.budget.tick()?;
        if self.monoid.is_unit_unchecked(&rest) {
            self.out.push(self.cur.clone());
            return Ok(());
        }
        if self.cur.len() as u64 >= self.max_len {
            return Ok(());
        }
        for i in start..self.atoms.len() {
            if let Some(q) = self.monoid.divide(&rest, &self.atoms[i]) {
                self.cur.push(i);
                self.descend(q, i)?;
                self.cur.pop();
            }
        }
        Ok(())
    }
}

/// `ℓ ↦ #{classes of length ℓ}` for `ℓ ≤ max_len`.
pub fn length_profile(m: &Monoid, a: &Element, max_len: u64, budget: &mut Budget) -> Result<LengthProfile> {
    let fs = factorizations(m, a, max_len, budget)?;
    let mut p = LengthProfile::new();
    for f in &fs {
        p.add(f.len() as u64, ExtNat::ONE);
    }
    Ok(p)
}

/// The profile with `max_len` large enough to capture every factorization.
pub fn full_length_profile(m: &Monoid, a: &Element, budget: &mut Budget) -> Result<LengthProfile> {
    length_profile(m, a, m.max_factorization_length(a), budget)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HalfFactorialReport {
    pub holds: bool,
    pub elements_checked: usize,
    pub witness: Option<Element>,
    pub witness_profile: Option<LengthProfile>,
}

/// Checks that every non-unit of size at most `size_bound` has a singleton set of lengths.
/// Elements are scanned in enumeration order; the first failure is the witness.
pub fn is_half_factorial_upto(m: &Monoid, size_bound: u64, budget: &mut Budget) -> Result<HalfFactorialReport> {
    let elems = m.elements_up_to(size_bound, budget)?;
    let mut checked = 0;
    for e in elems {
        if m.is_unit_unchecked(&e) {
            continue;
        }
        checked += 1;
        let p = full_length_profile(m, &e, budget)?;
        if p.distinct_lengths() != 1 {
            return Ok(HalfFactorialReport { holds: false, elements_checked: checked, witness: Some(e), witness_profile: Some(p) });
        }
    }
    Ok(HalfFactorialReport { holds: true, elements_checked: checked, witness: None, witness_profile: None })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;
    use crate::group::FiniteAbelianGroup;

    fn bc(n: u32) -> Monoid {
        Monoid::block(FiniteAbelianGroup::cyclic(n).unwrap())
    }

    #[test]
    fn block_c3_example() {
        let m = bc(3);
        let a = Element::sequence([1, 1, 1, 2, 2, 2]);
        let mut b = Budget::default();
        let fs = factorizations(&m, &a, 5, &mut b).unwrap();
        assert_eq!(fs.len(), 2);
        assert_eq!(fs[0].atoms(), &[Element::sequence([1, 1, 1]), Element::sequence([2, 2, 2])]);
        assert_eq!(fs[1].atoms(), &vec![Element::sequence([1, 2]); 3][..]);
        let p = length_profile(&m, &a, 5, &mut b).unwrap();
        assert_eq!(p, LengthProfile::from_counts([(2, ExtNat::ONE), (3, ExtNat::ONE)]));
        assert_eq!(serde_json::to_string(&p).unwrap(), r#"{"lengths":{"2":1,"3":1}}"#);
        // truncated search only sees the length-2 class
        let p = length_profile(&m, &a, 2, &mut b).unwrap();
        assert_eq!(p, LengthProfile::from_counts([(2, ExtNat::ONE)]));
    }

    #[test]
    fn integer_example() {
        let mut b = Budget::default();
        let fs = factorizations(&Monoid::NonzeroIntegers, &Element::Integer(12), 5, &mut b).unwrap();
        assert_eq!(fs.len(), 1);
        assert_eq!(fs[0].atoms(), &[Element::Integer(2), Element::Integer(2), Element::Integer(3)]);
        let fs = factorizations(&Monoid::NonzeroIntegers, &Element::Integer(-12), 5, &mut b).unwrap();
        assert_eq!(fs[0].len(), 3);
    }

    #[test]
    fn unit_has_empty_factorization() {
        let mut b = Budget::default();
        for (m, one) in [
            (bc(3), Element::sequence([])),
            (Monoid::NonzeroIntegers, Element::Integer(-1)),
            (Monoid::free(2), Element::Exponents(vec![0, 0])),
            (Monoid::group(FiniteAbelianGroup::cyclic(4).unwrap()), Element::GroupElement(3)),
        ] {
            let fs = factorizations(&m, &one, 0, &mut b).unwrap();
            assert_eq!(fs, vec![Factorization::from_atoms(vec![])]);
            let p = length_profile(&m, &one, 3, &mut b).unwrap();
            assert_eq!(p, LengthProfile::from_counts([(0, ExtNat::ONE)]));
        }
    }

    #[test]
    fn block_c2_powers() {
        let m = bc(2);
        let mut b = Budget::default();
        for k in 1..=5u64 {
            let a = Element::sequence(std::iter::repeat_n(1, 2 * k as usize));
            let p = full_length_profile(&m, &a, &mut b).unwrap();
            assert_eq!(p, LengthProfile::from_counts([(k, ExtNat::ONE)]));
        }
    }

    #[test]
    fn half_factorial_examples() {
        let mut b = Budget::default();
        assert!(is_half_factorial_upto(&bc(2), 8, &mut b).unwrap().holds);
        let r = is_half_factorial_upto(&bc(3), 6, &mut b).unwrap();
        assert!(!r.holds);
        assert_eq!(r.witness, Some(Element::sequence([1, 1, 1, 2, 2, 2])));
        assert!(is_half_factorial_upto(&Monoid::free(3), 10, &mut b).unwrap().holds);
        assert!(is_half_factorial_upto(&Monoid::NonzeroIntegers, 200, &mut b).unwrap().holds);
    }

    #[test]
    fn budget_is_reported() {
        let m = bc(3);
        let a = Element::sequence([1, 1, 1, 2, 2, 2]);
        let r = factorizations(&m, &a, 5, &mut Budget::new(3));
        assert!(matches!(r, Err(Error::BudgetExceeded { .. })));
    }

    #[test]
    fn product_factorizations_and_units() {
        let m = Monoid::DirectProduct { factors: vec![Monoid::NonzeroIntegers, bc(3)] };
        let a = Element::Tuple(vec![Element::Integer(-6), Element::sequence([1, 2])]);
        let mut b = Budget::default();
        let fs = factorizations(&m, &a, 10, &mut b).unwrap();
        assert_eq!(fs.len(), 1);
        assert_eq!(fs[0].len(), 3);
        for f in &fs {
            for u in f.atoms() {
                assert!(m.is_atom(u).unwrap());
            }
        }
    }
}
