//! Concrete commutative cancellative monoids behind one interface.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::group::{FiniteAbelianGroup, GroupElem};
use crate::zerosum;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Monoid {
    /// `(ℕ_0^k, +)`, written multiplicatively.
    FreeAbelian { rank: usize },
    /// `(ℤ ∖ {0}, ·)` with unit group `{±1}`.
    NonzeroIntegers,
    /// A finite abelian group viewed as a monoid; every element is a unit.
    Group { group: FiniteAbelianGroup },
    /// `B(G)`, the monoid of zero-sum sequences over `G`.
    Block { group: FiniteAbelianGroup },
    DirectProduct { factors: Vec<Monoid> },
}

/// An element in canonical form. Which variant is valid depends on the monoid;
/// JSON encoding therefore goes through [`crate::json`], which has the monoid at hand.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum Element {
    /// Exponent vector in a free abelian monoid.
    Exponents(Vec<u64>),
    Integer(i64),
    /// Element index of a finite abelian group (see [`FiniteAbelianGroup`]).
    GroupElement(GroupElem),
    /// Sorted term indices of a zero-sum sequence.
    Sequence(Vec<GroupElem>),
    Tuple(Vec<Element>),
}

impl Element {
    /// Builds a sequence element, sorting the terms.
    pub fn sequence<I: IntoIterator<Item = GroupElem>>(terms: I) -> Element {
        let mut v: Vec<GroupElem> = terms.into_iter().collect();
        v.sort_unstable();
        Element::Sequence(v)
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Element::Exponents(v) => write!(f, "{v:?}"),
            Element::Integer(n) => write!(f, "{n}"),
            Element::GroupElement(g) => write!(f, "g#{g}"),
            Element::Sequence(s) => {
                if s.is_empty() {
                    f.write_str("1")
                } else {
                    let parts: Vec<String> = s.iter().map(|g| format!("g#{g}")).collect();
                    f.write_str(&parts.join("·"))
                }
            }
            Element::Tuple(t) => {
                let parts: Vec<String> = t.iter().map(|e| e.to_string()).collect();
                write!(f, "({})", parts.join(", "))
            }
        }
    }
}

impl fmt::Display for Monoid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Monoid::FreeAbelian { rank } => write!(f, "free:{rank}"),
            Monoid::NonzeroIntegers => f.write_str("int"),
            Monoid::Group { group } => write!(f, "grp:{group}"),
            Monoid::Block { group } => write!(f, "bg:{group}"),
            Monoid::DirectProduct { factors } => {
                let parts: Vec<String> = factors.iter().map(|m| m.to_string()).collect();
                write!(f, "prod({})", parts.join(","))
            }
        }
    }
}

impl fmt::Debug for Monoid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Monoid({self})")
    }
}

impl std::str::FromStr for Monoid {
    type Err = Error;

    /// Accepts `free:2`, `int`, `nonzero_integers`, `grp:c4`, `bg:c3`, `prod(bg:c3,int)`.
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        let bad = || Error::Invalid(format!("unknown monoid `{t}`"));
        if let Some(inner) = t.strip_prefix("prod(").and_then(|r| r.strip_suffix(')')) {
            let mut parts = Vec::new();
            let (mut depth, mut start) = (0usize, 0);
            for (i, c) in inner.char_indices() {
                match c {
                    '(' => depth += 1,
                    ')' => depth = depth.checked_sub(1).ok_or_else(bad)?,
                    ',' if depth == 0 => {
                        parts.push(&inner[start..i]);
                        start = i + 1;
                    }
                    _ => {}
                }
            }
            parts.push(&inner[start..]);
            let factors = parts.into_iter().map(str::parse).collect::<Result<Vec<Monoid>>>()?;
            return Ok(Monoid::DirectProduct { factors });
        }
        match t.split_once(':') {
            None if t == "int" || t == "nonzero_integers" || t == "z" => Ok(Monoid::NonzeroIntegers),
            Some(("free", k)) => k.trim().parse().map(Monoid::free).map_err(|_| bad()),
            Some(("grp", g)) => Ok(Monoid::group(g.parse()?)),
            Some(("bg", g)) => Ok(Monoid::block(g.parse()?)),
            _ => Err(bad()),
        }
    }
}

impl Monoid {
    pub fn block(group: FiniteAbelianGroup) -> Monoid {
        Monoid::Block { group }
    }

    pub fn group(group: FiniteAbelianGroup) -> Monoid {
        Monoid::Group { group }
    }

    pub fn free(rank: usize) -> Monoid {
        Monoid::FreeAbelian { rank }
    }

    fn mismatch(&self, a: &Element) -> Error {
        Error::Mismatch { monoid: self.to_string(), element: a.to_string() }
    }

    /// Validates that `a` is a canonical-form element of this monoid.
    pub fn check(&self, a: &Element) -> Result<()> {
        match (self, a) {
            (Monoid::FreeAbelian { rank }, Element::Exponents(v)) if v.len() == *rank => Ok(()),
            (Monoid::NonzeroIntegers, Element::Integer(n)) if *n != 0 => Ok(()),
            (Monoid::Group { group }, Element::GroupElement(g)) => group.check(*g),
            (Monoid::Block { group }, Element::Sequence(s)) => {
                for &g in s {
                    group.check(g)?;
                }
                if s.windows(2).any(|w| w[0] > w[1]) {
                    return Err(Error::Invalid(format!("sequence terms not sorted: {s:?}")));
                }
                if group.sum(s.iter().copied()) != 0 {
                    return Err(Error::NotZeroSum(self.format(a)));
                }
                Ok(())
            }
            (Monoid::DirectProduct { factors }, Element::Tuple(t)) if t.len() == factors.len() => {
                factors.iter().zip(t).try_for_each(|(m, e)| m.check(e))
            }
            _ => Err(self.mismatch(a)),
        }
    }

    pub fn one(&self) -> Element {
        match self {
            Monoid::FreeAbelian { rank } => Element::Exponents(vec![0; *rank]),
            Monoid::NonzeroIntegers => Element::Integer(1),
            Monoid::Group { .. } => Element::GroupElement(0),
            Monoid::Block { .. } => Element::Sequence(vec![]),
            Monoid::DirectProduct { factors } => Element::Tuple(factors.iter().map(Monoid::one).collect()),
        }
    }

    pub fn mul(&self, a: &Element, b: &Element) -> Result<Element> {
        match (self, a, b) {
            (Monoid::FreeAbelian { rank }, Element::Exponents(x), Element::Exponents(y))
                if x.len() == *rank && y.len() == *rank =>
            {
                let v = x
                    .iter()
                    .zip(y)
                    .map(|(p, q)| p.checked_add(*q).ok_or_else(|| Error::Overflow("exponent".into())))
                    .collect::<Result<Vec<_>>>()?;
                Ok(Element::Exponents(v))
            }
            (Monoid::NonzeroIntegers, Element::Integer(x), Element::Integer(y)) if *x != 0 && *y != 0 => x
                .checked_mul(*y)
                .map(Element::Integer)
                .ok_or_else(|| Error::Overflow(format!("{x}·{y}"))),
            (Monoid::Group { group }, Element::GroupElement(x), Element::GroupElement(y)) => {
                group.check(*x)?;
                group.check(*y)?;
                Ok(Element::GroupElement(group.add(*x, *y)))
            }
            (Monoid::Block { .. }, Element::Sequence(x), Element::Sequence(y)) => {
                Ok(Element::Sequence(merge_sorted(x, y)))
            }
            (Monoid::DirectProduct { factors }, Element::Tuple(x), Element::Tuple(y))
                if x.len() == factors.len() && y.len() == factors.len() =>
            {
                let v = factors
                    .iter()
                    .zip(x.iter().zip(y))
                    .map(|(m, (p, q))| m.mul(p, q))
                    .collect::<Result<Vec<_>>>()?;
                Ok(Element::Tuple(v))
            }
            _ => Err(if self.check(a).is_err() { self.mismatch(a) } else { self.mismatch(b) }),
        }
    }

    pub fn product<'a, I: IntoIterator<Item = &'a Element>>(&self, it: I) -> Result<Element> {
        it.into_iter().try_fold(self.one(), |acc, e| self.mul(&acc, e))
    }

    pub fn is_unit(&self, a: &Element) -> Result<bool> {
        self.check(a)?;
        Ok(self.is_unit_unchecked(a))
    }

    pub(crate) fn is_unit_unchecked(&self, a: &Element) -> bool {
        match (self, a) {
            (Monoid::FreeAbelian { .. }, Element::Exponents(v)) => v.iter().all(|&e| e == 0),
            (Monoid::NonzeroIntegers, Element::Integer(n)) => n.abs() == 1,
            (Monoid::Group { .. }, _) => true,
            (Monoid::Block { .. }, Element::Sequence(s)) => s.is_empty(),
            (Monoid::DirectProduct { factors }, Element::Tuple(t)) => {
                factors.iter().zip(t).all(|(m, e)| m.is_unit_unchecked(e))
            }
            _ => false,
        }
    }

    /// Atom test by closed rule per kind. A product element is an atom iff exactly
    /// one coordinate is a non-unit and that coordinate is an atom.
    pub fn is_atom(&self, a: &Element) -> Result<bool> {
        self.check(a)?;
        Ok(self.is_atom_unchecked(a))
    }

    fn is_atom_unchecked(&self, a: &Element) -> bool {
        match (self, a) {
            (Monoid::FreeAbelian { .. }, Element::Exponents(v)) => v.iter().sum::<u64>() == 1,
            (Monoid::NonzeroIntegers, Element::Integer(n)) => is_prime(n.unsigned_abs()),
            (Monoid::Group { .. }, _) => false,
            (Monoid::Block { group }, Element::Sequence(s)) => {
                !s.is_empty() && zerosum::is_minimal_unchecked(group, s)
            }
            (Monoid::DirectProduct { factors }, Element::Tuple(t)) => {
                let mut non_units = factors.iter().zip(t).filter(|(m, e)| !m.is_unit_unchecked(e));
                match (non_units.next(), non_units.next()) {
                    (Some((m, e)), None) => m.is_atom_unchecked(e),
                    _ => false,
                }
            }
            _ => false,
        }
    }

    /// Canonical representative of the associate class of `a`.
    pub fn associate(&self, a: &Element) -> Element {
        match (self, a) {
            (Monoid::NonzeroIntegers, Element::Integer(n)) => Element::Integer(n.abs()),
            (Monoid::Group { .. }, _) => Element::GroupElement(0),
            (Monoid::DirectProduct { factors }, Element::Tuple(t)) => {
                Element::Tuple(factors.iter().zip(t).map(|(m, e)| m.associate(e)).collect())
            }
            _ => a.clone(),
        }
    }

    /// The unique `c` with `a = b·c`, if it exists.
    pub fn divide(&self, a: &Element, b: &Element) -> Option<Element> {
        match (self, a, b) {
            (Monoid::FreeAbelian { .. }, Element::Exponents(x), Element::Exponents(y)) => {
                let v: Option<Vec<u64>> = x.iter().zip(y).map(|(p, q)| p.checked_sub(*q)).collect();
                v.map(Element::Exponents)
            }
            (Monoid::NonzeroIntegers, Element::Integer(x), Element::Integer(y)) => {
                (*y != 0 && x % y == 0).then(|| Element::Integer(x / y))
            }
            (Monoid::Group { group }, Element::GroupElement(x), Element::GroupElement(y)) => {
                Some(Element::GroupElement(group.add(*x, group.neg(*y))))
            }
            (Monoid::Block { .. }, Element::Sequence(x), Element::Sequence(y)) => {
                sorted_difference(x, y).map(Element::Sequence)
            }
            (Monoid::DirectProduct { factors }, Element::Tuple(x), Element::Tuple(y)) => {
                let v: Option<Vec<Element>> =
                    factors.iter().zip(x.iter().zip(y)).map(|(m, (p, q))| m.divide(p, q)).collect();
                v.map(Element::Tuple)
            }
            _ => None,
        }
    }

    pub fn divides(&self, b: &Element, a: &Element) -> bool {
        self.divide(a, b).is_some()
    }

    /// Canonical associate representatives of all atoms dividing `a`, sorted.
    pub fn atoms_dividing(&self, a: &Element, budget: &mut Budget) -> Result<Vec<Element>> {
        self.check(a)?;
        self.atoms_dividing_unchecked(a, budget)
    }

    fn atoms_dividing_unchecked(&self, a: &Element, budget: &mut Budget) -> Result<Vec<Element>> {
        let out = match (self, a) {
            (Monoid::FreeAbelian { rank }, Element::Exponents(v)) => (0..*rank)
                .filter(|&i| v[i] > 0)
                .map(|i| {
                    let mut e = vec![0; *rank];
                    e[i] = 1;
                    Element::Exponents(e)
                })
                .collect(),
            (Monoid::NonzeroIntegers, Element::Integer(n)) => {
                prime_factors(n.unsigned_abs()).into_iter().map(|(p, _)| Element::Integer(p as i64)).collect()
            }
            (Monoid::Group { .. }, _) => vec![],
            (Monoid::Block { group }, Element::Sequence(s)) => {
                zerosum::minimal_subsequences(group, s, budget)?.into_iter().map(Element::Sequence).collect()
            }
            (Monoid::DirectProduct { factors }, Element::Tuple(t)) => {
                let mut out = Vec::new();
                for (i, (m, e)) in factors.iter().zip(t).enumerate() {
                    for atom in m.atoms_dividing_unchecked(e, budget)? {
                        let mut coords: Vec<Element> = factors.iter().map(Monoid::one).collect();
                        coords[i] = atom;
                        out.push(Element::Tuple(coords));
                    }
                }
                out
            }
            _ => return Err(self.mismatch(a)),
        };
        let mut out = out;
        out.sort();
        out.dedup();
        Ok(out)
    }

    /// Enumeration size of an element: sequence length, absolute value,
    /// exponent sum, zero for group elements, coordinate sum for products.
    pub fn size(&self, a: &Element) -> u64 {
        match (self, a) {
            (Monoid::FreeAbelian { .. }, Element::Exponents(v)) => v.iter().sum(),
            (Monoid::NonzeroIntegers, Element::Integer(n)) => n.unsigned_abs(),
            (Monoid::Block { .. }, Element::Sequence(s)) => s.len() as u64,
            (Monoid::DirectProduct { factors }, Element::Tuple(t)) => {
                factors.iter().zip(t).map(|(m, e)| m.size(e)).sum()
            }
            _ => 0,
        }
    }

    /// Upper bound on the length of any factorization of `a`.
    pub fn max_factorization_length(&self, a: &Element) -> u64 {
        match (self, a) {
            (Monoid::NonzeroIntegers, Element::Integer(n)) => {
                let m = n.unsigned_abs();
                if m <= 1 {
                    0
                } else {
                    63 - m.leading_zeros() as u64
                }
            }
            (Monoid::DirectProduct { factors }, Element::Tuple(t)) => {
                factors.iter().zip(t).map(|(m, e)| m.max_factorization_length(e)).sum()
            }
            _ => self.size(a),
        }
    }

    /// Every element of size at most `bound`, in a deterministic order.
    pub fn elements_up_to(&self, bound: u64, budget: &mut Budget) -> Result<Vec<Element>> {
        match self {
            Monoid::FreeAbelian { rank } => {
                let mut out = Vec::new();
                let mut cur = vec![0u64; *rank];
                fn go(i: usize, rem: u64, cur: &mut Vec<u64>, out: &mut Vec<Element>, b: &mut Budget) -> Result<()> {
                    b.tick()?;
                    if i == cur.len() {
                        out.push(Element::Exponents(cur.clone()));
                        return Ok(());
                    }
                    for e in 0..=rem {
                        cur[i] = e;
                        go(i + 1, rem - e, cur, out, b)?;
                    }
                    cur[i] = 0;
                    Ok(())
                }
                go(0, bound, &mut cur, &mut out, budget)?;
                out.sort_by_key(|e| (self.size(e), e.clone()));
                Ok(out)
            }
            Monoid::NonzeroIntegers => {
                let bound = i64::try_from(bound).map_err(|_| Error::Overflow("size bound".into()))?;
                let mut out = Vec::new();
                for n in 1..=bound {
                    budget.tick()?;
                    out.push(Element::Integer(n));
                    out.push(Element::Integer(-n));
                }
                Ok(out)
            }
            Monoid::Group { group } => Ok(group.elements().map(Element::GroupElement).collect()),
            Monoid::Block { group } => Ok(zerosum::zero_sum_sequences_up_to(group, bound as usize, budget)?
                .into_iter()
                .map(Element::Sequence)
                .collect()),
            Monoid::DirectProduct { factors } => {
                let mut out: Vec<Element> = vec![Element::Tuple(vec![])];
                let mut sizes: Vec<u64> = vec![0];
                for m in factors {
                    let comp = m.elements_up_to(bound, budget)?;
                    let mut next = Vec::new();
                    let mut next_sizes = Vec::new();
                    for (prefix, &s) in out.iter().zip(&sizes) {
                        for e in &comp {
                            budget.tick()?;
                            let total = s + m.size(e);
                            if total > bound {
                                continue;
                            }
                            let Element::Tuple(mut t) = prefix.clone() else { unreachable!() };
                            t.push(e.clone());
                            next.push(Element::Tuple(t));
                            next_sizes.push(total);
                        }
                    }
                    out = next;
                    sizes = next_sizes;
                }
                Ok(out)
            }
        }
    }

    /// Canonical associate representatives of all divisors of `a`, sorted.
    pub fn divisors(&self, a: &Element, budget: &mut Budget) -> Result<Vec<Element>> {
        self.check(a)?;
        let mut out = match (self, a) {
            (Monoid::FreeAbelian { .. }, Element::Exponents(v)) => {
                let mut out = vec![vec![]];
                for &e in v {
                    let mut next = Vec::new();
                    for p in &out {
                        for k in 0..=e {
                            budget.tick()?;
                            let mut q: Vec<u64> = Vec::clone(p);
                            q.push(k);
                            next.push(q);
                        }
                    }
                    out = next;
                }
                out.into_iter().map(Element::Exponents).collect()
            }
            (Monoid::NonzeroIntegers, Element::Integer(n)) => {
                let mut ds = vec![1u64];
                for (p, e) in prime_factors(n.unsigned_abs()) {
                    let mut next = Vec::new();
                    for d in &ds {
                        let mut x = *d;
                        for _ in 0..=e {
                            budget.tick()?;
                            next.push(x);
                            x *= p;
                        }
                    }
                    ds = next;
                }
                ds.into_iter().map(|d| Element::Integer(d as i64)).collect()
            }
            (Monoid::Group { .. }, _) => vec![Element::GroupElement(0)],
            (Monoid::Block { group }, Element::Sequence(s)) => {
                zerosum::zero_sum_subsequences(group, s, budget)?.into_iter().map(Element::Sequence).collect()
            }
            (Monoid::DirectProduct { factors }, Element::Tuple(t)) => {
                let mut out: Vec<Vec<Element>> = vec![vec![]];
                for (m, e) in factors.iter().zip(t) {
                    let ds = m.divisors(e, budget)?;
                    let mut next = Vec::new();
                    for p in &out {
                        for d in &ds {
                            budget.tick()?;
                            let mut q = p.clone();
                            q.push(d.clone());
                            next.push(q);
                        }
                    }
                    out = next;
                }
                out.into_iter().map(Element::Tuple).collect()
            }
            _ => return Err(self.mismatch(a)),
        };
        out.sort();
        out.dedup();
        Ok(out)
    }

    /// Human-readable element rendering with group coordinates spelled out.
    pub fn format(&self, a: &Element) -> String {
        match (self, a) {
            (Monoid::Group { group }, Element::GroupElement(g)) => format_coords(group, *g),
            (Monoid::Block { group }, Element::Sequence(s)) => {
                if s.is_empty() {
                    "1".into()
                } else {
                    s.iter().map(|&g| format_coords(group, g)).collect::<Vec<_>>().join("·")
                }
            }
            (Monoid::DirectProduct { factors }, Element::Tuple(t)) if t.len() == factors.len() => {
                let parts: Vec<String> = factors.iter().zip(t).map(|(m, e)| m.format(e)).collect();
                format!("({})", parts.join(", "))
            }
            _ => a.to_string(),
        }
    }

    /// True when every element has a unique factorization up to associates.
    pub fn is_factorial_kind(&self) -> bool {
        match self {
            Monoid::FreeAbelian { .. } | Monoid::NonzeroIntegers | Monoid::Group { .. } => true,
            Monoid::Block { group } => group.order() <= 2,
            Monoid::DirectProduct { factors } => factors.iter().all(Monoid::is_factorial_kind),
        }
    }
}

fn format_coords(group: &FiniteAbelianGroup, g: GroupElem) -> String {
    let c = group.coords(g);
    format!("[{}]", c.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(","))
}

fn merge_sorted(x: &[GroupElem], y: &[GroupElem]) -> Vec<GroupElem> {
    let mut out = Vec::with_capacity(x.len() + y.len());
    let (mut i, mut j) = (0, 0);
    while i < x.len() && j < y.len() {
        if x[i] <= y[j] {
            out.push(x[i]);
            i += 1;
        } else {
            out.push(y[j]);
            j += 1;
        }
    }
    out.extend_from_slice(&x[i..]);
    out.extend_from_slice(&y[j..]);
    out
}

/// `x ∖ y` as sorted multisets, if `y ⊆ x`.
fn sorted_difference(x: &[GroupElem], y: &[GroupElem]) -> Option<Vec<GroupElem>> {
    let mut out = Vec::with_capacity(x.len().saturating_sub(y.len()));
    let mut j = 0;
    for &a in x {
        if j < y.len() && y[j] == a {
            j += 1;
        } else if j < y.len() && y[j] < a {
            return None;
        } else {
            out.push(a);
        }
    }
    (j == y.len()).then_some(out)
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

pub fn prime_factors(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2u64;
    while p.saturating_mul(p) <= n {
        let mut e = 0;
        while n.is_multiple_of(p) {
            n /= p;
            e += 1;
        }
        if e > 0 {
            out.push((p, e));
        }
        p += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(n: u32) -> FiniteAbelianGroup {
        FiniteAbelianGroup::cyclic(n).unwrap()
    }

    #[test]
    fn mul_examples() {
        let f2 = Monoid::free(2);
        assert_eq!(
            f2.mul(&Element::Exponents(vec![1, 0]), &Element::Exponents(vec![0, 1])).unwrap(),
            Element::Exponents(vec![1, 1])
        );
        let z = Monoid::NonzeroIntegers;
        assert_eq!(z.mul(&Element::Integer(6), &Element::Integer(-2)).unwrap(), Element::Integer(-12));
        let b3 = Monoid::block(c(3));
        let prod = b3.mul(&Element::sequence([1, 1, 1]), &Element::sequence([2, 2, 2])).unwrap();
        assert_eq!(prod, Element::sequence([1, 1, 1, 2, 2, 2]));
        assert_eq!(b3.format(&prod), "[1]·[1]·[1]·[2]·[2]·[2]");
    }

    #[test]
    fn mul_rejects_mismatch() {
        let z = Monoid::NonzeroIntegers;
        assert!(matches!(z.mul(&Element::Integer(2), &Element::Exponents(vec![1])), Err(Error::Mismatch { .. })));
        assert!(z.check(&Element::Integer(0)).is_err());
        assert!(matches!(z.mul(&Element::Integer(i64::MAX), &Element::Integer(2)), Err(Error::Overflow(_))));
        let b3 = Monoid::block(c(3));
        assert!(matches!(b3.check(&Element::sequence([1, 1])), Err(Error::NotZeroSum(_))));
        assert!(b3.check(&Element::Sequence(vec![2, 1])).is_err());
    }

    #[test]
    fn unit_examples() {
        assert!(Monoid::NonzeroIntegers.is_unit(&Element::Integer(-1)).unwrap());
        let b3 = Monoid::block(c(3));
        assert!(b3.is_unit(&Element::sequence([])).unwrap());
        assert!(!b3.is_unit(&Element::sequence([1, 1, 1])).unwrap());
        let g = Monoid::group(c(4));
        assert!(g.is_unit(&Element::GroupElement(3)).unwrap());
    }

    #[test]
    fn atom_examples() {
        let z = Monoid::NonzeroIntegers;
        assert!(z.is_atom(&Element::Integer(7)).unwrap());
        assert!(z.is_atom(&Element::Integer(-7)).unwrap());
        assert!(!z.is_atom(&Element::Integer(6)).unwrap());
        assert!(!z.is_atom(&Element::Integer(-1)).unwrap());
        let b3 = Monoid::block(c(3));
        assert!(b3.is_atom(&Element::sequence([1, 1, 1])).unwrap());
        assert!(!b3.is_atom(&Element::sequence([1, 1, 1, 2, 2, 2])).unwrap());
        let v = FiniteAbelianGroup::new(vec![2, 2]).unwrap();
        let seq = Element::sequence([v.from_coords(&[1, 0]).unwrap(), v.from_coords(&[0, 1]).unwrap(), v.from_coords(&[1, 1]).unwrap()]);
        assert!(Monoid::block(v).is_atom(&seq).unwrap());
        assert!(Monoid::free(3).is_atom(&Element::Exponents(vec![0, 1, 0])).unwrap());
        assert!(!Monoid::free(3).is_atom(&Element::Exponents(vec![0, 1, 1])).unwrap());
    }

    /// Definitional atom test: non-unit with no split into two non-unit divisors.
    fn atom_by_definition(m: &Monoid, a: &Element) -> bool {
        if m.is_unit(a).unwrap() {
            return false;
        }
        let mut b = Budget::default();
        for d in m.divisors(a, &mut b).unwrap() {
            let q = m.divide(a, &d).unwrap();
            if !m.is_unit(&d).unwrap() && !m.is_unit(&q).unwrap() {
                return false;
            }
        }
        true
    }

    #[test]
    fn product_atom_rule_matches_definition() {
        let m = Monoid::DirectProduct {
            factors: vec![Monoid::block(c(3)), Monoid::NonzeroIntegers, Monoid::group(c(2))],
        };
        let mut b = Budget::default();
        let elems = m.elements_up_to(6, &mut b).unwrap();
        assert!(elems.len() > 50);
        let mut atoms = 0;
        for e in &elems {
            let rule = m.is_atom(e).unwrap();
            assert_eq!(rule, atom_by_definition(&m, e), "{}", m.format(e));
            atoms += rule as usize;
        }
        assert!(atoms > 0);
    }

    #[test]
    fn block_atom_rule_matches_definition() {
        for g in FiniteAbelianGroup::all_up_to_order(6) {
            let m = Monoid::block(g);
            let mut b = Budget::default();
            for e in m.elements_up_to(5, &mut b).unwrap() {
                assert_eq!(m.is_atom(&e).unwrap(), atom_by_definition(&m, &e), "{}", m.format(&e));
            }
        }
    }

    #[test]
    fn associates_and_division() {
        let z = Monoid::NonzeroIntegers;
        assert_eq!(z.associate(&Element::Integer(-5)), Element::Integer(5));
        assert_eq!(z.divide(&Element::Integer(-12), &Element::Integer(2)), Some(Element::Integer(-6)));
        assert_eq!(z.divide(&Element::Integer(7), &Element::Integer(2)), None);
        let b3 = Monoid::block(c(3));
        assert_eq!(
            b3.divide(&Element::sequence([1, 1, 1, 2, 2, 2]), &Element::sequence([1, 2])),
            Some(Element::sequence([1, 1, 2, 2]))
        );
        assert_eq!(b3.divide(&Element::sequence([1, 1, 1]), &Element::sequence([1, 2])), None);
    }

    #[test]
    fn atoms_dividing_block() {
        let b3 = Monoid::block(c(3));
        let mut b = Budget::default();
        let atoms = b3.atoms_dividing(&Element::sequence([1, 1, 1, 2, 2, 2]), &mut b).unwrap();
        assert_eq!(
            atoms,
            vec![Element::sequence([1, 1, 1]), Element::sequence([1, 2]), Element::sequence([2, 2, 2])]
        );
    }
}
