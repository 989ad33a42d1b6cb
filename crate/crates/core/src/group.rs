//! Finite abelian groups in invariant-factor normal form.
//!
//! Elements are encoded as a single index in mixed radix with the first
//! invariant factor most significant, so numeric order of indices is the
//! lexicographic order of coordinate vectors.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Index of an element of a [`FiniteAbelianGroup`].
pub type GroupElem = u32;

const MAX_ORDER: u64 = 1 << 20;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "GroupRepr", into = "GroupRepr")]
pub struct FiniteAbelianGroup {
    factors: Vec<u32>,
    weights: Vec<u32>,
    order: u32,
}

#[derive(Serialize, Deserialize)]
struct GroupRepr {
    invariant_factors: Vec<u32>,
}

impl TryFrom<GroupRepr> for FiniteAbelianGroup {
    type Error = Error;

    fn try_from(r: GroupRepr) -> Result<Self> {
        FiniteAbelianGroup::new(r.invariant_factors)
    }
}

impl From<FiniteAbelianGroup> for GroupRepr {
    fn from(g: FiniteAbelianGroup) -> Self {
        GroupRepr { invariant_factors: g.factors }
    }
}

impl FiniteAbelianGroup {
    /// Builds a group from invariant factors `n_1 | n_2 | ... | n_r`, each at least 2.
    /// The empty list is the trivial group.
    pub fn new(factors: Vec<u32>) -> Result<Self> {
        if factors.iter().any(|&n| n < 2) {
            return Err(Error::Invalid(format!("invariant factors must be >= 2: {factors:?}")));
        }
        if factors.windows(2).any(|w| w[1] % w[0] != 0) {
            return Err(Error::Invalid(format!("invariant factors must form a divisibility chain: {factors:?}")));
        }
        let order = factors.iter().try_fold(1u64, |acc, &n| {
            let next = acc * n as u64;
            (next <= MAX_ORDER).then_some(next)
        });
        let order = order.ok_or_else(|| Error::Invalid(format!("group order exceeds {MAX_ORDER}")))? as u32;
        let mut weights = vec![1u32; factors.len()];
        for i in (0..factors.len().saturating_sub(1)).rev() {
            weights[i] = weights[i + 1] * factors[i + 1];
        }
        Ok(FiniteAbelianGroup { factors, weights, order })
    }

    pub fn trivial() -> Self {
        FiniteAbelianGroup::new(vec![]).expect("trivial group")
    }

    pub fn cyclic(n: u32) -> Result<Self> {
        Self::from_cyclic_factors(&[n])
    }

    /// Normalizes an arbitrary direct sum `C_{m_1} ⊕ ... ⊕ C_{m_k}` to invariant factors.
    pub fn from_cyclic_factors(ms: &[u32]) -> Result<Self> {
        if ms.contains(&0) {
            return Err(Error::Invalid("cyclic factor of order 0".into()));
        }
        let mut by_prime: BTreeMap<u32, Vec<u32>> = BTreeMap::new();
        for &m in ms {
            for (p, e) in factorize_u32(m) {
                by_prime.entry(p).or_default().push(e);
            }
        }
        invariant_factors_from_prime_powers(&by_prime)
    }

    pub fn invariant_factors(&self) -> &[u32] {
        &self.factors
    }

    pub fn rank(&self) -> usize {
        self.factors.len()
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn is_trivial(&self) -> bool {
        self.order == 1
    }

    pub fn zero(&self) -> GroupElem {
        0
    }

    pub fn contains(&self, g: GroupElem) -> bool {
        g < self.order
    }

    pub fn elements(&self) -> impl Iterator<Item = GroupElem> {
        0..self.order
    }

    pub fn check(&self, g: GroupElem) -> Result<()> {
        if self.contains(g) {
            Ok(())
        } else {
            Err(Error::OutOfRange(format!("{g} not in {self}")))
        }
    }

    pub fn coords(&self, g: GroupElem) -> Vec<u32> {
        self.factors
            .iter()
            .zip(&self.weights)
            .map(|(&n, &w)| (g / w) % n)
            .collect()
    }

    pub fn from_coords(&self, cs: &[u32]) -> Result<GroupElem> {
        if cs.len() != self.factors.len() {
            return Err(Error::OutOfRange(format!("{cs:?} has wrong rank for {self}")));
        }
        let mut g = 0;
        for ((&c, &n), &w) in cs.iter().zip(&self.factors).zip(&self.weights) {
            if c >= n {
                return Err(Error::OutOfRange(format!("{cs:?} not in {self}")));
            }
            g += c * w;
        }
        Ok(g)
    }

    pub fn add(&self, a: GroupElem, b: GroupElem) -> GroupElem {
        let mut out = 0;
        for (&n, &w) in self.factors.iter().zip(&self.weights) {
            let x = (a / w) % n;
            let y = (b / w) % n;
            out += ((x + y) % n) * w;
        }
        out
    }

    pub fn neg(&self, a: GroupElem) -> GroupElem {
        let mut out = 0;
        for (&n, &w) in self.factors.iter().zip(&self.weights) {
            let x = (a / w) % n;
            out += ((n - x) % n) * w;
        }
        out
    }

    pub fn sum<I: IntoIterator<Item = GroupElem>>(&self, it: I) -> GroupElem {
        it.into_iter().fold(0, |acc, g| self.add(acc, g))
    }

    /// Order of `g` as a group element.
    pub fn element_order(&self, g: GroupElem) -> u32 {
        let mut k = 1;
        let mut x = g;
        while x != 0 {
            x = self.add(x, g);
            k += 1;
        }
        k
    }

    /// Canonical compact name, e.g. `c2xc4`, `c1` for the trivial group.
    pub fn name(&self) -> String {
        if self.factors.is_empty() {
            return "c1".to_string();
        }
        self.factors.iter().map(|n| format!("c{n}")).collect::<Vec<_>>().join("x")
    }

    /// All abelian groups of order exactly `n`, one per isomorphism class.
    pub fn all_of_order(n: u32) -> Vec<FiniteAbelianGroup> {
        if n == 0 {
            return vec![];
        }
        let primes = factorize_u32(n);
        let mut out: Vec<BTreeMap<u32, Vec<u32>>> = vec![BTreeMap::new()];
        for (p, e) in primes {
            let parts = partitions(e);
            let mut next = Vec::with_capacity(out.len() * parts.len());
            for base in &out {
                for part in &parts {
                    let mut m = base.clone();
                    m.insert(p, part.clone());
                    next.push(m);
                }
            }
            out = next;
        }
        let mut groups: Vec<_> = out
            .iter()
            .map(|m| invariant_factors_from_prime_powers(m).expect("order within limits"))
            .collect();
        groups.sort();
        groups.dedup();
        groups
    }

    /// All abelian groups of order at most `bound`, ordered by order then invariant factors.
    pub fn all_up_to_order(bound: u32) -> Vec<FiniteAbelianGroup> {
        (1..=bound).flat_map(Self::all_of_order).collect()
    }
}

impl fmt::Display for FiniteAbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

impl fmt::Debug for FiniteAbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FiniteAbelianGroup({})", self.name())
    }
}

impl FromStr for FiniteAbelianGroup {
    type Err = Error;

    /// Accepts `c2xc4`, `C2xC4`, `c6`, `c1`, `trivial`.
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim().to_ascii_lowercase();
        if t == "trivial" || t == "1" {
            return Ok(FiniteAbelianGroup::trivial());
        }
        let mut ms = Vec::new();
        for part in t.split(['x', '+', '*']) {
            let part = part.trim();
            let digits = part.strip_prefix('c').unwrap_or(part);
            let m: u32 = digits
                .parse()
                .map_err(|_| Error::Invalid(format!("bad group syntax {s:?}")))?;
            ms.push(m);
        }
        FiniteAbelianGroup::from_cyclic_factors(&ms)
    }
}

fn invariant_factors_from_prime_powers(by_prime: &BTreeMap<u32, Vec<u32>>) -> Result<FiniteAbelianGroup> {
    let rank = by_prime.values().map(|v| v.iter().filter(|&&e| e > 0).count()).max().unwrap_or(0);
    let mut factors = vec![1u64; rank];
    for (&p, exps) in by_prime {
        let mut es: Vec<u32> = exps.iter().copied().filter(|&e| e > 0).collect();
        es.sort_unstable_by(|a, b| b.cmp(a));
        // largest exponent goes to the last (largest) invariant factor
        for (i, &e) in es.iter().enumerate() {
            let slot = rank - 1 - i;
            factors[slot] *= (p as u64).pow(e);
            if factors[slot] > MAX_ORDER {
                return Err(Error::Invalid("group order too large".into()));
            }
        }
    }
    FiniteAbelianGroup::new(factors.into_iter().map(|f| f as u32).collect())
}

pub(crate) fn factorize_u32(mut n: u32) -> Vec<(u32, u32)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
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

/// Integer partitions of `n`, parts in non-increasing order.
fn partitions(n: u32) -> Vec<Vec<u32>> {
    fn go(rem: u32, max: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if rem == 0 {
            out.push(cur.clone());
            return;
        }
        for k in (1..=rem.min(max)).rev() {
            cur.push(k);
            go(rem - k, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(n, n, &mut Vec::new(), &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn normal_form() {
        let g: FiniteAbelianGroup = "c2xc3".parse().unwrap();
        assert_eq!(g.invariant_factors(), &[6]);
        let g: FiniteAbelianGroup = "c4xc2".parse().unwrap();
        assert_eq!(g.invariant_factors(), &[2, 4]);
        let g: FiniteAbelianGroup = "c6xc4".parse().unwrap();
        assert_eq!(g.invariant_factors(), &[2, 12]);
        let g: FiniteAbelianGroup = "c1".parse().unwrap();
        assert!(g.is_trivial());
        assert_eq!(g.order(), 1);
        assert!(FiniteAbelianGroup::new(vec![4, 2]).is_err());
        assert!(FiniteAbelianGroup::new(vec![1]).is_err());
    }

    #[test]
    fn coords_are_lexicographic() {
        let g = FiniteAbelianGroup::new(vec![2, 4]).unwrap();
        let all: Vec<Vec<u32>> = g.elements().map(|x| g.coords(x)).collect();
        let mut sorted = all.clone();
        sorted.sort();
        assert_eq!(all, sorted);
        for x in g.elements() {
            assert_eq!(g.from_coords(&g.coords(x)).unwrap(), x);
            assert_eq!(g.add(x, g.neg(x)), 0);
        }
        assert!(g.from_coords(&[2, 0]).is_err());
    }

    #[test]
    fn sigma_examples() {
        let c3 = FiniteAbelianGroup::cyclic(3).unwrap();
        assert_eq!(c3.sum([1, 1, 1]), 0);
        let v = FiniteAbelianGroup::new(vec![2, 2]).unwrap();
        let a = v.from_coords(&[1, 0]).unwrap();
        let b = v.from_coords(&[0, 1]).unwrap();
        assert_eq!(v.coords(v.sum([a, b])), vec![1, 1]);
        assert_eq!(v.sum([]), 0);
    }

    #[test]
    fn group_counts_by_order() {
        // number of abelian groups of order n: 1,1,1,2,1,1,1,3,2
        let counts: Vec<usize> = (1..=9).map(|n| FiniteAbelianGroup::all_of_order(n).len()).collect();
        assert_eq!(counts, vec![1, 1, 1, 2, 1, 1, 1, 3, 2]);
        assert_eq!(FiniteAbelianGroup::all_of_order(16).len(), 5);
        assert_eq!(FiniteAbelianGroup::all_of_order(72).len(), 6);
        for g in FiniteAbelianGroup::all_up_to_order(30) {
            let prod: u32 = g.invariant_factors().iter().product();
            assert_eq!(prod, g.order());
        }
    }

    #[test]
    fn json_shape() {
        let g = FiniteAbelianGroup::new(vec![2, 4]).unwrap();
        assert_eq!(serde_json::to_string(&g).unwrap(), r#"{"invariant_factors":[2,4]}"#);
        let back: FiniteAbelianGroup = serde_json::from_str(r#"{"invariant_factors":[2,4]}"#).unwrap();
        assert_eq!(back, g);
        assert!(serde_json::from_str::<FiniteAbelianGroup>(r#"{"invariant_factors":[4,2]}"#).is_err());
    }
}
