//! Brute-force reference implementations, written against the definitions and
//! sharing no search code with the engine.

use std::collections::{BTreeMap, BTreeSet};

use ufact::filter::{BoolFamily, ExtNatFamily, UltrafilterSpec, Verdict};
use ufact::{ExtNat, FiniteAbelianGroup, GroupElem};

pub fn sums_to_zero(g: &FiniteAbelianGroup, terms: &[GroupElem]) -> bool {
    // coordinatewise modular sums, independent of the index arithmetic
    let n = g.invariant_factors();
    let mut acc = vec![0u64; n.len()];
    for &t in terms {
        for (i, c) in g.coords(t).into_iter().enumerate() {
            acc[i] = (acc[i] + u64::from(c)) % u64::from(n[i]);
        }
    }
    acc.iter().all(|&c| c == 0)
}

/// Nonempty, sums to zero, and no proper nonempty subsequence does.
pub fn is_minimal_zero_sum(g: &FiniteAbelianGroup, s: &[GroupElem]) -> bool {
    if s.is_empty() || s.len() > 20 || !sums_to_zero(g, s) {
        return false;
    }
    let full = (1u32 << s.len()) - 1;
    (1..full).all(|mask| {
        let sub: Vec<GroupElem> = (0..s.len()).filter(|&i| mask >> i & 1 == 1).map(|i| s[i]).collect();
        !sums_to_zero(g, &sub)
    })
}

/// Every multiset of length `len` over `G`, as sorted vectors.
pub fn multisets(g: &FiniteAbelianGroup, len: usize) -> Vec<Vec<GroupElem>> {
    fn go(order: u32, from: u32, left: usize, cur: &mut Vec<GroupElem>, out: &mut Vec<Vec<GroupElem>>) {
        if left == 0 {
            out.push(cur.clone());
            return;
        }
        for x in from..order {
            cur.push(x);
            go(order, x, left - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(g.order(), 0, len, &mut Vec::new(), &mut out);
    out
}

/// Longest minimal zero-sum sequence among all multisets of length at most `|G| + 1`.
pub fn davenport(g: &FiniteAbelianGroup) -> usize {
    (1..=g.order() as usize + 1)
        .filter(|&len| multisets(g, len).iter().any(|s| is_minimal_zero_sum(g, s)))
        .max()
        .unwrap_or(0)
}

/// `ℓ ↦` number of distinct ways to split the sequence into minimal zero-sum blocks.
pub fn lengths(g: &FiniteAbelianGroup, seq: &[GroupElem]) -> BTreeMap<u64, u64> {
    let mut s = seq.to_vec();
    s.sort_unstable();
    let mut found: BTreeSet<Vec<Vec<GroupElem>>> = BTreeSet::new();
    split(g, s, &mut Vec::new(), &mut found);
    let mut out = BTreeMap::new();
    for f in found {
        *out.entry(f.len() as u64).or_insert(0) += 1;
    }
    out
}

fn split(
    g: &FiniteAbelianGroup,
    rest: Vec<GroupElem>,
    blocks: &mut Vec<Vec<GroupElem>>,
    found: &mut BTreeSet<Vec<Vec<GroupElem>>>,
) {
    if rest.is_empty() {
        let mut f = blocks.clone();
        f.sort();
        found.insert(f);
        return;
    }
    // the block holding rest[0], chosen among all subsets containing position 0
    let n = rest.len();
    let mut seen = BTreeSet::new();
    for mask in 0..(1u32 << (n - 1)) {
        let mask = mask << 1 | 1;
        let block: Vec<GroupElem> = (0..n).filter(|&i| mask >> i & 1 == 1).map(|i| rest[i]).collect();
        if !seen.insert(block.clone()) || !is_minimal_zero_sum(g, &block) {
            continue;
        }
        let others: Vec<GroupElem> = (0..n).filter(|&i| mask >> i & 1 == 0).map(|i| rest[i]).collect();
        blocks.push(block);
        split(g, others, blocks, found);
        blocks.pop();
    }
}

/// Values of an eventually periodic descriptor read off `pre + 2·period` indices.
fn scan<T: Copy>(pre: &[T], period: &[T]) -> Vec<T> {
    let total = pre.len() + 2 * period.len();
    let mut out = Vec::with_capacity(total);
    for i in 0..total {
        if i < pre.len() {
            out.push(pre[i]);
        } else {
            out.push(period[(i - pre.len()) % period.len()]);
        }
    }
    out
}

fn decide<T: Ord + Clone>(recurring: BTreeSet<T>) -> Verdict<T> {
    if recurring.len() == 1 {
        Verdict::ForAllU { value: recurring.into_iter().next().unwrap() }
    } else {
        Verdict::DependsOnU { candidates: recurring }
    }
}

/// Cofinite / finite analysis on a scanned window: a value is taken on an infinite
/// set iff it shows up at an index past the preperiod.
pub fn ultralimit(v: &ExtNatFamily, spec: &UltrafilterSpec) -> Option<Verdict<ExtNat>> {
    match (v, spec) {
        (ExtNatFamily::ExplicitFinite { values }, UltrafilterSpec::PrincipalOnFinite { size, selected }) => {
            (values.len() == *size && selected < size).then(|| Verdict::Point { value: values[*selected] })
        }
        (ExtNatFamily::EventuallyPeriodic { period, .. }, _) if period.is_empty() => None,
        (ExtNatFamily::EventuallyPeriodic { pre, period }, UltrafilterSpec::PrincipalOnFinite { selected, .. }) => {
            let w = scan(pre, period);
            let i = if *selected < pre.len() { *selected } else { pre.len() + (selected - pre.len()) % period.len() };
            w.get(i).map(|&value| Verdict::Point { value })
        }
        (ExtNatFamily::EventuallyPeriodic { pre, period }, UltrafilterSpec::Frechet) => {
            let w = scan(pre, period);
            Some(decide(w[pre.len()..].iter().copied().collect()))
        }
        (ExtNatFamily::NondecreasingUnbounded { prefix }, UltrafilterSpec::Frechet) => {
            prefix.windows(2).all(|p| p[0] <= p[1]).then_some(Verdict::ForAllU { value: ExtNat::Inf })
        }
        (ExtNatFamily::NondecreasingUnbounded { prefix }, UltrafilterSpec::PrincipalOnFinite { selected, .. }) => {
            if !prefix.windows(2).all(|p| p[0] <= p[1]) {
                return None;
            }
            prefix.get(*selected).map(|&value| Verdict::Point { value })
        }
        _ => None,
    }
}

pub fn filter_contains(s: &BoolFamily, spec: &UltrafilterSpec) -> Option<Verdict<bool>> {
    let as_nat = |b: &bool| ExtNat::Fin(u64::from(*b));
    let v = match s {
        BoolFamily::ExplicitFinite { values } => ExtNatFamily::ExplicitFinite { values: values.iter().map(as_nat).collect() },
        BoolFamily::EventuallyPeriodic { pre, period } => ExtNatFamily::EventuallyPeriodic {
            pre: pre.iter().map(as_nat).collect(),
            period: period.iter().map(as_nat).collect(),
        },
    };
    ultralimit(&v, spec).map(|v| v.map(|n| *n == ExtNat::ONE))
}

/// Termwise multiset intersection through multiplicity maps.
pub fn gcd(a: &[GroupElem], b: &[GroupElem]) -> Vec<GroupElem> {
    let count = |s: &[GroupElem]| {
        let mut m: BTreeMap<GroupElem, usize> = BTreeMap::new();
        for &x in s {
            *m.entry(x).or_default() += 1;
        }
        m
    };
    let (ca, cb) = (count(a), count(b));
    let mut out = Vec::new();
    for (x, n) in ca {
        out.extend(std::iter::repeat_n(x, n.min(cb.get(&x).copied().unwrap_or(0))));
    }
    out
}

pub fn pow_mod(base: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    let mut b = base % m;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    acc
}

/// Residue of a signed decimal string modulo `m`.
pub fn decimal_mod(s: &str, m: u64) -> Option<u64> {
    let (neg, digits) = match s.strip_prefix('-') {
        Some(d) => (true, d),
        None => (false, s),
    };
    let mut r = 0u64;
    for c in digits.chars() {
        r = (r * 10 + u64::from(c.to_digit(10)?)) % m;
    }
    Some(if neg { (m - r) % m } else { r })
}

/// Prime factorization by trial division: `(prime, exponent)` in increasing order.
pub fn trial_factor(mut n: u64) -> Vec<(u64, u32)> {
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

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn oracle_sanity() {
        let c3 = FiniteAbelianGroup::cyclic(3).unwrap();
        assert!(is_minimal_zero_sum(&c3, &[1, 1, 1]));
        assert!(!is_minimal_zero_sum(&c3, &[1, 2, 0]));
        assert_eq!(lengths(&c3, &[1, 1, 1, 2, 2, 2]), [(2, 1), (3, 1)].into());
        assert_eq!(davenport(&c3), 3);
        assert_eq!(gcd(&[1, 1, 2], &[1, 2, 2]), vec![1, 2]);
        assert_eq!(decimal_mod("-21", 3), Some(0));
        assert_eq!(pow_mod(2, 10, 1000), 24);
        assert_eq!(trial_factor(360), vec![(2, 3), (3, 2), (5, 1)]);
    }
}
