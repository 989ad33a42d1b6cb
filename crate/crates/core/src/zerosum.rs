//! Zero-sum sequences over finite abelian groups: the block monoid `B(G)`.
//!
//! Sequences are sorted vectors of [`GroupElem`] indices. Minimal zero-sum
//! sequences are generated as `S·(−σ(S))` for zero-sum free `S`, which keeps
//! the search inside the zero-sum free region and never revisits a multiset.

use std::collections::BTreeSet;

use rayon::prelude::*;
use serde::Serialize;

use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::factor::{length_profile, LengthProfile};
use crate::group::{FiniteAbelianGroup, GroupElem};
use crate::monoid::{Element, Monoid};

/// σ(S): the sum of all terms.
pub fn sigma(group: &FiniteAbelianGroup, terms: &[GroupElem]) -> Result<GroupElem> {
    for &g in terms {
        group.check(g)?;
    }
    Ok(group.sum(terms.iter().copied()))
}

/// True iff no proper nonempty subsequence of the zero-sum sequence `u` sums to zero.
pub fn is_minimal_zero_sum(group: &FiniteAbelianGroup, u: &[GroupElem]) -> Result<bool> {
    if sigma(group, u)? != 0 {
        return Err(Error::NotZeroSum(format!("{u:?} over {group}")));
    }
    if u.is_empty() {
        return Err(Error::Invalid("the empty sequence is not a candidate atom".into()));
    }
    Ok(is_minimal_unchecked(group, u))
}

/// Subset-sum table over (subsequence size, sum); polynomial in `|u|·|G|`.
pub(crate) fn is_minimal_unchecked(group: &FiniteAbelianGroup, u: &[GroupElem]) -> bool {
    let n = u.len();
    let order = group.order() as usize;
    let mut reach = vec![SumSet::new(order); n + 1];
    reach[0].insert(0);
    for (i, &g) in u.iter().enumerate() {
        for k in (0..=i).rev() {
            if reach[k].is_empty() {
                continue;
            }
            let shifted = reach[k].shifted(group, g);
            reach[k + 1].union_with(&shifted);
        }
    }
    (1..n).all(|k| !reach[k].contains(0))
}

#[derive(Clone, Debug)]
struct SumSet {
    words: Vec<u64>,
}

impl SumSet {
    fn new(order: usize) -> Self {
        SumSet { words: vec![0; order.div_ceil(64)] }
    }

    fn insert(&mut self, g: GroupElem) {
        self.words[g as usize / 64] |= 1 << (g % 64);
    }

    fn contains(&self, g: GroupElem) -> bool {
        self.words[g as usize / 64] >> (g % 64) & 1 == 1
    }

    fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    fn union_with(&mut self, other: &SumSet) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a |= b;
        }
    }

    fn iter(&self) -> impl Iterator<Item = GroupElem> + '_ {
        self.words.iter().enumerate().flat_map(|(i, &w)| {
            (0..64).filter(move |b| w >> b & 1 == 1).map(move |b| (i * 64 + b) as GroupElem)
        })
    }

    fn shifted(&self, group: &FiniteAbelianGroup, g: GroupElem) -> SumSet {
        let mut out = SumSet::new(group.order() as usize);
        for x in self.iter() {
            out.insert(group.add(x, g));
        }
        out
    }
}

/// Depth-first walk over zero-sum free sequences (nondecreasing terms), optionally
/// restricted to sub-multisets of `avail` (multiplicity per element index).
struct FreeWalk<'a, F> {
    group: &'a FiniteAbelianGroup,
    avail: Option<Vec<u32>>,
    used: Vec<u32>,
    max_len: usize,
    budget: &'a mut Budget,
    visit: F,
}

impl<F: FnMut(&[GroupElem], GroupElem, &[u32]) -> Result<()>> FreeWalk<'_, F> {
    fn run(&mut self) -> Result<()> {
        let order = self.group.order() as usize;
        let mut cur = Vec::new();
        self.step(&mut cur, SumSet::new(order), 0, 1)
    }

    fn step(&mut self, cur: &mut Vec<GroupElem>, sums: SumSet, total: GroupElem, start: GroupElem) -> Result<()> {
        self.budget.tick()?;
        (self.visit)(cur, total, &self.used)?;
        if cur.len() >= self.max_len {
            return Ok(());
        }
        for g in start..self.group.order() {
            if let Some(avail) = &self.avail {
                if self.used[g as usize] >= avail[g as usize] {
                    continue;
                }
            }
            // S·g stays zero-sum free iff g ≠ 0 and −g ∉ Σ(S)
            if sums.contains(self.group.neg(g)) {
                continue;
            }
            let mut next = sums.shifted(self.group, g);
            next.union_with(&sums);
            next.insert(g);
            cur.push(g);
            self.used[g as usize] += 1;
            self.step(cur, next, self.group.add(total, g), g)?;
            self.used[g as usize] -= 1;
            cur.pop();
        }
        Ok(())
    }
}

fn sort_by_length_then_lex(v: &mut [Vec<GroupElem>]) {
    v.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
}

/// All minimal zero-sum sequences of length at most `max_len`, ordered by length then lexicographically.
pub fn minimal_zero_sum_sequences(
    group: &FiniteAbelianGroup,
    max_len: usize,
    budget: &mut Budget,
) -> Result<Vec<Vec<GroupElem>>> {
    if max_len == 0 {
        return Err(Error::Invalid("max_len must be at least 1".into()));
    }
    let mut out = Vec::new();
    let order = group.order() as usize;
    let mut walk = FreeWalk {
        group,
        avail: None,
        used: vec![0; order],
        max_len: max_len - 1,
        budget,
        visit: |s: &[GroupElem], total: GroupElem, _: &[u32]| {
            let h = group.neg(total);
            if s.last().is_none_or(|&last| h >= last) {
                let mut u = s.to_vec();
                u.push(h);
                out.push(u);
            }
            Ok(())
        },
    };
    walk.run()?;
    sort_by_length_then_lex(&mut out);
    Ok(out)
}

/// Minimal zero-sum sub-multisets of the sequence `s` (the atoms dividing `s` in `B(G)`).
pub(crate) fn minimal_subsequences(
    group: &FiniteAbelianGroup,
    s: &[GroupElem],
    budget: &mut Budget,
) -> Result<Vec<Vec<GroupElem>>> {
    let order = group.order() as usize;
    let mut avail = vec![0u32; order];
    for &g in s {
        avail[g as usize] += 1;
    }
    let mut out = Vec::new();
    let caps = avail.clone();
    let mut walk = FreeWalk {
        group,
        avail: Some(avail),
        used: vec![0; order],
        max_len: s.len().saturating_sub(1),
        budget,
        visit: |cur: &[GroupElem], total: GroupElem, used: &[u32]| {
            let h = group.neg(total);
            if cur.last().is_none_or(|&last| h >= last) && used[h as usize] < caps[h as usize] {
                let mut u = cur.to_vec();
                u.push(h);
                out.push(u);
            }
            Ok(())
        },
    };
    if !s.is_empty() {
        walk.run()?;
    }
    out.sort();
    Ok(out)
}

/// Every zero-sum sequence of length at most `bound` (including the empty one), by length then lex.
pub fn zero_sum_sequences_up_to(
    group: &FiniteAbelianGroup,
    bound: usize,
    budget: &mut Budget,
) -> Result<Vec<Vec<GroupElem>>> {
    fn go(
        group: &FiniteAbelianGroup,
        cur: &mut Vec<GroupElem>,
        total: GroupElem,
        start: GroupElem,
        bound: usize,
        out: &mut Vec<Vec<GroupElem>>,
        budget: &mut Budget,
    ) -> Result<()> {
        budget.tick()?;
        if total == 0 {
            out.push(cur.clone());
        }
        if cur.len() == bound {
            return Ok(());
        }
        for g in start..group.order() {
            cur.push(g);
            go(group, cur, group.add(total, g), g, bound, out, budget)?;
            cur.pop();
        }
        Ok(())
    }
    let mut out = Vec::new();
    go(group, &mut Vec::new(), 0, 0, bound, &mut out, budget)?;
    sort_by_length_then_lex(&mut out);
    Ok(out)
}

/// Zero-sum sequences of exactly `len` terms, lexicographic.
fn zero_sum_sequences_of_length(
    group: &FiniteAbelianGroup,
    len: usize,
    budget: &mut Budget,
    visit: &mut dyn FnMut(&[GroupElem], &mut Budget) -> Result<bool>,
) -> Result<bool> {
    fn go(
        group: &FiniteAbelianGroup,
        cur: &mut Vec<GroupElem>,
        total: GroupElem,
        start: GroupElem,
        len: usize,
        budget: &mut Budget,
        visit: &mut dyn FnMut(&[GroupElem], &mut Budget) -> Result<bool>,
    ) -> Result<bool> {
        budget.tick()?;
        if cur.len() == len {
            return if total == 0 { visit(cur, budget) } else { Ok(false) };
        }
        for g in start..group.order() {
            cur.push(g);
            let stop = go(group, cur, group.add(total, g), g, len, budget, visit)?;
            cur.pop();
            if stop {
                return Ok(true);
            }
        }
        Ok(false)
    }
    go(group, &mut Vec::new(), 0, 0, len, budget, visit)
}

/// All distinct zero-sum sub-multisets of `s` (including empty and `s` itself), sorted.
pub(crate) fn zero_sum_subsequences(
    group: &FiniteAbelianGroup,
    s: &[GroupElem],
    budget: &mut Budget,
) -> Result<Vec<Vec<GroupElem>>> {
    let mut distinct: Vec<(GroupElem, u32)> = Vec::new();
    for &g in s {
        match distinct.last_mut() {
            Some((h, c)) if *h == g => *c += 1,
            _ => distinct.push((g, 1)),
        }
    }
    fn go(
        group: &FiniteAbelianGroup,
        distinct: &[(GroupElem, u32)],
        i: usize,
        cur: &mut Vec<GroupElem>,
        total: GroupElem,
        out: &mut Vec<Vec<GroupElem>>,
        budget: &mut Budget,
    ) -> Result<()> {
        budget.tick()?;
        if i == distinct.len() {
            if total == 0 {
                out.push(cur.clone());
            }
            return Ok(());
        }
        let (g, c) = distinct[i];
        let mut t = total;
        for k in 0..=c {
            go(group, distinct, i + 1, cur, t, out, budget)?;
            if k < c {
                cur.push(g);
                t = group.add(t, g);
            }
        }
        for _ in 0..c {
            cur.pop();
        }
        Ok(())
    }
    let mut out = Vec::new();
    go(group, &distinct, 0, &mut Vec::new(), 0, &mut out, budget)?;
    for v in &mut out {
        v.sort_unstable();
    }
    out.sort();
    Ok(out)
}

/// The Davenport constant: the maximal length of a minimal zero-sum sequence.
///
/// Computed as one plus the maximal length of a zero-sum free sequence; the
/// walk is capped at `|G|`, which bounds every minimal zero-sum sequence.
pub fn davenport(group: &FiniteAbelianGroup, budget: &mut Budget) -> Result<usize> {
    let mut longest = 0usize;
    let order = group.order() as usize;
    let mut walk = FreeWalk {
        group,
        avail: None,
        used: vec![0; order],
        max_len: order.saturating_sub(1),
        budget,
        visit: |s: &[GroupElem], _: GroupElem, _: &[u32]| {
            longest = longest.max(s.len());
            Ok(())
        },
    };
    walk.run()?;
    Ok(longest + 1)
}

/// `1 + Σ(n_i − 1)`, the standard lower bound for the Davenport constant.
pub fn davenport_lower_bound(group: &FiniteAbelianGroup) -> usize {
    1 + group.invariant_factors().iter().map(|&n| n as usize - 1).sum::<usize>()
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct RealizeBounds {
    /// Longest candidate sequence; `None` means `max L · D(G)`.
    pub max_seq_len: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "outcome", rename_all = "snake_case")]
pub enum RealizeOutcome {
    Found { witness: Vec<GroupElem>, profile: LengthProfile, candidates_checked: u64 },
    NotFound { max_seq_len: usize, candidates_checked: u64 },
    BudgetExceeded { limit: u64 },
}

impl RealizeOutcome {
    pub fn witness(&self) -> Option<&[GroupElem]> {
        match self {
            RealizeOutcome::Found { witness, .. } => Some(witness),
            _ => None,
        }
    }
}

/// Searches `B(G)` for an element whose set of lengths is exactly `target`.
///
/// Candidates are visited by increasing length, then lexicographically, so the
/// first witness is reproducible.
pub fn realize_set_search(
    group: &FiniteAbelianGroup,
    target: &BTreeSet<u64>,
    bounds: &RealizeBounds,
    budget: &mut Budget,
) -> Result<RealizeOutcome> {
    let (Some(&lo), Some(&hi)) = (target.first(), target.last()) else {
        return Err(Error::Invalid("target set of lengths must be nonempty".into()));
    };
    if lo < 2 {
        return Err(Error::Invalid("target lengths must be at least 2".into()));
    }
    match realize_inner(group, target, hi, bounds, budget) {
        Err(Error::BudgetExceeded { limit }) => Ok(RealizeOutcome::BudgetExceeded { limit }),
        other => other,
    }
}

fn realize_inner(
    group: &FiniteAbelianGroup,
    target: &BTreeSet<u64>,
    hi: u64,
    bounds: &RealizeBounds,
    budget: &mut Budget,
) -> Result<RealizeOutcome> {
    let ceiling = match bounds.max_seq_len {
        Some(n) => n,
        None => hi as usize * davenport(group, budget)?,
    };
    let monoid = Monoid::block(group.clone());
    let mut checked = 0u64;
    let mut found: Option<(Vec<GroupElem>, LengthProfile)> = None;
    // a factorization of length max L needs at least max L terms
    for len in (hi as usize)..=ceiling {
        let stop = zero_sum_sequences_of_length(group, len, budget, &mut |seq, budget| {
            checked += 1;
            let elem = Element::Sequence(seq.to_vec());
            let profile = length_profile(&monoid, &elem, len as u64, budget)?;
            let lengths: BTreeSet<u64> = profile.support().collect();
            if &lengths == target {
                found = Some((seq.to_vec(), profile));
                return Ok(true);
            }
            Ok(false)
        })?;
        if stop {
            break;
        }
    }
    Ok(match found {
        Some((witness, profile)) => RealizeOutcome::Found { witness, profile, candidates_checked: checked },
        None => RealizeOutcome::NotFound { max_seq_len: ceiling, candidates_checked: checked },
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExceptionalReport {
    pub target: BTreeSet<u64>,
    pub order_bound: u32,
    /// Groups where the search was exhaustive and found nothing.
    pub exceptional: Vec<FiniteAbelianGroup>,
    pub realized: Vec<(FiniteAbelianGroup, Vec<GroupElem>)>,
    /// Groups where the search ran out of budget; never counted as exceptional.
    pub budget_exceeded: Vec<FiniteAbelianGroup>,
}

/// Runs [`realize_set_search`] over every abelian group of order at most `order_bound`.
pub fn exceptional_groups(
    target: &BTreeSet<u64>,
    order_bound: u32,
    bounds: &RealizeBounds,
    node_budget: u64,
) -> Result<ExceptionalReport> {
    let groups = FiniteAbelianGroup::all_up_to_order(order_bound);
    let outcomes: Vec<Result<RealizeOutcome>> = groups
        .par_iter()
        .map(|g| realize_set_search(g, target, bounds, &mut Budget::new(node_budget)))
        .collect();
    let mut report = ExceptionalReport {
        target: target.clone(),
        order_bound,
        exceptional: vec![],
        realized: vec![],
        budget_exceeded: vec![],
    };
    for (g, outcome) in groups.into_iter().zip(outcomes) {
        match outcome? {
            RealizeOutcome::Found { witness, .. } => report.realized.push((g, witness)),
            RealizeOutcome::NotFound { .. } => report.exceptional.push(g),
            RealizeOutcome::BudgetExceeded { .. } => report.budget_exceeded.push(g),
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(n: u32) -> FiniteAbelianGroup {
        FiniteAbelianGroup::cyclic(n).unwrap()
    }

    fn grp(f: &[u32]) -> FiniteAbelianGroup {
        FiniteAbelianGroup::new(f.to_vec()).unwrap()
    }

    /// Brute force: every proper nonempty sub-multiset by position mask.
    fn minimal_by_masks(group: &FiniteAbelianGroup, u: &[GroupElem]) -> bool {
        let n = u.len();
        (1..(1u32 << n) - 1).all(|mask| {
            let s = group.sum((0..n).filter(|i| mask >> i & 1 == 1).map(|i| u[i]));
            s != 0
        })
    }

    #[test]
    fn minimal_examples() {
        let c3 = c(3);
        assert!(is_minimal_zero_sum(&c3, &[1, 1, 1]).unwrap());
        assert!(!is_minimal_zero_sum(&c3, &[1, 1, 1, 2, 2, 2]).unwrap());
        assert!(is_minimal_zero_sum(&c3, &[0]).unwrap());
        assert!(is_minimal_zero_sum(&FiniteAbelianGroup::trivial(), &[0]).unwrap());
        assert!(matches!(is_minimal_zero_sum(&c3, &[1, 1]), Err(Error::NotZeroSum(_))));
        assert!(matches!(is_minimal_zero_sum(&c3, &[5]), Err(Error::OutOfRange(_))));
    }

    #[test]
    fn minimal_table_matches_masks() {
        let mut b = Budget::default();
        for g in [c(4), c(5), grp(&[2, 2]), grp(&[2, 4])] {
            for u in zero_sum_sequences_up_to(&g, 6, &mut b).unwrap() {
                if u.is_empty() {
                    continue;
                }
                assert_eq!(is_minimal_unchecked(&g, &u), minimal_by_masks(&g, &u), "{u:?} over {g}");
            }
        }
    }

    #[test]
    fn enumeration_examples() {
        let mut b = Budget::default();
        assert_eq!(minimal_zero_sum_sequences(&c(2), 3, &mut b).unwrap(), vec![vec![0], vec![1, 1]]);
        assert_eq!(
            minimal_zero_sum_sequences(&c(3), 3, &mut b).unwrap(),
            vec![vec![0], vec![1, 2], vec![1, 1, 1], vec![2, 2, 2]]
        );
        let v = grp(&[2, 2]);
        let got = minimal_zero_sum_sequences(&v, 3, &mut b).unwrap();
        // indices: (0,1)=1, (1,0)=2, (1,1)=3
        assert_eq!(got, vec![vec![0], vec![1, 1], vec![2, 2], vec![3, 3], vec![1, 2, 3]]);
        assert!(minimal_zero_sum_sequences(&c(3), 0, &mut b).is_err());
    }

    #[test]
    fn enumeration_is_closed() {
        let mut b = Budget::default();
        for g in [c(4), c(6), grp(&[2, 2]), grp(&[3, 3])] {
            let atoms: BTreeSet<Vec<GroupElem>> =
                minimal_zero_sum_sequences(&g, 5, &mut b).unwrap().into_iter().collect();
            for u in zero_sum_sequences_up_to(&g, 5, &mut b).unwrap() {
                if u.is_empty() {
                    continue;
                }
                assert_eq!(atoms.contains(&u), minimal_by_masks(&g, &u), "{u:?} over {g}");
            }
        }
    }

    #[test]
    fn davenport_small() {
        let mut b = Budget::default();
        for n in 1..=8 {
            assert_eq!(davenport(&c(n), &mut b).unwrap(), n as usize);
        }
        assert_eq!(davenport(&grp(&[2, 2]), &mut b).unwrap(), 3);
        assert_eq!(davenport(&grp(&[3, 3]), &mut b).unwrap(), 5);
        assert_eq!(davenport(&grp(&[2, 2, 2]), &mut b).unwrap(), 4);
        assert_eq!(davenport(&grp(&[2, 4]), &mut b).unwrap(), 5);
    }

    #[test]
    fn davenport_budget_is_distinct() {
        let mut b = Budget::new(5);
        assert!(matches!(davenport(&grp(&[3, 3]), &mut b), Err(Error::BudgetExceeded { .. })));
    }

    #[test]
    fn subsequences() {
        let mut b = Budget::default();
        let g = c(3);
        let subs = zero_sum_subsequences(&g, &[1, 1, 1, 2, 2, 2], &mut b).unwrap();
        // empty, 12, 111, 222, 1122, 111222, 111·2?no: 1112 sum 5≠0; 112222? sum=10≠0
        assert_eq!(
            subs,
            vec![vec![], vec![1, 1, 1], vec![1, 1, 1, 2, 2, 2], vec![1, 1, 2, 2], vec![1, 2], vec![2, 2, 2]]
        );
        let atoms = minimal_subsequences(&g, &[0, 1, 1, 1, 2, 2, 2], &mut b).unwrap();
        assert_eq!(atoms, vec![vec![0], vec![1, 1, 1], vec![1, 2], vec![2, 2, 2]]);
    }

    #[test]
    fn realization_examples() {
        let mut b = Budget::default();
        let l23: BTreeSet<u64> = [2, 3].into();
        let out = realize_set_search(&c(3), &l23, &RealizeBounds::default(), &mut b).unwrap();
        assert_eq!(out.witness(), Some(&[1, 1, 1, 2, 2, 2][..]));
        let out = realize_set_search(&c(2), &l23, &RealizeBounds::default(), &mut b).unwrap();
        assert!(matches!(out, RealizeOutcome::NotFound { max_seq_len: 6, .. }));
        let l2: BTreeSet<u64> = [2].into();
        let out = realize_set_search(&FiniteAbelianGroup::trivial(), &l2, &RealizeBounds::default(), &mut b).unwrap();
        assert_eq!(out.witness(), Some(&[0, 0][..]));
        let out = realize_set_search(&c(3), &l23, &RealizeBounds::default(), &mut Budget::new(10)).unwrap();
        assert!(matches!(out, RealizeOutcome::BudgetExceeded { .. }));
        assert!(realize_set_search(&c(3), &[1].into(), &RealizeBounds::default(), &mut b).is_err());
    }

    #[test]
    fn exceptional_examples() {
        let rep = exceptional_groups(&[2, 3].into(), 3, &RealizeBounds::default(), 10_000_000).unwrap();
        assert_eq!(rep.exceptional, vec![FiniteAbelianGroup::trivial(), c(2)]);
        assert_eq!(rep.realized.len(), 1);
        assert!(rep.budget_exceeded.is_empty());

        let rep = exceptional_groups(&[2].into(), 4, &RealizeBounds::default(), 10_000_000).unwrap();
        assert!(rep.exceptional.is_empty());
        let rep = exceptional_groups(&[3].into(), 2, &RealizeBounds::default(), 10_000_000).unwrap();
        assert!(rep.exceptional.is_empty());
        assert_eq!(rep.realized[0].1, vec![0, 0, 0]);
    }

    #[test]
    fn atoms_invariant_under_coordinate_swap() {
        let mut b = Budget::default();
        let g = grp(&[3, 3]);
        let atoms: BTreeSet<Vec<GroupElem>> = minimal_zero_sum_sequences(&g, 4, &mut b).unwrap().into_iter().collect();
        let swap = |x: GroupElem| {
            let c = g.coords(x);
            g.from_coords(&[c[1], c[0]]).unwrap()
        };
        let swapped: BTreeSet<Vec<GroupElem>> = atoms
            .iter()
            .map(|u| {
                let mut v: Vec<GroupElem> = u.iter().map(|&x| swap(x)).collect();
                v.sort_unstable();
                v
            })
            .collect();
        assert_eq!(atoms, swapped);
    }
}
