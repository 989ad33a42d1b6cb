//! Transfer of units, atoms, lengths and factorability from components to the ultraproduct.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::ext_nat::ExtNat;
use crate::factor::{factorizations, full_length_profile, length_profile, LengthProfile};
use crate::filter::family::{ElementFamily, ElementRule, LengthEnumeration};
use crate::filter::verdict::{filter_contains, ultralimit, BoolFamily, Periodic, UltrafilterSpec, Verdict};
use crate::group::{FiniteAbelianGroup, GroupElem};
use crate::monoid::{Element, Monoid};
use crate::multiset::Multiset;
use crate::zerosum::{realize_set_search, RealizeBounds, RealizeOutcome};

pub fn up_is_unit(fam: &ElementFamily, spec: &UltrafilterSpec) -> Result<Verdict<bool>> {
    filter_contains(&fam.unit_family()?, spec)
}

pub fn up_is_atom(fam: &ElementFamily, spec: &UltrafilterSpec) -> Result<Verdict<bool>> {
    filter_contains(&fam.atom_family()?, spec)
}

pub fn up_length_multiplicity(
    fam: &ElementFamily,
    l: u64,
    spec: &UltrafilterSpec,
    budget: &mut Budget,
) -> Result<Verdict<ExtNat>> {
    ultralimit(&fam.multiplicity_family(l, budget)?, spec)
}

pub fn up_length_contains(fam: &ElementFamily, l: u64, spec: &UltrafilterSpec, budget: &mut Budget) -> Result<Verdict<bool>> {
    Ok(up_length_multiplicity(fam, l, spec, budget)?.map(|n| *n >= ExtNat::ONE))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "outcome", rename_all = "snake_case")]
pub enum HaOutcome {
    /// `bound` is the first `N` that certified membership, if any.
    Decided { verdict: Verdict<bool>, bound: Option<u64> },
    /// No `N ≤ n_max` certified membership and the rule gives no certificate of failure.
    Inconclusive { n_max: u64 },
}

impl HaOutcome {
    pub fn verdict(&self) -> Option<&Verdict<bool>> {
        match self {
            HaOutcome::Decided { verdict, .. } => Some(verdict),
            HaOutcome::Inconclusive { .. } => None,
        }
    }
}

/// Whether `r*` has a factorization: some `N ≤ n_max` with `{λ : L(r_λ) ∩ [0, N] ≠ ∅} ∈ 𝒰`.
pub fn up_in_ha(fam: &ElementFamily, spec: &UltrafilterSpec, n_max: u64, budget: &mut Budget) -> Result<HaOutcome> {
    let family_at: Box<dyn Fn(u64, &mut Budget) -> Result<BoolFamily>> = match fam.concrete() {
        Some(_) => {
            // one bounded search per distinct element instead of one per N
            let shortest = fam.derive(|m, e| Ok(length_profile(m, e, n_max, budget)?.min_length()))?;
            Box::new(move |n, _| Ok(BoolFamily::periodic(shortest.map(|s| s.is_some_and(|s| s <= n)))))
        }
        None => Box::new(|n, b| fam.factorable_family(n, b)),
    };
    let mut first = None;
    for n in 0..=n_max {
        let v = filter_contains(&family_at(n, budget)?, spec)?;
        if v.decided() == Some(&true) {
            return Ok(HaOutcome::Decided { verdict: v, bound: Some(n) });
        }
        first.get_or_insert(v);
    }
    let first = first.expect("n ranges over a nonempty interval");
    match (&fam.rule, spec) {
        // L(p^λ) = {λ}: for every N the factorable indices are {0, …, N}
        (ElementRule::PrimePowerRamp { .. }, UltrafilterSpec::Frechet) if first.is_forall(&false) => {
            Ok(HaOutcome::Decided { verdict: first, bound: None })
        }
        // the factorable indices do not depend on N
        (ElementRule::NonAtomicWitness { .. }, _) => Ok(HaOutcome::Decided { verdict: first, bound: None }),
        _ => Ok(HaOutcome::Inconclusive { n_max }),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TransferRow {
    pub length: u64,
    pub expected: ExtNat,
    pub verdict: Verdict<ExtNat>,
    pub matches: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RealizedIndex {
    pub index: usize,
    pub lengths: LengthProfile,
    /// Terms of a verified witness in `B(G)`.
    pub witness: Option<Vec<GroupElem>>,
    pub status: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "realizer", rename_all = "snake_case")]
pub enum RealizerReport {
    /// Only the length-profile arithmetic was checked.
    TransferLevelOnly,
    BlockMonoid { group: FiniteAbelianGroup, indices: Vec<RealizedIndex> },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TransferReport {
    pub target: Multiset<u64>,
    pub enumeration: Vec<u64>,
    pub cycled: Vec<u64>,
    pub rows: Vec<TransferRow>,
    pub all_match: bool,
    pub realizer: RealizerReport,
}

#[derive(Debug, Clone)]
pub struct RealizerRequest {
    pub group: FiniteAbelianGroup,
    /// Number of leading indices `λ` to realize.
    pub indices: usize,
    pub bounds: RealizeBounds,
}

/// Builds the truncation family for `target` and checks that its ultralimit has
/// multiplicity `#_target(ℓ)` at every relevant `ℓ`.
pub fn realize_multiset_transfer(
    target: &Multiset<u64>,
    spec: &UltrafilterSpec,
    realizer: Option<&RealizerRequest>,
    budget: &mut Budget,
) -> Result<TransferReport> {
    if *spec != UltrafilterSpec::Frechet {
        return Err(Error::Invalid("multiset realization needs a non-principal ultrafilter".into()));
    }
    let fam = ElementFamily::truncation_ramp(target)?;
    let ElementRule::TruncationRamp { enumeration } = &fam.rule else { unreachable!() };
    let mut lengths: BTreeSet<u64> = target.support().copied().collect();
    let top = lengths.last().copied().unwrap_or(3);
    lengths.extend(2..=top + 1);
    let mut rows = Vec::new();
    for l in lengths {
        let verdict = up_length_multiplicity(&fam, l, spec, budget)?;
        let expected = target.multiplicity(&l);
        let matches = verdict == Verdict::ForAllU { value: expected };
        rows.push(TransferRow { length: l, expected, verdict, matches });
    }
    let realizer = match realizer {
        None => RealizerReport::TransferLevelOnly,
        Some(req) => realize_indices(enumeration, req, budget)?,
    };
    Ok(TransferReport {
        target: target.clone(),
        enumeration: enumeration.finite.clone(),
        cycled: enumeration.infinite.clone(),
        all_match: rows.iter().all(|r| r.matches),
        rows,
        realizer,
    })
}

fn realize_indices(e: &LengthEnumeration, req: &RealizerRequest, budget: &mut Budget) -> Result<RealizerReport> {
    let monoid = Monoid::block(req.group.clone());
    let mut indices = Vec::new();
    for index in 0..req.indices {
        let lengths = e.profile_at(index);
        let set: BTreeSet<u64> = lengths.support().collect();
        let is_set = lengths.iter().all(|(_, n)| n == ExtNat::ONE);
        let (witness, status) = if !is_set {
            (None, "multiset with repeated lengths; set realizer not applicable".to_string())
        } else if set.iter().any(|&l| l < 2) {
            (None, "unit; no search needed".to_string())
        } else {
            match realize_set_search(&req.group, &set, &req.bounds, budget)? {
                RealizeOutcome::Found { witness, .. } => {
                    let again = full_length_profile(&monoid, &Element::Sequence(witness.clone()), budget)?;
                    if again == lengths {
                        (Some(witness), "verified".to_string())
                    } else {
                        (None, "witness failed re-verification".to_string())
                    }
                }
                RealizeOutcome::NotFound { max_seq_len, .. } => {
                    (None, format!("no witness with at most {max_seq_len} terms"))
                }
                RealizeOutcome::BudgetExceeded { limit } => (None, format!("node budget {limit} exhausted")),
            }
        };
        indices.push(RealizedIndex { index, lengths, witness, status });
    }
    Ok(RealizerReport::BlockMonoid { group: req.group.clone(), indices })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IndexCheck {
    pub index: usize,
    pub product: Element,
    /// Essentially different factorizations of the product, all lengths.
    pub classes: usize,
    /// `σ(i)` = position of the `i`-th family's atom in the unique factorization.
    pub permutation: Option<Vec<usize>>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FactorialReport {
    pub holds: bool,
    pub checks: Vec<IndexCheck>,
}

/// For a product of atom families over factorial components, checks that each
/// relevant index has exactly one factorization class and matches it to the
/// factors up to associates and a permutation.
pub fn factorial_uniqueness_check(
    fams: &[ElementFamily],
    spec: &UltrafilterSpec,
    budget: &mut Budget,
) -> Result<FactorialReport> {
    let Some((head, rest)) = fams.split_first() else {
        return Err(Error::Invalid("need at least one family".into()));
    };
    let mut joint = head
        .concrete()
        .ok_or_else(|| Error::Invalid("families must be constant or periodic".into()))?
        .map(|p| vec![p.clone()]);
    for f in rest {
        let c = f.concrete().ok_or_else(|| Error::Invalid("families must be constant or periodic".into()))?;
        joint = joint.zip(&c, |v, p| {
            let mut v = v.clone();
            v.push(p.clone());
            v
        });
    }
    for f in fams {
        if !matches!(up_is_atom(f, spec)?.decided(), Some(true)) {
            return Err(Error::Invalid("every family must be an atom of the ultraproduct".into()));
        }
    }
    let indices: Vec<usize> = match *spec {
        UltrafilterSpec::PrincipalOnFinite { selected, .. } => vec![selected],
        // the joint sequence takes every value it ever takes within its window
        UltrafilterSpec::Frechet => (0..joint.window()).collect(),
    };
    let mut checks = Vec::new();
    for index in indices {
        checks.push(check_index(&joint, index, budget)?);
    }
    Ok(FactorialReport { holds: checks.iter().all(|c| c.classes == 1 && c.permutation.is_some()), checks })
}

fn check_index(joint: &Periodic<Vec<(Monoid, Element)>>, index: usize, budget: &mut Budget) -> Result<IndexCheck> {
    let row = joint.at(index);
    let m = &row[0].0;
    if row.iter().any(|(n, _)| n != m) {
        return Err(Error::Invalid(format!("families disagree on the component at index {index}")));
    }
    if !m.is_factorial_kind() {
        return Err(Error::Invalid(format!("{m} is not factorial")));
    }
    let product = m.product(row.iter().map(|(_, e)| e))?;
    let fs = factorizations(m, &product, m.max_factorization_length(&product), budget)?;
    let permutation = match fs.as_slice() {
        [only] if only.len() == row.len() => {
            let mut used = vec![false; only.len()];
            let mut sigma = Vec::with_capacity(row.len());
            for (_, u) in row {
                let a = m.associate(u);
                match (0..only.len()).find(|&j| !used[j] && only.atoms()[j] == a) {
                    Some(j) => {
                        used[j] = true;
                        sigma.push(j);
                    }
                    None => break,
                }
            }
            (sigma.len() == row.len()).then_some(sigma)
        }
        _ => None,
    };
    Ok(IndexCheck { index, product, classes: fs.len(), permutation })
}

/// Lengths of `r*` in the ultraproduct over a finite index set with the principal
/// ultrafilter at `selected`, computed on classes of tuples.
pub fn finite_index_ultraproduct_lengths(
    components: &[(Monoid, Element)],
    selected: usize,
    budget: &mut Budget,
) -> Result<LengthProfile> {
    if selected >= components.len() {
        return Err(Error::OutOfRange(format!("selected index {selected} of {}", components.len())));
    }
    for (m, e) in components {
        m.check(e)?;
    }
    let (ms, r) = &components[selected];
    // r ≡ s iff r_selected = s_selected, so a class is determined by its selected coordinate
    let class_of = |t: &[Element]| t[selected].clone();
    let lift = |u: &Element| -> Vec<Element> {
        components
            .iter()
            .enumerate()
            .map(|(i, (m, _))| if i == selected { u.clone() } else { m.one() })
            .collect()
    };
    let r_tuple: Vec<Element> = components.iter().map(|(_, e)| e.clone()).collect();
    let mut profile = LengthProfile::new();
    let mut seen = BTreeSet::new();
    for f in factorizations(ms, r, ms.max_factorization_length(r), budget)? {
        let lifted: Vec<Vec<Element>> = f.atoms().iter().map(&lift).collect();
        let mut classes: Vec<Element> = Vec::new();
        let mut acc: Vec<Element> = components.iter().map(|(m, _)| m.one()).collect();
        for t in &lifted {
            let c = class_of(t);
            if !ms.is_atom(&c)? {
                return Err(Error::Invalid("lifted factor is not an atom class".into()));
            }
            classes.push(ms.associate(&c));
            for (i, (m, _)) in components.iter().enumerate() {
                acc[i] = m.mul(&acc[i], &t[i])?;
            }
        }
        if class_of(&acc) != class_of(&r_tuple) {
            return Err(Error::Invalid("lifted factorization misses the class of r".into()));
        }
        classes.sort();
        if seen.insert(classes) {
            profile.add(f.len() as u64, ExtNat::ONE);
        }
    }
    let direct = full_length_profile(ms, r, budget)?;
    if direct != profile {
        return Err(Error::Invalid("quotient lengths disagree with the selected component".into()));
    }
    Ok(profile)
}
