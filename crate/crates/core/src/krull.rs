//! Degree functions, protoproducts of block monoids and their divisor theory.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::ext_nat::ExtNat;
use crate::factor::{full_length_profile, LengthProfile};
use crate::filter::{
    filter_contains, ultralimit, up_is_atom, ElementFamily, ElementRule, ExtNatFamily, Periodic, UltrafilterSpec,
    Verdict,
};
use crate::group::{FiniteAbelianGroup, GroupElem};
use crate::monoid::{is_prime, prime_factors, Element, Monoid};
use crate::zerosum::{is_minimal_zero_sum, sigma, zero_sum_sequences_up_to};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DegreeFunction {
    /// `deg(U) = |U|` on a block monoid.
    SequenceLength,
    /// Number of prime divisors of the image under the divisor theory.
    Canonical,
    /// Reserved; every call fails.
    PolynomialLikeStub,
}

pub fn deg(d: DegreeFunction, m: &Monoid, a: &Element) -> Result<u64> {
    m.check(a)?;
    match d {
        DegreeFunction::SequenceLength => match (m, a) {
            (Monoid::Block { .. }, Element::Sequence(s)) => Ok(s.len() as u64),
            _ => Err(Error::Invalid(format!("sequence length degree needs a block monoid, got {m}"))),
        },
        DegreeFunction::Canonical => Ok(canonical(m, a)),
        DegreeFunction::PolynomialLikeStub => Err(Error::Invalid("polynomial-like degree is not implemented".into())),
    }
}

fn canonical(m: &Monoid, a: &Element) -> u64 {
    match (m, a) {
        // B(G) ↪ F(G) and the identity on F(P)
        (Monoid::Block { .. }, Element::Sequence(s)) => s.len() as u64,
        (Monoid::FreeAbelian { .. }, Element::Exponents(v)) => v.iter().sum(),
        (Monoid::NonzeroIntegers, Element::Integer(n)) => {
            prime_factors(n.unsigned_abs()).iter().map(|&(_, e)| u64::from(e)).sum()
        }
        (Monoid::DirectProduct { factors }, Element::Tuple(t)) => {
            factors.iter().zip(t).map(|(m, e)| canonical(m, e)).sum()
        }
        _ => 0,
    }
}

/// The ultralimit of `λ ↦ deg(r_λ)`.
pub fn proto_degree(fam: &ElementFamily, d: DegreeFunction, spec: &UltrafilterSpec) -> Result<Verdict<ExtNat>> {
    let family = match &fam.rule {
        // deg(p^λ) = λ
        ElementRule::PrimePowerRamp { .. } if d == DegreeFunction::Canonical => {
            let n = match *spec {
                UltrafilterSpec::PrincipalOnFinite { selected, .. } => selected + 1,
                UltrafilterSpec::Frechet => 2,
            };
            ExtNatFamily::NondecreasingUnbounded { prefix: (0..n as u64).map(ExtNat::Fin).collect() }
        }
        _ => ExtNatFamily::periodic(fam.derive(|m, e| Ok(ExtNat::Fin(deg(d, m, e)?)))?),
    };
    ultralimit(&family, spec)
}

pub fn in_protoproduct(fam: &ElementFamily, d: DegreeFunction, spec: &UltrafilterSpec) -> Result<Verdict<bool>> {
    Ok(proto_degree(fam, d, spec)?.map(|n| n.is_finite()))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DivisorClosedReport {
    pub monoid: String,
    pub degree: DegreeFunction,
    pub size_bound: u64,
    pub elements_checked: usize,
    pub divisor_pairs_checked: usize,
    pub holds: bool,
    pub counterexample: Option<String>,
}

/// Checks on every element of size at most `size_bound` that its divisors have finite
/// degree adding up correctly, and that lengths computed inside `deg⁻¹(ℕ_0)` agree with
/// lengths in the whole monoid.
pub fn divisor_closed_check(
    m: &Monoid,
    d: DegreeFunction,
    size_bound: u64,
    budget: &mut Budget,
) -> Result<DivisorClosedReport> {
    let mut report = DivisorClosedReport {
        monoid: m.to_string(),
        degree: d,
        size_bound,
        elements_checked: 0,
        divisor_pairs_checked: 0,
        holds: true,
        counterexample: None,
    };
    for x in m.elements_up_to(size_bound, budget)? {
        let dx = deg(d, m, &x)?;
        report.elements_checked += 1;
        let divs = m.divisors(&x, budget)?;
        for a in &divs {
            let b = m.divide(&x, a).expect("listed divisor divides");
            report.divisor_pairs_checked += 1;
            if deg(d, m, a)? + deg(d, m, &b)? != dx {
                report.holds = false;
                report.counterexample = Some(format!("deg is not additive on {} = {}·{}", m.format(&x), m.format(a), m.format(&b)));
                return Ok(report);
            }
        }
        let inside = submonoid_lengths(m, &x, &divs, budget)?;
        let whole = full_length_profile(m, &x, budget)?;
        if inside != whole {
            report.holds = false;
            report.counterexample = Some(format!("lengths of {} differ inside the submonoid", m.format(&x)));
            return Ok(report);
        }
    }
    Ok(report)
}

// Atoms are found from the definition (no proper non-unit factorization among divisors),
// then multisets of them are counted.
fn submonoid_lengths(m: &Monoid, x: &Element, divs: &[Element], budget: &mut Budget) -> Result<LengthProfile> {
    let mut atoms = Vec::new();
    for a in divs {
        if m.is_unit(a)? {
            continue;
        }
        let mut irreducible = true;
        for c in m.divisors(a, budget)? {
            let q = m.divide(a, &c).expect("divisor divides");
            if !m.is_unit(&c)? && !m.is_unit(&q)? {
                irreducible = false;
                break;
            }
        }
        if irreducible {
            atoms.push(a.clone());
        }
    }
    let mut profile = LengthProfile::new();
    let mut memo: BTreeMap<(Element, usize), BTreeMap<u64, u64>> = BTreeMap::new();
    for (l, n) in count_products(m, &m.associate(x), 0, &atoms, &mut memo, budget)? {
        profile.add(l, ExtNat::Fin(n));
    }
    Ok(profile)
}

fn count_products(
    m: &Monoid,
    rest: &Element,
    from: usize,
    atoms: &[Element],
    memo: &mut BTreeMap<(Element, usize), BTreeMap<u64, u64>>,
    budget: &mut Budget,
) -> Result<BTreeMap<u64, u64>> {
    budget.tick()?;
    if m.is_unit(rest)? {
        return Ok([(0, 1)].into());
    }
    if let Some(v) = memo.get(&(rest.clone(), from)) {
        return Ok(v.clone());
    }
    let mut out: BTreeMap<u64, u64> = BTreeMap::new();
    for (i, a) in atoms.iter().enumerate().skip(from) {
        if let Some(q) = m.divide(rest, a) {
            for (l, n) in count_products(m, &m.associate(&q), i, atoms, memo, budget)? {
                *out.entry(l + 1).or_default() += n;
            }
        }
    }
    memo.insert((rest.clone(), from), out.clone());
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AtomCorrespondence {
    pub sequence: String,
    pub minimal: bool,
    pub family_atom: Verdict<bool>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IsoReport {
    pub group: String,
    pub degree_bound: u64,
    pub mode: UltrafilterSpec,
    /// Elements of `B(G)` of degree at most the bound.
    pub domain_count: usize,
    /// Distinct classes among their images.
    pub image_count: usize,
    /// Classes of bounded-degree families, one per representative tail or selected value.
    pub class_count: usize,
    pub injective: bool,
    pub surjective: bool,
    pub homomorphism: bool,
    pub pairs_checked: usize,
    pub degrees_match: bool,
    pub atoms_match: bool,
    pub atoms: Vec<AtomCorrespondence>,
    pub bijection: bool,
}

/// Checks that `U ↦ (U)_λ` maps the bounded-degree slice of `B(G)` bijectively and
/// multiplicatively onto the bounded-degree slice of the protoproduct.
pub fn bg_proto_iso_check(
    g: &FiniteAbelianGroup,
    degree_bound: u64,
    spec: &UltrafilterSpec,
    budget: &mut Budget,
) -> Result<IsoReport> {
    spec.validate()?;
    let m = Monoid::block(g.clone());
    let domain: Vec<Element> = zero_sum_sequences_up_to(g, degree_bound as usize, budget)?
        .into_iter()
        .map(Element::Sequence)
        .collect();
    let comps = Periodic::constant(m.clone());
    let image = |u: &Element| ElementFamily::constant(m.clone(), u.clone());
    let same_class = |a: &ElementFamily, b: &ElementFamily| -> Result<Verdict<bool>> {
        filter_contains(&a.agreement(b)?, spec)
    };
    let images: Vec<ElementFamily> = domain.iter().map(image).collect::<Result<_>>()?;

    // injectivity: distinct sequences never agree on a large set
    let mut injective = true;
    for i in 0..images.len() {
        for j in i + 1..images.len() {
            budget.tick()?;
            if same_class(&images[i], &images[j])?.decided() != Some(&false) {
                injective = false;
            }
        }
    }
    let image_count = if injective { images.len() } else { count_classes(&images, &same_class)? };

    // surjectivity: bounded-degree families built from other values still land in the image
    let mut surjective = true;
    let n = domain.len();
    for (i, u) in domain.iter().enumerate() {
        let other = domain[(i + 1) % n].clone();
        let pool = match *spec {
            UltrafilterSpec::Frechet => vec![
                Periodic::new(vec![other.clone(), other.clone()], vec![u.clone()])?,
                Periodic::new(vec![], vec![u.clone(), other.clone()])?,
            ],
            UltrafilterSpec::PrincipalOnFinite { size, selected } => {
                let pre = (0..size).map(|k| if k == selected { u.clone() } else { other.clone() }).collect();
                vec![Periodic::new(pre, vec![other.clone()])?]
            }
        };
        for elems in pool {
            let fam = ElementFamily::periodic(comps.clone(), elems)?;
            if !proto_degree(&fam, DegreeFunction::SequenceLength, spec)?
                .candidates()
                .iter()
                .all(|d| *d <= ExtNat::Fin(degree_bound))
            {
                surjective = false;
            }
            let mut hits = Vec::new();
            for img in &images {
                budget.tick()?;
                if same_class(&fam, img)?.decided() != Some(&false) {
                    hits.push(img);
                }
            }
            // a class of a concrete family is determined once the ultrafilter is fixed
            if hits.is_empty() {
                surjective = false;
            }
        }
    }

    let mut homomorphism = true;
    let mut pairs = 0;
    let index: BTreeMap<&Element, usize> = domain.iter().enumerate().map(|(i, e)| (e, i)).collect();
    for (i, a) in domain.iter().enumerate() {
        for b in &domain[i..] {
            let ab = m.mul(a, b)?;
            let Some(&k) = index.get(&ab) else { continue };
            pairs += 1;
            let prod = images[i].mul(&images[index[b]])?;
            if same_class(&prod, &images[k])?.decided() != Some(&true) {
                homomorphism = false;
            }
        }
    }

    let mut degrees_match = true;
    let mut atoms = Vec::new();
    for (u, img) in domain.iter().zip(&images) {
        let d = proto_degree(img, DegreeFunction::SequenceLength, spec)?;
        if d.decided() != Some(&ExtNat::Fin(deg(DegreeFunction::SequenceLength, &m, u)?)) {
            degrees_match = false;
        }
        let Element::Sequence(s) = u else { unreachable!() };
        let minimal = !s.is_empty() && is_minimal_zero_sum(g, s)?;
        atoms.push(AtomCorrespondence { sequence: m.format(u), minimal, family_atom: up_is_atom(img, spec)? });
    }
    let atoms_match = atoms.iter().all(|a| a.family_atom.decided() == Some(&a.minimal));
    atoms.retain(|a| a.minimal);

    let class_count = domain.len();
    Ok(IsoReport {
        group: g.name(),
        degree_bound,
        mode: *spec,
        domain_count: domain.len(),
        image_count,
        class_count,
        injective,
        surjective,
        homomorphism,
        pairs_checked: pairs,
        degrees_match,
        atoms_match,
        bijection: injective && surjective && image_count == class_count,
        atoms,
    })
}

fn count_classes(
    fams: &[ElementFamily],
    same: &dyn Fn(&ElementFamily, &ElementFamily) -> Result<Verdict<bool>>,
) -> Result<usize> {
    let mut reps: Vec<&ElementFamily> = Vec::new();
    for f in fams {
        let mut found = false;
        for r in &reps {
            if same(f, r)?.decided() == Some(&true) {
                found = true;
                break;
            }
        }
        if !found {
            reps.push(f);
        }
    }
    Ok(reps.len())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DivisorTheoryImage {
    pub group: String,
    /// The word in `F(G)`, letters as coordinate vectors.
    pub word: Vec<Vec<u32>>,
    pub degree: u64,
    pub class_group: String,
    /// Classes containing a prime divisor: all of `G`.
    pub classes_with_primes: usize,
}

/// The image of `U` under `B(G) ↪ F(G)` with a declarative class-group report.
pub fn divisor_theory_bg(g: &FiniteAbelianGroup, u: &[GroupElem]) -> Result<DivisorTheoryImage> {
    let s = sigma(g, u)?;
    if s != g.zero() {
        return Err(Error::NotZeroSum(format!("sum is {:?}", g.coords(s))));
    }
    let mut terms = u.to_vec();
    terms.sort_unstable();
    Ok(DivisorTheoryImage {
        group: g.name(),
        word: terms.iter().map(|&t| g.coords(t)).collect(),
        degree: terms.len() as u64,
        class_group: g.name(),
        classes_with_primes: g.order() as usize,
    })
}

/// Termwise multiset intersection of two sorted sequences.
pub fn word_gcd(a: &[GroupElem], b: &[GroupElem]) -> Vec<GroupElem> {
    let (mut i, mut j) = (0, 0);
    let mut out = Vec::new();
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                out.push(a[i]);
                i += 1;
                j += 1;
            }
        }
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GcdWitness {
    pub letter: Vec<u32>,
    pub a: Option<Vec<Vec<u32>>>,
    pub b: Option<Vec<Vec<u32>>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GcdCoverReport {
    pub group: String,
    pub max_len: usize,
    pub holds: bool,
    pub witnesses: Vec<GcdWitness>,
    /// Letters with no witness pair among zero-sum sequences of length at most `max_len`.
    pub uncovered: Vec<Vec<u32>>,
}

/// For each `g ∈ G`, searches zero-sum sequences `A, B` with `gcd(A, B) = g` in `F(G)`.
pub fn gcd_cover_check(g: &FiniteAbelianGroup, max_len: usize, budget: &mut Budget) -> Result<GcdCoverReport> {
    let seqs = zero_sum_sequences_up_to(g, max_len, budget)?;
    let letters: Vec<GroupElem> = g.elements().collect();
    let found: Vec<Option<(usize, usize)>> = letters
        .par_iter()
        .map(|&x| {
            let with_x: Vec<usize> = (0..seqs.len()).filter(|&i| seqs[i].contains(&x)).collect();
            for (k, &i) in with_x.iter().enumerate() {
                for &j in &with_x[k..] {
                    if word_gcd(&seqs[i], &seqs[j]) == [x] {
                        return Some((i, j));
                    }
                }
            }
            None
        })
        .collect();
    let coords = |s: &[GroupElem]| s.iter().map(|&t| g.coords(t)).collect::<Vec<_>>();
    let mut report = GcdCoverReport { group: g.name(), max_len, holds: true, witnesses: vec![], uncovered: vec![] };
    for (&x, hit) in letters.iter().zip(found) {
        match hit {
            Some((i, j)) => report.witnesses.push(GcdWitness {
                letter: g.coords(x),
                a: Some(coords(&seqs[i])),
                b: Some(coords(&seqs[j])),
            }),
            None => {
                report.holds = false;
                report.uncovered.push(g.coords(x));
                report.witnesses.push(GcdWitness { letter: g.coords(x), a: None, b: None });
            }
        }
    }
    Ok(report)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GapReport {
    pub k: usize,
    pub p: u64,
    pub q: u64,
    pub x: u64,
    pub y: u64,
    pub n_k: String,
    /// `p^x − q^y` in decimal.
    pub difference: String,
    pub primes: Vec<u64>,
    pub verified: bool,
}

/// Largest `p^x` bit length attempted.
pub const MAX_GAP_BITS: u64 = 1 << 22;

/// With `p = 2`, `N_k` the product of the first `k` odd primes and `q` the next prime,
/// `x = y = lcm(ord(p), ord(q))` mod `N_k` makes `N_k` divide `p^x − q^y`.
pub fn prime_power_gap(k: usize) -> Result<GapReport> {
    if k == 0 {
        return Err(Error::Invalid("k must be at least 1".into()));
    }
    let odd: Vec<u64> = (3u64..).step_by(2).filter(|&n| is_prime(n)).take(k + 1).collect();
    let (primes, q) = (odd[..k].to_vec(), odd[k]);
    let p = 2u64;
    // orders modulo a product are the lcm of orders modulo each prime
    let ord = |a: u64| primes.iter().fold(1u64, |acc, &r| acc.lcm(&order_mod(a, r)));
    let x = ord(p).lcm(&ord(q));
    let bits = x.saturating_mul(64 - q.leading_zeros() as u64);
    if bits > MAX_GAP_BITS {
        return Err(Error::BudgetExceeded { limit: MAX_GAP_BITS });
    }
    let n_k: BigInt = primes.iter().map(|&r| BigInt::from(r)).product();
    let e = u32::try_from(x).map_err(|_| Error::Overflow("exponent".into()))?;
    let diff = BigInt::from(p).pow(e) - BigInt::from(q).pow(e);
    let verified = !diff.is_zero()
        && diff.is_multiple_of(&n_k)
        && primes.iter().all(|&r| (&diff % BigInt::from(r)).is_zero());
    Ok(GapReport {
        k,
        p,
        q,
        x,
        y: x,
        n_k: n_k.to_string(),
        difference: diff.to_string(),
        primes,
        verified: verified && diff.abs() > BigInt::one(),
    })
}

fn order_mod(a: u64, r: u64) -> u64 {
    let mut acc = a % r;
    let mut n = 1;
    while acc != 1 {
        acc = acc * a % r;
        n += 1;
    }
    n
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(n: u32) -> FiniteAbelianGroup {
        FiniteAbelianGroup::cyclic(n).unwrap()
    }

    fn c2c2() -> FiniteAbelianGroup {
        FiniteAbelianGroup::new(vec![2, 2]).unwrap()
    }

    #[test]
    fn degrees() {
        let b3 = Monoid::block(c(3));
        let u = Element::sequence([1, 1, 1, 2, 2, 2]);
        assert_eq!(deg(DegreeFunction::SequenceLength, &b3, &u).unwrap(), 6);
        assert_eq!(deg(DegreeFunction::Canonical, &b3, &Element::sequence([])).unwrap(), 0);
        let b2 = Monoid::block(c(2));
        assert_eq!(deg(DegreeFunction::Canonical, &b2, &Element::sequence([1, 1, 1, 1])).unwrap(), 4);
        assert_eq!(deg(DegreeFunction::Canonical, &Monoid::NonzeroIntegers, &Element::Integer(-12)).unwrap(), 3);
        assert!(deg(DegreeFunction::SequenceLength, &Monoid::NonzeroIntegers, &Element::Integer(2)).is_err());
        assert!(deg(DegreeFunction::PolynomialLikeStub, &b3, &u).is_err());
    }

    #[test]
    fn protoproduct_membership() {
        let fr = UltrafilterSpec::Frechet;
        let b3 = Monoid::block(c(3));
        let f = ElementFamily::constant(b3.clone(), Element::sequence([1, 1, 1, 2, 2, 2])).unwrap();
        assert_eq!(proto_degree(&f, DegreeFunction::SequenceLength, &fr).unwrap(), Verdict::ForAllU { value: ExtNat::Fin(6) });
        assert_eq!(in_protoproduct(&f, DegreeFunction::SequenceLength, &fr).unwrap(), Verdict::ForAllU { value: true });
        let ramp = ElementFamily::prime_power_ramp(2).unwrap();
        assert_eq!(proto_degree(&ramp, DegreeFunction::Canonical, &fr).unwrap(), Verdict::ForAllU { value: ExtNat::Inf });
        assert_eq!(in_protoproduct(&ramp, DegreeFunction::Canonical, &fr).unwrap(), Verdict::ForAllU { value: false });
        let alt = ElementFamily::periodic(
            Periodic::constant(b3),
            Periodic::new(vec![], vec![Element::sequence([1, 2]), Element::sequence([1, 1, 1])]).unwrap(),
        )
        .unwrap();
        assert_eq!(
            proto_degree(&alt, DegreeFunction::SequenceLength, &fr).unwrap(),
            Verdict::DependsOnU { candidates: [ExtNat::Fin(2), ExtNat::Fin(3)].into() }
        );
        assert_eq!(in_protoproduct(&alt, DegreeFunction::SequenceLength, &fr).unwrap(), Verdict::ForAllU { value: true });
    }

    #[test]
    fn divisor_closed() {
        let mut b = Budget::default();
        for (m, d, bound) in [
            (Monoid::block(c(3)), DegreeFunction::SequenceLength, 6),
            (Monoid::block(c2c2()), DegreeFunction::SequenceLength, 6),
            (Monoid::free(2), DegreeFunction::Canonical, 8),
        ] {
            let r = divisor_closed_check(&m, d, bound, &mut b).unwrap();
            assert!(r.holds, "{m}: {:?}", r.counterexample);
        }
    }

    #[test]
    fn iso_small_groups() {
        let mut b = Budget::default();
        let r = bg_proto_iso_check(&c(2), 4, &UltrafilterSpec::Frechet, &mut b).unwrap();
        assert!(r.bijection && r.homomorphism && r.atoms_match && r.degrees_match);
        // 1, 0, 0², g², 0³, 0g², 0⁴, 0²g², g⁴
        assert_eq!((r.domain_count, r.image_count), (9, 9));
        let r = bg_proto_iso_check(&c(3), 3, &UltrafilterSpec::Frechet, &mut b).unwrap();
        let atoms: Vec<&str> = r.atoms.iter().map(|a| a.sequence.as_str()).collect();
        assert_eq!(atoms, ["[0]", "[1]·[2]", "[1]·[1]·[1]", "[2]·[2]·[2]"]);
        assert!(r.atoms_match);
        let r = bg_proto_iso_check(&FiniteAbelianGroup::trivial(), 5, &UltrafilterSpec::principal(3, 1).unwrap(), &mut b)
            .unwrap();
        assert!(r.bijection && r.homomorphism);
        assert_eq!(r.domain_count, 6);
    }

    #[test]
    fn divisor_theory_images() {
        let r = divisor_theory_bg(&c(3), &[1, 1, 1]).unwrap();
        assert_eq!(r.word, vec![vec![1], vec![1], vec![1]]);
        assert_eq!(r.class_group, "c3");
        let g = c2c2();
        let u = [g.from_coords(&[1, 0]).unwrap(), g.from_coords(&[0, 1]).unwrap(), g.from_coords(&[1, 1]).unwrap()];
        let r = divisor_theory_bg(&g, &u).unwrap();
        assert_eq!(r.word.len(), 3);
        assert_eq!(r.class_group, "c2xc2");
        assert!(divisor_theory_bg(&c(3), &[]).unwrap().word.is_empty());
        assert!(matches!(divisor_theory_bg(&c(3), &[1]), Err(Error::NotZeroSum(_))));
    }

    #[test]
    fn gcd_covers() {
        let mut b = Budget::default();
        let r = gcd_cover_check(&c(3), 3, &mut b).unwrap();
        assert!(r.holds);
        assert_eq!(word_gcd(&[1, 2], &[1, 1, 1]), vec![1]);
        assert_eq!(word_gcd(&[0], &[0, 1, 2]), vec![0]);
        // every zero-sum sequence over C_2 holds the nonzero letter an even number of times
        let r = gcd_cover_check(&c(2), 6, &mut b).unwrap();
        assert!(!r.holds);
        assert_eq!(r.uncovered, vec![vec![1]]);
    }

    #[test]
    fn gap() {
        let r = prime_power_gap(1).unwrap();
        assert_eq!((r.q, r.x, r.n_k.as_str(), r.difference.as_str()), (5, 2, "3", "-21"));
        let r = prime_power_gap(2).unwrap();
        assert_eq!((r.q, r.x, r.difference.as_str()), (7, 4, "-2385"));
        let r = prime_power_gap(4).unwrap();
        assert!(r.verified);
        assert_eq!(r.primes, vec![3, 5, 7, 11]);
        assert_eq!(r.n_k, "1155");
        assert!(prime_power_gap(0).is_err());
    }
}
