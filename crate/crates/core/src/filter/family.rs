//! Finitely described element families `λ ↦ r_λ` and the closed-form
//! predicate families each rule certifies.

use std::collections::BTreeMap;

use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::ext_nat::ExtNat;
use crate::factor::{length_profile, LengthProfile};
use crate::filter::verdict::{BoolFamily, ExtNatFamily, Periodic};
use crate::monoid::{is_prime, Element, Monoid};
use crate::multiset::Multiset;

/// Enumeration `f` of a finite-support multiset of lengths: the finite-multiplicity
/// lengths first (each repeated), then the infinite-multiplicity lengths cycled forever.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LengthEnumeration {
    pub finite: Vec<u64>,
    pub infinite: Vec<u64>,
}

impl LengthEnumeration {
    pub fn from_target(target: &Multiset<u64>) -> Result<Self> {
        let mut finite = Vec::new();
        let mut infinite = Vec::new();
        for (&l, n) in target.iter() {
            if l < 2 {
                return Err(Error::Invalid(format!("length {l} below 2 in target multiset")));
            }
            match n {
                ExtNat::Fin(k) => finite.extend(std::iter::repeat_n(l, k as usize)),
                ExtNat::Inf => infinite.push(l),
            }
        }
        Ok(LengthEnumeration { finite, infinite })
    }

    pub fn value(&self, index: usize) -> Option<u64> {
        let f = self.finite.len();
        if index < f {
            Some(self.finite[index])
        } else if self.infinite.is_empty() {
            None
        } else {
            Some(self.infinite[(index - f) % self.infinite.len()])
        }
    }

    pub fn is_empty(&self) -> bool {
        self.finite.is_empty() && self.infinite.is_empty()
    }

    /// Indices up to which the truncations still change shape.
    pub fn window(&self) -> usize {
        (self.finite.len() + self.infinite.len()).max(1)
    }

    /// Number of `i ≤ index` with `f(i) = ℓ`, in closed form.
    pub fn count_upto(&self, index: usize, l: u64) -> u64 {
        let f = self.finite.len();
        let head = self.finite.iter().take(index + 1).filter(|&&x| x == l).count() as u64;
        if index < f || self.infinite.is_empty() {
            return head;
        }
        let period = self.infinite.len();
        let tail: u64 = self
            .infinite
            .iter()
            .enumerate()
            .filter(|(_, &x)| x == l)
            .map(|(j, _)| if index >= f + j { ((index - f - j) / period) as u64 + 1 } else { 0 })
            .sum();
        head + tail
    }

    /// `L_λ = {f(0), …, f(λ)}`; the empty enumeration gives a unit (`{0}`).
    pub fn profile_at(&self, index: usize) -> LengthProfile {
        if self.is_empty() {
            return LengthProfile::from_counts([(0, ExtNat::ONE)]);
        }
        let mut lengths: Vec<u64> = self.finite.iter().chain(&self.infinite).copied().collect();
        lengths.sort_unstable();
        lengths.dedup();
        LengthProfile::from_counts(lengths.into_iter().map(|l| (l, ExtNat::Fin(self.count_upto(index, l)))))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum ElementRule {
    Constant { element: Element },
    Periodic { elements: Periodic<Element> },
    /// `r_λ = p^λ` in the nonzero integers.
    PrimePowerRamp { p: u64 },
    /// An abstract family with `L(r_λ) = {f(0), …, f(λ)}`.
    TruncationRamp { enumeration: LengthEnumeration },
    /// Components flagged `true` are non-atomic and `r_λ` is an element there with no
    /// factorization; elsewhere `r_λ` is the identity.
    NonAtomicWitness { flagged: Periodic<bool> },
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ElementFamily {
    pub components: Periodic<Monoid>,
    pub rule: ElementRule,
}

impl ElementFamily {
    pub fn constant(m: Monoid, element: Element) -> Result<Self> {
        let f = ElementFamily { components: Periodic::constant(m), rule: ElementRule::Constant { element } };
        f.validate()?;
        Ok(f)
    }

    pub fn periodic(components: Periodic<Monoid>, elements: Periodic<Element>) -> Result<Self> {
        let f = ElementFamily { components, rule: ElementRule::Periodic { elements } };
        f.validate()?;
        Ok(f)
    }

    pub fn prime_power_ramp(p: u64) -> Result<Self> {
        let f = ElementFamily {
            components: Periodic::constant(Monoid::NonzeroIntegers),
            rule: ElementRule::PrimePowerRamp { p },
        };
        f.validate()?;
        Ok(f)
    }

    /// Families for an abstract component with property (F); `components` is informational.
    pub fn truncation_ramp(target: &Multiset<u64>) -> Result<Self> {
        Ok(ElementFamily {
            components: Periodic::constant(Monoid::NonzeroIntegers),
            rule: ElementRule::TruncationRamp { enumeration: LengthEnumeration::from_target(target)? },
        })
    }

    pub fn non_atomic_witness(components: Periodic<Monoid>, flagged: Periodic<bool>) -> Result<Self> {
        let f = ElementFamily { components, rule: ElementRule::NonAtomicWitness { flagged } };
        f.validate()?;
        Ok(f)
    }

    pub fn validate(&self) -> Result<()> {
        self.components.validate()?;
        match &self.rule {
            ElementRule::Constant { .. } | ElementRule::Periodic { .. } => {
                if let ElementRule::Periodic { elements } = &self.rule {
                    elements.validate()?;
                }
                let c = self.concrete().expect("concrete rule");
                for i in 0..c.window() {
                    let (m, e) = c.at(i);
                    m.check(e)?;
                }
                Ok(())
            }
            ElementRule::PrimePowerRamp { p } => {
                if !is_prime(*p) {
                    return Err(Error::Invalid(format!("{p} is not prime")));
                }
                if self.components.recurring().iter().chain(&self.components.pre).any(|m| *m != Monoid::NonzeroIntegers) {
                    return Err(Error::Invalid("prime power ramp needs nonzero-integer components".into()));
                }
                Ok(())
            }
            ElementRule::TruncationRamp { enumeration } => {
                if enumeration.finite.iter().chain(&enumeration.infinite).any(|&l| l < 2) {
                    return Err(Error::Invalid("lengths in a truncation ramp must be at least 2".into()));
                }
                Ok(())
            }
            ElementRule::NonAtomicWitness { flagged } => flagged.validate(),
        }
    }

    /// `λ ↦ (H_λ, r_λ)` for rules that name their elements explicitly.
    pub fn concrete(&self) -> Option<Periodic<(Monoid, Element)>> {
        match &self.rule {
            ElementRule::Constant { element } => Some(self.components.map(|m| (m.clone(), element.clone()))),
            ElementRule::Periodic { elements } => Some(self.components.zip(elements, |m, e| (m.clone(), e.clone()))),
            _ => None,
        }
    }

    /// `(H_λ, r_λ)` at one index.
    pub fn element_at(&self, index: usize) -> Result<(Monoid, Element)> {
        match &self.rule {
            ElementRule::PrimePowerRamp { p } => {
                let e = u32::try_from(index).ok().and_then(|k| (*p as i64).checked_pow(k));
                e.map(|v| (Monoid::NonzeroIntegers, Element::Integer(v)))
                    .ok_or_else(|| Error::Overflow(format!("{p}^{index}")))
            }
            _ => match self.concrete() {
                Some(c) => Ok(c.at(index).clone()),
                None => Err(Error::Uncertifiable("the rule describes its elements only abstractly".into())),
            },
        }
    }

    /// Applies `f` to each distinct `(H_λ, r_λ)` of a concrete rule.
    pub fn derive<T: Clone>(&self, mut f: impl FnMut(&Monoid, &Element) -> Result<T>) -> Result<Periodic<T>> {
        let c = self
            .concrete()
            .ok_or_else(|| Error::Uncertifiable("no closed form for this rule".into()))?;
        let mut memo: BTreeMap<(Monoid, Element), T> = BTreeMap::new();
        c.try_map(|(m, e)| {
            if let Some(v) = memo.get(&(m.clone(), e.clone())) {
                return Ok(v.clone());
            }
            let v = f(m, e)?;
            memo.insert((m.clone(), e.clone()), v.clone());
            Ok(v)
        })
    }

    /// `λ ↦ r_λ ∈ H_λ^×`.
    pub fn unit_family(&self) -> Result<BoolFamily> {
        match &self.rule {
            ElementRule::PrimePowerRamp { .. } => Ok(BoolFamily::periodic(Periodic { pre: vec![true], period: vec![false] })),
            ElementRule::TruncationRamp { enumeration } => Ok(BoolFamily::constant(enumeration.is_empty())),
            ElementRule::NonAtomicWitness { flagged } => Ok(BoolFamily::periodic(flagged.map(|b| !b))),
            _ => Ok(BoolFamily::periodic(self.derive(|m, e| m.is_unit(e))?)),
        }
    }

    /// `λ ↦ r_λ ∈ A(H_λ)`.
    pub fn atom_family(&self) -> Result<BoolFamily> {
        match &self.rule {
            ElementRule::PrimePowerRamp { .. } => {
                Ok(BoolFamily::periodic(Periodic { pre: vec![false, true], period: vec![false] }))
            }
            ElementRule::TruncationRamp { .. } | ElementRule::NonAtomicWitness { .. } => Ok(BoolFamily::constant(false)),
            _ => Ok(BoolFamily::periodic(self.derive(|m, e| m.is_atom(e))?)),
        }
    }

    /// `λ ↦ #_{L(r_λ)}(ℓ)`.
    pub fn multiplicity_family(&self, l: u64, budget: &mut Budget) -> Result<ExtNatFamily> {
        match &self.rule {
            ElementRule::PrimePowerRamp { .. } => {
                let l = usize::try_from(l).map_err(|_| Error::Overflow("length".into()))?;
                let pre = (0..=l).map(|k| ExtNat::Fin(u64::from(k == l))).collect();
                Ok(ExtNatFamily::EventuallyPeriodic { pre, period: vec![ExtNat::ZERO] })
            }
            ElementRule::TruncationRamp { enumeration } => {
                if enumeration.is_empty() {
                    return Ok(ExtNatFamily::constant(ExtNat::Fin(u64::from(l == 0))));
                }
                let f = enumeration.finite.len();
                if enumeration.infinite.contains(&l) {
                    let prefix = (0..f + enumeration.infinite.len())
                        .map(|i| ExtNat::Fin(enumeration.count_upto(i, l)))
                        .collect();
                    Ok(ExtNatFamily::NondecreasingUnbounded { prefix })
                } else {
                    let pre = (0..f).map(|i| ExtNat::Fin(enumeration.count_upto(i, l))).collect();
                    let total = enumeration.finite.iter().filter(|&&x| x == l).count() as u64;
                    Ok(ExtNatFamily::EventuallyPeriodic { pre, period: vec![ExtNat::Fin(total)] })
                }
            }
            ElementRule::NonAtomicWitness { flagged } => {
                Ok(ExtNatFamily::periodic(flagged.map(|&b| ExtNat::Fin(u64::from(!b && l == 0)))))
            }
            _ => Ok(ExtNatFamily::periodic(
                self.derive(|m, e| Ok(length_profile(m, e, l, budget)?.multiplicity(l)))?,
            )),
        }
    }

    /// `λ ↦ L(r_λ) ∩ [0, n] ≠ ∅`.
    pub fn factorable_family(&self, n: u64, budget: &mut Budget) -> Result<BoolFamily> {
        match &self.rule {
            ElementRule::PrimePowerRamp { .. } => {
                let n = usize::try_from(n).map_err(|_| Error::Overflow("length bound".into()))?;
                Ok(BoolFamily::periodic(Periodic { pre: vec![true; n + 1], period: vec![false] }))
            }
            ElementRule::TruncationRamp { enumeration } => {
                if enumeration.is_empty() {
                    return Ok(BoolFamily::constant(true));
                }
                let w = enumeration.window();
                let mut min = u64::MAX;
                let mut pre = Vec::with_capacity(w);
                for i in 0..w {
                    if let Some(v) = enumeration.value(i) {
                        min = min.min(v);
                    }
                    pre.push(min <= n);
                }
                Ok(BoolFamily::periodic(Periodic { pre, period: vec![min <= n] }))
            }
            ElementRule::NonAtomicWitness { flagged } => Ok(BoolFamily::periodic(flagged.map(|b| !b))),
            _ => Ok(BoolFamily::periodic(self.derive(|m, e| Ok(!length_profile(m, e, n, budget)?.is_empty()))?)),
        }
    }

    /// `λ ↦ r_λ = s_λ` for two concrete families.
    pub fn agreement(&self, other: &ElementFamily) -> Result<BoolFamily> {
        match (self.concrete(), other.concrete()) {
            (Some(a), Some(b)) => Ok(BoolFamily::periodic(a.zip(&b, |x, y| x == y))),
            _ => Err(Error::Uncertifiable("agreement is closed-form only for explicit rules".into())),
        }
    }

    /// The family along `λ ↦ offset + step·λ`.
    pub fn restrict_arithmetic(&self, offset: usize, step: usize) -> Result<Self> {
        if offset == 0 && step == 1 {
            return Ok(self.clone());
        }
        let components = self.components.arithmetic_subsequence(offset, step)?;
        let rule = match &self.rule {
            ElementRule::Constant { element } => ElementRule::Constant { element: element.clone() },
            ElementRule::Periodic { elements } => {
                ElementRule::Periodic { elements: elements.arithmetic_subsequence(offset, step)? }
            }
            ElementRule::NonAtomicWitness { flagged } => {
                ElementRule::NonAtomicWitness { flagged: flagged.arithmetic_subsequence(offset, step)? }
            }
            _ => return Err(Error::Uncertifiable("restriction leaves this rule's closed form".into())),
        };
        Ok(ElementFamily { components, rule })
    }

    /// Pointwise product of two concrete families over the same components.
    pub fn mul(&self, other: &ElementFamily) -> Result<Self> {
        let (a, b) = match (self.concrete(), other.concrete()) {
            (Some(a), Some(b)) => (a, b),
            _ => return Err(Error::Uncertifiable("products are closed-form only for explicit rules".into())),
        };
        let zipped = a.zip(&b, |x, y| (x.clone(), y.clone()));
        let products = zipped.try_map(|((m, x), (n, y))| {
            if m != n {
                return Err(Error::Invalid(format!("component mismatch: {m} vs {n}")));
            }
            m.mul(x, y)
        })?;
        let components = zipped.map(|((m, _), _)| m.clone());
        ElementFamily::periodic(components, products)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn enumeration_counts() {
        let t: Multiset<u64> = [(2, ExtNat::Fin(2)), (3, ExtNat::ONE), (5, ExtNat::Inf)].into_iter().collect();
        let e = LengthEnumeration::from_target(&t).unwrap();
        assert_eq!(e.finite, vec![2, 2, 3]);
        assert_eq!(e.infinite, vec![5]);
        for idx in 0..20 {
            let naive = (0..=idx).filter_map(|i| e.value(i)).filter(|&v| v == 5).count() as u64;
            assert_eq!(e.count_upto(idx, 5), naive);
        }
        let p = e.profile_at(1);
        assert_eq!(p.multiplicity(2), ExtNat::Fin(2));
        assert_eq!(p.multiplicity(3), ExtNat::ZERO);
    }

    #[test]
    fn prime_power_ramp_elements() {
        let f = ElementFamily::prime_power_ramp(2).unwrap();
        assert_eq!(f.element_at(5).unwrap().1, Element::Integer(32));
        assert!(ElementFamily::prime_power_ramp(4).is_err());
        assert!(f.element_at(70).is_err());
    }

    #[test]
    fn mul_of_periodic() {
        let a = ElementFamily::periodic(
            Periodic::constant(Monoid::NonzeroIntegers),
            Periodic::new(vec![], vec![Element::Integer(2), Element::Integer(3)]).unwrap(),
        )
        .unwrap();
        let b = ElementFamily::periodic(
            Periodic::constant(Monoid::NonzeroIntegers),
            Periodic::new(vec![], vec![Element::Integer(3), Element::Integer(2)]).unwrap(),
        )
        .unwrap();
        let c = a.mul(&b).unwrap();
        for i in 0..6 {
            assert_eq!(c.element_at(i).unwrap().1, Element::Integer(6));
        }
    }

    #[test]
    fn restriction_matches_pointwise() {
        let f = ElementFamily::periodic(
            Periodic::constant(Monoid::NonzeroIntegers),
            Periodic::new(vec![Element::Integer(7)], (2..7).map(Element::Integer).collect()).unwrap(),
        )
        .unwrap();
        let g = f.restrict_arithmetic(2, 3).unwrap();
        for k in 0..20 {
            assert_eq!(g.element_at(k).unwrap(), f.element_at(2 + 3 * k).unwrap());
        }
    }
}
