//! Ultrafilter semantics over index sets described by certified descriptors.
//!
//! In Fréchet mode a verdict quantifies over every non-principal ultrafilter on ℕ:
//! a set lies in all of them iff it is cofinite, in none iff it is finite, and
//! otherwise membership depends on the ultrafilter.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ext_nat::ExtNat;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "mode", rename_all = "snake_case")]
pub enum UltrafilterSpec {
    /// Index set `{0, …, size−1}`; every ultrafilter on it is principal.
    PrincipalOnFinite { size: usize, selected: usize },
    /// Index set ℕ; answers hold for all non-principal ultrafilters at once.
    Frechet,
}

impl UltrafilterSpec {
    pub fn principal(size: usize, selected: usize) -> Result<Self> {
        let s = UltrafilterSpec::PrincipalOnFinite { size, selected };
        s.validate()?;
        Ok(s)
    }

    pub fn validate(&self) -> Result<()> {
        match *self {
            UltrafilterSpec::PrincipalOnFinite { size, selected } if selected >= size => Err(Error::Malformed(
                format!("selected index {selected} outside index set of size {size}"),
            )),
            _ => Ok(()),
        }
    }

    pub fn mode_name(&self) -> &'static str {
        match self {
            UltrafilterSpec::PrincipalOnFinite { .. } => "principal",
            UltrafilterSpec::Frechet => "frechet",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum Verdict<T: Ord> {
    /// Same value under every non-principal ultrafilter.
    #[serde(rename = "forall")]
    ForAllU { value: T },
    /// Each candidate is attained by some non-principal ultrafilter, and only these.
    #[serde(rename = "depends")]
    DependsOnU { candidates: BTreeSet<T> },
    /// Value under the principal ultrafilter of a finite index set.
    Point { value: T },
}

impl<T: Ord + Clone> Verdict<T> {
    /// Pushes the verdict through `f`; a candidate set that collapses to one value becomes `ForAllU`.
    pub fn map<U: Ord + Clone>(&self, mut f: impl FnMut(&T) -> U) -> Verdict<U> {
        match self {
            Verdict::ForAllU { value } => Verdict::ForAllU { value: f(value) },
            Verdict::Point { value } => Verdict::Point { value: f(value) },
            Verdict::DependsOnU { candidates } => from_candidates(candidates.iter().map(f).collect()),
        }
    }

    /// The value when it does not depend on the ultrafilter.
    pub fn decided(&self) -> Option<&T> {
        match self {
            Verdict::ForAllU { value } | Verdict::Point { value } => Some(value),
            Verdict::DependsOnU { .. } => None,
        }
    }

    pub fn candidates(&self) -> BTreeSet<T> {
        match self {
            Verdict::ForAllU { value } | Verdict::Point { value } => [value.clone()].into(),
            Verdict::DependsOnU { candidates } => candidates.clone(),
        }
    }

    pub fn is_forall(&self, v: &T) -> bool {
        matches!(self, Verdict::ForAllU { value } if value == v)
    }
}

fn from_candidates<T: Ord + Clone>(set: BTreeSet<T>) -> Verdict<T> {
    if set.len() == 1 {
        Verdict::ForAllU { value: set.into_iter().next().expect("one candidate") }
    } else {
        Verdict::DependsOnU { candidates: set }
    }
}

/// An eventually periodic sequence: `pre[λ]` for `λ < |pre|`, then `period` repeated.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Periodic<T> {
    pub pre: Vec<T>,
    pub period: Vec<T>,
}

impl<T: Clone> Periodic<T> {
    pub fn new(pre: Vec<T>, period: Vec<T>) -> Result<Self> {
        if period.is_empty() {
            return Err(Error::Malformed("period must be nonempty".into()));
        }
        Ok(Periodic { pre, period })
    }

    pub fn constant(v: T) -> Self {
        Periodic { pre: vec![], period: vec![v] }
    }

    pub fn validate(&self) -> Result<()> {
        if self.period.is_empty() {
            Err(Error::Malformed("period must be nonempty".into()))
        } else {
            Ok(())
        }
    }

    pub fn at(&self, index: usize) -> &T {
        if index < self.pre.len() {
            &self.pre[index]
        } else {
            &self.period[(index - self.pre.len()) % self.period.len()]
        }
    }

    /// `pre` followed by one full period: every value the sequence ever takes.
    pub fn window(&self) -> usize {
        self.pre.len() + self.period.len()
    }

    pub fn map<U>(&self, f: impl FnMut(&T) -> U) -> Periodic<U> {
        let mut f = f;
        Periodic { pre: self.pre.iter().map(&mut f).collect(), period: self.period.iter().map(&mut f).collect() }
    }

    pub fn try_map<U>(&self, mut f: impl FnMut(&T) -> Result<U>) -> Result<Periodic<U>> {
        Ok(Periodic {
            pre: self.pre.iter().map(&mut f).collect::<Result<_>>()?,
            period: self.period.iter().map(&mut f).collect::<Result<_>>()?,
        })
    }

    /// Pointwise combination; the result's period is the lcm of both periods.
    pub fn zip<U: Clone, V>(&self, other: &Periodic<U>, mut f: impl FnMut(&T, &U) -> V) -> Periodic<V> {
        let pre_len = self.pre.len().max(other.pre.len());
        let per = lcm(self.period.len(), other.period.len());
        Periodic {
            pre: (0..pre_len).map(|i| f(self.at(i), other.at(i))).collect(),
            period: (pre_len..pre_len + per).map(|i| f(self.at(i), other.at(i))).collect(),
        }
    }

    /// The subsequence `λ ↦ self[offset + step·λ]`, itself eventually periodic.
    pub fn arithmetic_subsequence(&self, offset: usize, step: usize) -> Result<Periodic<T>> {
        if step == 0 {
            return Err(Error::Invalid("step must be positive".into()));
        }
        let pre_len = self.pre.len().saturating_sub(offset).div_ceil(step);
        let per = self.period.len() / gcd(self.period.len(), step);
        Ok(Periodic {
            pre: (0..pre_len).map(|k| self.at(offset + step * k).clone()).collect(),
            period: (pre_len..pre_len + per).map(|k| self.at(offset + step * k).clone()).collect(),
        })
    }
}

impl<T: Clone + Ord> Periodic<T> {
    /// Values taken infinitely often.
    pub fn recurring(&self) -> BTreeSet<T> {
        self.period.iter().cloned().collect()
    }
}

pub(crate) fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

pub(crate) fn lcm(a: usize, b: usize) -> usize {
    a / gcd(a, b) * b
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum BoolFamily {
    ExplicitFinite { values: Vec<bool> },
    EventuallyPeriodic { pre: Vec<bool>, period: Vec<bool> },
}

impl BoolFamily {
    pub fn periodic(p: Periodic<bool>) -> Self {
        BoolFamily::EventuallyPeriodic { pre: p.pre, period: p.period }
    }

    pub fn constant(v: bool) -> Self {
        Self::periodic(Periodic::constant(v))
    }

    pub fn negate(&self) -> Self {
        match self {
            BoolFamily::ExplicitFinite { values } => {
                BoolFamily::ExplicitFinite { values: values.iter().map(|b| !b).collect() }
            }
            BoolFamily::EventuallyPeriodic { pre, period } => BoolFamily::EventuallyPeriodic {
                pre: pre.iter().map(|b| !b).collect(),
                period: period.iter().map(|b| !b).collect(),
            },
        }
    }

    /// Pointwise conjunction.
    pub fn and(&self, other: &BoolFamily) -> Result<BoolFamily> {
        match (self, other) {
            (BoolFamily::ExplicitFinite { values: a }, BoolFamily::ExplicitFinite { values: b }) => {
                if a.len() != b.len() {
                    return Err(Error::Malformed("explicit families of different lengths".into()));
                }
                Ok(BoolFamily::ExplicitFinite { values: a.iter().zip(b).map(|(x, y)| *x && *y).collect() })
            }
            (BoolFamily::EventuallyPeriodic { .. }, BoolFamily::EventuallyPeriodic { .. }) => {
                let (p, q) = (self.as_periodic()?, other.as_periodic()?);
                Ok(BoolFamily::periodic(p.zip(&q, |x, y| *x && *y)))
            }
            _ => Err(Error::Malformed("cannot combine explicit and periodic families".into())),
        }
    }

    fn as_periodic(&self) -> Result<Periodic<bool>> {
        match self {
            BoolFamily::EventuallyPeriodic { pre, period } => Periodic::new(pre.clone(), period.clone()),
            BoolFamily::ExplicitFinite { .. } => Err(Error::Malformed("explicit family has no tail".into())),
        }
    }

    /// Value at `index` where the descriptor determines it.
    pub fn at(&self, index: usize) -> Option<bool> {
        match self {
            BoolFamily::ExplicitFinite { values } => values.get(index).copied(),
            BoolFamily::EventuallyPeriodic { pre, period } => {
                if period.is_empty() {
                    None
                } else if index < pre.len() {
                    Some(pre[index])
                } else {
                    Some(period[(index - pre.len()) % period.len()])
                }
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ExtNatFamily {
    ExplicitFinite { values: Vec<ExtNat> },
    EventuallyPeriodic { pre: Vec<ExtNat>, period: Vec<ExtNat> },
    /// A nondecreasing sequence certified to exceed every bound; only the prefix is stored.
    NondecreasingUnbounded { prefix: Vec<ExtNat> },
}

impl ExtNatFamily {
    pub fn periodic(p: Periodic<ExtNat>) -> Self {
        ExtNatFamily::EventuallyPeriodic { pre: p.pre, period: p.period }
    }

    pub fn constant(v: ExtNat) -> Self {
        Self::periodic(Periodic::constant(v))
    }

    pub fn at(&self, index: usize) -> Option<ExtNat> {
        match self {
            ExtNatFamily::ExplicitFinite { values } => values.get(index).copied(),
            ExtNatFamily::EventuallyPeriodic { pre, period } => {
                if period.is_empty() {
                    None
                } else if index < pre.len() {
                    Some(pre[index])
                } else {
                    Some(period[(index - pre.len()) % period.len()])
                }
            }
            ExtNatFamily::NondecreasingUnbounded { prefix } => prefix.get(index).copied(),
        }
    }

    pub fn validate(&self) -> Result<()> {
        match self {
            ExtNatFamily::EventuallyPeriodic { period, .. } if period.is_empty() => {
                Err(Error::Malformed("period must be nonempty".into()))
            }
            ExtNatFamily::NondecreasingUnbounded { prefix } if prefix.windows(2).any(|w| w[0] > w[1]) => {
                Err(Error::Malformed("prefix of a nondecreasing family decreases".into()))
            }
            _ => Ok(()),
        }
    }
}

fn principal_index(spec: &UltrafilterSpec, explicit_len: Option<usize>) -> Result<Option<usize>> {
    spec.validate()?;
    match (*spec, explicit_len) {
        (UltrafilterSpec::PrincipalOnFinite { size, selected }, Some(n)) if n != size => {
            let _ = selected;
            Err(Error::Malformed(format!("explicit family has {n} values but the index set has {size}")))
        }
        (UltrafilterSpec::PrincipalOnFinite { selected, .. }, _) => Ok(Some(selected)),
        (UltrafilterSpec::Frechet, Some(_)) => {
            Err(Error::Malformed("an explicit finite family cannot be indexed by ℕ".into()))
        }
        (UltrafilterSpec::Frechet, None) => Ok(None),
    }
}

/// Whether `{λ : S_λ}` belongs to the ultrafilter.
pub fn filter_contains(family: &BoolFamily, spec: &UltrafilterSpec) -> Result<Verdict<bool>> {
    let explicit = match family {
        BoolFamily::ExplicitFinite { values } => Some(values.len()),
        BoolFamily::EventuallyPeriodic { period, .. } => {
            if period.is_empty() {
                return Err(Error::Malformed("period must be nonempty".into()));
            }
            None
        }
    };
    match principal_index(spec, explicit)? {
        Some(i) => Ok(Verdict::Point { value: family.at(i).expect("index validated") }),
        None => {
            let BoolFamily::EventuallyPeriodic { period, .. } = family else { unreachable!() };
            // all-true period: cofinite; all-false: finite; mixed: both residue classes infinite
            Ok(from_candidates(period.iter().copied().collect()))
        }
    }
}

/// The ultralimit of an ℕ ∪ {∞}-valued family.
pub fn ultralimit(family: &ExtNatFamily, spec: &UltrafilterSpec) -> Result<Verdict<ExtNat>> {
    family.validate()?;
    let explicit = match family {
        ExtNatFamily::ExplicitFinite { values } => Some(values.len()),
        _ => None,
    };
    match principal_index(spec, explicit)? {
        Some(i) => family.at(i).map(|value| Verdict::Point { value }).ok_or_else(|| {
            Error::Uncertifiable(format!("value at index {i} lies beyond the certified prefix"))
        }),
        None => Ok(match family {
            ExtNatFamily::EventuallyPeriodic { period, .. } => from_candidates(period.iter().copied().collect()),
            ExtNatFamily::NondecreasingUnbounded { .. } => Verdict::ForAllU { value: ExtNat::Inf },
            ExtNatFamily::ExplicitFinite { .. } => unreachable!(),
        }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const T: bool = true;
    const F: bool = false;

    fn ep(pre: &[bool], period: &[bool]) -> BoolFamily {
        BoolFamily::EventuallyPeriodic { pre: pre.to_vec(), period: period.to_vec() }
    }

    #[test]
    fn filter_examples() {
        let fr = UltrafilterSpec::Frechet;
        assert_eq!(filter_contains(&ep(&[F, F, F], &[T]), &fr).unwrap(), Verdict::ForAllU { value: true });
        assert_eq!(
            filter_contains(&ep(&[], &[T, F]), &fr).unwrap(),
            Verdict::DependsOnU { candidates: [false, true].into() }
        );
        let p = UltrafilterSpec::principal(3, 1).unwrap();
        let s = BoolFamily::ExplicitFinite { values: vec![T, F, T] };
        assert_eq!(filter_contains(&s, &p).unwrap(), Verdict::Point { value: false });
    }

    #[test]
    fn filter_malformed() {
        let fr = UltrafilterSpec::Frechet;
        assert!(matches!(filter_contains(&ep(&[T], &[]), &fr), Err(Error::Malformed(_))));
        let s = BoolFamily::ExplicitFinite { values: vec![T, F] };
        assert!(filter_contains(&s, &fr).is_err());
        assert!(filter_contains(&s, &UltrafilterSpec::principal(3, 0).unwrap()).is_err());
        assert!(UltrafilterSpec::principal(3, 3).is_err());
    }

    #[test]
    fn ultralimit_examples() {
        let fr = UltrafilterSpec::Frechet;
        let c2 = ExtNatFamily::constant(ExtNat::Fin(2));
        assert_eq!(ultralimit(&c2, &fr).unwrap(), Verdict::ForAllU { value: ExtNat::Fin(2) });
        let ramp = ExtNatFamily::NondecreasingUnbounded { prefix: (0..5).map(ExtNat::Fin).collect() };
        assert_eq!(ultralimit(&ramp, &fr).unwrap(), Verdict::ForAllU { value: ExtNat::Inf });
        let alt = ExtNatFamily::EventuallyPeriodic { pre: vec![], period: vec![ExtNat::Fin(1), ExtNat::Fin(2)] };
        assert_eq!(
            ultralimit(&alt, &fr).unwrap(),
            Verdict::DependsOnU { candidates: [ExtNat::Fin(1), ExtNat::Fin(2)].into() }
        );
        let p = UltrafilterSpec::principal(10, 7).unwrap();
        assert!(matches!(ultralimit(&ramp, &p), Err(Error::Uncertifiable(_))));
        let bad = ExtNatFamily::NondecreasingUnbounded { prefix: vec![ExtNat::Fin(2), ExtNat::Fin(1)] };
        assert!(ultralimit(&bad, &fr).is_err());
    }

    #[test]
    fn verdict_json() {
        let v = Verdict::ForAllU { value: ExtNat::Inf };
        assert_eq!(serde_json::to_string(&v).unwrap(), r#"{"verdict":"forall","value":"inf"}"#);
        let v: Verdict<ExtNat> = Verdict::DependsOnU { candidates: [ExtNat::Fin(1), ExtNat::Fin(2)].into() };
        assert_eq!(serde_json::to_string(&v).unwrap(), r#"{"verdict":"depends","candidates":[1,2]}"#);
        assert_eq!(serde_json::to_string(&UltrafilterSpec::Frechet).unwrap(), r#"{"mode":"frechet"}"#);
    }

    #[test]
    fn map_collapses_candidates() {
        let v: Verdict<ExtNat> = Verdict::DependsOnU { candidates: [ExtNat::Fin(1), ExtNat::Fin(2)].into() };
        assert_eq!(v.map(|n| *n >= ExtNat::ONE), Verdict::ForAllU { value: true });
    }

    #[test]
    fn arithmetic_subsequence() {
        let p = Periodic::new(vec![9, 9, 9], vec![1, 2, 3]).unwrap();
        let q = p.arithmetic_subsequence(1, 2).unwrap();
        for k in 0..30 {
            assert_eq!(q.at(k), p.at(1 + 2 * k));
        }
        let q = p.arithmetic_subsequence(5, 3).unwrap();
        assert_eq!(q.pre.len(), 0);
        assert_eq!(q.period.len(), 1);
    }

    #[test]
    fn zip_covers_lcm() {
        let a = Periodic::new(vec![0], vec![1, 2]).unwrap();
        let b = Periodic::new(vec![], vec![10, 20, 30]).unwrap();
        let z = a.zip(&b, |x, y| x + y);
        for k in 0..40 {
            assert_eq!(*z.at(k), a.at(k) + b.at(k));
        }
        assert_eq!(z.period.len(), 6);
    }
}
