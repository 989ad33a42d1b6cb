//! Tarskian evaluation over finite structures and the ultraproduct of finitely many groups.

use rand::Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::fol::ast::{Formula, Term};
use crate::group::FiniteAbelianGroup;

/// A finite structure in the language `(·, 1)` with elements `0..size()`.
pub trait FiniteStructure {
    fn size(&self) -> usize;
    fn one(&self) -> usize;
    fn mul(&self, a: usize, b: usize) -> usize;
}

impl FiniteStructure for FiniteAbelianGroup {
    fn size(&self) -> usize {
        self.order() as usize
    }

    fn one(&self) -> usize {
        self.zero() as usize
    }

    fn mul(&self, a: usize, b: usize) -> usize {
        self.add(a as u32, b as u32) as usize
    }
}

/// Evaluates a sentence by exhaustive quantification.
pub fn eval<S: FiniteStructure + ?Sized>(phi: &Formula, m: &S) -> Result<bool> {
    if let Some(v) = phi.free_vars().into_iter().next() {
        return Err(Error::Unbound(v));
    }
    let mut env = Vec::new();
    Ok(holds(phi, m, &mut env))
}

fn value<'a, S: FiniteStructure + ?Sized>(t: &'a Term, m: &S, env: &[(&'a str, usize)]) -> usize {
    match t {
        Term::One => m.one(),
        Term::Var(v) => env.iter().rev().find(|(n, _)| n == v).map(|&(_, x)| x).expect("sentence has no free variables"),
        Term::Mul(a, b) => m.mul(value(a, m, env), value(b, m, env)),
    }
}

fn holds<'a, S: FiniteStructure + ?Sized>(phi: &'a Formula, m: &S, env: &mut Vec<(&'a str, usize)>) -> bool {
    match phi {
        Formula::Eq(a, b) => value(a, m, env) == value(b, m, env),
        Formula::Not(f) => !holds(f, m, env),
        Formula::And(a, b) => holds(a, m, env) && holds(b, m, env),
        Formula::Or(a, b) => holds(a, m, env) || holds(b, m, env),
        Formula::Implies(a, b) => !holds(a, m, env) || holds(b, m, env),
        Formula::Forall(v, f) | Formula::Exists(v, f) => {
            let universal = matches!(phi, Formula::Forall(..));
            for x in 0..m.size() {
                env.push((v, x));
                let r = holds(f, m, env);
                env.pop();
                if r != universal {
                    return !universal;
                }
            }
            universal
        }
    }
}

/// `∏ G_λ / ≡` for the principal ultrafilter at `selected` on a finite index set,
/// built from tuples and the agreement relation itself.
#[derive(Debug, Clone)]
pub struct QuotientStructure {
    groups: Vec<FiniteAbelianGroup>,
    selected: usize,
    /// One representative tuple per class.
    reps: Vec<Vec<u32>>,
    /// Class of every tuple, indexed by the tuple's mixed-radix position.
    class_of: Vec<usize>,
    table: Vec<Vec<usize>>,
    one: usize,
}

/// Upper bound on `∏ |G_λ|` for the literal construction.
pub const MAX_TUPLES: usize = 1 << 20;

impl QuotientStructure {
    pub fn new(groups: &[FiniteAbelianGroup], selected: usize) -> Result<Self> {
        if groups.is_empty() {
            return Err(Error::Invalid("need at least one group".into()));
        }
        if selected >= groups.len() {
            return Err(Error::OutOfRange(format!("selected index {selected} of {}", groups.len())));
        }
        let total = groups.iter().try_fold(1usize, |acc, g| acc.checked_mul(g.order() as usize));
        let total = match total {
            Some(t) if t <= MAX_TUPLES => t,
            _ => return Err(Error::Invalid("product of group orders too large".into())),
        };
        let mut q = QuotientStructure {
            groups: groups.to_vec(),
            selected,
            reps: Vec::new(),
            class_of: vec![usize::MAX; total],
            table: Vec::new(),
            one: 0,
        };
        for pos in 0..total {
            let t = q.tuple(pos);
            let class = match q.reps.iter().position(|r| q.equivalent(r, &t)) {
                Some(c) => c,
                None => {
                    q.reps.push(t);
                    q.reps.len() - 1
                }
            };
            q.class_of[pos] = class;
        }
        let n = q.reps.len();
        q.table = (0..n)
            .map(|a| (0..n).map(|b| q.class_of[q.position(&q.mul_tuples(&q.reps[a], &q.reps[b]))]).collect())
            .collect();
        let identity: Vec<u32> = groups.iter().map(|g| g.zero()).collect();
        q.one = q.class_of[q.position(&identity)];
        Ok(q)
    }

    /// `{λ : r_λ = s_λ} ∈ 𝒰`, where `𝒰` contains exactly the sets holding `selected`.
    pub fn equivalent(&self, r: &[u32], s: &[u32]) -> bool {
        let agree: Vec<usize> = (0..self.groups.len()).filter(|&i| r[i] == s[i]).collect();
        agree.contains(&self.selected)
    }

    fn tuple(&self, mut pos: usize) -> Vec<u32> {
        let mut t = vec![0; self.groups.len()];
        for (i, g) in self.groups.iter().enumerate().rev() {
            let n = g.order() as usize;
            t[i] = (pos % n) as u32;
            pos /= n;
        }
        t
    }

    fn position(&self, t: &[u32]) -> usize {
        self.groups.iter().zip(t).fold(0, |acc, (g, &x)| acc * g.order() as usize + x as usize)
    }

    fn mul_tuples(&self, a: &[u32], b: &[u32]) -> Vec<u32> {
        self.groups.iter().zip(a.iter().zip(b)).map(|(g, (&x, &y))| g.add(x, y)).collect()
    }

    pub fn class_of_tuple(&self, t: &[u32]) -> Result<usize> {
        if t.len() != self.groups.len() || self.groups.iter().zip(t).any(|(g, &x)| !g.contains(x)) {
            return Err(Error::Invalid("tuple does not match the component groups".into()));
        }
        Ok(self.class_of[self.position(t)])
    }

    pub fn representative(&self, class: usize) -> &[u32] {
        &self.reps[class]
    }

    pub fn selected(&self) -> usize {
        self.selected
    }

    /// Multiplies random representatives of each pair of classes and checks the result
    /// class matches the table.
    pub fn check_well_defined<R: Rng>(&self, rng: &mut R, trials: usize) -> bool {
        let n = self.reps.len();
        for a in 0..n {
            for b in 0..n {
                for _ in 0..trials {
                    let ra = self.perturb(&self.reps[a], rng);
                    let rb = self.perturb(&self.reps[b], rng);
                    if self.class_of[self.position(&self.mul_tuples(&ra, &rb))] != self.table[a][b] {
                        return false;
                    }
                }
            }
        }
        true
    }

    fn perturb<R: Rng>(&self, t: &[u32], rng: &mut R) -> Vec<u32> {
        t.iter()
            .enumerate()
            .map(|(i, &x)| if i == self.selected { x } else { rng.gen_range(0..self.groups[i].order()) })
            .collect()
    }
}

impl FiniteStructure for QuotientStructure {
    fn size(&self) -> usize {
        self.reps.len()
    }

    fn one(&self) -> usize {
        self.one
    }

    fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }
}

pub fn finite_ultraproduct(groups: &[FiniteAbelianGroup], selected: usize) -> Result<QuotientStructure> {
    QuotientStructure::new(groups, selected)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LosReport {
    pub sentence: String,
    pub groups: Vec<String>,
    pub selected: usize,
    pub quotient_size: usize,
    pub quotient_value: bool,
    pub component_value: bool,
    pub agree: bool,
}

/// Evaluates `phi` on the ultraproduct and on the selected component.
pub fn los_check(phi: &Formula, groups: &[FiniteAbelianGroup], selected: usize) -> Result<LosReport> {
    let q = QuotientStructure::new(groups, selected)?;
    los_check_on(phi, &q, groups)
}

/// As [`los_check`], reusing an already built quotient.
pub fn los_check_on(phi: &Formula, q: &QuotientStructure, groups: &[FiniteAbelianGroup]) -> Result<LosReport> {
    let quotient_value = eval(phi, q)?;
    let component_value = eval(phi, &groups[q.selected])?;
    Ok(LosReport {
        sentence: phi.to_string(),
        groups: groups.iter().map(|g| g.name()).collect(),
        selected: q.selected,
        quotient_size: q.size(),
        quotient_value,
        component_value,
        agree: quotient_value == component_value,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fol::parser::parse_sentence;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn c(n: u32) -> FiniteAbelianGroup {
        FiniteAbelianGroup::cyclic(n).unwrap()
    }

    const INVOLUTION: &str = "exists x. x*x = 1 & !(x = 1)";

    #[test]
    fn involution() {
        let f = parse_sentence(INVOLUTION).unwrap();
        assert!(eval(&f, &c(4)).unwrap());
        assert!(!eval(&f, &c(3)).unwrap());
    }

    #[test]
    fn cancellative_and_commutative_everywhere() {
        let canc = parse_sentence("forall a. forall b. forall c. (a*c = b*c -> a = b)").unwrap();
        let comm = parse_sentence("forall a. forall b. a*b = b*a").unwrap();
        for g in FiniteAbelianGroup::all_up_to_order(12) {
            assert!(eval(&canc, &g).unwrap());
            assert!(eval(&comm, &g).unwrap());
        }
    }

    #[test]
    fn quotient_sizes() {
        let q = finite_ultraproduct(&[c(2), c(3), c(4)], 1).unwrap();
        assert_eq!(q.size(), 3);
        let f = parse_sentence("exists x. !(x = 1) & x*x*x = 1").unwrap();
        assert!(eval(&f, &q).unwrap());
        let q = finite_ultraproduct(&[c(2), c(2)], 0).unwrap();
        assert_eq!(q.size(), 2);
        // the class map is the first projection
        for a in 0..2 {
            for b in 0..2 {
                assert_eq!(q.representative(q.class_of_tuple(&[a, b]).unwrap())[0], a);
            }
        }
        assert!(finite_ultraproduct(&[c(2)], 1).is_err());
        assert!(finite_ultraproduct(&[], 0).is_err());
    }

    #[test]
    fn well_defined() {
        let q = finite_ultraproduct(&[c(2), c(3), c(4)], 2).unwrap();
        assert!(q.check_well_defined(&mut ChaCha8Rng::seed_from_u64(1), 3));
    }

    #[test]
    fn los_examples() {
        let f = parse_sentence(INVOLUTION).unwrap();
        let gs = [c(2), c(3), c(4)];
        let r = los_check(&f, &gs, 1).unwrap();
        assert_eq!((r.quotient_value, r.component_value, r.agree), (false, false, true));
        let r = los_check(&f, &gs, 2).unwrap();
        assert_eq!((r.quotient_value, r.component_value, r.agree), (true, true, true));
    }
}
