use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::fol::ast::{Formula, Term};

/// A random sentence with at most `depth` quantifiers and at most `var_budget`
/// distinct variables `x0, x1, …`. The outermost connective is a quantifier.
pub fn random_sentence(depth: usize, var_budget: usize, seed: u64) -> Result<Formula> {
    if depth == 0 || var_budget == 0 {
        return Err(Error::Invalid("depth and variable budget must be at least 1".into()));
    }
    let mut g = Gen { rng: ChaCha8Rng::seed_from_u64(seed), quantifiers_left: depth, fresh: 0, var_budget };
    Ok(g.quantifier(depth, &mut Vec::new()))
}

struct Gen {
    rng: ChaCha8Rng,
    quantifiers_left: usize,
    fresh: usize,
    var_budget: usize,
}

impl Gen {
    fn quantifier(&mut self, level: usize, scope: &mut Vec<String>) -> Formula {
        self.quantifiers_left -= 1;
        let v = format!("x{}", self.fresh);
        self.fresh += 1;
        scope.push(v.clone());
        let body = self.formula(level - 1, scope);
        scope.pop();
        if self.rng.gen_bool(0.5) {
            Formula::forall(&v, body)
        } else {
            Formula::exists(&v, body)
        }
    }

    fn formula(&mut self, level: usize, scope: &mut Vec<String>) -> Formula {
        if level == 0 {
            return self.atom(scope);
        }
        let can_quantify = self.quantifiers_left > 0 && self.fresh < self.var_budget;
        match self.rng.gen_range(0..6) {
            0 | 1 if can_quantify => self.quantifier(level, scope),
            2 => Formula::not(self.formula(level - 1, scope)),
            3 => Formula::and(self.formula(level - 1, scope), self.formula(level - 1, scope)),
            4 => Formula::or(self.formula(level - 1, scope), self.formula(level - 1, scope)),
            5 => Formula::implies(self.formula(level - 1, scope), self.formula(level - 1, scope)),
            _ => self.atom(scope),
        }
    }

    fn atom(&mut self, scope: &[String]) -> Formula {
        Formula::eq(self.term(2, scope), self.term(2, scope))
    }

    fn term(&mut self, level: usize, scope: &[String]) -> Term {
        if level > 0 && self.rng.gen_bool(0.35) {
            return Term::mul(self.term(level - 1, scope), self.term(level - 1, scope));
        }
        if scope.is_empty() || self.rng.gen_bool(0.15) {
            Term::One
        } else {
            Term::Var(scope[self.rng.gen_range(0..scope.len())].clone())
        }
    }
}
