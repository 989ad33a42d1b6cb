use std::collections::BTreeSet;
use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Term {
    One,
    Var(String),
    Mul(Box<Term>, Box<Term>),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Formula {
    Eq(Term, Term),
    Not(Box<Formula>),
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
    Implies(Box<Formula>, Box<Formula>),
    Forall(String, Box<Formula>),
    Exists(String, Box<Formula>),
}

impl Term {
    pub fn var(name: &str) -> Term {
        Term::Var(name.to_string())
    }

    pub fn mul(a: Term, b: Term) -> Term {
        Term::Mul(Box::new(a), Box::new(b))
    }

    fn collect_vars<'a>(&'a self, out: &mut Vec<&'a str>) {
        match self {
            Term::One => {}
            Term::Var(v) => out.push(v),
            Term::Mul(a, b) => {
                a.collect_vars(out);
                b.collect_vars(out);
            }
        }
    }
}

impl Formula {
    pub fn eq(a: Term, b: Term) -> Formula {
        Formula::Eq(a, b)
    }

    pub fn not(f: Formula) -> Formula {
        Formula::Not(Box::new(f))
    }

    pub fn and(a: Formula, b: Formula) -> Formula {
        Formula::And(Box::new(a), Box::new(b))
    }

    pub fn or(a: Formula, b: Formula) -> Formula {
        Formula::Or(Box::new(a), Box::new(b))
    }

    pub fn implies(a: Formula, b: Formula) -> Formula {
        Formula::Implies(Box::new(a), Box::new(b))
    }

    pub fn forall(v: &str, f: Formula) -> Formula {
        Formula::Forall(v.to_string(), Box::new(f))
    }

    pub fn exists(v: &str, f: Formula) -> Formula {
        Formula::Exists(v.to_string(), Box::new(f))
    }

    /// Variables occurring free, in order of first occurrence.
    pub fn free_vars(&self) -> Vec<String> {
        let mut out = Vec::new();
        let mut seen = BTreeSet::new();
        self.free_into(&mut Vec::new(), &mut out, &mut seen);
        out
    }

    fn free_into<'a>(&'a self, bound: &mut Vec<&'a str>, out: &mut Vec<String>, seen: &mut BTreeSet<String>) {
        match self {
            Formula::Eq(a, b) => {
                let mut vs = Vec::new();
                a.collect_vars(&mut vs);
                b.collect_vars(&mut vs);
                for v in vs {
                    if !bound.contains(&v) && seen.insert(v.to_string()) {
                        out.push(v.to_string());
                    }
                }
            }
            Formula::Not(f) => f.free_into(bound, out, seen),
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Implies(a, b) => {
                a.free_into(bound, out, seen);
                b.free_into(bound, out, seen);
            }
            Formula::Forall(v, f) | Formula::Exists(v, f) => {
                bound.push(v);
                f.free_into(bound, out, seen);
                bound.pop();
            }
        }
    }

    pub fn is_sentence(&self) -> bool {
        self.free_vars().is_empty()
    }

    pub fn quantifier_count(&self) -> usize {
        match self {
            Formula::Eq(..) => 0,
            Formula::Not(f) => f.quantifier_count(),
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Implies(a, b) => a.quantifier_count() + b.quantifier_count(),
            Formula::Forall(_, f) | Formula::Exists(_, f) => 1 + f.quantifier_count(),
        }
    }

    fn prec(&self) -> u8 {
        match self {
            Formula::Forall(..) | Formula::Exists(..) => 0,
            Formula::Implies(..) => 1,
            Formula::Or(..) => 2,
            Formula::And(..) => 3,
            Formula::Not(..) => 4,
            Formula::Eq(..) => 5,
        }
    }

    fn write(&self, f: &mut fmt::Formatter<'_>, ctx: u8) -> fmt::Result {
        let paren = self.prec() < ctx;
        if paren {
            f.write_str("(")?;
        }
        match self {
            Formula::Eq(a, b) => write!(f, "{a} = {b}")?,
            Formula::Not(x) => {
                f.write_str("!")?;
                x.write(f, 4)?;
            }
            // & and | associate to the left, -> to the right
            Formula::And(a, b) => binary(f, a, " & ", b, 3, 4)?,
            Formula::Or(a, b) => binary(f, a, " | ", b, 2, 3)?,
            Formula::Implies(a, b) => binary(f, a, " -> ", b, 2, 1)?,
            Formula::Forall(v, x) => {
                write!(f, "forall {v}. ")?;
                x.write(f, 0)?;
            }
            Formula::Exists(v, x) => {
                write!(f, "exists {v}. ")?;
                x.write(f, 0)?;
            }
        }
        if paren {
            f.write_str(")")?;
        }
        Ok(())
    }
}

fn binary(f: &mut fmt::Formatter<'_>, a: &Formula, op: &str, b: &Formula, lctx: u8, rctx: u8) -> fmt::Result {
    a.write(f, lctx)?;
    f.write_str(op)?;
    b.write(f, rctx)
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::One => f.write_str("1"),
            Term::Var(v) => f.write_str(v),
            Term::Mul(a, b) => {
                write!(f, "{a}*")?;
                if matches!(**b, Term::Mul(..)) {
                    write!(f, "({b})")
                } else {
                    write!(f, "{b}")
                }
            }
        }
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.write(f, 0)
    }
}
