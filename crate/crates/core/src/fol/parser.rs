//! Recursive-descent parser. Precedence from tightest: `!`, `&`, `|`, `->`;
//! a quantifier's body extends as far right as possible.

use crate::error::{Error, Result};
use crate::fol::ast::{Formula, Term};

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    One,
    Ident(String),
    Forall,
    Exists,
    Dot,
    Star,
    Eq,
    Not,
    And,
    Or,
    Arrow,
    LParen,
    RParen,
    End,
}

fn describe(t: &Tok) -> String {
    match t {
        Tok::One => "`1`".into(),
        Tok::Ident(s) => format!("identifier `{s}`"),
        Tok::Forall => "`forall`".into(),
        Tok::Exists => "`exists`".into(),
        Tok::Dot => "`.`".into(),
        Tok::Star => "`*`".into(),
        Tok::Eq => "`=`".into(),
        Tok::Not => "`!`".into(),
        Tok::And => "`&`".into(),
        Tok::Or => "`|`".into(),
        Tok::Arrow => "`->`".into(),
        Tok::LParen => "`(`".into(),
        Tok::RParen => "`)`".into(),
        Tok::End => "end of input".into(),
    }
}

fn lex(src: &str) -> Result<Vec<(Tok, usize)>> {
    let mut out = Vec::new();
    let mut it = src.char_indices().peekable();
    while let Some(&(pos, c)) = it.peek() {
        if c.is_whitespace() {
            it.next();
            continue;
        }
        let tok = match c {
            '.' => Tok::Dot,
            '*' => Tok::Star,
            '=' => Tok::Eq,
            '!' => Tok::Not,
            '&' => Tok::And,
            '|' => Tok::Or,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            '1' => Tok::One,
            '-' => {
                it.next();
                match it.peek() {
                    Some((_, '>')) => Tok::Arrow,
                    _ => return Err(Error::Parse { pos, msg: "expected `->`".into() }),
                }
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                let mut s = String::new();
                while let Some(&(_, d)) = it.peek() {
                    if d.is_ascii_alphanumeric() || d == '_' {
                        s.push(d);
                        it.next();
                    } else {
                        break;
                    }
                }
                let tok = match s.as_str() {
                    "forall" => Tok::Forall,
                    "exists" => Tok::Exists,
                    _ => Tok::Ident(s),
                };
                out.push((tok, pos));
                continue;
            }
            other => return Err(Error::Parse { pos, msg: format!("unexpected character `{other}`") }),
        };
        it.next();
        out.push((tok, pos));
    }
    out.push((Tok::End, src.len()));
    Ok(out)
}

struct Parser {
    toks: Vec<(Tok, usize)>,
    at: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.at].0
    }

    fn pos(&self) -> usize {
        self.toks[self.at].1
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.at].0.clone();
        if t != Tok::End {
            self.at += 1;
        }
        t
    }

    fn expect(&mut self, t: Tok) -> Result<()> {
        if *self.peek() == t {
            self.bump();
            Ok(())
        } else {
            Err(self.unexpected(&describe(&t)))
        }
    }

    fn unexpected(&self, wanted: &str) -> Error {
        Error::Parse { pos: self.pos(), msg: format!("expected {wanted}, found {}", describe(self.peek())) }
    }

    fn formula(&mut self) -> Result<Formula> {
        match self.peek() {
            Tok::Forall | Tok::Exists => self.quantified(),
            _ => self.implication(),
        }
    }

    fn quantified(&mut self) -> Result<Formula> {
        let q = self.bump();
        let v = match self.bump() {
            Tok::Ident(v) => v,
            _ => {
                self.at -= 1;
                return Err(self.unexpected("a variable name"));
            }
        };
        self.expect(Tok::Dot)?;
        let body = self.formula()?;
        Ok(if q == Tok::Forall { Formula::forall(&v, body) } else { Formula::exists(&v, body) })
    }

    fn implication(&mut self) -> Result<Formula> {
        let lhs = self.disjunction()?;
        if *self.peek() == Tok::Arrow {
            self.bump();
            let rhs = self.rhs(Self::implication)?;
            return Ok(Formula::implies(lhs, rhs));
        }
        Ok(lhs)
    }

    fn disjunction(&mut self) -> Result<Formula> {
        let mut lhs = self.conjunction()?;
        while *self.peek() == Tok::Or {
            self.bump();
            let rhs = self.rhs(Self::conjunction)?;
            lhs = Formula::or(lhs, rhs);
        }
        Ok(lhs)
    }

    fn conjunction(&mut self) -> Result<Formula> {
        let mut lhs = self.unary()?;
        while *self.peek() == Tok::And {
            self.bump();
            let rhs = self.rhs(Self::unary)?;
            lhs = Formula::and(lhs, rhs);
        }
        Ok(lhs)
    }

    // A quantifier on the right of a connective swallows the rest of the input.
    fn rhs(&mut self, next: fn(&mut Self) -> Result<Formula>) -> Result<Formula> {
        match self.peek() {
            Tok::Forall | Tok::Exists => self.quantified(),
            _ => next(self),
        }
    }

    fn unary(&mut self) -> Result<Formula> {
        match self.peek() {
            Tok::Not => {
                self.bump();
                let f = self.rhs(Self::unary)?;
                Ok(Formula::not(f))
            }
            _ => self.primary(),
        }
    }

    fn primary(&mut self) -> Result<Formula> {
        if *self.peek() == Tok::LParen {
            // `(` opens either a term or a formula; try the equation first
            let save = self.at;
            if let Ok(f) = self.equation() {
                return Ok(f);
            }
            self.at = save;
            self.bump();
            let f = self.formula()?;
            self.expect(Tok::RParen)?;
            return Ok(f);
        }
        self.equation()
    }

    fn equation(&mut self) -> Result<Formula> {
        let a = self.term()?;
        self.expect(Tok::Eq)?;
        let b = self.term()?;
        Ok(Formula::eq(a, b))
    }

    fn term(&mut self) -> Result<Term> {
        let mut t = self.factor()?;
        while *self.peek() == Tok::Star {
            self.bump();
            let r = self.factor()?;
            t = Term::mul(t, r);
        }
        Ok(t)
    }

    fn factor(&mut self) -> Result<Term> {
        match self.peek().clone() {
            Tok::One => {
                self.bump();
                Ok(Term::One)
            }
            Tok::Ident(v) => {
                self.bump();
                Ok(Term::Var(v))
            }
            Tok::LParen => {
                self.bump();
                let t = self.term()?;
                self.expect(Tok::RParen)?;
                Ok(t)
            }
            _ => Err(self.unexpected("a term")),
        }
    }
}

/// Parses a formula that may have free variables.
pub fn parse_formula(src: &str) -> Result<Formula> {
    let mut p = Parser { toks: lex(src)?, at: 0 };
    let f = p.formula()?;
    if *p.peek() != Tok::End {
        return Err(p.unexpected("end of input"));
    }
    Ok(f)
}

/// Parses a sentence; a free variable is an [`Error::Unbound`].
pub fn parse_sentence(src: &str) -> Result<Formula> {
    let f = parse_formula(src)?;
    match f.free_vars().into_iter().next() {
        Some(v) => Err(Error::Unbound(v)),
        None => Ok(f),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x() -> Term {
        Term::var("x")
    }

    #[test]
    fn involution_sentence() {
        let f = parse_sentence("exists x. x*x = 1 & !(x = 1)").unwrap();
        let want = Formula::exists(
            "x",
            Formula::and(Formula::eq(Term::mul(x(), x()), Term::One), Formula::not(Formula::eq(x(), Term::One))),
        );
        assert_eq!(f, want);
    }

    #[test]
    fn commutativity() {
        let f = parse_sentence("forall a. forall b. a*b = b*a").unwrap();
        assert_eq!(f.quantifier_count(), 2);
        assert!(f.is_sentence());
    }

    #[test]
    fn unbound() {
        assert_eq!(parse_sentence("forall x. y = x"), Err(Error::Unbound("y".into())));
    }

    #[test]
    fn precedence() {
        let f = parse_formula("a = 1 | b = 1 & c = 1 -> d = 1 -> e = 1").unwrap();
        let eq = |v: &str| Formula::eq(Term::var(v), Term::One);
        let want = Formula::implies(
            Formula::or(eq("a"), Formula::and(eq("b"), eq("c"))),
            Formula::implies(eq("d"), eq("e")),
        );
        assert_eq!(f, want);
        let f = parse_formula("!a = 1 & b = 1").unwrap();
        assert_eq!(f, Formula::and(Formula::not(eq("a")), eq("b")));
    }

    #[test]
    fn parenthesized_terms() {
        let f = parse_formula("(x*y)*z = x*(y*z)").unwrap();
        assert_eq!(f.to_string(), "x*y*z = x*(y*z)");
        let g = parse_formula("((x = 1))").unwrap();
        assert_eq!(g, Formula::eq(x(), Term::One));
    }

    #[test]
    fn errors_carry_positions() {
        match parse_formula("forall x. x = ") {
            Err(Error::Parse { pos, .. }) => assert_eq!(pos, 14),
            other => panic!("{other:?}"),
        }
        assert!(matches!(parse_formula("x = 1 &"), Err(Error::Parse { .. })));
        assert!(matches!(parse_formula("x = 1)"), Err(Error::Parse { pos: 5, .. })));
        assert!(matches!(parse_formula("x - 1"), Err(Error::Parse { pos: 2, .. })));
        assert!(matches!(parse_formula("forall . x = 1"), Err(Error::Parse { pos: 7, .. })));
    }

    #[test]
    fn round_trip_samples() {
        for s in [
            "forall a. forall b. forall c. (a*c = b*c -> a = b)",
            "exists x. x*x = 1 & !(x = 1)",
            "(forall x. x = 1) & (exists y. y = 1)",
            "!(forall x. x = 1) | x = x",
            "(a = 1 -> b = 1) -> c = 1",
            "a = 1 & (b = 1 | c = 1)",
            "!!a = 1",
            "a = 1 & exists y. y = a",
        ] {
            let f = parse_formula(s).unwrap();
            assert_eq!(parse_formula(&f.to_string()).unwrap(), f, "{s}");
        }
    }
}
