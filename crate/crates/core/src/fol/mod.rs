//! First-order sentences in the language of monoids, finite ultraproducts and Łoś checks.

mod ast;
mod eval;
mod parser;
mod random;

pub use ast::{Formula, Term};
pub use eval::{eval, finite_ultraproduct, los_check, los_check_on, FiniteStructure, LosReport, QuotientStructure, MAX_TUPLES};
pub use parser::{parse_formula, parse_sentence};
pub use random::random_sentence;
