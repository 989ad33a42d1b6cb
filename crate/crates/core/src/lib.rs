pub mod budget;
pub mod error;
pub mod ext_nat;
pub mod factor;
pub mod filter;
pub mod fol;
pub mod group;
pub mod json;
pub mod krull;
pub mod monoid;
pub mod multiset;
pub mod zerosum;

pub use budget::{Budget, DEFAULT_NODE_BUDGET};
pub use error::{Error, Result};
pub use ext_nat::ExtNat;
pub use factor::{Factorization, LengthProfile};
pub use group::{FiniteAbelianGroup, GroupElem};
pub use monoid::{Element, Monoid};
pub use multiset::Multiset;
