use std::fmt;
use std::ops::Add;
use std::str::FromStr;

use serde::de::{self, Visitor};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::Error;

/// A multiplicity in ℕ ∪ {∞}. All infinite cardinals collapse to `Inf`.
///
/// The derived order puts every `Fin(n)` below `Inf`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ExtNat {
    Fin(u64),
    Inf,
}

impl ExtNat {
    pub const ZERO: ExtNat = ExtNat::Fin(0);
    pub const ONE: ExtNat = ExtNat::Fin(1);

    pub fn is_finite(self) -> bool {
        matches!(self, ExtNat::Fin(_))
    }

    pub fn finite(self) -> Option<u64> {
        match self {
            ExtNat::Fin(n) => Some(n),
            ExtNat::Inf => None,
        }
    }

    pub fn is_zero(self) -> bool {
        self == ExtNat::ZERO
    }
}

impl Default for ExtNat {
    fn default() -> Self {
        ExtNat::ZERO
    }
}

impl From<u64> for ExtNat {
    fn from(n: u64) -> Self {
        ExtNat::Fin(n)
    }
}

impl Add for ExtNat {
    type Output = ExtNat;

    fn add(self, rhs: ExtNat) -> ExtNat {
        match (self, rhs) {
            (ExtNat::Fin(a), ExtNat::Fin(b)) => a.checked_add(b).map_or(ExtNat::Inf, ExtNat::Fin),
            _ => ExtNat::Inf,
        }
    }
}

impl std::iter::Sum for ExtNat {
    fn sum<I: Iterator<Item = ExtNat>>(iter: I) -> ExtNat {
        iter.fold(ExtNat::ZERO, |a, b| a + b)
    }
}

impl fmt::Display for ExtNat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtNat::Fin(n) => write!(f, "{n}"),
            ExtNat::Inf => f.write_str("inf"),
        }
    }
}

impl FromStr for ExtNat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        let t = s.trim();
        match t {
            "inf" | "∞" | "infinity" => Ok(ExtNat::Inf),
            _ => t
                .parse::<u64>()
                .map(ExtNat::Fin)
                .map_err(|_| Error::Invalid(format!("not an extended natural: {s:?}"))),
        }
    }
}

impl Serialize for ExtNat {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            ExtNat::Fin(n) => s.serialize_u64(*n),
            ExtNat::Inf => s.serialize_str("inf"),
        }
    }
}

impl<'de> Deserialize<'de> for ExtNat {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        struct ExtNatVisitor;

        impl Visitor<'_> for ExtNatVisitor {
            type Value = ExtNat;

            fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str("a non-negative integer or \"inf\"")
            }

            fn visit_u64<E: de::Error>(self, v: u64) -> Result<ExtNat, E> {
                Ok(ExtNat::Fin(v))
            }

            fn visit_i64<E: de::Error>(self, v: i64) -> Result<ExtNat, E> {
                u64::try_from(v).map(ExtNat::Fin).map_err(|_| E::custom("negative multiplicity"))
            }

            fn visit_str<E: de::Error>(self, v: &str) -> Result<ExtNat, E> {
                v.parse().map_err(E::custom)
            }
        }

        d.deserialize_any(ExtNatVisitor)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn order_and_saturation() {
        assert!(ExtNat::Fin(u64::MAX) < ExtNat::Inf);
        assert!(ExtNat::Fin(2) < ExtNat::Fin(3));
        assert_eq!(ExtNat::Fin(2) + ExtNat::Inf, ExtNat::Inf);
        assert_eq!(ExtNat::Fin(u64::MAX) + ExtNat::ONE, ExtNat::Inf);
        assert_eq!(ExtNat::Fin(2) + ExtNat::Fin(3), ExtNat::Fin(5));
    }

    #[test]
    fn json_forms() {
        assert_eq!(serde_json::to_string(&ExtNat::Inf).unwrap(), "\"inf\"");
        assert_eq!(serde_json::to_string(&ExtNat::Fin(4)).unwrap(), "4");
        let v: ExtNat = serde_json::from_str("\"inf\"").unwrap();
        assert_eq!(v, ExtNat::Inf);
        let v: ExtNat = serde_json::from_str("7").unwrap();
        assert_eq!(v, ExtNat::Fin(7));
        assert!(serde_json::from_str::<ExtNat>("-1").is_err());
    }
}
