//! JSON and text encodings that need a monoid to interpret elements.

use std::str::FromStr;

use serde_json::{json, Map, Value};

use crate::error::{Error, Result};
use crate::ext_nat::ExtNat;
use crate::factor::{Factorization, LengthProfile};
use crate::filter::{ElementFamily, ElementRule, Periodic, UltrafilterSpec, Verdict};
use crate::group::{FiniteAbelianGroup, GroupElem};
use crate::monoid::{Element, Monoid};
use crate::multiset::Multiset;

pub const SCHEMA: &str = "v1";

fn bad(msg: impl Into<String>) -> Error {
    Error::Invalid(msg.into())
}

pub fn encode_element(m: &Monoid, a: &Element) -> Value {
    match (m, a) {
        (Monoid::Group { group }, Element::GroupElement(g)) => json!(group.coords(*g)),
        (Monoid::Block { group }, Element::Sequence(s)) => {
            json!({ "terms": s.iter().map(|&g| group.coords(g)).collect::<Vec<_>>() })
        }
        (Monoid::DirectProduct { factors }, Element::Tuple(t)) => {
            Value::Array(factors.iter().zip(t).map(|(m, e)| encode_element(m, e)).collect())
        }
        (_, Element::Exponents(v)) => json!(v),
        (_, Element::Integer(n)) => json!(n),
        (_, Element::GroupElement(g)) => json!(g),
        (_, Element::Sequence(s)) => json!({ "terms": s }),
        (_, Element::Tuple(t)) => Value::Array(t.iter().map(|e| encode_element(m, e)).collect()),
    }
}

fn coords_of(group: &FiniteAbelianGroup, v: &Value) -> Result<GroupElem> {
    match v {
        Value::Array(cs) => {
            let cs = cs
                .iter()
                .map(|c| c.as_u64().and_then(|c| u32::try_from(c).ok()).ok_or_else(|| bad("coordinate must be a small natural number")))
                .collect::<Result<Vec<u32>>>()?;
            group.from_coords(&cs)
        }
        // a bare number is a coordinate of a cyclic group
        Value::Number(n) if group.rank() <= 1 => {
            let c = n.as_u64().and_then(|c| u32::try_from(c).ok()).ok_or_else(|| bad("coordinate must be a small natural number"))?;
            group.from_coords(&[c])
        }
        _ => Err(bad(format!("cannot read a group element of {group} from {v}"))),
    }
}

pub fn decode_element(m: &Monoid, v: &Value) -> Result<Element> {
    let e = match m {
        Monoid::FreeAbelian { .. } => {
            let xs = v.as_array().ok_or_else(|| bad("expected an exponent array"))?;
            Element::Exponents(
                xs.iter().map(|x| x.as_u64().ok_or_else(|| bad("exponents are natural numbers"))).collect::<Result<_>>()?,
            )
        }
        Monoid::NonzeroIntegers => Element::Integer(v.as_i64().ok_or_else(|| bad("expected an integer"))?),
        Monoid::Group { group } => Element::GroupElement(coords_of(group, v)?),
        Monoid::Block { group } => {
            let terms = match v {
                Value::Object(o) => o.get("terms").ok_or_else(|| bad("sequence object needs `terms`"))?,
                other => other,
            };
            let terms = terms.as_array().ok_or_else(|| bad("`terms` must be an array"))?;
            Element::sequence(terms.iter().map(|t| coords_of(group, t)).collect::<Result<Vec<_>>>()?)
        }
        Monoid::DirectProduct { factors } => {
            let xs = v.as_array().ok_or_else(|| bad("expected one entry per factor"))?;
            if xs.len() != factors.len() {
                return Err(bad(format!("expected {} coordinates, got {}", factors.len(), xs.len())));
            }
            Element::Tuple(factors.iter().zip(xs).map(|(m, x)| decode_element(m, x)).collect::<Result<_>>()?)
        }
    };
    m.check(&e)?;
    Ok(e)
}

/// Parses an element from text: JSON, or the short forms `[1],[1],[2]` for
/// sequences (`1` is the empty one), `-12` for integers and `[1,0]` for vectors.
pub fn parse_element(m: &Monoid, text: &str) -> Result<Element> {
    let t = text.trim();
    if let Monoid::Block { group } = m {
        if !t.starts_with('{') {
            if t.is_empty() || t == "1" {
                return Ok(Element::Sequence(vec![]));
            }
            let mut terms = Vec::new();
            let mut rest = t;
            loop {
                rest = rest.trim_start_matches(|c: char| c.is_whitespace() || c == ',' || c == '·' || c == '*');
                if rest.is_empty() {
                    break;
                }
                let body = rest.strip_prefix('[').ok_or_else(|| bad(format!("expected `[` in `{t}`")))?;
                let end = body.find(']').ok_or_else(|| bad(format!("unclosed `[` in `{t}`")))?;
                let cs = body[..end]
                    .split(',')
                    .map(|c| c.trim().parse::<u32>().map_err(|_| bad(format!("bad coordinate `{c}`"))))
                    .collect::<Result<Vec<u32>>>()?;
                terms.push(group.from_coords(&cs)?);
                rest = &body[end + 1..];
            }
            let e = Element::sequence(terms);
            m.check(&e)?;
            return Ok(e);
        }
    }
    let v: Value = match serde_json::from_str(t) {
        Ok(v) => v,
        // `1,0` for a vector without brackets
        Err(_) if !t.starts_with('[') => serde_json::from_str(&format!("[{t}]"))
            .map_err(|e| Error::Parse { pos: e.column().saturating_sub(1), msg: e.to_string() })?,
        Err(e) => return Err(Error::Parse { pos: e.column().saturating_sub(1), msg: e.to_string() }),
    };
    decode_element(m, &v)
}

pub fn encode_factorization(m: &Monoid, f: &Factorization) -> Value {
    Value::Array(f.atoms().iter().map(|a| encode_element(m, a)).collect())
}

pub fn encode_profile(p: &LengthProfile) -> Value {
    serde_json::to_value(p).expect("profiles serialize")
}

pub fn parse_monoid(v: &Value) -> Result<Monoid> {
    match v {
        Value::String(s) => Monoid::from_str(s),
        other => serde_json::from_value(other.clone()).map_err(|e| bad(format!("monoid: {e}"))),
    }
}

/// `frechet`, or `principal:SIZE:SELECTED`.
pub fn parse_spec(s: &str) -> Result<UltrafilterSpec> {
    let t = s.trim();
    if t == "frechet" {
        return Ok(UltrafilterSpec::Frechet);
    }
    let parts: Vec<&str> = t.split(':').collect();
    match parts.as_slice() {
        ["principal", n, k] => {
            let n = n.parse().map_err(|_| bad("index set size"))?;
            let k = k.parse().map_err(|_| bad("selected index"))?;
            UltrafilterSpec::principal(n, k)
        }
        _ => Err(bad(format!("unknown ultrafilter `{t}`; use frechet or principal:SIZE:SELECTED"))),
    }
}

/// Verdict JSON tagged with the ultrafilter mode.
pub fn verdict_json<T: Ord + Clone + serde::Serialize>(spec: &UltrafilterSpec, v: &Verdict<T>) -> Value {
    let mut out = Map::new();
    out.insert("mode".into(), json!(spec.mode_name()));
    if let Value::Object(o) = serde_json::to_value(v).expect("verdicts serialize") {
        out.extend(o);
    }
    Value::Object(out)
}

fn periodic_from<T>(v: &Value, mut item: impl FnMut(&Value) -> Result<T>) -> Result<Periodic<T>>
where
    T: Clone,
{
    let list = |key: &str| -> Result<Vec<Value>> {
        match v.get(key) {
            None => Ok(vec![]),
            Some(Value::Array(xs)) => Ok(xs.clone()),
            Some(_) => Err(bad(format!("`{key}` must be an array"))),
        }
    };
    let pre = list("pre")?.iter().map(&mut item).collect::<Result<_>>()?;
    let period = list("period")?.iter().map(&mut item).collect::<Result<_>>()?;
    Periodic::new(pre, period)
}

fn periodic_to<T>(p: &Periodic<T>, mut item: impl FnMut(&T) -> Value) -> Value {
    json!({ "pre": p.pre.iter().map(&mut item).collect::<Vec<_>>(), "period": p.period.iter().map(&mut item).collect::<Vec<_>>() })
}

/// Reads a family from JSON such as
/// `{"rule":"prime_power_ramp","p":2,"component":"nonzero_integers"}`.
pub fn family_from_json(v: &Value) -> Result<ElementFamily> {
    let rule = v.get("rule").and_then(Value::as_str).ok_or_else(|| bad("family needs a `rule`"))?;
    let components = match (v.get("component"), v.get("components")) {
        (Some(c), None) => Periodic::constant(parse_monoid(c)?),
        (None, Some(cs)) => periodic_from(cs, parse_monoid)?,
        (None, None) if matches!(rule, "prime_power_ramp" | "truncation_ramp") => Periodic::constant(Monoid::NonzeroIntegers),
        (None, None) => return Err(bad("family needs a `component` or `components`")),
        _ => return Err(bad("give either `component` or `components`")),
    };
    let single = |c: &Periodic<Monoid>| -> Result<Monoid> {
        let first = c.at(0).clone();
        if (0..c.window()).all(|i| *c.at(i) == first) {
            Ok(first)
        } else {
            Err(bad("element encodings need a constant component"))
        }
    };
    let fam = match rule {
        "constant" => {
            let m = single(&components)?;
            let e = decode_element(&m, v.get("element").ok_or_else(|| bad("constant family needs `element`"))?)?;
            ElementFamily { components, rule: ElementRule::Constant { element: e } }
        }
        "periodic" => {
            let m = single(&components)?;
            let elements = periodic_from(v, |x| decode_element(&m, x))?;
            ElementFamily { components, rule: ElementRule::Periodic { elements } }
        }
        "prime_power_ramp" => {
            let p = v.get("p").and_then(Value::as_u64).ok_or_else(|| bad("prime power ramp needs `p`"))?;
            ElementFamily { components, rule: ElementRule::PrimePowerRamp { p } }
        }
        "truncation_ramp" => {
            let target = v.get("target").ok_or_else(|| bad("truncation ramp needs `target`"))?;
            let target: Multiset<u64> =
                serde_json::from_value(target.clone()).map_err(|e| bad(format!("target multiset: {e}")))?;
            let mut f = ElementFamily::truncation_ramp(&target)?;
            f.components = components;
            f
        }
        "non_atomic_witness" => {
            let flagged = v.get("flagged").ok_or_else(|| bad("witness family needs `flagged`"))?;
            let flagged = periodic_from(flagged, |x| x.as_bool().ok_or_else(|| bad("flags are booleans")))?;
            ElementFamily { components, rule: ElementRule::NonAtomicWitness { flagged } }
        }
        other => return Err(bad(format!("unknown rule `{other}`"))),
    };
    fam.validate()?;
    Ok(fam)
}

pub fn family_to_json(f: &ElementFamily) -> Value {
    let mut out = Map::new();
    let comps = &f.components;
    let constant = comps.pre.is_empty() && comps.period.len() == 1;
    let m0 = comps.at(0).clone();
    match &f.rule {
        ElementRule::Constant { element } => {
            out.insert("rule".into(), json!("constant"));
            out.insert("element".into(), encode_element(&m0, element));
        }
        ElementRule::Periodic { elements } => {
            out.insert("rule".into(), json!("periodic"));
            out.insert("pre".into(), json!(elements.pre.iter().map(|e| encode_element(&m0, e)).collect::<Vec<_>>()));
            out.insert("period".into(), json!(elements.period.iter().map(|e| encode_element(&m0, e)).collect::<Vec<_>>()));
        }
        ElementRule::PrimePowerRamp { p } => {
            out.insert("rule".into(), json!("prime_power_ramp"));
            out.insert("p".into(), json!(p));
        }
        ElementRule::TruncationRamp { enumeration } => {
            let mut t: Multiset<u64> = Multiset::new();
            for &l in &enumeration.finite {
                t.insert(l, ExtNat::ONE);
            }
            for &l in &enumeration.infinite {
                t.insert(l, ExtNat::Inf);
            }
            out.insert("rule".into(), json!("truncation_ramp"));
            out.insert("target".into(), serde_json::to_value(&t).expect("multisets serialize"));
        }
        ElementRule::NonAtomicWitness { flagged } => {
            out.insert("rule".into(), json!("non_atomic_witness"));
            out.insert("flagged".into(), periodic_to(flagged, |b| json!(b)));
        }
    }
    if constant {
        out.insert("component".into(), json!(monoid_name(&m0)));
    } else {
        out.insert("components".into(), periodic_to(comps, |m| json!(monoid_name(m))));
    }
    Value::Object(out)
}

fn monoid_name(m: &Monoid) -> String {
    match m {
        Monoid::NonzeroIntegers => "nonzero_integers".into(),
        other => other.to_string(),
    }
}

/// Reads a family from JSON or from the short forms `prime_power_ramp:P` and
/// `truncation_ramp:2=2,3=inf`.
pub fn parse_family(text: &str) -> Result<ElementFamily> {
    let t = text.trim();
    if t.starts_with('{') {
        let v: Value = serde_json::from_str(t).map_err(|e| Error::Parse { pos: e.column().saturating_sub(1), msg: e.to_string() })?;
        return family_from_json(&v);
    }
    match t.split_once(':') {
        Some(("prime_power_ramp", p)) => {
            ElementFamily::prime_power_ramp(p.trim().parse().map_err(|_| bad(format!("bad prime `{p}`")))?)
        }
        Some(("truncation_ramp", body)) => ElementFamily::truncation_ramp(&parse_length_multiset(body)?),
        _ => Err(bad(format!("unknown family `{t}`; use JSON, prime_power_ramp:P or truncation_ramp:L=N,..."))),
    }
}

/// `2=2,3=inf` or `{"2":2,"3":"inf"}`; an empty string is the empty multiset.
pub fn parse_length_multiset(text: &str) -> Result<Multiset<u64>> {
    let t = text.trim();
    if t.starts_with('{') {
        return serde_json::from_str(t).map_err(|e| Error::Parse { pos: e.column().saturating_sub(1), msg: e.to_string() });
    }
    let mut out = Multiset::new();
    for part in t.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        let (l, n) = part.split_once('=').unwrap_or((part, "1"));
        let l: u64 = l.trim().parse().map_err(|_| bad(format!("bad length `{l}`")))?;
        let n: ExtNat = n.trim().parse().map_err(|_| bad(format!("bad multiplicity `{n}`")))?;
        out.insert(l, n);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn monoid_names() {
        for s in ["free:2", "int", "grp:c4", "bg:c3", "bg:c2xc2", "prod(bg:c3,int)", "prod(prod(int,int),free:1)"] {
            let m: Monoid = s.parse().unwrap();
            assert_eq!(m.to_string(), s);
        }
        assert!("bg:c0".parse::<Monoid>().is_err());
        assert!("what".parse::<Monoid>().is_err());
    }

    #[test]
    fn element_text() {
        let m: Monoid = "bg:c3".parse().unwrap();
        let e = parse_element(&m, "[1],[1],[1],[2],[2],[2]").unwrap();
        assert_eq!(e, Element::sequence([1, 1, 1, 2, 2, 2]));
        assert_eq!(encode_element(&m, &e), json!({"terms": [[1],[1],[1],[2],[2],[2]]}));
        assert_eq!(parse_element(&m, r#"{"terms":[[1],[2]]}"#).unwrap(), Element::sequence([1, 2]));
        assert_eq!(parse_element(&m, "1").unwrap(), Element::sequence([]));
        assert!(matches!(parse_element(&m, "[1]"), Err(Error::NotZeroSum(_))));
        let z: Monoid = "int".parse().unwrap();
        assert_eq!(parse_element(&z, "-12").unwrap(), Element::Integer(-12));
        assert!(parse_element(&z, "0").is_err());
        let f: Monoid = "free:2".parse().unwrap();
        assert_eq!(parse_element(&f, "1,0").unwrap(), Element::Exponents(vec![1, 0]));
        let p: Monoid = "prod(bg:c2,int)".parse().unwrap();
        let e = parse_element(&p, r#"[{"terms":[[1],[1]]}, 6]"#).unwrap();
        assert_eq!(decode_element(&p, &encode_element(&p, &e)).unwrap(), e);
    }

    #[test]
    fn family_round_trip() {
        let v = json!({"rule":"prime_power_ramp","p":2,"component":"nonzero_integers"});
        let f = family_from_json(&v).unwrap();
        assert_eq!(family_to_json(&f), v);
        assert_eq!(parse_family("prime_power_ramp:2").unwrap(), f);
        let v = json!({"rule":"periodic","pre":[],"period":[{"terms":[]},{"terms":[[1],[1],[1]]}],"component":"bg:c3"});
        let f = family_from_json(&v).unwrap();
        assert_eq!(family_to_json(&f), v);
        let t = parse_family("truncation_ramp:2=2,3=inf").unwrap();
        assert_eq!(family_from_json(&family_to_json(&t)).unwrap(), t);
        assert!(family_from_json(&json!({"rule":"constant","element":4,"component":"bg:c3"})).is_err());
    }

    #[test]
    fn verdict_with_mode() {
        let v = Verdict::ForAllU { value: ExtNat::Inf };
        let j = verdict_json(&UltrafilterSpec::Frechet, &v);
        assert_eq!(serde_json::to_string(&j).unwrap(), r#"{"mode":"frechet","verdict":"forall","value":"inf"}"#);
        assert_eq!(parse_spec("principal:3:1").unwrap(), UltrafilterSpec::principal(3, 1).unwrap());
        assert!(parse_spec("principal:3:3").is_err());
    }
}
