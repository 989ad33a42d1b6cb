use std::collections::BTreeSet;
use std::fmt;

use serde_json::{json, Map, Value};

use ufact::factor::{factorizations, length_profile};
use ufact::filter::{
    realize_multiset_transfer, up_in_ha, up_is_atom, up_is_unit, up_length_contains, up_length_multiplicity,
    ElementFamily, HaOutcome, Periodic, RealizerReport, RealizerRequest, UltrafilterSpec,
};
use ufact::fol::{eval, los_check, parse_sentence, random_sentence};
use ufact::json::{
    encode_element, encode_factorization, encode_profile, parse_element, parse_family, parse_length_multiset, parse_spec,
    verdict_json, SCHEMA,
};
use ufact::krull::{
    bg_proto_iso_check, divisor_closed_check, divisor_theory_bg, gcd_cover_check, in_protoproduct, prime_power_gap,
    proto_degree, DegreeFunction,
};
use ufact::zerosum::{davenport, exceptional_groups, minimal_zero_sum_sequences, realize_set_search, RealizeBounds, RealizeOutcome};
use ufact::{Budget, Element, Error, FiniteAbelianGroup, Monoid};

use crate::args::{Command, DegreeKind, ElementArgs, FamilyArgs, FolCommand, ProtoCommand, RunConfig, UltraCommand};

#[derive(Debug)]
pub enum CliError {
    /// Arguments that could not be read.
    Usage(String),
    Domain(Error),
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) => f.write_str(m),
            CliError::Domain(e) => write!(f, "{e}"),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Domain(e)
    }
}

type Result<T> = std::result::Result<T, CliError>;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Ok,
    /// The report is complete but records a failed check.
    Failed,
    /// Part of the answer is missing because a search ran out of budget.
    BudgetExceeded,
}

pub struct Report {
    pub json: Value,
    pub text: String,
    pub status: Status,
}

impl Report {
    fn new(body: Value, text: impl Into<String>) -> Self {
        let mut out = Map::new();
        out.insert("schema".into(), json!(SCHEMA));
        if let Value::Object(o) = body {
            out.extend(o);
        }
        Report { json: Value::Object(out), text: text.into(), status: Status::Ok }
    }

    fn with_status(mut self, s: Status) -> Self {
        self.status = s;
        self
    }
}

fn usage(e: Error) -> CliError {
    CliError::Usage(e.to_string())
}

fn group(s: &str) -> Result<FiniteAbelianGroup> {
    s.parse().map_err(usage)
}

fn monoid(s: &str) -> Result<Monoid> {
    s.parse().map_err(usage)
}

fn spec(s: &str) -> Result<UltrafilterSpec> {
    parse_spec(s).map_err(usage)
}

fn lengths_set(s: &str) -> Result<BTreeSet<u64>> {
    s.split(',')
        .map(str::trim)
        .filter(|p| !p.is_empty())
        .map(|p| p.parse().map_err(|_| CliError::Usage(format!("bad length `{p}`"))))
        .collect()
}

// Unreadable text is a usage error; a readable element that breaks a monoid rule is a domain error.
fn element(m: &Monoid, s: &str) -> Result<Element> {
    parse_element(m, s).map_err(|e| match e {
        Error::Parse { .. } | Error::Invalid(_) => usage(e),
        other => CliError::Domain(other),
    })
}

fn budget(cfg: &RunConfig) -> Budget {
    Budget::new(cfg.budget)
}

fn degree(k: DegreeKind) -> DegreeFunction {
    match k {
        DegreeKind::SequenceLength => DegreeFunction::SequenceLength,
        DegreeKind::Canonical => DegreeFunction::Canonical,
    }
}

pub fn dispatch(cmd: &Command, cfg: &RunConfig) -> Result<Report> {
    match cmd {
        Command::Atoms { group: Some(g), max_len, .. } => {
            let g = group(g)?;
            let mut b = budget(cfg);
            let max_len = match max_len {
                Some(n) => *n,
                None => davenport(&g, &mut b)?,
            };
            let m = Monoid::block(g.clone());
            let atoms: Vec<Element> = minimal_zero_sum_sequences(&g, max_len, &mut b)?.into_iter().map(Element::Sequence).collect();
            let text = atoms.iter().map(|a| m.format(a)).collect::<Vec<_>>().join("\n");
            Ok(Report::new(
                json!({"group": g.name(), "max_len": max_len, "count": atoms.len(),
                       "atoms": atoms.iter().map(|a| encode_element(&m, a)).collect::<Vec<_>>()}),
                text,
            ))
        }
        Command::Atoms { monoid: Some(m), element: Some(e), .. } => {
            let m = monoid(m)?;
            let e = element(&m, e)?;
            let atoms = m.atoms_dividing(&e, &mut budget(cfg))?;
            let text = atoms.iter().map(|a| m.format(a)).collect::<Vec<_>>().join("\n");
            Ok(Report::new(
                json!({"monoid": m.to_string(), "element": encode_element(&m, &e),
                       "atoms": atoms.iter().map(|a| encode_element(&m, a)).collect::<Vec<_>>()}),
                text,
            ))
        }
        Command::Atoms { .. } => Err(CliError::Usage("give --group, or --monoid with --element".into())),
        Command::Factorize(a) => factorize(a, cfg),
        Command::Lengths(a) => {
            let (m, e) = element_args(a)?;
            let max = a.max_len.unwrap_or_else(|| m.max_factorization_length(&e));
            let p = length_profile(&m, &e, max, &mut budget(cfg))?;
            let text = p.iter().map(|(l, n)| format!("{l}: {n}")).collect::<Vec<_>>().join("\n");
            Ok(Report::new(encode_profile(&p), text))
        }
        Command::Davenport { group: g } => {
            let g = group(g)?;
            let d = davenport(&g, &mut budget(cfg))?;
            Ok(Report::new(json!({"group": g.name(), "davenport": d}), d.to_string()))
        }
        Command::Realize { group: g, lengths, max_seq_len } => {
            let g = group(g)?;
            let target = lengths_set(lengths)?;
            let out = realize_set_search(&g, &target, &RealizeBounds { max_seq_len: *max_seq_len }, &mut budget(cfg))?;
            let m = Monoid::block(g.clone());
            let mut body = serde_json::to_value(&out).expect("outcome serializes");
            let (text, status) = match &out {
                RealizeOutcome::Found { witness, .. } => {
                    let w = Element::Sequence(witness.clone());
                    body["witness"] = encode_element(&m, &w);
                    (format!("found {}", m.format(&w)), Status::Ok)
                }
                RealizeOutcome::NotFound { max_seq_len, .. } => {
                    (format!("no element with at most {max_seq_len} terms"), Status::Ok)
                }
                RealizeOutcome::BudgetExceeded { limit } => {
                    (format!("node budget {limit} exhausted"), Status::BudgetExceeded)
                }
            };
            let mut head = json!({"group": g.name(), "lengths": target});
            head.as_object_mut().unwrap().extend(body.as_object().unwrap().clone());
            Ok(Report::new(head, text).with_status(status))
        }
        Command::Exceptional { lengths, order_bound, max_seq_len } => {
            let target = lengths_set(lengths)?;
            let r = exceptional_groups(&target, *order_bound, &RealizeBounds { max_seq_len: *max_seq_len }, cfg.budget)?;
            let names = |gs: &[FiniteAbelianGroup]| gs.iter().map(|g| g.name()).collect::<Vec<_>>();
            let realized: Vec<Value> = r
                .realized
                .iter()
                .map(|(g, w)| json!({"group": g.name(), "witness": encode_element(&Monoid::block(g.clone()), &Element::Sequence(w.clone()))}))
                .collect();
            let text = format!(
                "exceptional: {}\nbudget exceeded: {}",
                names(&r.exceptional).join(", "),
                names(&r.budget_exceeded).join(", ")
            );
            let status = if r.budget_exceeded.is_empty() { Status::Ok } else { Status::BudgetExceeded };
            Ok(Report::new(
                json!({"lengths": target, "order_bound": order_bound, "exceptional": names(&r.exceptional),
                       "budget_exceeded": names(&r.budget_exceeded), "realized": realized}),
                text,
            )
            .with_status(status))
        }
        Command::Ultra(u) => ultra(u, cfg),
        Command::Fol(FolCommand::Eval { sentence, group: g }) => {
            let phi = parse_sentence(sentence).map_err(usage)?;
            let g = group(g)?;
            let v = eval(&phi, &g)?;
            Ok(Report::new(json!({"sentence": phi.to_string(), "group": g.name(), "value": v}), v.to_string()))
        }
        Command::Fol(FolCommand::Los { groups, selected, sentence }) => {
            let phi = parse_sentence(sentence).map_err(usage)?;
            let gs = group_list(groups)?;
            let r = los_check(&phi, &gs, *selected)?;
            let text = format!("quotient {}, component {}, agree {}", r.quotient_value, r.component_value, r.agree);
            let status = if r.agree { Status::Ok } else { Status::Failed };
            Ok(Report::new(serde_json::to_value(&r).expect("report serializes"), text).with_status(status))
        }
        Command::Los { groups, sentences, depth } => {
            let gs = group_list(groups)?;
            if *depth == 0 {
                return Err(CliError::Usage("depth must be at least 1".into()));
            }
            let mut disagreements = Vec::new();
            let mut cases = 0;
            for i in 0..*sentences {
                let phi = random_sentence(*depth, 3, cfg.seed.wrapping_add(i as u64))?;
                for sel in 0..gs.len() {
                    let r = los_check(&phi, &gs, sel)?;
                    cases += 1;
                    if !r.agree {
                        disagreements.push(serde_json::to_value(&r).expect("report serializes"));
                    }
                }
            }
            let status = if disagreements.is_empty() { Status::Ok } else { Status::Failed };
            Ok(Report::new(
                json!({"groups": gs.iter().map(|g| g.name()).collect::<Vec<_>>(), "seed": cfg.seed,
                       "cases": cases, "agree": disagreements.is_empty(), "disagreements": disagreements}),
                format!("{cases} cases, {} disagreements", disagreements.len()),
            )
            .with_status(status))
        }
        Command::Proto(p) => proto(p, cfg),
        Command::Gap { k } => gap(*k),
        Command::Selftest { criterion } => selftest(*criterion),
    }
}

fn group_list(s: &str) -> Result<Vec<FiniteAbelianGroup>> {
    s.split(',').map(|g| group(g.trim())).collect()
}

fn element_args(a: &ElementArgs) -> Result<(Monoid, Element)> {
    let m = monoid(&a.monoid)?;
    let e = element(&m, &a.element)?;
    Ok((m, e))
}

fn factorize(a: &ElementArgs, cfg: &RunConfig) -> Result<Report> {
    let (m, e) = element_args(a)?;
    let max = a.max_len.unwrap_or_else(|| m.max_factorization_length(&e));
    let fs = factorizations(&m, &e, max, &mut budget(cfg))?;
    let text = fs
        .iter()
        .map(|f| {
            if f.is_empty() {
                "(empty)".to_string()
            } else {
                f.atoms().iter().map(|u| format!("({})", m.format(u))).collect::<Vec<_>>().join(" ")
            }
        })
        .collect::<Vec<_>>()
        .join("\n");
    Ok(Report::new(
        json!({"monoid": m.to_string(), "element": encode_element(&m, &e), "max_len": max, "count": fs.len(),
               "factorizations": fs.iter().map(|f| encode_factorization(&m, f)).collect::<Vec<_>>()}),
        text,
    ))
}

fn family(a: &FamilyArgs) -> Result<(ElementFamily, UltrafilterSpec)> {
    let s = spec(&a.mode)?;
    let split = |list: &Option<String>, m: &Monoid| -> Result<Vec<Element>> {
        match list {
            None => Ok(vec![]),
            Some(t) => t.split(';').filter(|p| !p.trim().is_empty()).map(|p| element(m, p)).collect(),
        }
    };
    let fam = match (&a.family, &a.monoid) {
        (Some(f), _) => parse_family(f).map_err(|e| match e {
            Error::Parse { .. } | Error::Invalid(_) => usage(e),
            other => CliError::Domain(other),
        })?,
        (None, Some(m)) => {
            let m = monoid(m)?;
            match &a.element {
                Some(e) => ElementFamily::constant(m.clone(), element(&m, e)?)?,
                None => {
                    let period = split(&a.period, &m)?;
                    if period.is_empty() {
                        return Err(CliError::Usage("give --element or a nonempty --period".into()));
                    }
                    ElementFamily::periodic(Periodic::constant(m.clone()), Periodic::new(split(&a.pre, &m)?, period)?)?
                }
            }
        }
        (None, None) => return Err(CliError::Usage("give --family, or --monoid with --element or --period".into())),
    };
    Ok((fam, s))
}

fn verdict_report<T: Ord + Clone + serde::Serialize + fmt::Debug>(
    s: &UltrafilterSpec,
    v: &ufact::filter::Verdict<T>,
) -> Report {
    let text = match v.decided() {
        Some(x) => format!("{x:?}"),
        None => format!("depends on the ultrafilter: {:?}", v.candidates()),
    };
    Report::new(verdict_json(s, v), text)
}

fn ultra(u: &UltraCommand, cfg: &RunConfig) -> Result<Report> {
    match u {
        UltraCommand::IsUnit(a) => {
            let (f, s) = family(a)?;
            Ok(verdict_report(&s, &up_is_unit(&f, &s)?))
        }
        UltraCommand::IsAtom(a) => {
            let (f, s) = family(a)?;
            Ok(verdict_report(&s, &up_is_atom(&f, &s)?))
        }
        UltraCommand::LengthMult { family: a, length } => {
            let (f, s) = family(a)?;
            let v = up_length_multiplicity(&f, *length, &s, &mut budget(cfg))?;
            Ok(verdict_report(&s, &v))
        }
        UltraCommand::LengthContains { family: a, length } => {
            let (f, s) = family(a)?;
            let v = up_length_contains(&f, *length, &s, &mut budget(cfg))?;
            Ok(verdict_report(&s, &v))
        }
        UltraCommand::InHa { family: a, n_max } => {
            let (f, s) = family(a)?;
            let out = up_in_ha(&f, &s, *n_max, &mut budget(cfg))?;
            let body = match &out {
                HaOutcome::Decided { verdict, bound } => {
                    let mut v = verdict_json(&s, verdict);
                    v["outcome"] = json!("decided");
                    v["bound"] = json!(bound);
                    v
                }
                HaOutcome::Inconclusive { n_max } => {
                    json!({"mode": s.mode_name(), "outcome": "inconclusive", "n_max": n_max})
                }
            };
            let text = match &out {
                HaOutcome::Decided { verdict, .. } => format!("{:?}", verdict.candidates()),
                HaOutcome::Inconclusive { n_max } => format!("inconclusive up to N = {n_max}"),
            };
            Ok(Report::new(body, text))
        }
        UltraCommand::Realize { target, realizer_group, indices } => {
            let t = parse_length_multiset(target).map_err(usage)?;
            let req = match realizer_group {
                Some(g) => Some(RealizerRequest { group: group(g)?, indices: *indices, bounds: RealizeBounds::default() }),
                None => None,
            };
            let r = realize_multiset_transfer(&t, &UltrafilterSpec::Frechet, req.as_ref(), &mut budget(cfg))?;
            let mut body = serde_json::to_value(&r).expect("report serializes");
            if let (RealizerReport::BlockMonoid { group, indices }, Some(rows)) =
                (&r.realizer, body["realizer"]["indices"].as_array_mut())
            {
                let m = Monoid::block(group.clone());
                for (row, idx) in rows.iter_mut().zip(indices) {
                    if let Some(w) = &idx.witness {
                        row["witness"] = encode_element(&m, &Element::Sequence(w.clone()));
                    }
                }
            }
            let text = r
                .rows
                .iter()
                .map(|row| format!("{}: expected {}, got {:?}", row.length, row.expected, row.verdict.candidates()))
                .collect::<Vec<_>>()
                .join("\n");
            let status = if r.all_match { Status::Ok } else { Status::Failed };
            Ok(Report::new(body, text).with_status(status))
        }
        UltraCommand::Degree { family: a, degree: d } => {
            let (f, s) = family(a)?;
            Ok(verdict_report(&s, &proto_degree(&f, degree(*d), &s)?))
        }
        UltraCommand::InProto { family: a, degree: d } => {
            let (f, s) = family(a)?;
            Ok(verdict_report(&s, &in_protoproduct(&f, degree(*d), &s)?))
        }
    }
}

fn proto(p: &ProtoCommand, cfg: &RunConfig) -> Result<Report> {
    match p {
        ProtoCommand::Iso { group: g, bound, mode } => {
            let g = group(g)?;
            let s = spec(mode)?;
            let r = bg_proto_iso_check(&g, *bound, &s, &mut budget(cfg))?;
            let ok = r.bijection && r.homomorphism && r.atoms_match && r.degrees_match;
            let text = format!(
                "{} elements of degree ≤ {}, {} classes; bijection {}, homomorphism {} ({} pairs)",
                r.domain_count, r.degree_bound, r.image_count, r.bijection, r.homomorphism, r.pairs_checked
            );
            Ok(Report::new(serde_json::to_value(&r).expect("report serializes"), text)
                .with_status(if ok { Status::Ok } else { Status::Failed }))
        }
        ProtoCommand::DivisorClosed { monoid: m, degree: d, bound } => {
            let m = monoid(m)?;
            let r = divisor_closed_check(&m, degree(*d), *bound, &mut budget(cfg))?;
            let text = match &r.counterexample {
                None => format!("holds on {} elements", r.elements_checked),
                Some(c) => format!("fails: {c}"),
            };
            let status = if r.holds { Status::Ok } else { Status::Failed };
            Ok(Report::new(serde_json::to_value(&r).expect("report serializes"), text).with_status(status))
        }
        ProtoCommand::Gcd { group: g, max_len } => {
            let g = group(g)?;
            let r = gcd_cover_check(&g, *max_len, &mut budget(cfg))?;
            let text = r
                .witnesses
                .iter()
                .map(|w| match (&w.a, &w.b) {
                    (Some(a), Some(b)) => format!("{:?}: {:?} and {:?}", w.letter, a, b),
                    _ => format!("{:?}: none", w.letter),
                })
                .collect::<Vec<_>>()
                .join("\n");
            let status = if r.holds { Status::Ok } else { Status::Failed };
            Ok(Report::new(serde_json::to_value(&r).expect("report serializes"), text).with_status(status))
        }
        ProtoCommand::Theory { group: g, element: e } => {
            let g = group(g)?;
            let m = Monoid::block(g.clone());
            // the element may not be zero-sum, which the divisor theory reports itself
            let terms = raw_terms(&m, e)?;
            let r = divisor_theory_bg(&g, &terms)?;
            let text = format!("word {:?} in F({}); class group {}", r.word, r.group, r.class_group);
            Ok(Report::new(serde_json::to_value(&r).expect("report serializes"), text))
        }
        ProtoCommand::Gap { k } => gap(*k),
    }
}

fn raw_terms(m: &Monoid, text: &str) -> Result<Vec<u32>> {
    match parse_element(m, text) {
        Ok(Element::Sequence(s)) => Ok(s),
        Ok(_) => unreachable!("block monoids hold sequences"),
        Err(Error::Parse { .. }) | Err(Error::Invalid(_)) => Err(element(m, text).unwrap_err()),
        Err(e) => Err(CliError::Domain(e)),
    }
}

fn gap(k: usize) -> Result<Report> {
    let r = prime_power_gap(k)?;
    let text = format!("{}^{} - {}^{} = {}\ndivisible by {:?}", r.p, r.x, r.q, r.y, r.difference, r.primes);
    let status = if r.verified { Status::Ok } else { Status::Failed };
    Ok(Report::new(serde_json::to_value(&r).expect("report serializes"), text).with_status(status))
}

fn selftest(only: Option<u32>) -> Result<Report> {
    let results = match only {
        Some(id) => vec![ufact_selftest::run(id).ok_or_else(|| CliError::Usage(format!("no criterion {id}")))?],
        None => ufact_selftest::run_all(),
    };
    let text = results
        .iter()
        .map(|r| {
            let tag = if r.pass { "PASS" } else if r.known_unattainable { "FAIL (known)" } else { "FAIL" };
            format!("{tag} [{:>2}] {}: {}", r.id, r.name, r.detail)
        })
        .collect::<Vec<_>>()
        .join("\n");
    let unexpected = results.iter().any(|r| !r.pass && !r.known_unattainable);
    let passed = results.iter().filter(|r| r.pass).count();
    Ok(Report::new(
        json!({"passed": passed, "total": results.len(),
               "criteria": serde_json::to_value(&results).expect("results serialize")}),
        text,
    )
    .with_status(if unexpected { Status::Failed } else { Status::Ok }))
}
