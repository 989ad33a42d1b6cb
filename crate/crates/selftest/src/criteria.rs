use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use ufact::factor::full_length_profile;
use ufact::filter::{
    factorial_uniqueness_check, filter_contains, realize_multiset_transfer, ultralimit, up_in_ha, up_is_atom,
    up_length_contains, BoolFamily, ElementFamily, ExtNatFamily, HaOutcome, Periodic, UltrafilterSpec, Verdict,
};
use ufact::fol::{eval, los_check_on, random_sentence, QuotientStructure};
use ufact::krull::{bg_proto_iso_check, divisor_closed_check, gcd_cover_check, prime_power_gap, DegreeFunction};
use ufact::zerosum::{davenport, exceptional_groups, realize_set_search, RealizeBounds, RealizeOutcome};
use ufact::{Budget, Element, ExtNat, FiniteAbelianGroup, GroupElem, Monoid, Multiset};

use crate::oracle;

#[derive(Debug, Clone, Serialize)]
pub struct CriterionResult {
    pub id: u32,
    pub name: &'static str,
    pub pass: bool,
    /// Failures analysed as unattainable rather than defects.
    pub known_unattainable: bool,
    pub detail: String,
    pub elapsed_ms: u128,
    pub limit_ms: Option<u128>,
}

/// Criteria whose failure has been analysed as a property of the mathematics.
pub const KNOWN_UNATTAINABLE: &[u32] = &[10];

type Check = fn() -> Result<String, String>;

const CRITERIA: &[(u32, &str, Option<u64>, Check)] = &[
    (1, "davenport constants", Some(10), c1_davenport),
    (2, "lengths oracle", Some(60), c2_lengths),
    (3, "los conformance", Some(30), c3_los),
    (4, "ultralimit transfer", None, c4_ultralimit),
    (5, "prime power ramp", None, c5_ramp),
    (6, "half-factoriality transfer", None, c6_half_factorial),
    (7, "multiset realization arithmetic", None, c7_transfer),
    (8, "set realization at desk scale", None, c8_realize),
    (9, "protoproduct isomorphism", None, c9_proto),
    (10, "gcd covers and prime power gap", Some(10), c10_gcd_gap),
    (11, "factorial submonoid", None, c11_factorial),
];

pub fn criteria() -> Vec<(u32, &'static str)> {
    CRITERIA.iter().map(|&(id, name, _, _)| (id, name)).collect()
}

pub fn run(id: u32) -> Option<CriterionResult> {
    let &(id, name, limit, check) = CRITERIA.iter().find(|c| c.0 == id)?;
    let start = Instant::now();
    let outcome = check();
    let elapsed = start.elapsed();
    let limit = limit.map(Duration::from_secs);
    let (mut pass, mut detail) = match outcome {
        Ok(d) => (true, d),
        Err(d) => (false, d),
    };
    if let Some(l) = limit {
        if elapsed > l {
            pass = false;
            detail = format!("{detail}; took {elapsed:?}, limit {l:?}");
        }
    }
    Some(CriterionResult {
        id,
        name,
        pass,
        known_unattainable: !pass && KNOWN_UNATTAINABLE.contains(&id),
        detail,
        elapsed_ms: elapsed.as_millis(),
        limit_ms: limit.map(|l| l.as_millis()),
    })
}

pub fn run_all() -> Vec<CriterionResult> {
    CRITERIA.iter().filter_map(|c| run(c.0)).collect()
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn err(e: ufact::Error) -> String {
    e.to_string()
}

fn group(factors: &[u32]) -> FiniteAbelianGroup {
    FiniteAbelianGroup::new(factors.to_vec()).expect("valid invariant factors")
}

fn c1_davenport() -> Result<String, String> {
    let mut cases: Vec<(FiniteAbelianGroup, usize)> = (2..=8).map(|n| (group(&[n]), n as usize)).collect();
    cases.push((group(&[2, 2]), 3));
    cases.push((group(&[3, 3]), 5));
    cases.push((group(&[2, 2, 2]), 4));
    for (g, want) in &cases {
        let got = davenport(g, &mut Budget::default()).map_err(err)?;
        let brute = oracle::davenport(g);
        ensure(got == *want && brute == *want, || format!("D({g}): engine {got}, oracle {brute}, expected {want}"))?;
    }
    Ok(format!("{} groups match engine, oracle and known values", cases.len()))
}

fn random_zero_sum(g: &FiniteAbelianGroup, max_len: usize, rng: &mut impl Rng) -> Vec<GroupElem> {
    let len = rng.gen_range(0..=max_len);
    let mut s: Vec<GroupElem> = (0..len.saturating_sub(1)).map(|_| rng.gen_range(0..g.order())).collect();
    if len > 0 {
        let total = g.sum(s.iter().copied());
        s.push(g.neg(total));
    }
    s.sort_unstable();
    s
}

fn profile_map(p: &ufact::LengthProfile) -> std::collections::BTreeMap<u64, u64> {
    p.iter().map(|(l, n)| (l, n.finite().expect("finite multiplicity"))).collect()
}

fn c2_lengths() -> Result<String, String> {
    let c3 = group(&[3]);
    let u = [1, 1, 1, 2, 2, 2];
    let p = full_length_profile(&Monoid::block(c3.clone()), &Element::sequence(u), &mut Budget::default()).map_err(err)?;
    let want = [(2, 1), (3, 1)].into();
    ensure(profile_map(&p) == want && oracle::lengths(&c3, &u) == want, || format!("g³(2g)³ gave {p:?}"))?;
    let groups = FiniteAbelianGroup::all_up_to_order(9);
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for i in 0..500 {
        let g = groups.choose(&mut rng).unwrap();
        let s = random_zero_sum(g, 8, &mut rng);
        let m = Monoid::block(g.clone());
        let p = full_length_profile(&m, &Element::Sequence(s.clone()), &mut Budget::default()).map_err(err)?;
        let mut naive = oracle::lengths(g, &s);
        if s.is_empty() {
            naive = [(0, 1)].into();
        }
        ensure(profile_map(&p) == naive, || format!("case {i}: {g} {s:?}: engine {p:?}, oracle {naive:?}"))?;
    }
    Ok("g³(2g)³ ↦ {2:1, 3:1}; 500 random elements agree".into())
}

fn c3_los() -> Result<String, String> {
    let groups = FiniteAbelianGroup::all_up_to_order(6);
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let sentences: Vec<_> = (0..200)
        .map(|seed| random_sentence(1 + seed as usize % 3, 3, seed).map_err(err))
        .collect::<Result<_, _>>()?;
    let mut cases = 0;
    for t in 0..20 {
        let size = rng.gen_range(1..=4);
        let tuple: Vec<FiniteAbelianGroup> = (0..size).map(|_| groups.choose(&mut rng).unwrap().clone()).collect();
        for selected in 0..size {
            let q = QuotientStructure::new(&tuple, selected).map_err(err)?;
            ensure(q.check_well_defined(&mut rng, 2), || format!("tuple {t}: multiplication not well defined"))?;
            for phi in &sentences {
                let r = los_check_on(phi, &q, &tuple).map_err(err)?;
                // the component side is recomputed directly as a guard against shared state
                let direct = eval(phi, &tuple[selected]).map_err(err)?;
                ensure(r.agree && direct == r.component_value, || {
                    format!("`{phi}` on {:?} at {selected}: quotient {}, component {}", r.groups, r.quotient_value, direct)
                })?;
                cases += 1;
            }
        }
    }
    Ok(format!("{cases} sentence/tuple/index cases agree"))
}

fn random_ext(rng: &mut impl Rng) -> ExtNat {
    if rng.gen_bool(0.1) {
        ExtNat::Inf
    } else {
        ExtNat::Fin(rng.gen_range(0..4))
    }
}

fn c4_ultralimit() -> Result<String, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for i in 0..1000 {
        let fam = if rng.gen_bool(0.75) {
            let pre = (0..rng.gen_range(0..5)).map(|_| random_ext(&mut rng)).collect();
            let period = (0..rng.gen_range(1..4)).map(|_| random_ext(&mut rng)).collect();
            ExtNatFamily::EventuallyPeriodic { pre, period }
        } else {
            let mut prefix: Vec<ExtNat> = (0..rng.gen_range(1..6)).map(|_| ExtNat::Fin(rng.gen_range(0..10))).collect();
            prefix.sort();
            ExtNatFamily::NondecreasingUnbounded { prefix }
        };
        let spec = if rng.gen_bool(0.8) {
            UltrafilterSpec::Frechet
        } else {
            let size = rng.gen_range(1..8);
            UltrafilterSpec::principal(size, rng.gen_range(0..size)).unwrap()
        };
        let engine = ultralimit(&fam, &spec).ok();
        let reference = oracle::ultralimit(&fam, &spec);
        ensure(engine == reference, || format!("case {i}: {fam:?} under {spec:?}: engine {engine:?}, oracle {reference:?}"))?;
        if let ExtNatFamily::EventuallyPeriodic { pre, period } = &fam {
            let s = BoolFamily::EventuallyPeriodic {
                pre: pre.iter().map(|v| v.is_finite()).collect(),
                period: period.iter().map(|v| v.is_finite()).collect(),
            };
            let e = filter_contains(&s, &spec).ok();
            let o = oracle::filter_contains(&s, &spec);
            ensure(e == o, || format!("case {i}: boolean projection differs: {e:?} vs {o:?}"))?;
        }
    }
    Ok("1000 random families agree with the scanning evaluator".into())
}

fn c5_ramp() -> Result<String, String> {
    let fr = UltrafilterSpec::Frechet;
    let fam = ElementFamily::prime_power_ramp(2).map_err(err)?;
    let no = Verdict::ForAllU { value: false };
    ensure(up_is_atom(&fam, &fr).map_err(err)? == no, || "2^λ is an atom".into())?;
    let mut b = Budget::default();
    for l in 0..=20 {
        let v = up_length_contains(&fam, l, &fr, &mut b).map_err(err)?;
        ensure(v == no, || format!("length {l}: {v:?}"))?;
    }
    let ha = up_in_ha(&fam, &fr, 20, &mut b).map_err(err)?;
    ensure(ha == HaOutcome::Decided { verdict: no, bound: None }, || format!("H_A: {ha:?}"))?;
    Ok("not an atom, no length ≤ 20, outside H_A".into())
}

fn lengths_true(fam: &ElementFamily, spec: &UltrafilterSpec, b: &mut Budget) -> Result<Vec<u64>, String> {
    let mut out = Vec::new();
    for l in 0..=10 {
        if up_length_contains(fam, l, spec, b).map_err(err)?.decided() == Some(&true) {
            out.push(l);
        }
    }
    Ok(out)
}

fn c6_half_factorial() -> Result<String, String> {
    let g = group(&[2]);
    let m = Monoid::block(g.clone());
    let mut b = Budget::default();
    let hf = ufact::factor::is_half_factorial_upto(&m, 10, &mut b).map_err(err)?;
    ensure(hf.holds, || "B(C_2) is not half-factorial up to 10".into())?;
    let elems = m.elements_up_to(10, &mut b).map_err(err)?;
    let fr = UltrafilterSpec::Frechet;
    let comps = Periodic::constant(m.clone());
    let mut tested = 0;
    let mut check = |fam: &ElementFamily, b: &mut Budget| -> Result<(), String> {
        let ha = up_in_ha(fam, &fr, 10, b).map_err(err)?;
        ensure(ha.verdict() == Some(&Verdict::ForAllU { value: true }), || format!("{fam:?} not in H_A"))?;
        let ls = lengths_true(fam, &fr, b)?;
        ensure(ls.len() == 1, || format!("{fam:?}: lengths {ls:?}"))?;
        tested += 1;
        Ok(())
    };
    for e in &elems {
        check(&ElementFamily::constant(m.clone(), e.clone()).map_err(err)?, &mut b)?;
    }
    // two-periodic families: under each parity class the family is constant
    for (i, e) in elems.iter().enumerate() {
        let f = &elems[(i * 7 + 3) % elems.len()];
        let fam = ElementFamily::periodic(comps.clone(), Periodic::new(vec![f.clone()], vec![e.clone(), f.clone()]).unwrap())
            .map_err(err)?;
        for r in 0..2 {
            check(&fam.restrict_arithmetic(1 + r, 2).map_err(err)?, &mut b)?;
        }
    }
    Ok(format!("{tested} families of degree ≤ 10 each have exactly one length"))
}

fn c7_transfer() -> Result<String, String> {
    let inf = ExtNat::Inf;
    let targets: Vec<Vec<(u64, ExtNat)>> = vec![
        vec![(2, ExtNat::ONE)],
        vec![(2, ExtNat::Fin(2)), (3, ExtNat::ONE)],
        vec![(2, inf)],
        vec![(3, ExtNat::ONE), (5, ExtNat::Fin(4))],
    ];
    for t in targets {
        let target: Multiset<u64> = t.iter().copied().collect();
        let r = realize_multiset_transfer(&target, &UltrafilterSpec::Frechet, None, &mut Budget::default()).map_err(err)?;
        for &(l, n) in &t {
            let row = r.rows.iter().find(|row| row.length == l).ok_or_else(|| format!("no row for {l}"))?;
            ensure(row.verdict == Verdict::ForAllU { value: n }, || format!("{t:?} at {l}: {:?}", row.verdict))?;
        }
        ensure(r.all_match, || format!("{t:?}: some length disagrees"))?;
    }
    Ok("four multisets reproduced exactly".into())
}

fn c8_realize() -> Result<String, String> {
    let target: BTreeSet<u64> = [2, 3].into();
    let c3 = group(&[3]);
    let found = realize_set_search(&c3, &target, &RealizeBounds::default(), &mut Budget::default()).map_err(err)?;
    let RealizeOutcome::Found { witness, .. } = found else {
        return Err(format!("no witness in B(C_3): {found:?}"));
    };
    let lens: BTreeSet<u64> = oracle::lengths(&c3, &witness).into_keys().collect();
    ensure(lens == target, || format!("witness {witness:?} has lengths {lens:?}"))?;
    let r = exceptional_groups(&target, 3, &RealizeBounds::default(), ufact::DEFAULT_NODE_BUDGET).map_err(err)?;
    let names: Vec<String> = r.exceptional.iter().map(|g| g.name()).collect();
    ensure(names == ["c1", "c2"] && r.budget_exceeded.is_empty(), || format!("exceptional {names:?}"))?;
    for (g, w) in &r.realized {
        let lens: BTreeSet<u64> = oracle::lengths(g, w).into_keys().collect();
        ensure(lens == target, || format!("{g}: witness {w:?} has lengths {lens:?}"))?;
    }
    Ok(format!("witness {witness:?} in B(C_3); exceptional groups {names:?}"))
}

fn c9_proto() -> Result<String, String> {
    let mut summary = Vec::new();
    for g in [group(&[2]), group(&[3]), group(&[2, 2])] {
        let mut b = Budget::default();
        let r = bg_proto_iso_check(&g, 6, &UltrafilterSpec::Frechet, &mut b).map_err(err)?;
        ensure(
            r.bijection && r.homomorphism && r.degrees_match && r.atoms_match && r.domain_count == r.image_count,
            || format!("{g}: {r:?}"),
        )?;
        let brute: usize = (0..=6).map(|len| oracle::multisets(&g, len).iter().filter(|s| oracle::sums_to_zero(&g, s)).count()).sum();
        ensure(brute == r.domain_count, || format!("{g}: {} sequences of degree ≤ 6, oracle counts {brute}", r.domain_count))?;
        let d = divisor_closed_check(&Monoid::block(g.clone()), DegreeFunction::SequenceLength, 6, &mut b).map_err(err)?;
        ensure(d.holds, || format!("{g}: divisor-closedness fails at {:?}", d.counterexample))?;
        summary.push(format!("{g}: {}={} over {} pairs", r.domain_count, r.image_count, r.pairs_checked));
    }
    Ok(summary.join("; "))
}

fn c10_gcd_gap() -> Result<String, String> {
    let mut failures = Vec::new();
    let mut covered = 0;
    for g in FiniteAbelianGroup::all_up_to_order(8) {
        let r = gcd_cover_check(&g, 4, &mut Budget::default()).map_err(err)?;
        for w in &r.witnesses {
            if let (Some(a), Some(b)) = (&w.a, &w.b) {
                let idx = |s: &Vec<Vec<u32>>| s.iter().map(|c| g.from_coords(c).unwrap()).collect::<Vec<_>>();
                let letter = g.from_coords(&w.letter).unwrap();
                let (a, b) = (idx(a), idx(b));
                ensure(g.sum(a.iter().copied()) == 0 && g.sum(b.iter().copied()) == 0, || format!("{g}: non-zero-sum witness"))?;
                ensure(oracle::gcd(&a, &b) == [letter], || format!("{g}: witness for {:?} fails", w.letter))?;
                covered += 1;
            }
        }
        for u in &r.uncovered {
            failures.push(format!("{g} letter {u:?}"));
        }
    }
    let gap = prime_power_gap(4).map_err(err)?;
    let distinct: BTreeSet<u64> = gap.primes.iter().copied().collect();
    ensure(gap.verified && distinct.len() >= 4, || format!("gap report {gap:?}"))?;
    for &r in &gap.primes {
        ensure(oracle::trial_factor(r) == [(r, 1)], || format!("{r} is not prime"))?;
        ensure(oracle::decimal_mod(&gap.difference, r) == Some(0), || format!("{r} does not divide the difference"))?;
        ensure(oracle::pow_mod(gap.p, gap.x, r) == oracle::pow_mod(gap.q, gap.y, r), || format!("orders mod {r}"))?;
    }
    if failures.is_empty() {
        Ok(format!("{covered} letters covered; {}^{} − {}^{} divisible by {:?}", gap.p, gap.x, gap.q, gap.y, gap.primes))
    } else {
        Err(format!(
            "no gcd witness for {}: every zero-sum sequence over C_2 holds the nonzero element an even number of times, \
             so B(C_2) ↪ F(C_2) is not a divisor theory; the other {covered} letters and the gap ({:?}) verify",
            failures.join(", "),
            gap.primes
        ))
    }
}

fn random_atom_int(rng: &mut impl Rng) -> Element {
    let p = *[2i64, 3, 5, 7, 11, 13].choose(rng).unwrap();
    Element::Integer(if rng.gen_bool(0.3) { -p } else { p })
}

fn random_atom_free(rng: &mut impl Rng) -> Element {
    let mut v = vec![0u64; 3];
    v[rng.gen_range(0..3)] = 1;
    Element::Exponents(v)
}

fn c11_factorial() -> Result<String, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for case in 0..200 {
        let (m, atom): (Monoid, fn(&mut ChaCha8Rng) -> Element) = if case % 2 == 0 {
            (Monoid::NonzeroIntegers, random_atom_int)
        } else {
            (Monoid::free(3), random_atom_free)
        };
        let fams: Vec<ElementFamily> = (0..rng.gen_range(1..=4))
            .map(|_| {
                if rng.gen_bool(0.4) {
                    ElementFamily::constant(m.clone(), atom(&mut rng))
                } else {
                    let pre = (0..rng.gen_range(0..3)).map(|_| atom(&mut rng)).collect();
                    let period = (0..rng.gen_range(1..4)).map(|_| atom(&mut rng)).collect();
                    ElementFamily::periodic(Periodic::constant(m.clone()), Periodic::new(pre, period).unwrap())
                }
            })
            .collect::<Result<_, _>>()
            .map_err(err)?;
        let spec = if case % 5 == 4 {
            UltrafilterSpec::principal(6, rng.gen_range(0..6)).unwrap()
        } else {
            UltrafilterSpec::Frechet
        };
        let r = factorial_uniqueness_check(&fams, &spec, &mut Budget::default()).map_err(err)?;
        ensure(r.holds, || format!("case {case}: {r:?}"))?;
        for c in &r.checks {
            // the permutation must carry each factor onto an associate in the product's factorization
            let sigma = c.permutation.as_ref().unwrap();
            let mut sorted = sigma.clone();
            sorted.sort_unstable();
            ensure(sorted == (0..fams.len()).collect::<Vec<_>>(), || format!("case {case}: σ = {sigma:?}"))?;
            if let Element::Integer(n) = c.product {
                let total: u32 = oracle::trial_factor(n.unsigned_abs()).iter().map(|&(_, e)| e).sum();
                ensure(total as usize == fams.len(), || format!("case {case}: {n} has {total} prime factors"))?;
            }
        }
    }
    Ok("200 cases, every product has one factorization class".into())
}
