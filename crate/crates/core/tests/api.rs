use serde_json::json;

use ufact::filter::{up_is_atom, up_length_multiplicity, UltrafilterSpec, Verdict};
use ufact::json::{decode_element, encode_element, family_from_json, family_to_json, parse_element, parse_family};
use ufact::{Budget, ExtNat, Monoid};

#[test]
fn elements_round_trip_through_json() {
    let m: Monoid = "bg:c2xc2".parse().unwrap();
    let e = parse_element(&m, "[0,1],[1,0],[1,1]").unwrap();
    let v = encode_element(&m, &e);
    assert_eq!(v, json!({"terms": [[0, 1], [1, 0], [1, 1]]}));
    assert_eq!(decode_element(&m, &v).unwrap(), e);
}

#[test]
fn families_round_trip_through_json() {
    for text in ["prime_power_ramp:3", "truncation_ramp:2=2,3=inf"] {
        let f = parse_family(text).unwrap();
        let v = family_to_json(&f);
        assert_eq!(family_to_json(&family_from_json(&v).unwrap()), v);
    }
}

#[test]
fn truncation_ramp_transfers_its_target() {
    let f = parse_family("truncation_ramp:2=2,3=inf").unwrap();
    let spec = UltrafilterSpec::Frechet;
    let mut b = Budget::default();
    let two = up_length_multiplicity(&f, 2, &spec, &mut b).unwrap();
    let three = up_length_multiplicity(&f, 3, &spec, &mut b).unwrap();
    assert_eq!(two, Verdict::ForAllU { value: ExtNat::Fin(2) });
    assert_eq!(three, Verdict::ForAllU { value: ExtNat::Inf });
    assert_eq!(up_is_atom(&f, &spec).unwrap(), Verdict::ForAllU { value: false });
}
