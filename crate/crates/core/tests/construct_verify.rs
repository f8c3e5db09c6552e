//! End-to-end runs of both construction pipelines with full certificate
//! replay, exact enumeration cross-checks, and tamper detection.

use num_bigint::BigInt;

use intval_core::constructions::verify::verify_certificate;
use intval_core::constructions::{
    construct_prescribed_lengths, construct_unbounded, Certificate,
};
use intval_core::intval::{factorizations, lengths, parse_element, IntValElement};
use intval_core::poly::{parse_poly, IntPolynomial};
use intval_core::SubsetSpec;

fn assert_all_pass(cert: &Certificate) {
    let report = verify_certificate(cert).unwrap();
    assert!(report.passed(), "verification failed:\n{report}");
}

#[test]
fn prescribed_single_length_verifies() {
    let cert = construct_prescribed_lengths(&BigInt::from(2), &[3]).unwrap();
    assert_eq!(cert.h, "(x^4)/16");
    assert_all_pass(&Certificate::PrescribedLengths(cert));
}

#[test]
fn prescribed_two_blocks_verifies() {
    let cert = construct_prescribed_lengths(&BigInt::from(2), &[1, 1]).unwrap();
    assert_eq!(cert.big_n, 2);
    assert_eq!(cert.p_list, vec!["3", "5"]);
    assert_eq!(cert.t_list, vec![3, 5]);
    assert_eq!(cert.q_list, vec!["2"]);
    let h_num = parse_poly(&cert.h_num).unwrap();
    assert_eq!(h_num.deg(), 13);
    assert_eq!(cert.predicted.len(), 2);
    assert!(cert.predicted.iter().all(|f| f.parts.len() == 2));
    assert_all_pass(&Certificate::PrescribedLengths(cert));
}

#[test]
fn prescribed_mixed_blocks_verifies() {
    let cert = construct_prescribed_lengths(&BigInt::from(2), &[1, 2]).unwrap();
    assert_eq!(cert.big_n, 4);
    assert_eq!(cert.p_list, vec!["3", "5", "7", "11"]);
    let s = SubsetSpec::multiples_of(2).unwrap();
    let h = parse_element(&cert.h).unwrap();
    let found = lengths(&s, &h).unwrap();
    assert_eq!(found.multiset(), &[2, 3]);
    assert_all_pass(&Certificate::PrescribedLengths(cert));
}

#[test]
fn unbounded_smallest_case_enumerates_exactly_two_ways() {
    let cert = construct_unbounded(&BigInt::from(2), 1).unwrap();
    assert_eq!(cert.p_list, vec!["3"]);
    assert_eq!(cert.q_list, vec!["2"]);
    let s = SubsetSpec::multiples_of(2).unwrap();
    let h = parse_element(&cert.h).unwrap();
    let x_over_p = IntValElement::from_fraction(&IntPolynomial::x(), &BigInt::from(2)).unwrap();
    let facs = factorizations(&s, &x_over_p.mul(&h)).unwrap();
    assert_eq!(facs.len(), 2, "expected exactly two factorizations");
    assert!(facs.iter().all(|f| f.len() == 2));
    assert_all_pass(&Certificate::Unbounded(cert));
}

#[test]
fn unbounded_two_primes_verifies() {
    let cert = construct_unbounded(&BigInt::from(2), 2).unwrap();
    assert_eq!(cert.p_list, vec!["3", "5"]);
    let s = SubsetSpec::multiples_of(2).unwrap();
    let h = parse_element(&cert.h).unwrap();
    let x_over_p = IntValElement::from_fraction(&IntPolynomial::x(), &BigInt::from(2)).unwrap();
    let found = lengths(&s, &x_over_p.mul(&h)).unwrap();
    assert_eq!(found.set(), vec![2, 3]);
    assert_all_pass(&Certificate::Unbounded(cert));
}

#[test]
fn unbounded_over_threes_verifies() {
    let cert = construct_unbounded(&BigInt::from(3), 1).unwrap();
    assert_eq!(cert.p_list, vec!["2"]);
    assert_eq!(cert.q_list, vec!["3"]);
    assert_all_pass(&Certificate::Unbounded(cert));
}

#[test]
fn unbounded_max_length_grows() {
    let s = SubsetSpec::multiples_of(2).unwrap();
    let x_over_p = IntValElement::from_fraction(&IntPolynomial::x(), &BigInt::from(2)).unwrap();
    let mut max_lengths = Vec::new();
    for n in 1..=3 {
        let cert = construct_unbounded(&BigInt::from(2), n).unwrap();
        let h = parse_element(&cert.h).unwrap();
        let found = lengths(&s, &x_over_p.mul(&h)).unwrap();
        let max = *found.set().last().unwrap();
        assert!(max >= n + 1);
        max_lengths.push(max);
    }
    assert!(
        max_lengths.windows(2).all(|w| w[0] < w[1]),
        "max lengths {max_lengths:?} fail to grow"
    );
}

#[test]
fn constructions_are_deterministic() {
    let a = construct_unbounded(&BigInt::from(2), 2).unwrap();
    let b = construct_unbounded(&BigInt::from(2), 2).unwrap();
    assert_eq!(
        Certificate::Unbounded(a).to_json(),
        Certificate::Unbounded(b).to_json()
    );
    let c = construct_prescribed_lengths(&BigInt::from(2), &[1, 1]).unwrap();
    let d = construct_prescribed_lengths(&BigInt::from(2), &[1, 1]).unwrap();
    assert_eq!(c, d);
}

#[test]
fn certificate_survives_json_roundtrip_and_verifies() {
    let cert = construct_prescribed_lengths(&BigInt::from(2), &[1, 1]).unwrap();
    let doc = Certificate::PrescribedLengths(cert);
    let text = doc.to_json();
    let back = Certificate::from_json(&text).unwrap();
    assert_all_pass(&back);
}

#[test]
fn tampered_e_is_rejected() {
    let mut cert = construct_prescribed_lengths(&BigInt::from(2), &[1, 1]).unwrap();
    // push e into class 0 modulo p_1^2 = 9 without disturbing any other
    // congruence: multiplying by 9 keeps residues mod 5 and mod 2 intact
    let e: BigInt = cert.e.parse().unwrap();
    cert.e = (e * BigInt::from(9)).to_string();
    let report = verify_certificate(&Certificate::PrescribedLengths(cert)).unwrap();
    assert!(!report.passed());
    let failing: Vec<&str> = report
        .checks
        .iter()
        .filter(|c| !c.pass)
        .map(|c| c.name.as_str())
        .collect();
    for expected in ["e_congruences", "root_valuations", "fixdiv_identity"] {
        assert!(failing.contains(&expected), "{expected} should fail, got {failing:?}");
    }
    let passing: Vec<&str> = report
        .checks
        .iter()
        .filter(|c| c.pass)
        .map(|c| c.name.as_str())
        .collect();
    for expected in ["prime_selection", "c_congruences"] {
        assert!(passing.contains(&expected), "{expected} should still pass");
    }
}

#[test]
fn wrong_schema_is_flagged() {
    let mut cert = construct_unbounded(&BigInt::from(3), 1).unwrap();
    cert.schema = 99;
    let report = verify_certificate(&Certificate::Unbounded(cert)).unwrap();
    assert!(!report.passed());
    assert!(report.checks.iter().any(|c| c.name == "schema" && !c.pass));
}
