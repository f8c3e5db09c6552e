//! Acceptance gate: one test per release criterion, each printing a
//! `[acceptance] criterion N: PASS/FAIL` line (visible with `--nocapture`).
//! Criteria 1 and 9 drive the binary; the rest exercise the library the way
//! a downstream consumer would.

use std::panic::{catch_unwind, resume_unwind, UnwindSafe};
use std::process::Command;
use std::str::FromStr;

use num_bigint::BigInt;

use intval_core::blockmonoid::{
    atoms_over, block_lengths, lemma24_check, parse_sequence, FiniteAbelianGroup,
};
use intval_core::constructions::verify::verify_certificate;
use intval_core::constructions::{construct_prescribed_lengths, construct_unbounded, Certificate};
use intval_core::intval::{
    factorizations, fixdiv, fixdiv_sampled, is_irreducible, is_member, lengths, parse_element,
    IntValElement,
};
use intval_core::poly::IntPolynomial;
use intval_core::SubsetSpec;

fn criterion(n: usize, label: &str, body: impl FnOnce() + UnwindSafe) {
    let outcome = catch_unwind(body);
    println!(
        "[acceptance] criterion {} ({}): {}",
        n,
        label,
        if outcome.is_ok() { "PASS" } else { "FAIL" }
    );
    if let Err(cause) = outcome {
        resume_unwind(cause);
    }
}

fn intval(args: &[&str]) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_intval"))
        .args(args)
        .output()
        .expect("binary runs");
    (
        out.status.code().expect("exit code"),
        String::from_utf8(out.stdout).expect("utf-8 stdout"),
    )
}

fn even() -> SubsetSpec {
    SubsetSpec::multiples_of(2).unwrap()
}

#[test]
fn criterion_1_single_block_is_a_prime_power() {
    criterion(1, "single block: x^4/16 with one length-4 factorization", || {
        let (code, stdout) = intval(&["construct", "lengths", "--p", "2", "--m", "3"]);
        assert_eq!(code, 0);
        let cert = Certificate::from_json(&stdout).unwrap();
        let h = match &cert {
            Certificate::PrescribedLengths(c) => c.h.clone(),
            _ => panic!("wrong certificate kind"),
        };
        assert_eq!(h, "(x^4)/16");

        let facs = factorizations(&even(), &parse_element(&h).unwrap()).unwrap();
        assert_eq!(facs.len(), 1);
        assert_eq!(facs[0].len(), 4);
    });
}

#[test]
fn criterion_2_two_equal_blocks() {
    criterion(2, "two blocks m = (1,1): degree-13 witness, lengths {2,2}", || {
        let cert = construct_prescribed_lengths(&BigInt::from(2), &[1, 1]).unwrap();
        assert_eq!(cert.big_n, 2);
        assert_eq!(cert.p_list, vec!["3", "5"]);
        let h = parse_element(&cert.h).unwrap();
        assert_eq!(h.poly().deg(), 13);

        let report = verify_certificate(&Certificate::PrescribedLengths(cert)).unwrap();
        assert!(report.passed(), "{report}");

        let facs = factorizations(&even(), &h).unwrap();
        assert_eq!(facs.len(), 2);
        assert_eq!(lengths(&even(), &h).unwrap().multiset(), &[2, 2]);
    });
}

#[test]
fn criterion_3_two_unequal_blocks() {
    criterion(3, "two blocks m = (1,2): lengths {2,3}", || {
        let cert = construct_prescribed_lengths(&BigInt::from(2), &[1, 2]).unwrap();
        assert_eq!(cert.big_n, 4);
        let h = parse_element(&cert.h).unwrap();

        let report = verify_certificate(&Certificate::PrescribedLengths(cert)).unwrap();
        assert!(report.passed(), "{report}");

        let facs = factorizations(&even(), &h).unwrap();
        assert_eq!(facs.len(), 2);
        assert_eq!(lengths(&even(), &h).unwrap().multiset(), &[2, 3]);
    });
}

#[test]
fn criterion_4_unbounded_witness_family() {
    criterion(4, "witness family n = 1..3: verified, max length grows", || {
        let x_half = parse_element("(x)/2").unwrap();
        let mut max_lengths = Vec::new();
        for n in 1..=3 {
            let cert = construct_unbounded(&BigInt::from(2), n).unwrap();
            let h = parse_element(&cert.h).unwrap();
            let report = verify_certificate(&Certificate::Unbounded(cert)).unwrap();
            assert!(report.passed(), "n = {n}:\n{report}");

            let product = x_half.mul(&h);
            let ls = lengths(&even(), &product).unwrap();
            assert!(ls.set().contains(&(n + 1)), "missing length {} at n = {n}", n + 1);
            let max = *ls.multiset().last().unwrap();
            assert!(max >= n + 1);
            max_lengths.push(max);
        }
        assert!(max_lengths.windows(2).all(|w| w[0] < w[1]), "{max_lengths:?}");
    });
}

#[test]
fn criterion_5_sampling_oracle_agreement() {
    criterion(5, "500 random fixed divisors match the gcd sampling oracle", || {
        let subsets = [
            SubsetSpec::integers(),
            even(),
            SubsetSpec::multiples_of(3).unwrap(),
            SubsetSpec::from_str("1+4Z").unwrap(),
        ];
        let mut rng = 0x9e3779b97f4a7c15u64;
        let mut step = move || {
            rng ^= rng << 13;
            rng ^= rng >> 7;
            rng ^= rng << 17;
            rng
        };
        let mut done = 0;
        while done < 500 {
            let deg = (step() % 7) as usize;
            let coeffs: Vec<BigInt> = (0..=deg)
                .map(|_| BigInt::from((step() % 41) as i64 - 20))
                .collect();
            let g = IntPolynomial::from_coeffs(coeffs);
            if g.is_zero() {
                continue;
            }
            let s = &subsets[done % subsets.len()];
            assert_eq!(
                fixdiv(s, &g).unwrap(),
                fixdiv_sampled(s, &g, 64),
                "disagreement for {g} over {s}"
            );
            done += 1;
        }
    });
}

#[test]
fn criterion_6_irreducibility_against_enumeration() {
    criterion(6, "split products of linear factors: test agrees with enumeration", || {
        let s = even();
        let roots: Vec<i64> = (-6..=6).collect();
        let mut stack: Vec<Vec<i64>> = roots.iter().map(|r| vec![*r]).collect();
        let mut checked = 0usize;
        while let Some(pick) = stack.pop() {
            if pick.len() < 4 {
                let last = *pick.last().unwrap();
                for r in roots.iter().filter(|r| **r >= last) {
                    let mut next = pick.clone();
                    next.push(*r);
                    stack.push(next);
                }
            }
            let mut g = IntPolynomial::one();
            for r in &pick {
                g = &g * &IntPolynomial::linear_root(&BigInt::from(*r));
            }
            let d = fixdiv(&s, &g).unwrap();
            let e = IntValElement::from_fraction(&g, &d).unwrap();
            let verdict = is_irreducible(&s, &e).unwrap().irreducible;
            let facs = factorizations(&s, &e).unwrap();
            assert_eq!(
                verdict,
                facs.len() == 1 && facs[0].len() == 1,
                "disagreement for {e}"
            );
            checked += 1;
        }
        // all nonempty root multisets from [-6, 6] of size <= 4
        assert_eq!(checked, 13 + 91 + 455 + 1820);
    });
}

#[test]
fn criterion_7_membership_and_the_split_of_x() {
    criterion(7, "x splits over 2Z but not over Z; cubic membership flips with S", || {
        let x = parse_element("x").unwrap();
        assert!(is_irreducible(&SubsetSpec::integers(), &x).unwrap().irreducible);
        assert_eq!(fixdiv(&SubsetSpec::integers(), x.poly()).unwrap(), BigInt::from(1));
        assert!(!is_irreducible(&even(), &x).unwrap().irreducible);
        assert_eq!(lengths(&even(), &x).unwrap().set(), vec![2]);

        let cubic = parse_element("(x^3 + 2*x^2 + 2*x + 2)/2").unwrap();
        assert!(is_member(&even(), &cubic).unwrap());
        assert!(!is_member(&SubsetSpec::integers(), &cubic).unwrap());
        assert!(!is_member(&SubsetSpec::multiples_of(3).unwrap(), &cubic).unwrap());
    });
}

#[test]
fn criterion_8_zero_sum_concatenation_laws() {
    criterion(8, "concatenation laws for all atom pairs over small groups", || {
        let mut groups: Vec<FiniteAbelianGroup> =
            (2..=6).map(|n| FiniteAbelianGroup::cyclic(n).unwrap()).collect();
        groups.push(FiniteAbelianGroup::from_str("Z2xZ2").unwrap());
        for g in &groups {
            let atoms = atoms_over(g, &g.nonzero_elements(), g.atom_length_bound()).unwrap();
            for u in &atoms {
                for v in &atoms {
                    let report = lemma24_check(u, v).unwrap();
                    assert!(report.conforms(), "pair {u}, {v}");
                }
            }
        }

        // reach law: sup over atoms U' of max L(U·U') = |U|, U' over the
        // full group including the zero singleton
        for n in 2..=5 {
            let g = FiniteAbelianGroup::cyclic(n).unwrap();
            let star = atoms_over(&g, &g.nonzero_elements(), g.atom_length_bound()).unwrap();
            let all = atoms_over(&g, &g.elements(), g.atom_length_bound()).unwrap();
            for u in &star {
                let reach = all
                    .iter()
                    .map(|v| *block_lengths(&u.concat(v).unwrap()).unwrap().last().unwrap())
                    .max()
                    .unwrap();
                assert_eq!(reach, u.len(), "reach of {u} over Z{n}");
            }
        }

        let z3 = FiniteAbelianGroup::cyclic(3).unwrap();
        let uv = parse_sequence(&z3, "[1, 1, 1, 2, 2, 2]").unwrap();
        assert_eq!(block_lengths(&uv).unwrap(), vec![2, 3]);
    });
}

#[test]
fn criterion_9_tampering_is_detected_and_localized() {
    criterion(9, "tampered congruence datum fails verification locally", || {
        let cert = construct_prescribed_lengths(&BigInt::from(2), &[1, 1]).unwrap();
        let mut doc: serde_json::Value = serde_json::from_str(
            &Certificate::PrescribedLengths(cert).to_json(),
        )
        .unwrap();
        // push e into residue class 0 mod p_1^2 = 9; its class mod p_1 is kept
        let e: i64 = doc["e"].as_str().unwrap().parse().unwrap();
        doc["e"] = serde_json::Value::String((e * 9).to_string());

        let dir = std::env::temp_dir().join(format!("intval-acceptance-{}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("tampered.json");
        std::fs::write(&path, serde_json::to_string(&doc).unwrap()).unwrap();

        let (code, stdout) = intval(&["verify", path.to_str().unwrap(), "--json"]);
        assert_eq!(code, 3);
        let report: serde_json::Value = serde_json::from_str(&stdout).unwrap();
        assert_eq!(report["passed"], false);
        let checks = report["checks"].as_array().unwrap();
        let status = |name: &str| {
            checks
                .iter()
                .find(|c| c["name"] == name)
                .unwrap_or_else(|| panic!("no check named {name}"))["pass"]
                .as_bool()
                .unwrap()
        };
        // the mutated congruence datum is flagged where it is checked...
        assert!(!status("e_congruences"));
        assert!(!status("root_valuations"));
        // ...while untouched data still replays cleanly
        assert!(status("schema"));
        assert!(status("prime_selection"));
        assert!(status("c_congruences"));

        std::fs::remove_dir_all(&dir).ok();
    });
}
