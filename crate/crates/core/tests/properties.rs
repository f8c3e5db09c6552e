//! Randomized properties and oracles: text-grammar roundtrips, Gauss-style
//! multiplicativity, gcd-sampling against the exact fixed divisor, rational
//! factoring against products of screened-irreducible factors, and the
//! irreducibility test against full enumeration.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use proptest::collection::vec;
use proptest::prelude::*;

use intval_core::crt::{crt_solve_nth, CongruenceSystem};
use intval_core::intval::{
    factorizations, fixdiv, fixdiv_sampled, is_irreducible, is_member, parse_element,
    IntValElement,
};
use intval_core::poly::{parse_poly, IntPolynomial};
use intval_core::qx::factor_zx;
use intval_core::SubsetSpec;

fn poly(max_deg: usize, bound: i64) -> impl Strategy<Value = IntPolynomial> {
    vec((-bound..=bound).prop_map(BigInt::from), 1..=max_deg + 1)
        .prop_map(IntPolynomial::from_coeffs)
}

fn nonzero_poly(max_deg: usize, bound: i64) -> impl Strategy<Value = IntPolynomial> {
    poly(max_deg, bound).prop_filter("nonzero", |f| !f.is_zero())
}

/// Irreducibility over ℚ for degrees up to three, decided by elementary
/// screens only (no shared code with the factoring pipeline): linear always,
/// quadratics by non-square discriminant, cubics by rational root search.
fn screened_irreducible(f: &IntPolynomial) -> bool {
    match f.deg() {
        1 => true,
        2 => {
            let c = f.coeffs();
            let disc = &c[1] * &c[1] - BigInt::from(4) * (&c[0] * &c[2]);
            !is_square(&disc)
        }
        3 => !has_rational_root(f),
        _ => false,
    }
}

fn is_square(n: &BigInt) -> bool {
    if n.is_negative() {
        return false;
    }
    let r = n.sqrt();
    &(&r * &r) == n
}

fn has_rational_root(f: &IntPolynomial) -> bool {
    let c0 = f.coeff(0);
    if c0.is_zero() {
        return true;
    }
    let lc = f.leading_coeff();
    let d = f.deg();
    for num in small_divisors(&c0) {
        for den in small_divisors(&lc) {
            for sign in [1i64, -1] {
                // f(±num/den) scaled by den^d
                let p = &num * BigInt::from(sign);
                let mut acc = BigInt::zero();
                for (i, c) in f.coeffs().iter().enumerate() {
                    acc += c * p.pow(i as u32) * den.pow((d - i) as u32);
                }
                if acc.is_zero() {
                    return true;
                }
            }
        }
    }
    false
}

fn small_divisors(n: &BigInt) -> Vec<BigInt> {
    let n = n.abs();
    let mut out = Vec::new();
    let mut d = BigInt::from(1);
    while &d * &d <= n {
        if n.is_multiple_of(&d) {
            out.push(d.clone());
            out.push(&n / &d);
        }
        d += 1;
    }
    out
}

fn irreducible_factor() -> impl Strategy<Value = IntPolynomial> {
    poly(3, 5).prop_filter_map("screened irreducible", |f| {
        if f.is_zero() || f.is_constant() {
            return None;
        }
        let (_, _, prim) = f.primitive_decompose().ok()?;
        screened_irreducible(&prim).then_some(prim)
    })
}

fn small_subset(which: usize) -> SubsetSpec {
    match which {
        0 => SubsetSpec::integers(),
        1 => SubsetSpec::multiples_of(2).unwrap(),
        2 => SubsetSpec::multiples_of(3).unwrap(),
        _ => SubsetSpec::new(vec![
            (BigInt::from(0), BigInt::from(4)),
            (BigInt::from(1), BigInt::from(4)),
        ])
        .unwrap(),
    }
}

proptest! {
    #[test]
    fn polynomial_text_roundtrip(f in poly(6, 1000)) {
        prop_assert_eq!(parse_poly(&f.to_string()).unwrap(), f);
    }

    #[test]
    fn element_text_roundtrip(f in nonzero_poly(4, 50), b in 1i64..=60) {
        let e = IntValElement::from_fraction(&f, &BigInt::from(b)).unwrap();
        prop_assert_eq!(parse_element(&e.to_string()).unwrap(), e);
    }

    #[test]
    fn content_is_multiplicative(f in nonzero_poly(5, 30), g in nonzero_poly(5, 30)) {
        prop_assert_eq!((&f * &g).content(), f.content() * g.content());
    }

    #[test]
    fn fixed_divisors_multiply_into_products(f in nonzero_poly(4, 10), g in nonzero_poly(4, 10)) {
        let s = SubsetSpec::multiples_of(2).unwrap();
        let df = fixdiv(&s, &f).unwrap();
        let dg = fixdiv(&s, &g).unwrap();
        let dfg = fixdiv(&s, &(&f * &g)).unwrap();
        prop_assert!(dfg.is_multiple_of(&(df * dg)));
    }

    #[test]
    fn congruence_solutions_satisfy_their_systems(
        residues in vec(0i64..=200, 3),
        skip in 0u64..4,
    ) {
        let mut sys = CongruenceSystem::new();
        for (r, m) in residues.iter().zip([4i64, 9, 5]) {
            sys = sys.require(*r, m);
        }
        sys = sys.forbid(residues[0], 16);
        let mut previous: Option<BigInt> = None;
        for k in 0..=skip {
            let x = crt_solve_nth(&sys, 1_000_000, k).unwrap();
            prop_assert!(sys.satisfied_by(&x));
            prop_assert!(!(&x - BigInt::from(residues[0])).is_multiple_of(&BigInt::from(16)));
            if let Some(prev) = previous {
                prop_assert!(x > prev);
            }
            previous = Some(x);
        }
    }

    #[test]
    fn residue_class_data_is_consistent(m in 1i64..=12, which in 0usize..4) {
        let q = BigInt::from([2i64, 3, 5, 7][which]);
        let s = SubsetSpec::multiples_of(m).unwrap();
        let count = s.residue_count(&q).unwrap();
        let data = s.residues_mod(&q, 2).unwrap();
        let classes: std::collections::BTreeSet<BigInt> =
            data.residues.iter().map(|r| r.mod_floor(&q)).collect();
        prop_assert_eq!(classes.len(), count);
        let crs = s.complete_residue_system(&q, &[]).unwrap();
        prop_assert_eq!(crs.len(), count);
        let reduced: std::collections::BTreeSet<BigInt> =
            crs.iter().map(|r| r.mod_floor(&q)).collect();
        prop_assert_eq!(reduced.len(), count);
        for r in &crs {
            prop_assert!(s.contains(r));
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(512))]

    #[test]
    fn fixed_divisor_matches_gcd_sampling(f in nonzero_poly(6, 20), which in 0usize..4) {
        let s = small_subset(which);
        let exact = fixdiv(&s, &f).unwrap();
        let sampled = fixdiv_sampled(&s, &f, 64);
        prop_assert_eq!(exact, sampled);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn rational_factoring_recovers_known_factors(
        factors in vec(irreducible_factor(), 1..=3),
        constant in (-20i64..=20).prop_filter("nonzero", |c| *c != 0),
        xpow in 0usize..=2,
    ) {
        let mut product = IntPolynomial::monomial(BigInt::from(constant), xpow);
        let mut counts: BTreeMap<IntPolynomial, u64> = BTreeMap::new();
        if xpow > 0 {
            counts.insert(IntPolynomial::x(), xpow as u64);
        }
        for f in &factors {
            product = &product * f;
            *counts.entry(f.clone()).or_insert(0) += 1;
        }
        let expected: Vec<(IntPolynomial, u64)> = counts.into_iter().collect();
        let fact = factor_zx(&product).unwrap();
        prop_assert_eq!(&fact.constant, &BigInt::from(constant.abs()));
        prop_assert_eq!(fact.unit, if constant < 0 { -1 } else { 1 });
        prop_assert_eq!(&fact.factors, &expected);
        prop_assert_eq!(fact.expand(), product);
    }

    #[test]
    fn irreducible_iff_enumeration_is_singleton(f in nonzero_poly(4, 8), sel in 0usize..64) {
        let s = SubsetSpec::multiples_of(2).unwrap();
        // Any divisor of the fixed divisor is an admissible denominator, so
        // every generated element is a member.
        let divs = small_divisors(&fixdiv(&s, &f).unwrap());
        let b = divs[sel % divs.len()].clone();
        let e = IntValElement::from_fraction(&f, &b).unwrap();
        prop_assert!(is_member(&s, &e).unwrap());
        prop_assume!(!e.is_unit());
        let verdict = is_irreducible(&s, &e).unwrap();
        let facs = factorizations(&s, &e).unwrap();
        prop_assert_eq!(verdict.irreducible, facs.len() == 1 && facs[0].len() == 1);
        for fac in &facs {
            prop_assert_eq!(&fac.expand(), &e);
        }
        if let Some((w1, w2)) = verdict.witness {
            prop_assert!(is_member(&s, &w1).unwrap());
            prop_assert!(is_member(&s, &w2).unwrap());
            prop_assert_eq!(w1.mul(&w2), e);
        }
    }
}
