//! Arbitrary-precision integer utilities: p-adic valuation, primality,
//! prime iteration and deterministic integer factorization.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use std::collections::BTreeMap;

/// Largest k with q^k | n, or `None` for n = 0 (infinite valuation).
///
/// q must be >= 2; it does not have to be prime, but every internal caller
/// passes a prime.
pub fn valuation(q: &BigInt, n: &BigInt) -> Option<u64> {
    assert!(q >= &BigInt::from(2), "valuation base must be >= 2");
    if n.is_zero() {
        return None;
    }
    let mut k = 0u64;
    let mut rest = n.abs();
    loop {
        let (d, r) = rest.div_rem(q);
        if !r.is_zero() {
            return Some(k);
        }
        k += 1;
        rest = d;
    }
}

/// Valuation capped at `cap`: returns min(v_q(n), cap), with n = 0 mapping
/// to `cap`. Avoids unbounded division loops when only a bounded answer
/// matters.
pub fn valuation_capped(q: &BigInt, n: &BigInt, cap: u64) -> u64 {
    if n.is_zero() {
        return cap;
    }
    let mut k = 0u64;
    let mut rest = n.abs();
    while k < cap {
        let (d, r) = rest.div_rem(q);
        if !r.is_zero() {
            break;
        }
        k += 1;
        rest = d;
    }
    k
}

const SMALL_PRIMES: [u32; 25] = [
    2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97,
];

/// Deterministic Miller-Rabin. The fixed base set decides correctly for all
/// n < 3.3e24, which covers every integer this crate manufactures itself;
/// beyond that it is an extremely strong probable-prime test.
pub fn is_prime(n: &BigInt) -> bool {
    if n < &BigInt::from(2) {
        return false;
    }
    for &p in &SMALL_PRIMES {
        let p = BigInt::from(p);
        if n == &p {
            return true;
        }
        if n.is_multiple_of(&p) {
            return false;
        }
    }
    // n - 1 = d * 2^s with d odd
    let one = BigInt::one();
    let n_minus_1 = n - &one;
    let s = valuation(&BigInt::from(2), &n_minus_1).unwrap();
    let d = &n_minus_1 >> s;
    'bases: for &a in &[2u32, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let a = BigInt::from(a);
        let mut x = a.modpow(&d, n);
        if x.is_one() || x == n_minus_1 {
            continue;
        }
        for _ in 1..s {
            x = x.modpow(&BigInt::from(2), n);
            if x == n_minus_1 {
                continue 'bases;
            }
        }
        return false;
    }
    true
}

/// Smallest prime strictly greater than n.
pub fn next_prime(n: &BigInt) -> BigInt {
    let mut c: BigInt = n + 1;
    if c < BigInt::from(2) {
        return BigInt::from(2);
    }
    if c.is_even() && c != BigInt::from(2) {
        c += 1;
    }
    while !is_prime(&c) {
        c += 2;
    }
    c
}

/// Ascending iterator over all primes: 2, 3, 5, 7, ...
pub fn primes() -> impl Iterator<Item = BigInt> {
    let mut cur = BigInt::one();
    std::iter::from_fn(move || {
        cur = next_prime(&cur);
        Some(cur.clone())
    })
}

/// Prime factorization of |n| as prime -> exponent, for n != 0.
///
/// Trial division by small primes, then deterministic Pollard rho (Brent
/// variant with increments c = 1, 2, 3, ...) on what remains.
pub fn factor_int(n: &BigInt) -> BTreeMap<BigInt, u64> {
    assert!(!n.is_zero(), "cannot factor 0");
    let mut out = BTreeMap::new();
    let mut rest = n.abs();
    if rest.is_one() {
        return out;
    }
    let mut p = BigInt::from(2);
    let limit = BigInt::from(100_000u32);
    while &p * &p <= rest && p <= limit {
        if rest.is_multiple_of(&p) {
            let mut k = 0u64;
            while rest.is_multiple_of(&p) {
                rest /= &p;
                k += 1;
            }
            out.insert(p.clone(), k);
        }
        p = next_prime(&p);
    }
    if !rest.is_one() {
        let mut stack = vec![rest];
        while let Some(m) = stack.pop() {
            if m.is_one() {
                continue;
            }
            if is_prime(&m) {
                *out.entry(m).or_insert(0) += 1;
                continue;
            }
            let d = pollard_rho(&m);
            stack.push(&m / &d);
            stack.push(d);
        }
    }
    out
}

/// Nontrivial factor of composite odd m via Brent's cycle-finding rho,
/// deterministic parameter sweep.
fn pollard_rho(m: &BigInt) -> BigInt {
    let one = BigInt::one();
    for c in 1u32.. {
        let c = BigInt::from(c);
        let f = |x: &BigInt| (x * x + &c) % m;
        let mut x = BigInt::from(2);
        let mut y = x.clone();
        let mut d = one.clone();
        while d.is_one() {
            x = f(&x);
            y = f(&f(&y));
            d = (&x - &y).abs().gcd(m);
        }
        if &d != m {
            return d;
        }
    }
    unreachable!()
}

/// q^k as a BigInt.
pub fn big_pow(q: &BigInt, k: u64) -> BigInt {
    q.pow(k as u32)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bi(n: i64) -> BigInt {
        BigInt::from(n)
    }

    #[test]
    fn valuation_examples() {
        assert_eq!(valuation(&bi(2), &bi(144)), Some(4));
        assert_eq!(valuation(&bi(3), &bi(144)), Some(2));
        assert_eq!(valuation(&bi(5), &bi(144)), Some(0));
        assert_eq!(valuation(&bi(2), &bi(0)), None);
        assert_eq!(valuation(&bi(7), &bi(-49)), Some(2));
    }

    #[test]
    fn valuation_capped_matches() {
        assert_eq!(valuation_capped(&bi(2), &bi(144), 10), 4);
        assert_eq!(valuation_capped(&bi(2), &bi(144), 3), 3);
        assert_eq!(valuation_capped(&bi(2), &bi(0), 5), 5);
    }

    #[test]
    fn primality_small() {
        let primes: Vec<i64> = (0..60).filter(|&n| is_prime(&bi(n))).collect();
        assert_eq!(primes, vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59]);
    }

    #[test]
    fn primality_larger() {
        assert!(is_prime(&bi(1_000_000_007)));
        assert!(!is_prime(&bi(1_000_000_007i64 * 998_244_353)));
        assert!(is_prime(&BigInt::parse_bytes(b"170141183460469231731687303715884105727", 10).unwrap()));
    }

    #[test]
    fn factor_roundtrip() {
        for n in [1i64, 2, 12, 144, 1155, 2 * 3 * 5 * 7 * 11 * 13, 1_000_000_007, 600851475143] {
            let f = factor_int(&bi(n));
            let mut prod = BigInt::one();
            for (p, k) in &f {
                assert!(is_prime(p));
                prod *= big_pow(p, *k);
            }
            assert_eq!(prod, bi(n));
        }
    }

    #[test]
    fn prime_iterator_front() {
        let front: Vec<BigInt> = primes().take(6).collect();
        assert_eq!(front, vec![bi(2), bi(3), bi(5), bi(7), bi(11), bi(13)]);
    }
}
