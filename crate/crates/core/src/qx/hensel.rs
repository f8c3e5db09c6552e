//! Quadratic Hensel lifting of a mod-p factorization to a prime-power
//! modulus, multifactor via a recursive split of the factor list.

use super::modp::FpPoly;
use crate::poly::IntPolynomial;
use num_bigint::BigInt;
use num_integer::Integer;

fn red(f: &IntPolynomial, m: &BigInt) -> IntPolynomial {
    IntPolynomial::from_coeffs(f.coeffs().iter().map(|c| c.mod_floor(m)).collect())
}

/// Division by a monic divisor with coefficients taken mod m.
fn divrem_monic_mod(a: &IntPolynomial, div: &IntPolynomial, m: &BigInt) -> (IntPolynomial, IntPolynomial) {
    debug_assert!(div.is_monic());
    let (q, r) = a.divrem_monic(div);
    (red(&q, m), red(&r, m))
}

/// One quadratic step: from a factorization mod m to one mod m².
///
/// Invariants in and out (with m replaced by m² on the way out):
/// f ≡ g·h, s·g + t·h ≡ 1, h monic, deg f = deg g + deg h,
/// deg s < deg h, deg t < deg g.
fn hensel_step(
    m: &BigInt,
    f: &IntPolynomial,
    g: &IntPolynomial,
    h: &IntPolynomial,
    s: &IntPolynomial,
    t: &IntPolynomial,
) -> (IntPolynomial, IntPolynomial, IntPolynomial, IntPolynomial) {
    let m2 = m * m;
    let e = red(&(f - &(g * h)), &m2);
    let (q, r) = divrem_monic_mod(&(s * &e), h, &m2);
    let g1 = red(&(&(g + &(t * &e)) + &(&q * g)), &m2);
    let h1 = red(&(h + &r), &m2);
    let b = red(&(&(&(s * &g1) + &(t * &h1)) - &IntPolynomial::one()), &m2);
    let (c, d) = divrem_monic_mod(&(s * &b), &h1, &m2);
    let s1 = red(&(s - &d), &m2);
    let t1 = red(&(&(t - &(t * &b)) - &(&c * &g1)), &m2);
    (g1, h1, s1, t1)
}

/// Lift the factorization f ≡ lc(f)·∏ leaves (mod p, leaves monic, pairwise
/// coprime) to monic factors mod p^k with f ≡ lc(f)·∏ out (mod p^k).
/// Requires lc(f) invertible mod p and f squarefree mod p.
pub fn lift_factorization(p: u64, k: u32, f: &IntPolynomial, leaves: &[FpPoly]) -> Vec<IntPolynomial> {
    let target = BigInt::from(p).pow(k);
    // lift along p^(2^j) up to the first power-of-two exponent >= k
    let mut rounds = 0u32;
    while (1u32 << rounds) < k {
        rounds += 1;
    }
    let mut out = Vec::with_capacity(leaves.len());
    lift_tree(p, rounds, &red(f, &BigInt::from(p).pow(1u32 << rounds)), leaves, &mut out);
    out.into_iter().map(|u| red(&u, &target)).collect()
}

fn lift_tree(p: u64, rounds: u32, f: &IntPolynomial, leaves: &[FpPoly], out: &mut Vec<IntPolynomial>) {
    let m_final = BigInt::from(p).pow(1u32 << rounds);
    if leaves.len() == 1 {
        // f itself is the lift; normalize monic mod m_final
        let inv = invert_mod(&f.leading_coeff(), &m_final);
        out.push(red(&f.scale(&inv), &m_final));
        return;
    }
    let half = leaves.len() / 2;
    let (left, right) = leaves.split_at(half);
    let p_big = BigInt::from(p);
    let mut g = FpPoly::from_int_poly(&IntPolynomial::constant(f.leading_coeff()), p);
    for u in left {
        g = g.mul(u, p);
    }
    let mut h = FpPoly::one();
    for u in right {
        h = h.mul(u, p);
    }
    let (unit, s0, t0) = g.extended_gcd(&h, p);
    assert!(unit == FpPoly::one(), "lifted halves must be coprime mod p");
    // force deg s < deg h (keeps the Bezout identity exact mod p)
    let (q, s) = s0.divrem(&h, p);
    let t = t0.add(&q.mul(&g, p), p);
    let mut g = g.to_int_poly();
    let mut h = h.to_int_poly();
    let mut s = s.to_int_poly();
    let mut t = t.to_int_poly();
    let mut m = p_big.clone();
    for _ in 0..rounds {
        let (g1, h1, s1, t1) = hensel_step(&m, f, &g, &h, &s, &t);
        g = g1;
        h = h1;
        s = s1;
        t = t1;
        m = &m * &m;
    }
    lift_tree(p, rounds, &g, left, out);
    lift_tree(p, rounds, &h, right, out);
}

fn invert_mod(a: &BigInt, m: &BigInt) -> BigInt {
    crate::crt::mod_inverse(&a.mod_floor(m), m).expect("leading coefficient invertible mod p^k")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qx::modp::factor_squarefree_mod;
    use num_traits::Zero;
    use std::str::FromStr;

    fn ip(s: &str) -> IntPolynomial {
        IntPolynomial::from_str(s).unwrap()
    }

    fn check_lift(f: &IntPolynomial, p: u64, k: u32) {
        let leaves = factor_squarefree_mod(f, p);
        let lifted = lift_factorization(p, k, f, &leaves);
        assert_eq!(lifted.len(), leaves.len());
        let m = BigInt::from(p).pow(k);
        let mut prod = IntPolynomial::constant(f.leading_coeff());
        for u in &lifted {
            assert!(u.is_monic());
            prod = &prod * u;
        }
        let diff = f - &prod;
        assert!(
            diff.coeffs().iter().all(|c| c.mod_floor(&m).is_zero()),
            "product must match mod {}^{}",
            p,
            k
        );
    }

    #[test]
    fn lifts_two_factors() {
        check_lift(&ip("x^4 + 4"), 7, 5);
    }

    #[test]
    fn lifts_many_factors_high_power() {
        check_lift(&ip("x^11 - x"), 11, 1); // no lifting rounds at all
        check_lift(&ip("x^5 - x"), 5, 9);
    }

    #[test]
    fn lifts_non_monic() {
        check_lift(&ip("6x^4 + x^3 - 5x + 1"), 13, 6);
    }

    #[test]
    fn lifts_odd_factor_count() {
        check_lift(&ip("x^3 - x"), 7, 4);
    }
}
