//! Dense polynomial arithmetic over F_p for word-sized odd primes, plus
//! squarefree distinct-degree / equal-degree factorization. Only what the
//! lift-and-recombine pipeline needs; inputs here are always squarefree.

use crate::poly::IntPolynomial;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;

/// Ascending coefficients in [0, p), no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FpPoly {
    pub coeffs: Vec<u64>,
}

fn mulmod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn powmod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1u64;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = mulmod(r, a, p);
        }
        a = mulmod(a, a, p);
        e >>= 1;
    }
    r
}

fn invmod(a: u64, p: u64) -> u64 {
    debug_assert!(a % p != 0);
    powmod(a, p - 2, p)
}

impl FpPoly {
    pub fn from_int_poly(f: &IntPolynomial, p: u64) -> FpPoly {
        let m = BigInt::from(p);
        let coeffs = f
            .coeffs()
            .iter()
            .map(|c| c.mod_floor(&m).to_u64().unwrap())
            .collect();
        FpPoly { coeffs }.trimmed()
    }

    pub fn to_int_poly(&self) -> IntPolynomial {
        IntPolynomial::from_coeffs(self.coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    fn trimmed(mut self) -> FpPoly {
        while self.coeffs.last() == Some(&0) {
            self.coeffs.pop();
        }
        self
    }

    pub fn zero() -> FpPoly {
        FpPoly { coeffs: vec![] }
    }

    pub fn one() -> FpPoly {
        FpPoly { coeffs: vec![1] }
    }

    pub fn x() -> FpPoly {
        FpPoly { coeffs: vec![0, 1] }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    /// Degree; panics on zero (callers guard).
    pub fn deg(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn lead(&self) -> u64 {
        *self.coeffs.last().unwrap()
    }

    pub fn monic(&self, p: u64) -> FpPoly {
        if self.is_zero() || self.lead() == 1 {
            return self.clone();
        }
        let inv = invmod(self.lead(), p);
        FpPoly { coeffs: self.coeffs.iter().map(|&c| mulmod(c, inv, p)).collect() }
    }

    pub fn add(&self, other: &FpPoly, p: u64) -> FpPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = vec![0u64; n];
        for (i, slot) in out.iter_mut().enumerate() {
            let a = self.coeffs.get(i).copied().unwrap_or(0);
            let b = other.coeffs.get(i).copied().unwrap_or(0);
            *slot = (a + b) % p;
        }
        FpPoly { coeffs: out }.trimmed()
    }

    pub fn sub(&self, other: &FpPoly, p: u64) -> FpPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = vec![0u64; n];
        for (i, slot) in out.iter_mut().enumerate() {
            let a = self.coeffs.get(i).copied().unwrap_or(0);
            let b = other.coeffs.get(i).copied().unwrap_or(0);
            *slot = (a + p - b) % p;
        }
        FpPoly { coeffs: out }.trimmed()
    }

    pub fn mul(&self, other: &FpPoly, p: u64) -> FpPoly {
        if self.is_zero() || other.is_zero() {
            return FpPoly::zero();
        }
        let mut out = vec![0u64; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] = (out[i + j] + mulmod(a, b, p)) % p;
            }
        }
        FpPoly { coeffs: out }.trimmed()
    }

    pub fn scale(&self, c: u64, p: u64) -> FpPoly {
        FpPoly { coeffs: self.coeffs.iter().map(|&a| mulmod(a, c, p)).collect() }.trimmed()
    }

    pub fn divrem(&self, div: &FpPoly, p: u64) -> (FpPoly, FpPoly) {
        assert!(!div.is_zero());
        if self.is_zero() || self.coeffs.len() < div.coeffs.len() {
            return (FpPoly::zero(), self.clone());
        }
        let inv = invmod(div.lead(), p);
        let mut rem = self.coeffs.clone();
        let dq = self.coeffs.len() - div.coeffs.len();
        let mut quo = vec![0u64; dq + 1];
        for k in (0..=dq).rev() {
            let top = rem[k + div.deg()];
            if top == 0 {
                continue;
            }
            let q = mulmod(top, inv, p);
            quo[k] = q;
            for (j, &d) in div.coeffs.iter().enumerate() {
                let idx = k + j;
                rem[idx] = (rem[idx] + p - mulmod(q, d, p)) % p;
            }
        }
        rem.truncate(div.deg());
        (FpPoly { coeffs: quo }.trimmed(), FpPoly { coeffs: rem }.trimmed())
    }

    pub fn rem(&self, div: &FpPoly, p: u64) -> FpPoly {
        self.divrem(div, p).1
    }

    pub fn gcd(&self, other: &FpPoly, p: u64) -> FpPoly {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b, p);
            a = b;
            b = r;
        }
        a.monic(p)
    }

    /// (g, s, t) with s*self + t*other = g = gcd, all monic-normalized g.
    pub fn extended_gcd(&self, other: &FpPoly, p: u64) -> (FpPoly, FpPoly, FpPoly) {
        let (mut r0, mut r1) = (self.clone(), other.clone());
        let (mut s0, mut s1) = (FpPoly::one(), FpPoly::zero());
        let (mut t0, mut t1) = (FpPoly::zero(), FpPoly::one());
        while !r1.is_zero() {
            let (q, r) = r0.divrem(&r1, p);
            let s = s0.sub(&q.mul(&s1, p), p);
            let t = t0.sub(&q.mul(&t1, p), p);
            r0 = r1;
            r1 = r;
            s0 = s1;
            s1 = s;
            t0 = t1;
            t1 = t;
        }
        if r0.is_zero() {
            return (r0, s0, t0);
        }
        let inv = invmod(r0.lead(), p);
        (r0.scale(inv, p), s0.scale(inv, p), t0.scale(inv, p))
    }

    pub fn derivative(&self, p: u64) -> FpPoly {
        if self.coeffs.len() <= 1 {
            return FpPoly::zero();
        }
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, &c)| mulmod(c, (i as u64) % p, p))
            .collect();
        FpPoly { coeffs }.trimmed()
    }

    /// self^e mod md, with a big-integer exponent.
    pub fn pow_mod(&self, e: &BigInt, md: &FpPoly, p: u64) -> FpPoly {
        let mut base = self.rem(md, p);
        let mut result = FpPoly::one();
        for i in 0..e.bits() {
            if e.bit(i) {
                result = result.mul(&base, p).rem(md, p);
            }
            base = base.mul(&base, p).rem(md, p);
        }
        result
    }
}

/// True iff f mod p keeps full degree and is squarefree there.
pub fn squarefree_mod(f: &IntPolynomial, p: u64) -> bool {
    let fp = FpPoly::from_int_poly(f, p);
    if fp.is_zero() || fp.deg() != f.deg() {
        return false;
    }
    let d = fp.derivative(p);
    if d.is_zero() {
        return false;
    }
    fp.gcd(&d, p).is_constant()
}

/// Monic irreducible factors of a squarefree monic-normalizable f mod p
/// (p odd), sorted for determinism. Multiplicities are all 1 by assumption.
pub fn factor_squarefree_mod(f: &IntPolynomial, p: u64) -> Vec<FpPoly> {
    assert!(p > 2);
    let fp = FpPoly::from_int_poly(f, p).monic(p);
    let mut out = Vec::new();
    // distinct-degree stage
    let mut rest = fp.clone();
    let mut frob = FpPoly::x().pow_mod(&BigInt::from(p), &fp, p); // x^(p^d) mod f, iterated
    let mut d = 1usize;
    while !rest.is_constant() && 2 * d <= rest.deg() {
        let gap = frob.sub(&FpPoly::x(), p);
        let g = gap.gcd(&rest, p);
        if !g.is_constant() {
            split_equal_degree(&g, d, p, &mut out);
            rest = rest.divrem(&g, p).0;
        }
        d += 1;
        frob = frob.pow_mod(&BigInt::from(p), &fp, p);
    }
    if !rest.is_constant() {
        out.push(rest);
    }
    out.sort_by(|a, b| a.coeffs.len().cmp(&b.coeffs.len()).then(a.coeffs.cmp(&b.coeffs)));
    out
}

/// Deterministic equal-degree splitting: every irreducible factor of g has
/// degree d. Sweeps shift polynomials T in a fixed order and splits off
/// gcd(T^((p^d-1)/2) - 1, g); over the full sweep of polynomials of degree
/// < 2d some T separates any pair of distinct factors, so this terminates.
fn split_equal_degree(g: &FpPoly, d: usize, p: u64, out: &mut Vec<FpPoly>) {
    if g.deg() == d {
        out.push(g.clone());
        return;
    }
    let e = (BigInt::from(p).pow(d as u32) - 1) / 2;
    for idx in 0u64.. {
        let t = shift_candidate(idx, d, p);
        let w = t.pow_mod(&e, g, p).sub(&FpPoly::one(), p).gcd(g, p);
        if !w.is_constant() && w.deg() < g.deg() {
            let rest = g.divrem(&w, p).0;
            split_equal_degree(&w, d, p, out);
            split_equal_degree(&rest, d, p, out);
            return;
        }
    }
    unreachable!("equal-degree sweep exhausted");
}

/// idx-th polynomial in the sweep x, x+1, …, x+(p-1), x^2, x^2+1, …:
/// monic of degree >= 1 with the remaining coefficients counting in base p.
fn shift_candidate(idx: u64, d: usize, p: u64) -> FpPoly {
    let mut deg = 1usize;
    let mut idx = idx as u128;
    loop {
        let count = (p as u128).pow(deg as u32);
        if idx < count {
            let mut coeffs = vec![0u64; deg + 1];
            coeffs[deg] = 1;
            let mut v = idx;
            for c in coeffs.iter_mut().take(deg) {
                *c = (v % p as u128) as u64;
                v /= p as u128;
            }
            return FpPoly { coeffs }.trimmed();
        }
        idx -= count;
        deg += 1;
        assert!(deg < 2 * d.max(1), "separating polynomial must exist below degree 2d");
    }
}
