//! Dense univariate polynomials over Z with arbitrary-precision
//! coefficients, plus the text grammar used everywhere (CLI arguments,
//! certificate JSON, Display).
//!
//! The zero polynomial is representable (empty coefficient vector) because
//! ring arithmetic needs it, but every operation downstream that requires a
//! nonzero input rejects it explicitly.

use crate::arith::valuation;
use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

/// Polynomial in Z[x], coefficients ascending by degree, no trailing zeros.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntPolynomial {
    coeffs: Vec<BigInt>,
}

impl IntPolynomial {
    pub fn from_coeffs(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().map_or(false, |c| c.is_zero()) {
            coeffs.pop();
        }
        IntPolynomial { coeffs }
    }

    pub fn zero() -> Self {
        IntPolynomial { coeffs: vec![] }
    }

    pub fn one() -> Self {
        IntPolynomial::constant(BigInt::one())
    }

    pub fn x() -> Self {
        IntPolynomial::from_coeffs(vec![BigInt::zero(), BigInt::one()])
    }

    pub fn constant(c: BigInt) -> Self {
        IntPolynomial::from_coeffs(vec![c])
    }

    /// c * x^k
    pub fn monomial(c: BigInt, k: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); k];
        coeffs.push(c);
        IntPolynomial::from_coeffs(coeffs)
    }

    /// x - r
    pub fn linear_root(r: &BigInt) -> Self {
        IntPolynomial::from_coeffs(vec![-r, BigInt::one()])
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    /// None for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Degree with zero treated as 0; convenient where zero was already
    /// excluded.
    pub fn deg(&self) -> usize {
        self.degree().unwrap_or(0)
    }

    pub fn leading_coeff(&self) -> BigInt {
        self.coeffs.last().cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last().map_or(false, |c| c.is_one())
    }

    /// Horner evaluation.
    pub fn eval(&self, x: &BigInt) -> BigInt {
        let mut acc = BigInt::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn derivative(&self) -> IntPolynomial {
        if self.coeffs.len() <= 1 {
            return IntPolynomial::zero();
        }
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c * BigInt::from(i))
            .collect();
        IntPolynomial::from_coeffs(coeffs)
    }

    pub fn scale(&self, c: &BigInt) -> IntPolynomial {
        if c.is_zero() {
            return IntPolynomial::zero();
        }
        IntPolynomial::from_coeffs(self.coeffs.iter().map(|a| a * c).collect())
    }

    /// Multiply by x^k.
    pub fn shift_up(&self, k: usize) -> IntPolynomial {
        if self.is_zero() {
            return IntPolynomial::zero();
        }
        let mut coeffs = vec![BigInt::zero(); k];
        coeffs.extend_from_slice(&self.coeffs);
        IntPolynomial::from_coeffs(coeffs)
    }

    /// gcd of all coefficients, nonnegative; 0 for the zero polynomial.
    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for c in &self.coeffs {
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
        g
    }

    /// Split into (unit, content, primitive part): self = unit * content * prim,
    /// where unit is +1/-1, content > 0, and prim is primitive with positive
    /// leading coefficient. Errors on the zero polynomial.
    pub fn primitive_decompose(&self) -> Result<(i8, BigInt, IntPolynomial)> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let content = self.content();
        let unit: i8 = if self.leading_coeff().is_negative() { -1 } else { 1 };
        let div = if unit < 0 { -&content } else { content.clone() };
        let coeffs = self.coeffs.iter().map(|c| c / &div).collect();
        Ok((unit, content, IntPolynomial::from_coeffs(coeffs)))
    }

    /// Primitive part with positive leading coefficient.
    pub fn primitive_part(&self) -> Result<IntPolynomial> {
        Ok(self.primitive_decompose()?.2)
    }

    /// Exact division over Z[x]: Some(q) iff self = d * q with q in Z[x].
    pub fn divide_exact(&self, d: &IntPolynomial) -> Option<IntPolynomial> {
        assert!(!d.is_zero(), "division by zero polynomial");
        if self.is_zero() {
            return Some(IntPolynomial::zero());
        }
        let (dn, dd) = (self.deg(), d.deg());
        if dn < dd {
            return None;
        }
        let mut rem = self.coeffs.clone();
        let mut quot = vec![BigInt::zero(); dn - dd + 1];
        let dlc = d.leading_coeff();
        for i in (0..=dn - dd).rev() {
            let top = std::mem::take(&mut rem[i + dd]);
            if top.is_zero() {
                continue;
            }
            let (q, r) = top.div_rem(&dlc);
            if !r.is_zero() {
                return None;
            }
            for (j, dc) in d.coeffs.iter().enumerate().take(dd) {
                let t = dc * &q;
                rem[i + j] -= t;
            }
            quot[i] = q;
        }
        if rem.iter().any(|c| !c.is_zero()) {
            return None;
        }
        Some(IntPolynomial::from_coeffs(quot))
    }

    /// Division with remainder by a monic divisor (exact over Z).
    pub fn divrem_monic(&self, d: &IntPolynomial) -> (IntPolynomial, IntPolynomial) {
        assert!(d.is_monic(), "divrem_monic needs a monic divisor");
        let dd = d.deg();
        if self.is_zero() || self.deg() < dd {
            return (IntPolynomial::zero(), self.clone());
        }
        let dn = self.deg();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![BigInt::zero(); dn - dd + 1];
        for i in (0..=dn - dd).rev() {
            let q = std::mem::take(&mut rem[i + dd]);
            if q.is_zero() {
                continue;
            }
            for (j, dc) in d.coeffs.iter().enumerate().take(dd) {
                let t = dc * &q;
                rem[i + j] -= t;
            }
            quot[i] = q;
        }
        (IntPolynomial::from_coeffs(quot), IntPolynomial::from_coeffs(rem))
    }

    /// Pseudo-remainder: lc(d)^(deg self - deg d + 1) * self = q*d + rem.
    pub fn pseudo_rem(&self, d: &IntPolynomial) -> IntPolynomial {
        assert!(!d.is_zero());
        if self.is_zero() || self.deg() < d.deg() {
            return self.clone();
        }
        let delta = self.deg() - d.deg() + 1;
        let scaled = self.scale(&d.leading_coeff().pow(delta as u32));
        let dd = d.deg();
        let dn = scaled.deg();
        let mut rem = scaled.coeffs;
        let dlc = d.leading_coeff();
        for i in (0..=dn - dd).rev() {
            let top = std::mem::take(&mut rem[i + dd]);
            if top.is_zero() {
                continue;
            }
            let q = &top / &dlc; // exact by the pre-scaling
            debug_assert!((&top % &dlc).is_zero());
            for (j, dc) in d.coeffs.iter().enumerate().take(dd) {
                let t = dc * &q;
                rem[i + j] -= t;
            }
        }
        IntPolynomial::from_coeffs(rem)
    }

    /// 2-norm squared of the coefficient vector.
    pub fn norm2_sq(&self) -> BigInt {
        self.coeffs.iter().map(|c| c * c).sum()
    }

    /// Largest k with q^k dividing every value of self (equivalently its
    /// content), i.e. v_q(content); None if self is zero.
    pub fn content_valuation(&self, q: &BigInt) -> Option<u64> {
        valuation(q, &self.content())
    }
}

/// gcd in Z[x] via the subresultant polynomial remainder sequence.
/// Result is primitive with positive leading coefficient, scaled by the gcd
/// of the two contents; gcd_zx(0, b) = |unit-normalized b|.
pub fn gcd_zx(a: &IntPolynomial, b: &IntPolynomial) -> IntPolynomial {
    if a.is_zero() {
        return normalize_sign(b);
    }
    if b.is_zero() {
        return normalize_sign(a);
    }
    let ca = a.content();
    let cb = b.content();
    let cg = ca.gcd(&cb);
    let mut r0 = a.primitive_part().unwrap();
    let mut r1 = b.primitive_part().unwrap();
    if r0.deg() < r1.deg() {
        std::mem::swap(&mut r0, &mut r1);
    }
    let mut g = BigInt::one();
    let mut h = BigInt::one();
    loop {
        let delta = r0.deg() - r1.deg();
        let rem = r0.pseudo_rem(&r1);
        if rem.is_zero() {
            return r1.primitive_part().unwrap().scale(&cg);
        }
        if rem.is_constant() {
            return IntPolynomial::constant(cg);
        }
        let divisor = &g * num_traits::pow::pow(h.clone(), delta);
        r0 = r1;
        r1 = IntPolynomial::from_coeffs(rem.coeffs.iter().map(|c| c / &divisor).collect());
        g = r0.leading_coeff();
        h = if delta == 0 {
            h
        } else {
            let gp = num_traits::pow::pow(g.clone(), delta);
            let hp = num_traits::pow::pow(h.clone(), delta - 1);
            &gp / &hp
        };
    }
}

fn normalize_sign(p: &IntPolynomial) -> IntPolynomial {
    if p.is_zero() {
        return IntPolynomial::zero();
    }
    if p.leading_coeff().is_negative() {
        -p
    } else {
        p.clone()
    }
}

/// Yun's squarefree decomposition of a primitive polynomial with positive
/// leading coefficient: f = prod_i part_i^i with the parts squarefree,
/// primitive and pairwise coprime. Constant parts are dropped.
pub fn squarefree_decompose(f: &IntPolynomial) -> Vec<(IntPolynomial, u64)> {
    assert!(!f.is_zero() && !f.is_constant());
    let fp = f.derivative();
    let g = gcd_zx(f, &fp);
    if g.is_constant() {
        return vec![(f.clone(), 1)];
    }
    let mut out = Vec::new();
    let mut w = f.divide_exact(&g).unwrap();
    let y = fp.divide_exact(&g).unwrap();
    let mut z = &y - &w.derivative();
    let mut i = 1u64;
    while !w.is_constant() {
        let gi = gcd_zx(&w, &z);
        if !gi.is_constant() {
            out.push((gi.clone(), i));
        }
        w = w.divide_exact(&gi).unwrap();
        let y = z.divide_exact(&gi).unwrap();
        z = &y - &w.derivative();
        i += 1;
    }
    out
}

impl Ord for IntPolynomial {
    /// Degree first, then coefficients from the top down; gives the
    /// deterministic ordering used for factor lists.
    fn cmp(&self, other: &Self) -> Ordering {
        self.coeffs
            .len()
            .cmp(&other.coeffs.len())
            .then_with(|| self.coeffs.iter().rev().cmp(other.coeffs.iter().rev()))
    }
}

impl PartialOrd for IntPolynomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident) => {
        impl $trait for IntPolynomial {
            type Output = IntPolynomial;
            fn $method(self, rhs: IntPolynomial) -> IntPolynomial {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&IntPolynomial> for IntPolynomial {
            type Output = IntPolynomial;
            fn $method(self, rhs: &IntPolynomial) -> IntPolynomial {
                (&self).$method(rhs)
            }
        }
        impl $trait<IntPolynomial> for &IntPolynomial {
            type Output = IntPolynomial;
            fn $method(self, rhs: IntPolynomial) -> IntPolynomial {
                self.$method(&rhs)
            }
        }
    };
}

impl Add<&IntPolynomial> for &IntPolynomial {
    type Output = IntPolynomial;
    fn add(self, rhs: &IntPolynomial) -> IntPolynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect();
        IntPolynomial::from_coeffs(coeffs)
    }
}

impl Sub<&IntPolynomial> for &IntPolynomial {
    type Output = IntPolynomial;
    fn sub(self, rhs: &IntPolynomial) -> IntPolynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect();
        IntPolynomial::from_coeffs(coeffs)
    }
}

impl Mul<&IntPolynomial> for &IntPolynomial {
    type Output = IntPolynomial;
    fn mul(self, rhs: &IntPolynomial) -> IntPolynomial {
        if self.is_zero() || rhs.is_zero() {
            return IntPolynomial::zero();
        }
        let mut coeffs = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        IntPolynomial::from_coeffs(coeffs)
    }
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);

impl Neg for &IntPolynomial {
    type Output = IntPolynomial;
    fn neg(self) -> IntPolynomial {
        IntPolynomial::from_coeffs(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl Neg for IntPolynomial {
    type Output = IntPolynomial;
    fn neg(self) -> IntPolynomial {
        -&self
    }
}

// ---------------------------------------------------------------------------
// Text grammar
//
//   poly   := ['-'] term (('+'|'-') term)*
//   term   := factor ('*'? factor)*
//   factor := primary ['^' uint]
//   primary:= uint | 'x' | '(' poly ')'
//
// '*' is optional, so "2x", "x(x-2)" parse. Canonical printing writes
// descending powers, explicit '*' between a coefficient and x, and omits
// unit coefficients: "x^3 + 2*x^2 + 2*x + 2".
// ---------------------------------------------------------------------------

const MAX_EXPONENT: usize = 100_000;

struct Parser<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn new(s: &'a str) -> Self {
        Parser { bytes: s.as_bytes(), pos: 0 }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.bytes.get(self.pos).copied()
    }

    fn expect(&mut self, c: u8) -> Result<()> {
        match self.peek() {
            Some(got) if got == c => {
                self.pos += 1;
                Ok(())
            }
            Some(got) => Err(Error::parse(
                self.pos,
                format!("expected '{}', found '{}'", c as char, got as char),
            )),
            None => Err(Error::parse(self.pos, format!("expected '{}', found end of input", c as char))),
        }
    }

    fn uint(&mut self) -> Result<BigInt> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if self.pos == start {
            return Err(Error::parse(start, "expected a decimal integer"));
        }
        let digits = std::str::from_utf8(&self.bytes[start..self.pos]).unwrap();
        Ok(BigInt::from_str(digits).unwrap())
    }

    fn poly(&mut self) -> Result<IntPolynomial> {
        let mut acc;
        if self.peek() == Some(b'-') {
            self.pos += 1;
            acc = -self.term()?;
        } else {
            if self.peek() == Some(b'+') {
                self.pos += 1;
            }
            acc = self.term()?;
        }
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    acc = &acc + &self.term()?;
                }
                Some(b'-') => {
                    self.pos += 1;
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<IntPolynomial> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    acc = &acc * &self.factor()?;
                }
                // implicit multiplication: "2x", "x(x-2)", "(x-1)(x+1)"
                Some(c) if c == b'x' || c == b'(' || c.is_ascii_digit() => {
                    acc = &acc * &self.factor()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn factor(&mut self) -> Result<IntPolynomial> {
        let base = self.primary()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            let epos = self.pos;
            let e = self.uint()?;
            let e: usize = e
                .try_into()
                .ok()
                .filter(|&e| e <= MAX_EXPONENT)
                .ok_or_else(|| Error::parse(epos, "exponent too large"))?;
            return Ok(poly_pow(&base, e));
        }
        Ok(base)
    }

    fn primary(&mut self) -> Result<IntPolynomial> {
        match self.peek() {
            Some(b'x') => {
                self.pos += 1;
                Ok(IntPolynomial::x())
            }
            Some(b'(') => {
                self.pos += 1;
                let inner = self.poly()?;
                self.expect(b')')?;
                Ok(inner)
            }
            Some(c) if c.is_ascii_digit() => Ok(IntPolynomial::constant(self.uint()?)),
            Some(c) => Err(Error::parse(self.pos, format!("unexpected character '{}'", c as char))),
            None => Err(Error::parse(self.pos, "unexpected end of input")),
        }
    }

    fn finish(&mut self) -> Result<()> {
        if let Some(c) = self.peek() {
            return Err(Error::parse(self.pos, format!("unexpected trailing '{}'", c as char)));
        }
        Ok(())
    }
}

pub fn poly_pow(base: &IntPolynomial, e: usize) -> IntPolynomial {
    let mut acc = IntPolynomial::one();
    for _ in 0..e {
        acc = &acc * base;
    }
    acc
}

/// Parse the polynomial text grammar.
pub fn parse_poly(s: &str) -> Result<IntPolynomial> {
    let mut p = Parser::new(s);
    let poly = p.poly()?;
    p.finish()?;
    Ok(poly)
}

/// Used by the element grammar: parse a polynomial, stopping in front of a
/// top-level '/' instead of erroring on it.
pub(crate) fn parse_poly_prefix(s: &str) -> Result<(IntPolynomial, usize)> {
    let mut p = Parser::new(s);
    let poly = p.poly()?;
    p.skip_ws();
    Ok((poly, p.pos))
}

impl FromStr for IntPolynomial {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        parse_poly(s)
    }
}

impl fmt::Display for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for i in (0..self.coeffs.len()).rev() {
            let c = &self.coeffs[i];
            if c.is_zero() {
                continue;
            }
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
                first = false;
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let a = c.abs();
            if i == 0 {
                write!(f, "{}", a)?;
            } else {
                if !a.is_one() {
                    write!(f, "{}*", a)?;
                }
                if i == 1 {
                    write!(f, "x")?;
                } else {
                    write!(f, "x^{}", i)?;
                }
            }
        }
        Ok(())
    }
}

impl fmt::Debug for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
