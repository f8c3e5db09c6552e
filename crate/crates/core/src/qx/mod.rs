//! Factorization over Q[x], presented as unit · content · product of
//! primitive irreducible integer polynomials. Pipeline: content and power of
//! x split off, squarefree decomposition, factorization modulo a good small
//! prime, Hensel lifting past the coefficient bound, then subset
//! recombination of the modular factors.

mod hensel;
pub mod modp;

use crate::arith::next_prime;
use crate::error::{Error, Result};
use crate::poly::{squarefree_decompose, IntPolynomial};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// g = unit · constant · ∏ factors^multiplicity with the factors primitive,
/// irreducible over Q, positive leading coefficient, sorted by (degree,
/// coefficients).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QxFactorization {
    pub unit: i8,
    pub constant: BigInt,
    pub factors: Vec<(IntPolynomial, u64)>,
}

impl QxFactorization {
    /// Multiply everything back out; the replay check.
    pub fn expand(&self) -> IntPolynomial {
        let mut acc = IntPolynomial::constant(BigInt::from(self.unit) * &self.constant);
        for (f, m) in &self.factors {
            for _ in 0..*m {
                acc = &acc * f;
            }
        }
        acc
    }

    pub fn factor_count(&self) -> u64 {
        self.factors.iter().map(|(_, m)| m).sum()
    }
}

/// Complete factorization of a nonzero integer polynomial into
/// Q[x]-irreducibles.
pub fn factor_zx(g: &IntPolynomial) -> Result<QxFactorization> {
    let (unit, constant, prim) = g.primitive_decompose()?;
    let mut factors: Vec<(IntPolynomial, u64)> = Vec::new();
    if !prim.is_constant() {
        // split off the power of x so every remaining part has nonzero
        // constant term (the recombination pruning relies on it)
        let k = prim.coeffs().iter().position(|c| !c.is_zero()).unwrap();
        let mut core = IntPolynomial::from_coeffs(prim.coeffs()[k..].to_vec());
        if k > 0 {
            factors.push((IntPolynomial::x(), k as u64));
        }
        if !core.is_constant() {
            let parts = if squarefree_somewhere(&core) {
                vec![(std::mem::replace(&mut core, IntPolynomial::one()), 1)]
            } else {
                squarefree_decompose(&core)
            };
            for (part, mult) in parts {
                for irr in factor_squarefree_part(&part) {
                    factors.push((irr, mult));
                }
            }
        }
    }
    factors.sort();
    let mut merged: Vec<(IntPolynomial, u64)> = Vec::new();
    for (f, m) in factors {
        match merged.last_mut() {
            Some((g, n)) if *g == f => *n += m,
            _ => merged.push((f, m)),
        }
    }
    Ok(QxFactorization { unit, constant, factors: merged })
}

/// True iff g has no nonconstant proper divisor in Q[x]. Errors on constant
/// input; content is irrelevant over Q and is ignored.
pub fn is_irreducible_qx(g: &IntPolynomial) -> Result<bool> {
    if g.is_constant() {
        return Err(Error::InvalidInput(format!(
            "irreducibility over Q is asked of nonconstant polynomials, got {}",
            g
        )));
    }
    if g.deg() == 1 {
        return Ok(true);
    }
    let prim = g.primitive_part()?;
    let fact = factor_zx(&prim)?;
    Ok(fact.factor_count() == 1)
}

/// Quick positive squarefreeness test: squarefree modulo any prime keeping
/// the degree implies squarefree over Q, which skips the integer gcd in the
/// common case.
fn squarefree_somewhere(f: &IntPolynomial) -> bool {
    let mut p = 3u64;
    for _ in 0..8 {
        if modp::squarefree_mod(f, p) {
            return true;
        }
        p = next_prime(&BigInt::from(p)).to_u64().unwrap();
    }
    false
}

/// Factor a primitive squarefree polynomial with positive leading
/// coefficient and nonzero constant term into irreducibles.
fn factor_squarefree_part(f: &IntPolynomial) -> Vec<IntPolynomial> {
    if f.deg() == 1 {
        return vec![f.clone()];
    }
    // choose the odd prime giving the fewest modular factors among the
    // first few that keep f squarefree
    let mut best: Option<(u64, Vec<modp::FpPoly>)> = None;
    let mut p = 3u64;
    let mut seen = 0;
    while seen < 4 {
        if modp::squarefree_mod(f, p) {
            let leaves = modp::factor_squarefree_mod(f, p);
            if leaves.len() == 1 {
                return vec![f.clone()];
            }
            let better = match &best {
                None => true,
                Some((_, old)) => leaves.len() < old.len(),
            };
            if better {
                best = Some((p, leaves));
            }
            seen += 1;
        }
        p = next_prime(&BigInt::from(p)).to_u64().unwrap();
        assert!(p < 100_000, "a squarefree reduction exists for squarefree input");
    }
    let (p, leaves) = best.unwrap();
    // lift past twice the factor coefficient bound so balanced residues are exact
    let bound = factor_coeff_bound(f);
    let mut k = 1u32;
    let mut pk = BigInt::from(p);
    let two_bound = BigInt::from(2) * &bound;
    while pk <= two_bound {
        pk *= p;
        k += 1;
    }
    let lifted = hensel::lift_factorization(p, k, f, &leaves);
    recombine(f, lifted, &pk)
}

/// Bound on |coefficient| of lc(f)·(any monic-scaled irreducible factor):
/// 2^deg · ||f||₂ · |lc(f)|, with the root taken with ceiling.
fn factor_coeff_bound(f: &IntPolynomial) -> BigInt {
    let norm = f.norm2_sq().sqrt() + 1;
    (BigInt::one() << f.deg()) * norm * f.leading_coeff().abs()
}

fn balanced(f: &IntPolynomial, m: &BigInt) -> IntPolynomial {
    let half = m / 2;
    IntPolynomial::from_coeffs(
        f.coeffs()
            .iter()
            .map(|c| {
                let r = c.mod_floor(m);
                if r > half {
                    r - m
                } else {
                    r
                }
            })
            .collect(),
    )
}

/// Zassenhaus recombination: search subsets of the lifted modular factors in
/// increasing cardinality; a subset is a true factor iff lc·∏subset, balanced
/// mod p^k and made primitive, divides f over Z.
fn recombine(f: &IntPolynomial, lifted: Vec<IntPolynomial>, pk: &BigInt) -> Vec<IntPolynomial> {
    let mut pool = lifted;
    let mut rest = f.clone();
    let mut out = Vec::new();
    let mut size = 1usize;
    'outer: while 2 * size <= pool.len() {
        let mut pick = (0..size).collect::<Vec<usize>>();
        loop {
            if let Some((g, quotient)) = try_subset(&rest, &pool, &pick, pk) {
                rest = quotient;
                out.push(g);
                for &i in pick.iter().rev() {
                    pool.remove(i);
                }
                continue 'outer; // same cardinality, fresh index set
            }
            if !advance(&mut pick, pool.len()) {
                break;
            }
        }
        size += 1;
    }
    if !rest.is_constant() {
        out.push(rest.primitive_part().unwrap());
    }
    out
}

/// Candidate factor for one index subset: Some((factor, cofactor)) iff the
/// balanced product of the picked lifts divides rest.
fn try_subset(
    rest: &IntPolynomial,
    pool: &[IntPolynomial],
    pick: &[usize],
    pk: &BigInt,
) -> Option<(IntPolynomial, IntPolynomial)> {
    let lc = rest.leading_coeff();
    // cheap screen on the constant coefficient before multiplying out
    let mut tail = lc.mod_floor(pk);
    for &i in pick {
        tail = (tail * pool[i].coeff(0)).mod_floor(pk);
    }
    let half = pk / 2;
    if tail > half {
        tail -= pk;
    }
    if tail.is_zero() || !(lc * rest.coeff(0)).is_multiple_of(&tail) {
        return None;
    }
    let mut prod = IntPolynomial::constant(rest.leading_coeff());
    for &i in pick {
        prod = balanced(&(&prod * &pool[i]), pk);
    }
    let cand = prod.primitive_part().unwrap();
    let quotient = rest.divide_exact(&cand)?;
    Some((cand, quotient))
}

/// Next lexicographic index subset of {0, …, n-1}; false when exhausted.
fn advance(pick: &mut [usize], n: usize) -> bool {
    let k = pick.len();
    let mut i = k;
    while i > 0 {
        i -= 1;
        if pick[i] < n - (k - i) {
            pick[i] += 1;
            for j in i + 1..k {
                pick[j] = pick[j - 1] + 1;
            }
            return true;
        }
    }
    false
}
