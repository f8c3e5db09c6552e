//! Simultaneous congruences with side non-congruence constraints, solved
//! deterministically: classic CRT for the congruence part, then a linear
//! scan of the solution class for the non-congruences. Always returns the
//! least admissible nonnegative solution, so reruns reproduce bit-identical
//! results.

use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

/// x = r (mod m) requirements plus x != r (mod m) exclusions.
///
/// Congruence moduli must be pairwise coprime (checked by `crt_solve`);
/// non-congruence moduli are unrestricted.
#[derive(Clone, Debug, Default)]
pub struct CongruenceSystem {
    pub congruences: Vec<(BigInt, BigInt)>,
    pub non_congruences: Vec<(BigInt, BigInt)>,
}

impl CongruenceSystem {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn require(mut self, r: impl Into<BigInt>, m: impl Into<BigInt>) -> Self {
        self.congruences.push((r.into(), m.into()));
        self
    }

    pub fn forbid(mut self, r: impl Into<BigInt>, m: impl Into<BigInt>) -> Self {
        self.non_congruences.push((r.into(), m.into()));
        self
    }

    pub fn satisfied_by(&self, x: &BigInt) -> bool {
        self.congruences.iter().all(|(r, m)| (x - r).is_multiple_of(m))
            && self.non_congruences.iter().all(|(r, m)| !(x - r).is_multiple_of(m))
    }
}

/// Least nonnegative solution, scanning at most `search_bound` candidates of
/// the congruence class for the non-congruence constraints.
pub fn crt_solve(sys: &CongruenceSystem, search_bound: u64) -> Result<BigInt> {
    crt_solve_nth(sys, search_bound, 0)
}

/// As `crt_solve`, but skips the first `skip` admissible solutions; used by
/// the constructions to retry deterministically with "the next solution".
pub fn crt_solve_nth(sys: &CongruenceSystem, search_bound: u64, skip: u64) -> Result<BigInt> {
    let (base, modulus) = combine_congruences(&sys.congruences)?;
    let mut found = 0u64;
    let mut x = base;
    for _ in 0..search_bound {
        if sys.non_congruences.iter().all(|(r, m)| !((&x - r).is_multiple_of(m))) {
            if found == skip {
                return Ok(x);
            }
            found += 1;
        }
        x += &modulus;
    }
    Err(Error::Infeasible(format!(
        "no admissible solution among the first {} candidates of the class {} mod {}",
        search_bound,
        crate::crt::combine_congruences(&sys.congruences)?.0,
        modulus
    )))
}

/// Reduce the congruence list to (least nonnegative residue, product of
/// moduli). Errors if moduli are not pairwise coprime or the list is
/// contradictory — with pairwise coprime moduli a contradiction cannot
/// arise, so coprimality is the only failure mode.
pub fn combine_congruences(congruences: &[(BigInt, BigInt)]) -> Result<(BigInt, BigInt)> {
    let mut base = BigInt::zero();
    let mut modulus = BigInt::one();
    for (r, m) in congruences {
        if m < &BigInt::from(2) {
            return Err(Error::InvalidInput(format!("congruence modulus {} must be >= 2", m)));
        }
        let g = modulus.gcd(m);
        if !g.is_one() {
            if (&base - r).is_multiple_of(&g) {
                return Err(Error::Infeasible(format!(
                    "moduli {} and {} are not coprime",
                    modulus, m
                )));
            }
            return Err(Error::Infeasible(format!(
                "contradictory congruences modulo gcd {}",
                g
            )));
        }
        // base + modulus*t = r (mod m)  =>  t = (r - base) * modulus^{-1} (mod m)
        let inv = mod_inverse(&modulus, m).expect("coprime by the gcd check");
        let t = ((r - &base) * inv).mod_floor(m);
        base += &modulus * t;
        modulus *= m;
        base = base.mod_floor(&modulus);
    }
    Ok((base, modulus))
}

/// Inverse of a modulo m, if gcd(a, m) = 1.
pub fn mod_inverse(a: &BigInt, m: &BigInt) -> Option<BigInt> {
    let e = a.extended_gcd(m);
    if e.gcd.is_one() {
        Some(e.x.mod_floor(m))
    } else {
        None
    }
}
