//! Finite unions of arithmetic progressions of Z and their residue
//! behaviour modulo prime powers. These sets are the "S" every fixed-divisor
//! and factorization question is asked relative to; all the algorithms only
//! ever touch S through the operations here.

use crate::arith::{factor_int, is_prime, next_prime};
use crate::crt::CongruenceSystem;
use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

/// offset + step*Z with 0 <= offset < step.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Progression {
    step: BigInt,
    offset: BigInt,
}

impl Progression {
    fn contains(&self, n: &BigInt) -> bool {
        (n - &self.offset).is_multiple_of(&self.step)
    }
}

/// Nonempty union of progressions, kept in canonical form: offsets reduced
/// mod steps, duplicates and subsumed progressions removed, sorted by
/// (step, offset).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubsetSpec {
    progressions: Vec<Progression>,
}

impl SubsetSpec {
    pub fn new(progressions: Vec<(BigInt, BigInt)>) -> Result<Self> {
        if progressions.is_empty() {
            return Err(Error::InvalidInput("subset needs at least one progression".into()));
        }
        let mut list = Vec::new();
        for (offset, step) in progressions {
            if step < BigInt::one() {
                return Err(Error::InvalidInput(format!("progression step {} must be >= 1", step)));
            }
            let offset = offset.mod_floor(&step);
            list.push(Progression { step, offset });
        }
        list.sort();
        list.dedup();
        // drop progressions covered by an earlier (coarser) one
        let mut kept: Vec<Progression> = Vec::new();
        for p in list {
            let subsumed = kept
                .iter()
                .any(|q| p.step.is_multiple_of(&q.step) && (&p.offset - &q.offset).is_multiple_of(&q.step));
            if !subsumed {
                kept.push(p);
            }
        }
        Ok(SubsetSpec { progressions: kept })
    }

    /// All of Z.
    pub fn integers() -> Self {
        SubsetSpec::new(vec![(BigInt::zero(), BigInt::one())]).unwrap()
    }

    /// m*Z for m >= 1.
    pub fn multiples_of(m: impl Into<BigInt>) -> Result<Self> {
        SubsetSpec::new(vec![(BigInt::zero(), m.into())])
    }

    pub fn progressions(&self) -> impl Iterator<Item = (&BigInt, &BigInt)> {
        self.progressions.iter().map(|p| (&p.offset, &p.step))
    }

    pub fn contains(&self, n: &BigInt) -> bool {
        self.progressions.iter().any(|p| p.contains(n))
    }

    /// Members of S that are >= `from`, ascending, deduplicated.
    pub fn ascending(&self, from: &BigInt) -> impl Iterator<Item = BigInt> + '_ {
        let mut nexts: Vec<BigInt> = self
            .progressions
            .iter()
            .map(|p| {
                // least member of the progression >= from
                let d = (from - &p.offset).div_ceil(&p.step);
                &p.offset + &p.step * d
            })
            .collect();
        let mut last: Option<BigInt> = None;
        std::iter::from_fn(move || loop {
            let i = nexts
                .iter()
                .enumerate()
                .min_by(|a, b| a.1.cmp(b.1))
                .map(|(i, _)| i)
                .unwrap();
            let v = nexts[i].clone();
            nexts[i] += &self.progressions[i].step;
            if last.as_ref() != Some(&v) {
                last = Some(v.clone());
                return Some(v);
            }
        })
    }

    /// |R_S(q)|: number of residues mod q met by S.
    pub fn residue_count(&self, q: &BigInt) -> Result<usize> {
        Ok(self.residues_mod(q, 1)?.residues.len())
    }

    /// Residues modulo q^k met by S, as sorted least nonnegative
    /// representatives. q must be prime, k >= 1.
    pub fn residues_mod(&self, q: &BigInt, k: u64) -> Result<ResidueData> {
        if !is_prime(q) {
            return Err(Error::InvalidInput(format!("{} is not prime", q)));
        }
        if k == 0 {
            return Err(Error::InvalidInput("prime power exponent must be >= 1".into()));
        }
        let modulus = q.pow(k.try_into().map_err(|_| Error::BudgetExhausted("prime power exponent too large".into()))?);
        if modulus > BigInt::from(100_000_000u64) {
            return Err(Error::BudgetExhausted(format!(
                "residue enumeration modulus {}^{} is too large",
                q, k
            )));
        }
        let mut set = BTreeSet::new();
        for p in &self.progressions {
            let d = p.step.gcd(&modulus);
            let classes = (&modulus / &d).to_u64().unwrap();
            let base = p.offset.mod_floor(&modulus);
            for t in 0..classes {
                set.insert((&base + &d * BigInt::from(t)).mod_floor(&modulus));
            }
        }
        Ok(ResidueData { prime: q.clone(), power: k, modulus, residues: set.into_iter().collect() })
    }

    /// |R_S(q)| integers lying in S, pairwise incongruent mod q, covering
    /// every residue of S mod q, the j-th additionally satisfying
    /// `constraints[j]` (missing entries mean unconstrained). Chosen by
    /// scanning S upward from 0, so the output is deterministic.
    pub fn complete_residue_system(
        &self,
        q: &BigInt,
        constraints: &[CongruenceSystem],
    ) -> Result<Vec<BigInt>> {
        let t = self.residue_count(q)?;
        if constraints.len() > t {
            return Err(Error::InvalidInput(format!(
                "{} constraints for only {} residues of S mod {}",
                constraints.len(),
                t,
                q
            )));
        }
        let empty = CongruenceSystem::new();
        let mut chosen: Vec<BigInt> = Vec::with_capacity(t);
        for j in 0..t {
            let cons = constraints.get(j).unwrap_or(&empty);
            let mut found = None;
            for (steps, s) in self.ascending(&BigInt::zero()).enumerate() {
                if steps > 2_000_000 {
                    break;
                }
                if !cons.satisfied_by(&s) {
                    continue;
                }
                if chosen.iter().any(|c| (&s - c).is_multiple_of(q)) {
                    continue;
                }
                found = Some(s);
                break;
            }
            match found {
                Some(s) => chosen.push(s),
                None => {
                    return Err(Error::Infeasible(format!(
                        "no member of S satisfies the constraints for slot {} of a complete residue system mod {}",
                        j + 1,
                        q
                    )))
                }
            }
        }
        Ok(chosen)
    }

    /// All primes q with |R_S(q)| <= bound, with the counts. Complete: a
    /// prime not dividing any step meets every residue class, so |R_S(q)| =
    /// q for those, and only q <= bound or q | some step can qualify.
    pub fn relevant_primes(&self, bound: usize) -> Result<Vec<(BigInt, usize)>> {
        let mut candidates = BTreeSet::new();
        let mut q = BigInt::from(2);
        while q <= BigInt::from(bound as u64) {
            candidates.insert(q.clone());
            q = next_prime(&q);
        }
        for p in &self.progressions {
            if !p.step.is_one() {
                candidates.extend(factor_int(&p.step).into_keys());
            }
        }
        let mut out = Vec::new();
        for q in candidates {
            let t = self.residue_count(&q)?;
            if t <= bound {
                out.push((q, t));
            }
        }
        Ok(out)
    }

    /// Sampled set equality on [-bound, bound]; test helper for canonical
    /// forms, not a proof of equality.
    pub fn same_set_sampled(&self, other: &SubsetSpec, bound: i64) -> bool {
        (-bound..=bound).all(|n| {
            let n = BigInt::from(n);
            self.contains(&n) == other.contains(&n)
        })
    }
}

/// Residues of S modulo prime^power.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ResidueData {
    pub prime: BigInt,
    pub power: u64,
    pub modulus: BigInt,
    /// sorted, least nonnegative
    pub residues: Vec<BigInt>,
}

// Grammar: progressions separated by ',', each "[int+][uint]Z";
// "Z" is all of Z, "2Z" the evens, "1+4Z" a shifted progression.

pub fn parse_subset(s: &str) -> Result<SubsetSpec> {
    let mut progressions = Vec::new();
    let mut offset_in_input = 0usize;
    for part in s.split(',') {
        let base = offset_in_input;
        offset_in_input += part.len() + 1;
        let txt = part.trim();
        if txt.is_empty() {
            return Err(Error::parse(base, "empty progression"));
        }
        let pos_of = |sub: &str| base + part.find(sub).unwrap_or(0);
        let (offset, rest) = match txt.split_once('+') {
            Some((off, rest)) => {
                let off = off.trim();
                let val = BigInt::from_str(off)
                    .map_err(|_| Error::parse(pos_of(off), format!("bad progression offset '{}'", off)))?;
                (val, rest.trim())
            }
            None => (BigInt::zero(), txt),
        };
        let step_txt = rest
            .strip_suffix('Z')
            .ok_or_else(|| Error::parse(pos_of(rest), format!("progression '{}' must end in Z", txt)))?
            .trim();
        let step = if step_txt.is_empty() {
            BigInt::one()
        } else {
            BigInt::from_str(step_txt)
                .map_err(|_| Error::parse(pos_of(step_txt), format!("bad progression step '{}'", step_txt)))?
        };
        if step < BigInt::one() {
            return Err(Error::parse(pos_of(step_txt), format!("progression step {} must be >= 1", step)));
        }
        progressions.push((offset, step));
    }
    SubsetSpec::new(progressions)
}

impl FromStr for SubsetSpec {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        parse_subset(s)
    }
}

impl fmt::Display for SubsetSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, p) in self.progressions.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            if p.step.is_one() {
                write!(f, "Z")?;
            } else if p.offset.is_zero() {
                write!(f, "{}Z", p.step)?;
            } else {
                write!(f, "{}+{}Z", p.offset, p.step)?;
            }
        }
        Ok(())
    }
}
