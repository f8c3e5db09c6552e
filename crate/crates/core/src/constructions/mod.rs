//! Deterministic constructions over M = pℤ of elements with prescribed
//! factorization behavior, together with replayable certificates.
//!
//! Two pipelines are provided. `construct_prescribed_lengths` builds an
//! image-primitive H whose essentially different factorizations have
//! exactly the requested lengths (one factorization per requested length).
//! `construct_unbounded` builds an irreducible H such that (x/p)·H splits
//! both into two irreducibles and into n+1 irreducibles, so maximal
//! factorization lengths in Int(pℤ) cannot be bounded in terms of a fixed
//! irreducible cofactor.
//!
//! Every intermediate object (auxiliary primes, residue tables, congruence
//! solutions, irreducible replacements, predicted factorizations) is
//! recorded in a JSON-serializable certificate; `verify::verify_certificate`
//! replays all side conditions from scratch, including an independent run
//! of the factorization enumerator.

pub mod verify;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::{big_pow, is_prime, primes, valuation};
use crate::crt::{crt_solve_nth, CongruenceSystem};
use crate::error::{Error, Result};
use crate::intval::{fixdiv, IntValElement};
use crate::poly::IntPolynomial;
use crate::qx::is_irreducible_qx;
use crate::subsets::SubsetSpec;

/// Schema tag stamped on every certificate document.
pub const CERT_SCHEMA: u32 = 1;

/// Scan bound handed to the congruence solver.
const CRT_SEARCH_BOUND: u64 = 4_000_000;

/// Candidate budget per replacement target.
const REPLACEMENT_BUDGET: u64 = 2_000;

/// How many fresh rounds of congruence solutions the pipelines try before
/// giving up on the fixed-divisor checks.
const RETRY_LIMIT: u64 = 24;

/// Index of one inner factor of the length-mixing arrangement: row
/// occurrence (k, i), column occurrence (h, j), with k ≠ h. All 1-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct IndexQuad {
    pub k: usize,
    pub i: usize,
    pub h: usize,
    pub j: usize,
}

/// A grouped product of first-stage replacements together with its own
/// irreducible replacement, tagged by the occurrence (k, i) it belongs to.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProductEntry {
    pub k: usize,
    pub i: usize,
    pub f: String,
    #[serde(rename = "F")]
    pub rep: String,
}

/// One forecast factorization, parts in the element grammar.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PredictedFactorization {
    pub unit: i8,
    pub parts: Vec<String>,
}

/// Full transcript of the prescribed-lengths pipeline. Integers are decimal
/// strings, polynomials and elements use the text grammars of this crate.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrescribedLengthsCertificate {
    pub schema: u32,
    pub p: String,
    pub m_list: Vec<u64>,
    /// How many rounds of congruence solutions were skipped before all
    /// fixed-divisor checks passed.
    pub retries: u64,
    #[serde(rename = "N")]
    pub big_n: usize,
    pub p_list: Vec<String>,
    pub t_list: Vec<usize>,
    pub q_list: Vec<String>,
    pub a_table: Vec<Vec<String>>,
    pub c_table: Vec<Vec<String>>,
    pub e: String,
    pub w: String,
    pub g_list: Vec<String>,
    #[serde(rename = "G_list")]
    pub big_g_list: Vec<String>,
    pub index_map: Vec<IndexQuad>,
    pub f_table: Vec<ProductEntry>,
    #[serde(rename = "H_num")]
    pub h_num: String,
    #[serde(rename = "H")]
    pub h: String,
    pub predicted: Vec<PredictedFactorization>,
}

/// Full transcript of the two-ways-to-factor pipeline.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct UnboundedCertificate {
    pub schema: u32,
    pub p: String,
    pub n: usize,
    pub retries: u64,
    pub p_list: Vec<String>,
    pub t_list: Vec<usize>,
    pub q_list: Vec<String>,
    #[serde(rename = "T")]
    pub big_t: Vec<String>,
    pub a_heads: Vec<String>,
    pub g: String,
    #[serde(rename = "G")]
    pub big_g: String,
    #[serde(rename = "H")]
    pub h: String,
    pub left: String,
    pub linear_parts: Vec<String>,
}

/// Tagged union covering both constructions, as serialized to JSON.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind")]
pub enum Certificate {
    #[serde(rename = "prescribed_lengths")]
    PrescribedLengths(PrescribedLengthsCertificate),
    #[serde(rename = "unbounded")]
    Unbounded(UnboundedCertificate),
}

impl Certificate {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("certificates always serialize")
    }

    pub fn from_json(text: &str) -> Result<Certificate> {
        serde_json::from_str(text)
            .map_err(|e| Error::Certificate(format!("malformed certificate document: {e}")))
    }
}

/// Replaces each target by a monic polynomial of the same degree that is
/// irreducible over ℚ, congruent to the target modulo q^(n+1) for every
/// prime q with at most `prime_bound_degree` residue classes on `s`, and
/// distinct from all previously returned replacements.
///
/// The search is deterministic: candidates are f + Δ·P·x^pos where P is the
/// product of the prime powers above, Δ runs through 0, 1, −1, 2, −2, …,
/// and for each Δ the offset is applied at the constant coefficient first,
/// then at successively higher positions below the leading one.
pub fn replace_irreducible(
    s: &SubsetSpec,
    targets: &[IntPolynomial],
    prime_bound_degree: usize,
    n: u64,
    budget: u64,
) -> Result<Vec<IntPolynomial>> {
    let mut step = BigInt::one();
    for (q, _) in s.relevant_primes(prime_bound_degree)? {
        step *= big_pow(&q, n + 1);
    }
    let mut out: Vec<IntPolynomial> = Vec::with_capacity(targets.len());
    for f in targets {
        if !f.is_monic() || f.is_constant() {
            return Err(Error::InvalidInput(
                "replacement targets must be monic and nonconstant".into(),
            ));
        }
        let deg = f.deg() as u64;
        let mut accepted = None;
        for attempt in 0..budget {
            let cand = if attempt == 0 {
                f.clone()
            } else {
                let round = (attempt - 1) / deg;
                let pos = ((attempt - 1) % deg) as usize;
                let mut delta = BigInt::from(round / 2 + 1);
                if round % 2 == 1 {
                    delta = -delta;
                }
                f + &IntPolynomial::monomial(delta * &step, pos)
            };
            if out.contains(&cand) {
                continue;
            }
            match is_irreducible_qx(&cand) {
                Ok(true) => {
                    accepted = Some(cand);
                    break;
                }
                Ok(false) => {}
                // a single stubborn candidate is skipped, not fatal
                Err(Error::BudgetExhausted(_)) => {}
                Err(e) => return Err(e),
            }
        }
        match accepted {
            Some(cand) => out.push(cand),
            None => {
                return Err(Error::BudgetExhausted(format!(
                    "no irreducible replacement for {f} within {budget} candidates"
                )))
            }
        }
    }
    Ok(out)
}

/// Congruence exponent that makes replacement preserve fixed divisors: with
/// n at least the largest prime exponent in fixdiv(full), congruence modulo
/// q^(n+1) pins the valuation of every value down to that exponent, and
/// sub-products only ever have smaller exponents.
fn congruence_exponent(
    s: &SubsetSpec,
    full: &IntPolynomial,
    prime_bound_degree: usize,
) -> Result<u64> {
    let d = fixdiv(s, full)?;
    let mut n = 1u64;
    for (q, _) in s.relevant_primes(prime_bound_degree)? {
        if let Some(v) = valuation(&q, &d) {
            n = n.max(v);
        }
    }
    Ok(n)
}

/// First `count` primes other than `p` whose residue class count on `s`
/// exceeds `min_classes`, together with those counts.
fn auxiliary_primes(
    s: &SubsetSpec,
    p: &BigInt,
    count: usize,
    min_classes: usize,
) -> Result<(Vec<BigInt>, Vec<usize>)> {
    let mut p_list = Vec::with_capacity(count);
    let mut t_list = Vec::with_capacity(count);
    for q in primes() {
        if &q == p {
            continue;
        }
        let t = s.residue_count(&q)?;
        if t > min_classes {
            p_list.push(q);
            t_list.push(t);
            if p_list.len() == count {
                break;
            }
        }
    }
    Ok((p_list, t_list))
}

/// Primes with at most `bound` residue classes on `s` that are not
/// auxiliary. Always contains p itself, since pℤ meets a single class
/// modulo p.
fn small_residue_primes(
    s: &SubsetSpec,
    p: &BigInt,
    p_list: &[BigInt],
    bound: usize,
) -> Result<Vec<BigInt>> {
    let limit = std::cmp::max(BigInt::from(bound as u64), p.clone());
    let mut q_list = Vec::new();
    for q in primes() {
        if q > limit {
            break;
        }
        if p_list.contains(&q) {
            continue;
        }
        if s.residue_count(&q)? <= bound {
            q_list.push(q);
        }
    }
    Ok(q_list)
}

fn product_with(w: &IntPolynomial, factors: &[&IntPolynomial]) -> IntPolynomial {
    let mut acc = w.clone();
    for f in factors {
        acc = &acc * *f;
    }
    acc
}

/// Builds an image-primitive H over M = pℤ with exactly one essentially
/// different factorization per entry of `m_list`, of lengths m_i + 1.
pub fn construct_prescribed_lengths(
    p: &BigInt,
    m_list: &[u64],
) -> Result<PrescribedLengthsCertificate> {
    if !is_prime(p) {
        return Err(Error::InvalidInput(format!("{p} is not prime")));
    }
    if m_list.is_empty() || m_list.contains(&0) {
        return Err(Error::InvalidInput(
            "need a nonempty list of positive lengths".into(),
        ));
    }
    if m_list.windows(2).any(|w| w[0] > w[1]) {
        return Err(Error::InvalidInput("lengths must be nondecreasing".into()));
    }
    let s = SubsetSpec::multiples_of(p.clone())?;
    let n = m_list.len();
    if n == 1 {
        return single_length_certificate(&s, p, m_list[0]);
    }

    let m_total: u64 = m_list.iter().sum();
    let big_n = (m_total * m_total - m_list.iter().map(|&m| m * m).sum::<u64>()) as usize;
    let (p_list, t_list) = auxiliary_primes(&s, p, big_n, 2)?;
    let t_max = *t_list.last().expect("big_n >= 2 for two or more lengths");
    let q_list = small_residue_primes(&s, p, &p_list, t_max)?;

    // per-prime residue tables, anchored at 0 and p
    let mut a_table: Vec<Vec<BigInt>> = Vec::with_capacity(big_n);
    for (pi, &ti) in p_list.iter().zip(&t_list) {
        let row = s.complete_residue_system(pi, &[])?;
        debug_assert_eq!(row.len(), ti);
        debug_assert!(row[0].is_zero() && &row[1] == p);
        a_table.push(row);
    }

    // occurrence list I and the index assignment for the inner factors
    let occurrences: Vec<(usize, usize)> = (1..=n)
        .flat_map(|k| (1..=m_list[k - 1] as usize).map(move |i| (k, i)))
        .collect();
    let mut index_map: Vec<IndexQuad> = Vec::with_capacity(big_n);
    for &(k, i) in &occurrences {
        for &(h, j) in &occurrences {
            if k != h {
                index_map.push(IndexQuad { k, i, h, j });
            }
        }
    }
    debug_assert_eq!(index_map.len(), big_n);

    'retry: for retries in 0..RETRY_LIMIT {
        // translated residue systems: row i hits every class modulo p_i
        // exactly once at unit multiplicity, avoids the two anchor classes
        // of every other auxiliary prime, and is ≡ 1 at small primes
        let mut c_table: Vec<Vec<BigInt>> = Vec::with_capacity(big_n);
        for i in 0..big_n {
            let pi = &p_list[i];
            let mut row = Vec::with_capacity(t_list[i]);
            for j in 0..t_list[i] {
                let mut sys = CongruenceSystem::new()
                    .require(a_table[i][j].clone(), pi.clone())
                    .forbid(a_table[i][j].clone(), pi * pi);
                for k in 0..big_n {
                    if k != i {
                        sys = sys
                            .forbid(a_table[k][0].clone(), p_list[k].clone())
                            .forbid(a_table[k][1].clone(), p_list[k].clone());
                    }
                }
                for q in &q_list {
                    sys = sys.require(1, q.clone());
                }
                row.push(crt_solve_nth(&sys, CRT_SEARCH_BOUND, retries)?);
            }
            c_table.push(row);
        }

        let mut e_sys = CongruenceSystem::new();
        for (pi, a_row) in p_list.iter().zip(&a_table) {
            e_sys = e_sys
                .require(a_row[0].clone(), pi.clone())
                .forbid(a_row[0].clone(), pi * pi);
        }
        for q in &q_list {
            e_sys = e_sys.require(1, q.clone());
        }
        let e = crt_solve_nth(&e_sys, CRT_SEARCH_BOUND, retries)?;
        let w = IntPolynomial::linear_root(&e);

        let g_list: Vec<IntPolynomial> = c_table
            .iter()
            .map(|row| {
                row[1..]
                    .iter()
                    .fold(IntPolynomial::one(), |acc, c| {
                        &acc * &IntPolynomial::linear_root(c)
                    })
            })
            .collect();

        // first stage: replace each g by an irreducible of equal degree
        let deg_g_total: usize = g_list.iter().map(|g| g.deg()).sum();
        let mut chain = w.clone();
        for g in &g_list {
            chain = &chain * &(g * g);
        }
        let n1 = congruence_exponent(&s, &chain, deg_g_total)?;
        let big_g_list = replace_irreducible(&s, &g_list, deg_g_total, n1, REPLACEMENT_BUDGET)?;
        let mut chain_rep = w.clone();
        for g in &big_g_list {
            chain_rep = &chain_rep * &(g * g);
        }
        if fixdiv(&s, &chain)? != fixdiv(&s, &chain_rep)? {
            continue 'retry;
        }

        // second stage: group the inner factors row-and-column-wise and
        // replace each grouped product by an irreducible of equal degree
        let f_list: Vec<IntPolynomial> = occurrences
            .iter()
            .map(|&(k, i)| {
                let mut f = IntPolynomial::one();
                for (quad, big_g) in index_map.iter().zip(&big_g_list) {
                    if (quad.k == k && quad.i == i) || (quad.h == k && quad.j == i) {
                        f = &f * big_g;
                    }
                }
                f
            })
            .collect();
        let deg_f_total: usize = f_list.iter().map(|f| f.deg()).sum();
        let full_f = product_with(&w, &f_list.iter().collect::<Vec<_>>());
        let n2 = congruence_exponent(&s, &full_f, deg_f_total)?;
        let big_f_list = replace_irreducible(&s, &f_list, deg_f_total, n2, REPLACEMENT_BUDGET)?;

        let h_num = product_with(&w, &big_f_list.iter().collect::<Vec<_>>());
        let target: BigInt = p_list.iter().product();
        if fixdiv(&s, &h_num)? != target || fixdiv(&s, &full_f)? != target {
            continue 'retry;
        }
        // replacement must also preserve the fixed divisor of every
        // one-block-removed selection, since those are the cofactors of the
        // predicted factorizations
        for h in 1..=n {
            let keep: Vec<usize> = (0..occurrences.len())
                .filter(|&idx| occurrences[idx].0 != h)
                .collect();
            let sel_f = product_with(&w, &keep.iter().map(|&idx| &f_list[idx]).collect::<Vec<_>>());
            let sel_rep = product_with(
                &w,
                &keep.iter().map(|&idx| &big_f_list[idx]).collect::<Vec<_>>(),
            );
            if fixdiv(&s, &sel_f)? != fixdiv(&s, &sel_rep)? {
                continue 'retry;
            }
        }

        let h_elem = IntValElement::from_fraction(&h_num, &target)?;
        let mut predicted_parts: Vec<Vec<IntValElement>> = Vec::with_capacity(n);
        for h in 1..=n {
            let mut parts = Vec::new();
            let mut rest = w.clone();
            for (&(k, _), big_f) in occurrences.iter().zip(&big_f_list) {
                if k == h {
                    parts.push(IntValElement::from_poly(big_f)?);
                } else {
                    rest = &rest * big_f;
                }
            }
            parts.push(IntValElement::from_fraction(&rest, &target)?);
            parts.sort();
            predicted_parts.push(parts);
        }
        predicted_parts.sort_by(|x, y| (x.len(), x).cmp(&(y.len(), y)));

        return Ok(PrescribedLengthsCertificate {
            schema: CERT_SCHEMA,
            p: p.to_string(),
            m_list: m_list.to_vec(),
            retries,
            big_n,
            p_list: p_list.iter().map(BigInt::to_string).collect(),
            t_list: t_list.clone(),
            q_list: q_list.iter().map(BigInt::to_string).collect(),
            a_table: stringify_table(&a_table),
            c_table: stringify_table(&c_table),
            e: e.to_string(),
            w: w.to_string(),
            g_list: g_list.iter().map(|g| g.to_string()).collect(),
            big_g_list: big_g_list.iter().map(|g| g.to_string()).collect(),
            index_map,
            f_table: occurrences
                .iter()
                .zip(f_list.iter().zip(&big_f_list))
                .map(|(&(k, i), (f, rep))| ProductEntry {
                    k,
                    i,
                    f: f.to_string(),
                    rep: rep.to_string(),
                })
                .collect(),
            h_num: h_num.to_string(),
            h: h_elem.to_string(),
            predicted: predicted_parts
                .iter()
                .map(|parts| PredictedFactorization {
                    unit: 1,
                    parts: parts.iter().map(|e| e.to_string()).collect(),
                })
                .collect(),
        });
    }
    Err(Error::BudgetExhausted(
        "no congruence solution round passed the fixed-divisor checks".into(),
    ))
}

/// Single requested length: powers of x/p need no auxiliary machinery.
fn single_length_certificate(
    s: &SubsetSpec,
    p: &BigInt,
    m: u64,
) -> Result<PrescribedLengthsCertificate> {
    let h_num = IntPolynomial::monomial(BigInt::one(), (m + 1) as usize);
    let den = big_pow(p, m + 1);
    assert_eq!(fixdiv(s, &h_num)?, den);
    let h_elem = IntValElement::from_fraction(&h_num, &den)?;
    let base = IntValElement::from_fraction(&IntPolynomial::x(), p)?;
    Ok(PrescribedLengthsCertificate {
        schema: CERT_SCHEMA,
        p: p.to_string(),
        m_list: vec![m],
        retries: 0,
        big_n: 0,
        p_list: vec![],
        t_list: vec![],
        q_list: vec![],
        a_table: vec![],
        c_table: vec![],
        e: "0".into(),
        w: IntPolynomial::x().to_string(),
        g_list: vec![],
        big_g_list: vec![],
        index_map: vec![],
        f_table: vec![],
        h_num: h_num.to_string(),
        h: h_elem.to_string(),
        predicted: vec![PredictedFactorization {
            unit: 1,
            parts: vec![base.to_string(); (m + 1) as usize],
        }],
    })
}

/// Builds an irreducible H over M = pℤ such that (x/p)·H also splits into
/// the n+1 irreducibles xG/(p·p_1⋯p_n) and x − a_{i,1}.
pub fn construct_unbounded(p: &BigInt, n: usize) -> Result<UnboundedCertificate> {
    if !is_prime(p) {
        return Err(Error::InvalidInput(format!("{p} is not prime")));
    }
    if n == 0 {
        return Err(Error::InvalidInput(
            "need at least one auxiliary prime".into(),
        ));
    }
    let s = SubsetSpec::multiples_of(p.clone())?;
    let (p_list, t_list) = auxiliary_primes(&s, p, n, 1)?;
    let t_max = *t_list.last().expect("n >= 1");
    let bound = t_max + n;
    let q_list = small_residue_primes(&s, p, &p_list, bound)?;

    // residue rows: the head is p_i itself (in class 0 modulo p_i but not
    // divisible by p), the tail walks the remaining classes through pℤ
    let mut a_table: Vec<Vec<BigInt>> = Vec::with_capacity(n);
    for (pi, &ti) in p_list.iter().zip(&t_list) {
        let mut row = vec![pi.clone()];
        for j in 2..=ti {
            row.push(BigInt::from((j - 1) as u64) * p);
        }
        a_table.push(row);
    }

    'retry: for retries in 0..RETRY_LIMIT {
        let mut big_t: Vec<BigInt> = Vec::with_capacity(t_max);
        let mut head_sys = CongruenceSystem::new();
        for pi in &p_list {
            head_sys = head_sys.require(0, pi.clone());
        }
        for q in &q_list {
            head_sys = head_sys.require(1, q.clone());
        }
        big_t.push(crt_solve_nth(&head_sys, CRT_SEARCH_BOUND, retries)?);
        for j in 2..=t_max {
            let mut sys = CongruenceSystem::new();
            for i in 0..n {
                let pi = &p_list[i];
                if j <= t_list[i] {
                    sys = sys
                        .require(a_table[i][j - 1].clone(), pi.clone())
                        .forbid(a_table[i][j - 1].clone(), pi * pi);
                } else {
                    sys = sys.require(p.clone(), pi.clone());
                }
            }
            for q in &q_list {
                sys = sys.require(1, q.clone());
            }
            big_t.push(crt_solve_nth(&sys, CRT_SEARCH_BOUND, retries)?);
        }

        let g = big_t[1..].iter().fold(IntPolynomial::one(), |acc, r| {
            &acc * &IntPolynomial::linear_root(r)
        });
        let lin_prod = a_table.iter().fold(IntPolynomial::one(), |acc, row| {
            &acc * &IntPolynomial::linear_root(&row[0])
        });
        let full = &(&IntPolynomial::x() * &g) * &lin_prod;
        let nc = congruence_exponent(&s, &full, bound)?;
        let big_g = replace_irreducible(&s, std::slice::from_ref(&g), bound, nc, REPLACEMENT_BUDGET)?
            .pop()
            .expect("one target, one replacement");

        let aux: BigInt = p_list.iter().product();
        let num_h = &big_g * &lin_prod;
        let num_left = &IntPolynomial::x() * &big_g;
        if fixdiv(&s, &num_h)? != aux || fixdiv(&s, &num_left)? != p * &aux {
            continue 'retry;
        }
        // replacement must preserve the fixed divisor of all three
        // selections that the two displayed factorizations rely on
        if fixdiv(&s, &(&g * &lin_prod))? != aux
            || fixdiv(&s, &(&IntPolynomial::x() * &g))? != p * &aux
            || fixdiv(&s, &full)? != fixdiv(&s, &(&num_left * &lin_prod))?
        {
            continue 'retry;
        }

        let h = IntValElement::from_fraction(&num_h, &aux)?;
        let left = IntValElement::from_fraction(&num_left, &(p * &aux))?;
        return Ok(UnboundedCertificate {
            schema: CERT_SCHEMA,
            p: p.to_string(),
            n,
            retries,
            p_list: p_list.iter().map(BigInt::to_string).collect(),
            t_list: t_list.clone(),
            q_list: q_list.iter().map(BigInt::to_string).collect(),
            big_t: big_t.iter().map(BigInt::to_string).collect(),
            a_heads: a_table.iter().map(|row| row[0].to_string()).collect(),
            g: g.to_string(),
            big_g: big_g.to_string(),
            h: h.to_string(),
            left: left.to_string(),
            linear_parts: a_table
                .iter()
                .map(|row| IntPolynomial::linear_root(&row[0]).to_string())
                .collect(),
        });
    }
    Err(Error::BudgetExhausted(
        "no congruence solution round passed the fixed-divisor checks".into(),
    ))
}

fn stringify_table(table: &[Vec<BigInt>]) -> Vec<Vec<String>> {
    table
        .iter()
        .map(|row| row.iter().map(BigInt::to_string).collect())
        .collect()
}
