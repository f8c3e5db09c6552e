//! Independent replay of construction certificates.
//!
//! The verifier re-derives every derived object from the recorded raw data
//! (auxiliary primes, residue tables, congruence solutions, replacement
//! polynomials), re-checks all congruence, degree, irreducibility and
//! valuation side conditions, recomputes fixed divisors from scratch, and
//! finally runs the factorization enumerator on H to compare against the
//! predicted factorizations. Nothing is trusted beyond the literal strings
//! in the certificate.

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::arith::valuation;
use crate::error::{Error, Result};
use crate::intval::{
    factorizations, fixdiv, is_irreducible, parse_element, Factorization, IntValElement,
};
use crate::poly::{parse_poly, IntPolynomial};
use crate::qx::is_irreducible_qx;
use crate::subsets::SubsetSpec;

use super::{
    auxiliary_primes, small_residue_primes, Certificate, PredictedFactorization,
    PrescribedLengthsCertificate, UnboundedCertificate, CERT_SCHEMA,
};

/// One replayed condition.
#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

/// All replayed conditions for one certificate, in replay order.
#[derive(Clone, Debug, Default, Serialize)]
pub struct VerifyReport {
    pub checks: Vec<Check>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    fn record(&mut self, name: &str, problems: Vec<String>, ok_detail: &str) -> bool {
        let pass = problems.is_empty();
        self.checks.push(Check {
            name: name.to_string(),
            pass,
            detail: if pass {
                ok_detail.to_string()
            } else {
                problems.join("; ")
            },
        });
        pass
    }
}

impl fmt::Display for VerifyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            writeln!(
                f,
                "{} {}: {}",
                if c.pass { "PASS" } else { "FAIL" },
                c.name,
                c.detail
            )?;
        }
        write!(
            f,
            "result: {}",
            if self.passed() { "pass" } else { "FAIL" }
        )
    }
}

/// Replays every condition of the certificate. Returns an error only when
/// the document cannot be parsed; all mathematical failures are entries in
/// the report.
pub fn verify_certificate(cert: &Certificate) -> Result<VerifyReport> {
    match cert {
        Certificate::PrescribedLengths(c) => verify_prescribed(c),
        Certificate::Unbounded(c) => verify_unbounded(c),
    }
}

fn parse_bigint(text: &str) -> Result<BigInt> {
    text.parse()
        .map_err(|_| Error::Certificate(format!("bad integer literal {text:?}")))
}

fn parse_bigints(texts: &[String]) -> Result<Vec<BigInt>> {
    texts.iter().map(|t| parse_bigint(t)).collect()
}

fn parse_table(table: &[Vec<String>]) -> Result<Vec<Vec<BigInt>>> {
    table.iter().map(|row| parse_bigints(row)).collect()
}

fn parse_cert_poly(text: &str) -> Result<IntPolynomial> {
    parse_poly(text).map_err(|e| Error::Certificate(format!("bad polynomial {text:?}: {e}")))
}

fn parse_cert_polys(texts: &[String]) -> Result<Vec<IntPolynomial>> {
    texts.iter().map(|t| parse_cert_poly(t)).collect()
}

fn parse_cert_element(text: &str) -> Result<IntValElement> {
    parse_element(text).map_err(|e| Error::Certificate(format!("bad element {text:?}: {e}")))
}

fn parse_predictions(list: &[PredictedFactorization]) -> Result<Vec<Factorization>> {
    let mut out = Vec::with_capacity(list.len());
    for pf in list {
        let mut parts = Vec::with_capacity(pf.parts.len());
        for part in &pf.parts {
            parts.push(parse_cert_element(part)?);
        }
        parts.sort();
        out.push(Factorization {
            unit: pf.unit,
            parts,
        });
    }
    out.sort_by(|x, y| (x.len(), &x.parts).cmp(&(y.len(), &y.parts)));
    Ok(out)
}

fn congruent(a: &BigInt, b: &BigInt, m: &BigInt) -> bool {
    (a - b).is_multiple_of(m)
}

/// Valuation of a polynomial value, `None` meaning the value is zero.
fn value_valuation(q: &BigInt, g: &IntPolynomial, at: &BigInt) -> Option<u64> {
    valuation(q, &g.eval(at))
}

fn product(polys: &[&IntPolynomial]) -> IntPolynomial {
    polys
        .iter()
        .fold(IntPolynomial::one(), |acc, g| &acc * *g)
}

fn product_of_roots(roots: &[BigInt]) -> IntPolynomial {
    roots.iter().fold(IntPolynomial::one(), |acc, r| {
        &acc * &IntPolynomial::linear_root(r)
    })
}

fn verify_prescribed(cert: &PrescribedLengthsCertificate) -> Result<VerifyReport> {
    let mut report = VerifyReport::default();
    let p = parse_bigint(&cert.p)?;
    let p_list = parse_bigints(&cert.p_list)?;
    let q_list = parse_bigints(&cert.q_list)?;
    let a_table = parse_table(&cert.a_table)?;
    let c_table = parse_table(&cert.c_table)?;
    let e = parse_bigint(&cert.e)?;
    let w_recorded = parse_cert_poly(&cert.w)?;
    let g_list = parse_cert_polys(&cert.g_list)?;
    let big_g_list = parse_cert_polys(&cert.big_g_list)?;
    let f_list = cert
        .f_table
        .iter()
        .map(|entry| parse_cert_poly(&entry.f))
        .collect::<Result<Vec<_>>>()?;
    let big_f_list = cert
        .f_table
        .iter()
        .map(|entry| parse_cert_poly(&entry.rep))
        .collect::<Result<Vec<_>>>()?;
    let h_num = parse_cert_poly(&cert.h_num)?;
    let h_elem = parse_cert_element(&cert.h)?;
    let predicted = parse_predictions(&cert.predicted)?;
    let s = SubsetSpec::multiples_of(p.clone())?;
    let n = cert.m_list.len();

    {
        let mut problems = Vec::new();
        if cert.schema != CERT_SCHEMA {
            problems.push(format!("schema {} != {CERT_SCHEMA}", cert.schema));
        }
        if !crate::arith::is_prime(&p) {
            problems.push(format!("{p} is not prime"));
        }
        report.record("schema", problems, "document tag and modulus in order");
    }

    let m_total: u64 = cert.m_list.iter().sum();
    let expected_n = (m_total * m_total - cert.m_list.iter().map(|&m| m * m).sum::<u64>()) as usize;
    {
        let mut problems = Vec::new();
        if n == 0 || cert.m_list.contains(&0) {
            problems.push("lengths must be positive and nonempty".into());
        }
        if cert.m_list.windows(2).any(|w| w[0] > w[1]) {
            problems.push("lengths not nondecreasing".into());
        }
        if cert.big_n != expected_n {
            problems.push(format!("N = {} but lengths give {expected_n}", cert.big_n));
        }
        let big_n = cert.big_n;
        for (what, len) in [
            ("p_list", p_list.len()),
            ("t_list", cert.t_list.len()),
            ("a_table", a_table.len()),
            ("c_table", c_table.len()),
            ("g_list", g_list.len()),
            ("G_list", big_g_list.len()),
            ("index_map", cert.index_map.len()),
        ] {
            if len != big_n {
                problems.push(format!("{what} has {len} entries, want {big_n}"));
            }
        }
        if n > 1 && cert.f_table.len() != m_total as usize {
            problems.push(format!(
                "f_table has {} entries, want {m_total}",
                cert.f_table.len()
            ));
        }
        if n == 1 && !cert.f_table.is_empty() {
            problems.push("single-length certificate must have an empty f_table".into());
        }
        if cert.t_list.windows(2).any(|t| t[0] > t[1]) {
            problems.push("residue counts not nondecreasing".into());
        }
        for (i, (row_a, row_c)) in a_table.iter().zip(&c_table).enumerate() {
            let ti = cert.t_list.get(i).copied().unwrap_or(0);
            if ti < 3 {
                problems.push(format!("t_{} = {ti} < 3", i + 1));
            }
            if row_a.len() != ti || row_c.len() != ti {
                problems.push(format!("row {} length != t_{}", i + 1, i + 1));
            }
        }
        if n > 1 && q_list.is_empty() {
            problems.push("q_list cannot be empty (it contains p)".into());
        }
        if cert.predicted.len() != n {
            problems.push(format!(
                "{} predicted factorizations, want {n}",
                cert.predicted.len()
            ));
        }
        // the index assignment must be a bijection onto the admissible
        // quadruples: k ≠ h, occurrences within the advertised lengths
        let mut seen = BTreeSet::new();
        for quad in &cert.index_map {
            let valid = quad.k >= 1
                && quad.k <= n
                && quad.h >= 1
                && quad.h <= n
                && quad.k != quad.h
                && quad.i >= 1
                && quad.i as u64 <= *cert.m_list.get(quad.k - 1).unwrap_or(&0)
                && quad.j >= 1
                && quad.j as u64 <= *cert.m_list.get(quad.h - 1).unwrap_or(&0);
            if !valid {
                problems.push(format!(
                    "index ({},{},{},{}) out of range",
                    quad.k, quad.i, quad.h, quad.j
                ));
            } else if !seen.insert((quad.k, quad.i, quad.h, quad.j)) {
                problems.push(format!(
                    "index ({},{},{},{}) repeated",
                    quad.k, quad.i, quad.h, quad.j
                ));
            }
        }
        let occurrences: Vec<(usize, usize)> = (1..=n)
            .flat_map(|k| {
                (1..=*cert.m_list.get(k - 1).unwrap_or(&0) as usize).map(move |i| (k, i))
            })
            .collect();
        if n > 1 {
            for (entry, &(k, i)) in cert.f_table.iter().zip(&occurrences) {
                if entry.k != k || entry.i != i {
                    problems.push(format!(
                        "f_table occurrence ({},{}) out of order, want ({k},{i})",
                        entry.k, entry.i
                    ));
                }
            }
        }
        if !report.record("shape", problems, "all tables sized and indexed consistently") {
            return Ok(report);
        }
    }

    if n == 1 {
        return verify_single_length(report, cert, &s, &p, &h_num, &h_elem, &predicted);
    }
    let occurrences: Vec<(usize, usize)> = (1..=n)
        .flat_map(|k| (1..=cert.m_list[k - 1] as usize).map(move |i| (k, i)))
        .collect();

    {
        let mut problems = Vec::new();
        let (want_p, want_t) = auxiliary_primes(&s, &p, cert.big_n, 2)?;
        if p_list != want_p {
            problems.push(format!(
                "auxiliary primes differ from the first {} with more than two classes",
                cert.big_n
            ));
        }
        if cert.t_list != want_t {
            problems.push("recorded residue counts differ from recomputed ones".into());
        }
        let t_max = want_t.last().copied().unwrap_or(0);
        let want_q = small_residue_primes(&s, &p, &p_list, t_max)?;
        if q_list != want_q {
            problems.push("small-residue prime list differs from recomputed one".into());
        }
        report.record(
            "prime_selection",
            problems,
            "auxiliary and small-residue primes replayed",
        );
    }

    {
        let mut problems = Vec::new();
        for (i, (pi, row)) in p_list.iter().zip(&a_table).enumerate() {
            let classes: BTreeSet<BigInt> = row.iter().map(|a| a.mod_floor(pi)).collect();
            if classes.len() != row.len() {
                problems.push(format!("row {} does not hit distinct classes mod {pi}", i + 1));
            }
            if !row[0].is_zero() {
                problems.push(format!("a_({},1) != 0", i + 1));
            }
            if row[1] != p {
                problems.push(format!("a_({},2) != p", i + 1));
            }
        }
        report.record(
            "residue_tables",
            problems,
            "each row is a complete residue system anchored at 0 and p",
        );
    }

    {
        let mut problems = Vec::new();
        for (i, (pi, (row_a, row_c))) in p_list.iter().zip(a_table.iter().zip(&c_table)).enumerate()
        {
            let pi_sq = pi * pi;
            for (j, (a, c)) in row_a.iter().zip(row_c).enumerate() {
                if !congruent(c, a, pi) {
                    problems.push(format!("c_({},{}) != a mod p_{}", i + 1, j + 1, i + 1));
                }
                if congruent(c, a, &pi_sq) {
                    problems.push(format!("c_({},{}) = a mod p_{}^2", i + 1, j + 1, i + 1));
                }
                for (k, (pk, row_k)) in p_list.iter().zip(&a_table).enumerate() {
                    if k != i && (congruent(c, &row_k[0], pk) || congruent(c, &row_k[1], pk)) {
                        problems.push(format!(
                            "c_({},{}) meets an anchor class mod p_{}",
                            i + 1,
                            j + 1,
                            k + 1
                        ));
                    }
                }
                for q in &q_list {
                    if !congruent(c, &BigInt::one(), q) {
                        problems.push(format!("c_({},{}) != 1 mod {q}", i + 1, j + 1));
                    }
                }
            }
        }
        report.record(
            "c_congruences",
            problems,
            "translated residues meet every recorded congruence",
        );
    }

    {
        let mut problems = Vec::new();
        if e.is_zero() {
            problems.push("e = 0".into());
        }
        for (i, (pi, row)) in p_list.iter().zip(&a_table).enumerate() {
            if !congruent(&e, &row[0], pi) {
                problems.push(format!("e != a_({},1) mod p_{}", i + 1, i + 1));
            }
            if congruent(&e, &row[0], &(pi * pi)) {
                problems.push(format!("e = a_({},1) mod p_{}^2", i + 1, i + 1));
            }
        }
        for q in &q_list {
            if !congruent(&e, &BigInt::one(), q) {
                problems.push(format!("e != 1 mod {q}"));
            }
        }
        if w_recorded != IntPolynomial::linear_root(&e) {
            problems.push("w is not x - e".into());
        }
        report.record("e_congruences", problems, "e and w replayed");
    }
    // downstream checks derive w from e, so a corrupted e surfaces in the
    // valuation and fixed-divisor replays and not only above
    let w = IntPolynomial::linear_root(&e);

    {
        let mut problems = Vec::new();
        for (i, (row_c, g)) in c_table.iter().zip(&g_list).enumerate() {
            if g != &product_of_roots(&row_c[1..]) {
                problems.push(format!("g_{} is not the product over its row tail", i + 1));
            }
        }
        for (i, (g, big_g)) in g_list.iter().zip(&big_g_list).enumerate() {
            if big_g.degree() != g.degree() || !big_g.is_monic() {
                problems.push(format!("G_{} degree or leading coefficient off", i + 1));
            }
            if !is_irreducible_qx(big_g)? {
                problems.push(format!("G_{} is reducible over the rationals", i + 1));
            }
        }
        for i in 0..big_g_list.len() {
            for j in (i + 1)..big_g_list.len() {
                if big_g_list[i] == big_g_list[j] {
                    problems.push(format!("G_{} and G_{} coincide", i + 1, j + 1));
                }
            }
        }
        for (idx, &(k, i)) in occurrences.iter().enumerate() {
            let selected: Vec<&IntPolynomial> = cert
                .index_map
                .iter()
                .zip(&big_g_list)
                .filter(|(quad, _)| {
                    (quad.k == k && quad.i == i) || (quad.h == k && quad.j == i)
                })
                .map(|(_, g)| g)
                .collect();
            if f_list[idx] != product(&selected) {
                problems.push(format!("f for occurrence ({k},{i}) is not its row-column product"));
            }
        }
        for (idx, (f, big_f)) in f_list.iter().zip(&big_f_list).enumerate() {
            if big_f.degree() != f.degree() || !big_f.is_monic() {
                problems.push(format!("F #{} degree or leading coefficient off", idx + 1));
            }
            if !is_irreducible_qx(big_f)? {
                problems.push(format!("F #{} is reducible over the rationals", idx + 1));
            }
        }
        for i in 0..big_f_list.len() {
            for j in (i + 1)..big_f_list.len() {
                if big_f_list[i] == big_f_list[j] {
                    problems.push(format!("F #{} and F #{} coincide", i + 1, j + 1));
                }
            }
        }
        report.record(
            "replacements",
            problems,
            "products replayed; replacements monic, irreducible, distinct, degree-matched",
        );
    }

    {
        let mut problems = Vec::new();
        for (i, pi) in p_list.iter().enumerate() {
            if value_valuation(pi, &big_g_list[i], &a_table[i][0]) != Some(0) {
                problems.push(format!("G_{} vanishes mod p_{} at its own base point", i + 1, i + 1));
            }
            for (j, big_g) in big_g_list.iter().enumerate() {
                if j != i
                    && (value_valuation(pi, big_g, &a_table[i][0]) != Some(0)
                        || value_valuation(pi, big_g, &a_table[i][1]) != Some(0))
                {
                    problems.push(format!(
                        "G_{} takes positive valuation mod p_{} on an anchor",
                        j + 1,
                        i + 1
                    ));
                }
            }
            for j in 1..cert.t_list[i] {
                if value_valuation(pi, &big_g_list[i], &a_table[i][j]) != Some(1) {
                    problems.push(format!(
                        "G_{} at a_({},{}) has valuation != 1",
                        i + 1,
                        i + 1,
                        j + 1
                    ));
                }
            }
            if value_valuation(pi, &w, &a_table[i][0]) != Some(1) {
                problems.push(format!("w at a_({},1) has valuation != 1 mod p_{}", i + 1, i + 1));
            }
        }
        let zero = BigInt::zero();
        for q in &q_list {
            if value_valuation(q, &w, &zero) != Some(0) {
                problems.push(format!("w(0) vanishes mod {q}"));
            }
            for (i, big_g) in big_g_list.iter().enumerate() {
                if value_valuation(q, big_g, &zero) != Some(0) {
                    problems.push(format!("G_{}(0) vanishes mod {q}", i + 1));
                }
            }
        }
        report.record(
            "root_valuations",
            problems,
            "every auxiliary prime enters each residue row exactly once",
        );
    }

    let target: BigInt = p_list.iter().product();
    {
        let mut problems = Vec::new();
        let replay = product(
            &std::iter::once(&w)
                .chain(big_f_list.iter())
                .collect::<Vec<_>>(),
        );
        if h_num != replay {
            problems.push("recorded numerator is not w times the replacements".into());
        }
        let d = fixdiv(&s, &h_num)?;
        if d != target {
            problems.push(format!("fixdiv of the numerator is {d}, want {target}"));
        }
        if h_elem != IntValElement::from_fraction(&h_num, &target)? {
            problems.push("H does not reduce to numerator over the auxiliary product".into());
        }
        report.record(
            "fixdiv_identity",
            problems,
            "numerator replayed and its fixed divisor is the auxiliary product",
        );
    }

    {
        let mut problems = Vec::new();
        let mut sq_plain = w.clone();
        let mut sq_rep = w.clone();
        for (g, big_g) in g_list.iter().zip(&big_g_list) {
            sq_plain = &sq_plain * &(g * g);
            sq_rep = &sq_rep * &(big_g * big_g);
        }
        if fixdiv(&s, &sq_plain)? != fixdiv(&s, &sq_rep)? {
            problems.push("first-stage replacement changes the squared-chain fixed divisor".into());
        }
        let full_plain = product(&std::iter::once(&w).chain(f_list.iter()).collect::<Vec<_>>());
        if fixdiv(&s, &full_plain)? != target {
            problems.push("grouped products do not carry the auxiliary fixed divisor".into());
        }
        for h in 1..=n {
            let keep: Vec<usize> = (0..occurrences.len())
                .filter(|&idx| occurrences[idx].0 != h)
                .collect();
            let sel_plain = product(
                &std::iter::once(&w)
                    .chain(keep.iter().map(|&idx| &f_list[idx]))
                    .collect::<Vec<_>>(),
            );
            let sel_rep = product(
                &std::iter::once(&w)
                    .chain(keep.iter().map(|&idx| &big_f_list[idx]))
                    .collect::<Vec<_>>(),
            );
            if fixdiv(&s, &sel_plain)? != fixdiv(&s, &sel_rep)? {
                problems.push(format!(
                    "second-stage replacement changes the fixed divisor with block {h} removed"
                ));
            }
        }
        report.record(
            "replacement_preserves_fixdiv",
            problems,
            "fixed divisors agree before and after both replacement stages",
        );
    }

    {
        let mut problems = Vec::new();
        let mut expected: Vec<Factorization> = Vec::with_capacity(n);
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
            if parts.len() as u64 != cert.m_list[h - 1] + 1 {
                problems.push(format!("prediction for block {h} has the wrong length"));
            }
            expected.push(Factorization { unit: 1, parts });
        }
        expected.sort_by(|x, y| (x.len(), &x.parts).cmp(&(y.len(), &y.parts)));
        if predicted != expected {
            problems.push("recorded predictions differ from the replayed ones".into());
        }
        report.record(
            "predicted_shape",
            problems,
            "one factorization per block, lengths m_i + 1",
        );
    }

    {
        let mut problems = Vec::new();
        let found = factorizations(&s, &h_elem)?;
        if found != predicted {
            problems.push(format!(
                "enumerator found {} factorizations not matching the predicted ones",
                found.len()
            ));
        }
        let lengths: Vec<usize> = found.iter().map(Factorization::len).collect();
        let want: Vec<usize> = cert.m_list.iter().map(|&m| (m + 1) as usize).collect();
        if lengths != want {
            problems.push(format!("length multiset {lengths:?}, want {want:?}"));
        }
        report.record(
            "enumeration",
            problems,
            "independent enumeration reproduces exactly the predicted factorizations",
        );
    }

    Ok(report)
}

fn verify_single_length(
    mut report: VerifyReport,
    cert: &PrescribedLengthsCertificate,
    s: &SubsetSpec,
    p: &BigInt,
    h_num: &IntPolynomial,
    h_elem: &IntValElement,
    predicted: &[Factorization],
) -> Result<VerifyReport> {
    let m = cert.m_list[0];
    let den = crate::arith::big_pow(p, m + 1);
    {
        let mut problems = Vec::new();
        if *h_num != IntPolynomial::monomial(BigInt::one(), (m + 1) as usize) {
            problems.push("numerator is not the pure power of x".into());
        }
        let d = fixdiv(s, h_num)?;
        if d != den {
            problems.push(format!("fixdiv of the numerator is {d}, want {den}"));
        }
        if *h_elem != IntValElement::from_fraction(h_num, &den)? {
            problems.push("H does not reduce to the recorded numerator".into());
        }
        report.record(
            "fixdiv_identity",
            problems,
            "numerator and fixed divisor replayed",
        );
    }
    {
        let mut problems = Vec::new();
        let base = IntValElement::from_fraction(&IntPolynomial::x(), p)?;
        let expected = vec![Factorization {
            unit: 1,
            parts: vec![base; (m + 1) as usize],
        }];
        if predicted != expected {
            problems.push("prediction is not m+1 copies of x over p".into());
        }
        report.record("predicted_shape", problems, "single power factorization");
    }
    {
        let mut problems = Vec::new();
        let found = factorizations(s, h_elem)?;
        if found != predicted {
            problems.push(format!("enumerator found {} factorizations", found.len()));
        }
        report.record(
            "enumeration",
            problems,
            "independent enumeration reproduces the single factorization",
        );
    }
    Ok(report)
}

fn verify_unbounded(cert: &UnboundedCertificate) -> Result<VerifyReport> {
    let mut report = VerifyReport::default();
    let p = parse_bigint(&cert.p)?;
    let p_list = parse_bigints(&cert.p_list)?;
    let q_list = parse_bigints(&cert.q_list)?;
    let big_t = parse_bigints(&cert.big_t)?;
    let a_heads = parse_bigints(&cert.a_heads)?;
    let g = parse_cert_poly(&cert.g)?;
    let big_g = parse_cert_poly(&cert.big_g)?;
    let h_elem = parse_cert_element(&cert.h)?;
    let left_elem = parse_cert_element(&cert.left)?;
    let linear_parts = parse_cert_polys(&cert.linear_parts)?;
    let s = SubsetSpec::multiples_of(p.clone())?;
    let n = cert.n;

    {
        let mut problems = Vec::new();
        if cert.schema != CERT_SCHEMA {
            problems.push(format!("schema {} != {CERT_SCHEMA}", cert.schema));
        }
        if !crate::arith::is_prime(&p) {
            problems.push(format!("{p} is not prime"));
        }
        report.record("schema", problems, "document tag and modulus in order");
    }

    {
        let mut problems = Vec::new();
        if n == 0 {
            problems.push("n must be positive".into());
        }
        for (what, len) in [
            ("p_list", p_list.len()),
            ("t_list", cert.t_list.len()),
            ("a_heads", a_heads.len()),
            ("linear_parts", linear_parts.len()),
        ] {
            if len != n {
                problems.push(format!("{what} has {len} entries, want {n}"));
            }
        }
        if cert.t_list.windows(2).any(|t| t[0] > t[1]) {
            problems.push("residue counts not nondecreasing".into());
        }
        if cert.t_list.iter().any(|&t| t < 2) {
            problems.push("every auxiliary prime needs at least two classes".into());
        }
        let t_max = cert.t_list.last().copied().unwrap_or(0);
        if big_t.len() != t_max {
            problems.push(format!("T has {} entries, want {t_max}", big_t.len()));
        }
        if q_list.is_empty() {
            problems.push("q_list cannot be empty (it contains p)".into());
        }
        if !report.record("shape", problems, "all lists sized consistently") {
            return Ok(report);
        }
    }
    let t_max = *cert.t_list.last().expect("shape checked");

    {
        let mut problems = Vec::new();
        let (want_p, want_t) = auxiliary_primes(&s, &p, n, 1)?;
        if p_list != want_p {
            problems.push(format!("auxiliary primes differ from the first {n} candidates"));
        }
        if cert.t_list != want_t {
            problems.push("recorded residue counts differ from recomputed ones".into());
        }
        let want_q = small_residue_primes(&s, &p, &p_list, t_max + n)?;
        if q_list != want_q {
            problems.push("small-residue prime list differs from recomputed one".into());
        }
        report.record(
            "prime_selection",
            problems,
            "auxiliary and small-residue primes replayed",
        );
    }

    // reconstruct the residue rows: recorded head, then multiples of p
    let a_table: Vec<Vec<BigInt>> = a_heads
        .iter()
        .zip(&cert.t_list)
        .map(|(head, &ti)| {
            let mut row = vec![head.clone()];
            for j in 2..=ti {
                row.push(BigInt::from((j - 1) as u64) * &p);
            }
            row
        })
        .collect();

    {
        let mut problems = Vec::new();
        for (i, (pi, row)) in p_list.iter().zip(&a_table).enumerate() {
            if !row[0].is_multiple_of(pi) {
                problems.push(format!("a_({},1) not in class 0 mod p_{}", i + 1, i + 1));
            }
            if row[0].is_multiple_of(&p) {
                problems.push(format!("a_({},1) divisible by p", i + 1));
            }
            let classes: BTreeSet<BigInt> = row.iter().map(|a| a.mod_floor(pi)).collect();
            if classes.len() != row.len() {
                problems.push(format!("row {} does not hit distinct classes mod {pi}", i + 1));
            }
            if linear_parts[i] != IntPolynomial::linear_root(&row[0]) {
                problems.push(format!("linear part {} is not x - a_({},1)", i + 1, i + 1));
            }
        }
        report.record(
            "residue_heads",
            problems,
            "heads sit in class 0 away from pℤ; rows complete",
        );
    }

    {
        let mut problems = Vec::new();
        for (i, pi) in p_list.iter().enumerate() {
            if !big_t[0].is_multiple_of(pi) {
                problems.push(format!("r_1 != 0 mod p_{}", i + 1));
            }
        }
        for (j, r) in big_t.iter().enumerate().skip(1) {
            for (i, pi) in p_list.iter().enumerate() {
                if j < cert.t_list[i] {
                    if !congruent(r, &a_table[i][j], pi) {
                        problems.push(format!("r_{} != a_({},{}) mod p_{}", j + 1, i + 1, j + 1, i + 1));
                    }
                    if congruent(r, &a_table[i][j], &(pi * pi)) {
                        problems.push(format!("r_{} = a_({},{}) mod p_{}^2", j + 1, i + 1, j + 1, i + 1));
                    }
                } else if !congruent(r, &p, pi) {
                    problems.push(format!("r_{} != p mod p_{}", j + 1, i + 1));
                }
            }
        }
        for (j, r) in big_t.iter().enumerate() {
            for q in &q_list {
                if !congruent(r, &BigInt::one(), q) {
                    problems.push(format!("r_{} != 1 mod {q}", j + 1));
                }
            }
        }
        report.record(
            "t_congruences",
            problems,
            "translated residues meet every recorded congruence",
        );
    }

    {
        let mut problems = Vec::new();
        let want = product_of_roots(&big_t[1..]);
        if g != want {
            problems.push("g is not the product over the tail of T".into());
        }
        if big_g.degree() != g.degree() || !big_g.is_monic() {
            problems.push("G degree or leading coefficient off".into());
        }
        if !is_irreducible_qx(&big_g)? {
            problems.push("G is reducible over the rationals".into());
        }
        report.record(
            "replacement",
            problems,
            "g replayed; G monic, irreducible, degree-matched",
        );
    }

    let aux: BigInt = p_list.iter().product();
    let lin_prod = product(&linear_parts.iter().collect::<Vec<_>>());
    let num_h = &big_g * &lin_prod;
    let num_left = &IntPolynomial::x() * &big_g;
    {
        let mut problems = Vec::new();
        let d_h = fixdiv(&s, &num_h)?;
        if d_h != aux {
            problems.push(format!("fixdiv(G·linears) = {d_h}, want {aux}"));
        }
        let d_left = fixdiv(&s, &num_left)?;
        let want_left = &p * &aux;
        if d_left != want_left {
            problems.push(format!("fixdiv(x·G) = {d_left}, want {want_left}"));
        }
        if h_elem != IntValElement::from_fraction(&num_h, &aux)? {
            problems.push("H does not reduce to G·linears over the auxiliary product".into());
        }
        if left_elem != IntValElement::from_fraction(&num_left, &want_left)? {
            problems.push("left part does not reduce to x·G over p times the auxiliary product".into());
        }
        report.record(
            "fixdiv_identity",
            problems,
            "both displayed numerators carry exactly the advertised divisors",
        );
    }

    {
        let mut problems = Vec::new();
        if fixdiv(&s, &(&g * &lin_prod))? != fixdiv(&s, &num_h)? {
            problems.push("replacement changes fixdiv of g·linears".into());
        }
        if fixdiv(&s, &(&IntPolynomial::x() * &g))? != fixdiv(&s, &num_left)? {
            problems.push("replacement changes fixdiv of x·g".into());
        }
        let full_plain = &(&IntPolynomial::x() * &g) * &lin_prod;
        let full_rep = &num_left * &lin_prod;
        if fixdiv(&s, &full_plain)? != fixdiv(&s, &full_rep)? {
            problems.push("replacement changes fixdiv of the full numerator".into());
        }
        report.record(
            "replacement_preserves_fixdiv",
            problems,
            "fixed divisors agree before and after replacement",
        );
    }

    {
        let mut problems = Vec::new();
        if !is_irreducible(&s, &h_elem)?.irreducible {
            problems.push("H is reducible".into());
        }
        if !is_irreducible(&s, &left_elem)?.irreducible {
            problems.push("left part is reducible".into());
        }
        for (i, lin) in linear_parts.iter().enumerate() {
            if !is_irreducible(&s, &IntValElement::from_poly(lin)?)?.irreducible {
                problems.push(format!("linear part {} is reducible", i + 1));
            }
        }
        report.record("irreducibility", problems, "all displayed parts irreducible");
    }

    let x_over_p = IntValElement::from_fraction(&IntPolynomial::x(), &p)?;
    {
        let mut problems = Vec::new();
        let mut rhs = left_elem.clone();
        for lin in &linear_parts {
            rhs = rhs.mul(&IntValElement::from_poly(lin)?);
        }
        if x_over_p.mul(&h_elem) != rhs {
            problems.push("x/p times H differs from the displayed product".into());
        }
        report.record(
            "product_identity",
            problems,
            "the two displayed factorizations multiply to the same element",
        );
    }

    {
        let mut problems = Vec::new();
        let prod_elem = x_over_p.mul(&h_elem);
        let found = factorizations(&s, &prod_elem)?;
        let mut two = vec![x_over_p.clone(), h_elem.clone()];
        two.sort();
        let two = Factorization { unit: 1, parts: two };
        let mut long_parts = vec![left_elem.clone()];
        for lin in &linear_parts {
            long_parts.push(IntValElement::from_poly(lin)?);
        }
        long_parts.sort();
        let long = Factorization {
            unit: 1,
            parts: long_parts,
        };
        if !found.contains(&two) {
            problems.push("two-part factorization missing from enumeration".into());
        }
        if !found.contains(&long) {
            problems.push(format!("{}-part factorization missing from enumeration", n + 1));
        }
        let length_set: BTreeSet<usize> = found.iter().map(Factorization::len).collect();
        if !length_set.contains(&2) || !length_set.contains(&(n + 1)) {
            problems.push(format!("length set {length_set:?} misses 2 or {}", n + 1));
        }
        report.record(
            "enumeration",
            problems,
            "independent enumeration contains both displayed factorizations",
        );
    }

    Ok(report)
}
