//! `intval`: command-line surface over intval-core.
//!
//! Exit codes: 0 success (and boolean "true"), 1 mathematical "false",
//! 2 input error, 3 verification failure, 4 search budget exhausted.

use std::fs;
use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;
use std::str::FromStr;

use clap::{Parser, Subcommand};
use num_bigint::BigInt;
use serde_json::json;

use intval_core::blockmonoid::{
    atoms_over, block_factorizations, is_atom, lemma24_check, parse_sequence, FiniteAbelianGroup,
};
use intval_core::constructions::verify::verify_certificate;
use intval_core::constructions::{construct_prescribed_lengths, construct_unbounded, Certificate};
use intval_core::intval::{
    factorizations, fixdiv, is_image_primitive, is_irreducible, is_member, lengths, parse_element,
};
use intval_core::poly::parse_poly;
use intval_core::{Error, SubsetSpec};

#[derive(Parser)]
#[command(name = "intval", version, about = "Integer-valued polynomials on subsets of Z: \
fixed divisors, irreducibility, factorization lengths, certified constructions")]
struct Cli {
    /// Emit a machine-readable JSON document instead of plain text.
    #[arg(long, global = true)]
    json: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Fixed divisor of a polynomial over S: gcd of its values on S.
    Fixdiv {
        /// Subset of Z, e.g. "Z", "2Z", "1+4Z", "1+4Z,3+4Z".
        #[arg(long)]
        subset: String,
        /// Polynomial with integer coefficients, e.g. "x^3 + 2*x^2 + 2x + 2".
        poly: String,
    },
    /// Does the element map S into Z?
    Member {
        #[arg(long)]
        subset: String,
        /// Element of Q[x], e.g. "(x^2 - x)/2" or "3*x - 1".
        element: String,
    },
    /// Is the element's numerator content 1 and denominator the full fixed divisor?
    ImagePrimitive {
        #[arg(long)]
        subset: String,
        element: String,
    },
    /// Irreducibility in Int(S, Z); reducible elements come with a witness split.
    Irreducible {
        #[arg(long)]
        subset: String,
        element: String,
    },
    /// All essentially different factorizations into irreducibles.
    Factorize {
        #[arg(long)]
        subset: String,
        element: String,
    },
    /// The multiset of factorization lengths.
    Lengths {
        #[arg(long)]
        subset: String,
        element: String,
    },
    /// Residues of S modulo a prime power.
    Residues {
        #[arg(long)]
        subset: String,
        #[arg(long)]
        prime: String,
        #[arg(long, default_value_t = 1)]
        power: u64,
    },
    /// Primes q with fewer than deg-bound+1 residues in S (the ones that can
    /// divide a fixed divisor at that degree), with their residue counts.
    RelevantPrimes {
        #[arg(long)]
        subset: String,
        #[arg(long)]
        bound: usize,
    },
    /// Build a replayable certificate.
    #[command(subcommand)]
    Construct(ConstructCmd),
    /// Replay every condition of a certificate ("-" reads stdin).
    Verify { path: PathBuf },
    /// Zero-sum sequences over a finite abelian group.
    #[command(subcommand)]
    Block(BlockCmd),
}

#[derive(Subcommand)]
enum ConstructCmd {
    /// An image-primitive element of Int(pZ, Z) whose factorization lengths
    /// are exactly m_1 + 1, ..., m_n + 1.
    Lengths {
        /// Prime p for S = pZ.
        #[arg(long)]
        p: String,
        /// Nondecreasing positive integers, comma-separated, e.g. "1,2".
        #[arg(long, value_delimiter = ',', required = true)]
        m: Vec<u64>,
        /// Write the certificate here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// The degree-(n+1) witness family whose products exhibit factorization
    /// lengths growing without bound over pZ.
    Unbounded {
        #[arg(long)]
        p: String,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum BlockCmd {
    /// Every atom whose support lies in the given sequence, shortest first.
    Atoms {
        /// Group, e.g. "Z3", "Z2xZ2".
        #[arg(long)]
        group: String,
        /// Support elements, e.g. "[1, 2]" or "[(1, 0), (0, 1)]".
        sequence: String,
        /// Length cap; defaults to the group's atom length bound.
        #[arg(long)]
        max_len: Option<usize>,
    },
    /// All factorizations of a zero-sum sequence into atoms.
    Factorize {
        #[arg(long)]
        group: String,
        sequence: String,
    },
    /// Check the two concatenation laws for a pair of atoms U, V.
    Lemma24 {
        #[arg(long)]
        group: String,
        u: String,
        v: String,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {}", e);
            ExitCode::from(match e {
                Error::BudgetExhausted(_) => 4,
                Error::Certificate(_) => 3,
                _ => 2,
            })
        }
    }
}

fn run(cli: &Cli) -> Result<u8, Error> {
    match &cli.command {
        Command::Fixdiv { subset, poly } => {
            let s = SubsetSpec::from_str(subset)?;
            let g = parse_poly(poly)?;
            let d = fixdiv(&s, &g)?;
            if cli.json {
                emit(json!({ "subset": s.to_string(), "poly": g.to_string(), "fixdiv": d.to_string() }));
            } else {
                println!("{}", d);
            }
            Ok(0)
        }
        Command::Member { subset, element } => {
            let s = SubsetSpec::from_str(subset)?;
            let e = parse_element(element)?;
            let yes = is_member(&s, &e)?;
            if cli.json {
                emit(json!({ "subset": s.to_string(), "element": e.to_string(), "member": yes }));
            } else {
                println!("{}", yes);
            }
            Ok(bool_code(yes))
        }
        Command::ImagePrimitive { subset, element } => {
            let s = SubsetSpec::from_str(subset)?;
            let e = parse_element(element)?;
            let yes = is_image_primitive(&s, &e)?;
            if cli.json {
                emit(json!({ "subset": s.to_string(), "element": e.to_string(), "image_primitive": yes }));
            } else {
                println!("{}", yes);
            }
            Ok(bool_code(yes))
        }
        Command::Irreducible { subset, element } => {
            let s = SubsetSpec::from_str(subset)?;
            let e = parse_element(element)?;
            let outcome = is_irreducible(&s, &e)?;
            let witness = outcome
                .witness
                .as_ref()
                .map(|(a, b)| (a.to_string(), b.to_string()));
            if cli.json {
                emit(json!({
                    "subset": s.to_string(),
                    "element": e.to_string(),
                    "irreducible": outcome.irreducible,
                    "witness": witness.as_ref().map(|(a, b)| vec![a, b]),
                }));
            } else {
                println!("{}", outcome.irreducible);
                if let Some((a, b)) = &witness {
                    println!("witness: ({}) * ({})", a, b);
                }
            }
            Ok(bool_code(outcome.irreducible))
        }
        Command::Factorize { subset, element } => {
            let s = SubsetSpec::from_str(subset)?;
            let e = parse_element(element)?;
            let facs = factorizations(&s, &e)?;
            if cli.json {
                let docs: Vec<_> = facs
                    .iter()
                    .map(|f| {
                        json!({
                            "unit": f.unit,
                            "parts": f.parts.iter().map(|p| p.to_string()).collect::<Vec<_>>(),
                        })
                    })
                    .collect();
                emit(json!({
                    "subset": s.to_string(),
                    "element": e.to_string(),
                    "count": facs.len(),
                    "factorizations": docs,
                }));
            } else {
                for f in &facs {
                    println!("{}", f);
                }
            }
            Ok(0)
        }
        Command::Lengths { subset, element } => {
            let s = SubsetSpec::from_str(subset)?;
            let e = parse_element(element)?;
            let ls = lengths(&s, &e)?;
            if cli.json {
                emit(json!({
                    "subset": s.to_string(),
                    "element": e.to_string(),
                    "multiset": ls.multiset(),
                    "set": ls.set(),
                }));
            } else {
                println!("{}", braced(&ls.set()));
            }
            Ok(0)
        }
        Command::Residues { subset, prime, power } => {
            let s = SubsetSpec::from_str(subset)?;
            let q = parse_bigint(prime)?;
            let data = s.residues_mod(&q, *power)?;
            if cli.json {
                emit(json!({
                    "subset": s.to_string(),
                    "prime": data.prime.to_string(),
                    "power": data.power,
                    "modulus": data.modulus.to_string(),
                    "residues": data.residues.iter().map(|r| r.to_string()).collect::<Vec<_>>(),
                }));
            } else {
                println!(
                    "{} residues mod {}: {}",
                    data.residues.len(),
                    data.modulus,
                    data.residues
                        .iter()
                        .map(|r| r.to_string())
                        .collect::<Vec<_>>()
                        .join(", ")
                );
            }
            Ok(0)
        }
        Command::RelevantPrimes { subset, bound } => {
            let s = SubsetSpec::from_str(subset)?;
            let primes = s.relevant_primes(*bound)?;
            if cli.json {
                let docs: Vec<_> = primes
                    .iter()
                    .map(|(q, t)| json!({ "prime": q.to_string(), "residues": t }))
                    .collect();
                emit(json!({ "subset": s.to_string(), "bound": bound, "primes": docs }));
            } else {
                for (q, t) in &primes {
                    println!("{}: {} residues", q, t);
                }
            }
            Ok(0)
        }
        Command::Construct(cmd) => run_construct(cli, cmd),
        Command::Verify { path } => {
            let text = read_input(path)?;
            let cert = Certificate::from_json(&text)?;
            let report = verify_certificate(&cert)?;
            if cli.json {
                emit(json!({ "passed": report.passed(), "checks": report.checks }));
            } else {
                println!("{}", report);
            }
            Ok(if report.passed() { 0 } else { 3 })
        }
        Command::Block(cmd) => run_block(cli, cmd),
    }
}

fn run_construct(cli: &Cli, cmd: &ConstructCmd) -> Result<u8, Error> {
    let (cert, out) = match cmd {
        ConstructCmd::Lengths { p, m, out } => {
            let p = parse_bigint(p)?;
            let cert = construct_prescribed_lengths(&p, m)?;
            (Certificate::PrescribedLengths(cert), out)
        }
        ConstructCmd::Unbounded { p, n, out } => {
            let p = parse_bigint(p)?;
            let cert = construct_unbounded(&p, *n)?;
            (Certificate::Unbounded(cert), out)
        }
    };
    let text = cert.to_json();
    match out {
        Some(path) => {
            fs::write(path, text.as_bytes())
                .map_err(|e| Error::InvalidInput(format!("cannot write {}: {}", path.display(), e)))?;
            if cli.json {
                emit(json!({ "written": path.display().to_string() }));
            } else {
                println!("wrote {}", path.display());
            }
        }
        None => println!("{}", text),
    }
    Ok(0)
}

fn run_block(cli: &Cli, cmd: &BlockCmd) -> Result<u8, Error> {
    match cmd {
        BlockCmd::Atoms { group, sequence, max_len } => {
            let g = FiniteAbelianGroup::from_str(group)?;
            let support = parse_sequence(&g, sequence)?;
            let elems: Vec<_> = support.counts().keys().cloned().collect();
            let cap = max_len.unwrap_or_else(|| g.atom_length_bound());
            let atoms = atoms_over(&g, &elems, cap)?;
            if cli.json {
                emit(json!({
                    "group": group,
                    "max_len": cap,
                    "atoms": atoms.iter().map(|a| a.to_string()).collect::<Vec<_>>(),
                }));
            } else {
                for a in &atoms {
                    println!("{}", a);
                }
            }
            Ok(0)
        }
        BlockCmd::Factorize { group, sequence } => {
            let g = FiniteAbelianGroup::from_str(group)?;
            let seq = parse_sequence(&g, sequence)?;
            let facs = block_factorizations(&seq)?;
            if cli.json {
                let docs: Vec<_> = facs
                    .iter()
                    .map(|f| f.parts.iter().map(|p| p.to_string()).collect::<Vec<_>>())
                    .collect();
                emit(json!({
                    "group": group,
                    "sequence": seq.to_string(),
                    "atom": is_atom(&seq)?,
                    "count": facs.len(),
                    "factorizations": docs,
                }));
            } else {
                for f in &facs {
                    println!("{}", f);
                }
            }
            Ok(0)
        }
        BlockCmd::Lemma24 { group, u, v } => {
            let g = FiniteAbelianGroup::from_str(group)?;
            let us = parse_sequence(&g, u)?;
            let vs = parse_sequence(&g, v)?;
            let report = lemma24_check(&us, &vs)?;
            if cli.json {
                emit(json!({
                    "group": group,
                    "u": us.to_string(),
                    "v": vs.to_string(),
                    "max_len": report.max_len,
                    "upper_bound_holds": report.upper_bound_holds,
                    "attains_max_card": report.attains_max_card,
                    "v_is_minus_u": report.v_is_minus_u,
                    "equality_law_holds": report.equality_law_holds,
                    "conforms": report.conforms(),
                }));
            } else {
                println!("max factorization length of U·V: {}", report.max_len);
                println!("bounded by min(|U|, |V|): {}", report.upper_bound_holds);
                println!("attains max(|U|, |V|): {}", report.attains_max_card);
                println!("V = -U: {}", report.v_is_minus_u);
                println!("equality law holds: {}", report.equality_law_holds);
            }
            Ok(bool_code(report.conforms()))
        }
    }
}

fn bool_code(b: bool) -> u8 {
    if b {
        0
    } else {
        1
    }
}

fn emit(doc: serde_json::Value) {
    println!("{}", serde_json::to_string_pretty(&doc).expect("serializable document"));
}

fn braced(set: &[usize]) -> String {
    let inner: Vec<String> = set.iter().map(|n| n.to_string()).collect();
    format!("{{{}}}", inner.join(", "))
}

fn parse_bigint(s: &str) -> Result<BigInt, Error> {
    s.trim()
        .parse::<BigInt>()
        .map_err(|_| Error::InvalidInput(format!("'{}' is not an integer", s)))
}

fn read_input(path: &PathBuf) -> Result<String, Error> {
    if path.as_os_str() == "-" {
        let mut buf = String::new();
        std::io::stdin()
            .read_to_string(&mut buf)
            .map_err(|e| Error::InvalidInput(format!("cannot read stdin: {}", e)))?;
        Ok(buf)
    } else {
        fs::read_to_string(path)
            .map_err(|e| Error::InvalidInput(format!("cannot read {}: {}", path.display(), e)))
    }
}
