//! Command-line front end for the `ilink` library.
//!
//! Exit codes: 0 when every assertion of a run holds, 1 when a mathematical
//! assertion fails, 2 for usage and resource errors.

pub mod record;

use std::ffi::OsString;
use std::fmt::Display;
use std::path::{Path, PathBuf};
use std::time::{SystemTime, UNIX_EPOCH};

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use ilink::complex::{
    build_m_j, full_join_abc, m_complex, n1_removed_simplex, n2_removed_simplex, suspended_skeleton,
    triple_join, write_complex, Complex, Simplex,
};
use ilink::geometry::{lk2, parse_points, ApexPolicy, GeometricMap};
use ilink::links::{
    m_embedding, suspended_skeleton_embedding, verify_prop_1_3, verify_remark_1_4, verify_suspension_claims,
    verify_theorem_1_2, Prop13Target,
};
use ilink::obstruction::{verify_lemma_2_1, verify_theorem_2_2};

use record::{report_schema, validate_record, VerificationRecord, RNG_DESCRIPTION};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FINDING: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Parser, Debug)]
#[command(name = "ilink", version, about = "Intrinsic linking checks for simplicial complexes in R^2n")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Write a complex in the text format.
    Build {
        name: ComplexName,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run one verification and print its JSON record.
    Verify {
        claim: Claim,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 20)]
        trials: usize,
        /// Subcomplex family for prop13.
        #[arg(long, value_enum, default_value_t = Target::AllMaximal)]
        target: Target,
        /// Also write the record to this file.
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Write an embedding as a coordinate file.
    Embed {
        complex: EmbedName,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Mod-2 linking number of two spheres given by their top simplices.
    Lk {
        #[arg(long)]
        map: PathBuf,
        /// A top simplex of the first sphere as space- or comma-separated labels; repeatable.
        #[arg(long, required = true)]
        gamma: Vec<String>,
        #[arg(long, required = true)]
        delta: Vec<String>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Print the JSON schema of verification records, or check a record against it.
    Schema {
        #[arg(long)]
        validate: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ComplexName {
    /// M^(n)
    M,
    /// σ_{2n}^{n-1} * {a,b,c}
    FullJoin,
    N1,
    N2,
    /// S(σ_{2n+1}^{n-1})
    Suspension,
    /// [3]^{*n}
    TripleJoin,
    /// M_J^(n) with J = [3]^{*n}
    MTriple,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Claim {
    Lemma21,
    Thm22,
    Thm12,
    Prop13,
    Remark14,
    SuspensionClaims,
}

impl Claim {
    fn id(self) -> &'static str {
        match self {
            Claim::Lemma21 => "lemma21",
            Claim::Thm22 => "thm22",
            Claim::Thm12 => "thm12",
            Claim::Prop13 => "prop13",
            Claim::Remark14 => "remark14",
            Claim::SuspensionClaims => "suspension-claims",
        }
    }

    fn max_n(self) -> usize {
        match self {
            Claim::Remark14 | Claim::SuspensionClaims => 2,
            _ => 3,
        }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Target {
    N1,
    N2,
    AllMaximal,
}

impl From<Target> for Prop13Target {
    fn from(t: Target) -> Self {
        match t {
            Target::N1 => Prop13Target::N1,
            Target::N2 => Prop13Target::N2,
            Target::AllMaximal => Prop13Target::AllMaximal,
        }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum EmbedName {
    M,
    Suspension,
    N1,
    N2,
}

struct Failure(i32, String);

fn usage(msg: impl Display) -> Failure {
    Failure(EXIT_USAGE, msg.to_string())
}

fn check_range(n: usize, max: usize) -> Result<(), Failure> {
    if n == 0 || n > max {
        return Err(usage(format!("n = {n} is outside the supported range 1..={max}")));
    }
    Ok(())
}

fn emit(text: &str, out: Option<&Path>) -> Result<(), Failure> {
    match out {
        Some(p) => std::fs::write(p, text).map_err(|e| usage(format!("cannot write {}: {e}", p.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

/// Runs the CLI on `args` (including the program name) and returns the exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_PASS };
            let _ = e.print();
            return code;
        }
    };
    match dispatch(cli.command) {
        Ok(code) => code,
        Err(Failure(code, msg)) => {
            eprintln!("error: {msg}");
            code
        }
    }
}

fn dispatch(cmd: Command) -> Result<i32, Failure> {
    match cmd {
        Command::Build { name, n, out } => {
            check_range(n, 3)?;
            let k = build(name, n).map_err(usage)?;
            emit(&write_complex(&k), out.as_deref())?;
            Ok(EXIT_PASS)
        }
        Command::Verify { claim, n, seed, trials, target, json } => {
            check_range(n, claim.max_n())?;
            let record = verify(claim, n, seed, trials, target)?;
            let text = record.to_json();
            if let Some(p) = &json {
                emit(&text, Some(p))?;
            }
            print!("{text}");
            eprintln!("{}: {} ({})", claim.id(), if record.pass { "pass" } else { "FAIL" }, record.summary);
            Ok(if record.pass { EXIT_PASS } else { EXIT_FINDING })
        }
        Command::Embed { complex, n, seed, out } => {
            check_range(n, 3)?;
            let text = embed(complex, n, seed)?;
            emit(&text, out.as_deref())?;
            Ok(EXIT_PASS)
        }
        Command::Lk { map, gamma, delta, seed } => linking(&map, &gamma, &delta, seed),
        Command::Schema { validate } => match validate {
            None => {
                println!("{}", serde_json::to_string_pretty(&report_schema()).expect("schema serialises"));
                Ok(EXIT_PASS)
            }
            Some(p) => {
                let text = std::fs::read_to_string(&p).map_err(|e| usage(format!("cannot read {}: {e}", p.display())))?;
                let errors = match serde_json::from_str::<Value>(&text) {
                    Ok(v) => validate_record(&v),
                    Err(e) => vec![format!("not JSON: {e}")],
                };
                if errors.is_empty() {
                    println!("valid");
                    Ok(EXIT_PASS)
                } else {
                    for e in &errors {
                        println!("invalid: {e}");
                    }
                    Ok(EXIT_FINDING)
                }
            }
        },
    }
}

fn build(name: ComplexName, n: usize) -> Result<Complex, String> {
    let err = |e: ilink::complex::ComplexError| e.to_string();
    Ok(match name {
        ComplexName::M => m_complex(n).map_err(err)?,
        ComplexName::FullJoin => full_join_abc(n).map_err(err)?,
        ComplexName::N1 => {
            let m = m_complex(n).map_err(err)?;
            m.delete_simplices([&n1_removed_simplex(&m, n)]).map_err(err)?
        }
        ComplexName::N2 => {
            let m = m_complex(n).map_err(err)?;
            m.delete_simplices([&n2_removed_simplex(&m, n)]).map_err(err)?
        }
        ComplexName::Suspension => suspended_skeleton(n).map_err(err)?,
        ComplexName::TripleJoin => triple_join(n).map_err(err)?,
        ComplexName::MTriple => build_m_j(&triple_join(n).map_err(err)?, n).map_err(err)?,
    })
}

fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("reports serialise")
}

/// Moves `key` out of an evidence object into the witness slot.
fn split_witness(mut evidence: Value, key: &str) -> (Value, Value) {
    let w = evidence.as_object_mut().and_then(|m| m.remove(key)).unwrap_or(Value::Null);
    (evidence, w)
}

fn verify(claim: Claim, n: usize, seed: u64, trials: usize, target: Target) -> Result<VerificationRecord, Failure> {
    let mut parameters = json!({});
    let (pass, summary, evidence, witnesses) = match claim {
        Claim::Lemma21 => {
            let r = verify_lemma_2_1(n).map_err(usage)?;
            let s = format!("dim H^{} = {}, {} top cells, rank {}", 2 * n, r.cohomology_dim, r.top_cells, r.coboundary_rank);
            (r.pass, s, to_value(&r), Value::Null)
        }
        Claim::Thm22 => {
            parameters = json!({ "trials": trials });
            let r = verify_theorem_2_2(n, trials, seed).map_err(usage)?;
            let s = format!("{}/{} odd double-point totals, {} class checks", r.odd_trials, trials, r.class_checks.len());
            (r.pass, s, to_value(&r), Value::Null)
        }
        Claim::Thm12 => {
            let r = verify_theorem_1_2(n, seed).map_err(usage)?;
            let s = format!(
                "sum of lk2 over {} pairs = {}, {} nontrivial, {} filling mismatches",
                r.pairs.len(),
                r.lk_sum,
                r.nontrivial.len(),
                r.eq1_mismatches
            );
            let (e, w) = split_witness(to_value(&r), "coordinates");
            (r.pass, s, e, w)
        }
        Claim::Prop13 => {
            parameters = json!({ "target": format!("{target:?}") });
            let r = verify_prop_1_3(n, target.into(), seed).map_err(usage)?;
            let nonzero: usize = r.certificates.iter().map(|c| c.nontrivial_pairs).sum();
            let s = format!("{} certificates, {} nontrivial surviving links", r.certificates.len(), nonzero);
            let (e, w) = split_witness(to_value(&r), "certificates");
            (r.pass, s, e, w)
        }
        Claim::Remark14 => {
            parameters = json!({ "trials": trials });
            let r = verify_remark_1_4(n, trials, seed).map_err(usage)?;
            let s = format!(
                "isomorphic: {}, dim H^{} = {}, {}/{} odd",
                r.isomorphic_to_reference,
                2 * n,
                r.cohomology.cohomology_dim,
                r.parity.odd_trials,
                trials
            );
            (r.pass, s, to_value(&r), Value::Null)
        }
        Claim::SuspensionClaims => {
            let r = verify_suspension_claims(n, seed).map_err(usage)?;
            let s = format!(
                "{} copies, sharing {:?}, {} nontrivial links, sum mod 4 = {} (single embedding)",
                r.copies, r.sharing, r.lk_sum, r.lk_sum_mod_4
            );
            let (e, w) = split_witness(to_value(&r), "coordinates");
            (r.pass, s, e, w)
        }
    };
    let timestamp = SystemTime::now().duration_since(UNIX_EPOCH).map(|d| d.as_secs()).unwrap_or(0);
    Ok(VerificationRecord {
        claim: claim.id().into(),
        n,
        seed,
        parameters,
        pass,
        summary,
        evidence,
        witnesses,
        rng: RNG_DESCRIPTION.into(),
        timestamp,
    })
}

fn embed(name: EmbedName, n: usize, seed: u64) -> Result<String, Failure> {
    match name {
        EmbedName::M => Ok(m_embedding(n, seed).map_err(usage)?.to_text()),
        EmbedName::Suspension => Ok(suspended_skeleton_embedding(n, seed).map_err(usage)?.to_text()),
        EmbedName::N1 | EmbedName::N2 => {
            let (target, idx) = if matches!(name, EmbedName::N1) { (Prop13Target::N1, 0) } else { (Prop13Target::N2, 1) };
            let r = verify_prop_1_3(n, target, seed).map_err(usage)?;
            let mut text = format!("# ambient: {}\n", 2 * n);
            for (label, coords) in &r.certificates[idx].coordinates {
                text.push_str(label);
                for c in coords {
                    text.push(' ');
                    text.push_str(c);
                }
                text.push('\n');
            }
            Ok(text)
        }
    }
}

fn parse_simplex(names: &[String], spec: &str) -> Result<Simplex, Failure> {
    let ids = spec
        .split(|c: char| c == ',' || c.is_whitespace())
        .filter(|s| !s.is_empty())
        .map(|l| names.iter().position(|n| n == l).ok_or_else(|| usage(format!("unknown vertex `{l}`"))))
        .collect::<Result<Vec<_>, _>>()?;
    if ids.is_empty() {
        return Err(usage("empty simplex"));
    }
    Ok(Simplex::new(ids))
}

fn linking(map: &Path, gamma: &[String], delta: &[String], seed: u64) -> Result<i32, Failure> {
    let text = std::fs::read_to_string(map).map_err(|e| usage(format!("cannot read {}: {e}", map.display())))?;
    let (ambient, labelled) = parse_points(&text).map_err(usage)?;
    let names: Vec<String> = labelled.iter().map(|(l, _)| l.clone()).collect();
    let g = Complex::from_generators(names.clone(), gamma.iter().map(|s| parse_simplex(&names, s)).collect::<Result<Vec<_>, _>>()?);
    let d = Complex::from_generators(names.clone(), delta.iter().map(|s| parse_simplex(&names, s)).collect::<Result<Vec<_>, _>>()?);
    let slots = labelled.into_iter().map(|(_, p)| Some(p)).collect();
    let f = GeometricMap::new(g.union(&d), ambient, slots).map_err(usage)?;
    let bit = lk2(&f, &g, &d, &ApexPolicy::with_seed(seed)).map_err(usage)?;
    println!("{}", json!({ "lk2": bit as u8, "seed": seed }));
    Ok(EXIT_PASS)
}
