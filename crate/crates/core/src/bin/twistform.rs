use std::fs;
use std::io::{self, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use twistform::classify::{self, brute_force_orbits, w_matrix, Certificate};
use twistform::geometry::{aut_membership, aut_point_stabilizer, aut_structural_check, enum_points, point_counts, singular_points, AutCandidate, ProjectivePoint};
use twistform::gf::{build_field, Field, Twist, DEFAULT_MAX_EXT_DEGREE};
use twistform::verify::{verify, Verdict};
use twistform::wire::{self, elem_to_json, field_to_json, label_to_json, matrix_to_json};
use twistform::Error;

/// Classify q-twisted congruence forms over finite fields.
///
/// Exit codes: 0 success, 1 other failure, 2 malformed input,
/// 3 unsupported rank, 4 extension cap exceeded, 5 verification failed.
#[derive(Parser)]
#[command(name = "twistform", version)]
struct Cli {
    /// Largest extension degree the classifiers may pass to.
    #[arg(long, global = true, env = "TWISTFORM_MAX_EXT", default_value_t = DEFAULT_MAX_EXT_DEGREE)]
    max_ext_degree: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Input {
    /// Matrix JSON: a path, `-` for stdin, or the JSON text itself.
    #[arg(long = "in", default_value = "-")]
    input: String,
    /// Write the certificate here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    q: u64,
}

#[derive(Subcommand)]
enum Command {
    /// Certificate taking the matrix to its normal form.
    Classify(Input),
    /// Certificate taking a full-rank matrix to the identity.
    Normalize(Input),
    /// Replay a certificate.
    Verify {
        /// Certificate path, or `-` for stdin.
        cert: String,
    },
    /// Points and singular points of the normal-form hypersurface.
    Points {
        #[arg(long)]
        q: u64,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        s: usize,
        /// Points are taken over F_{p^d}.
        #[arg(long)]
        field_degree: usize,
        /// Also count points over F_{q^j} for j up to this.
        #[arg(long, default_value_t = 0)]
        counts: usize,
    },
    /// Whether a matrix is an automorphism of the normal form, with the block conditions.
    Aut {
        #[arg(long)]
        q: u64,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        s: usize,
        #[arg(long)]
        matrix: String,
    },
    /// Exhaustive orbit partition over F_{q^m}.
    Orbits {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        q: u64,
        #[arg(long, default_value_t = 1)]
        m: usize,
        #[arg(long)]
        rank: usize,
    },
    /// Seeded matrix of size n+1 and the given rank over F_{q^m}.
    Random {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        q: u64,
        #[arg(long, default_value_t = 1)]
        m: usize,
        #[arg(long)]
        rank: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

struct Malformed(anyhow::Error);

fn read_text(source: &str) -> anyhow::Result<String> {
    if source.trim_start().starts_with('{') {
        return Ok(source.to_string());
    }
    if source == "-" {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s).context("reading stdin")?;
        return Ok(s);
    }
    fs::read_to_string(source).with_context(|| format!("reading {source}"))
}

fn exit_code(err: &anyhow::Error) -> u8 {
    if err.downcast_ref::<Malformed>().is_some() {
        return 2;
    }
    match err.downcast_ref::<Error>() {
        Some(
            Error::Malformed(_)
            | Error::NotPrime(_)
            | Error::CharacteristicTooLarge(_)
            | Error::DegreeOutOfBounds { .. }
            | Error::NotAPowerOfP { .. }
            | Error::FieldMismatch { .. }
            | Error::NotSubfield { .. }
            | Error::DimensionMismatch(_)
            | Error::IndexOutOfRange { .. },
        ) => 2,
        Some(Error::RankMismatch { .. } | Error::Singular) => 3,
        Some(Error::ExtensionCap { .. }) => 4,
        _ => 1,
    }
}

impl std::fmt::Debug for Malformed {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{:#}", self.0)
    }
}

impl std::fmt::Display for Malformed {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "malformed input: {:#}", self.0)
    }
}

impl std::error::Error for Malformed {}

fn load_matrix(source: &str) -> anyhow::Result<(twistform::linalg::Matrix, Option<u64>)> {
    let text = read_text(source).map_err(Malformed)?;
    Ok(wire::parse_matrix(&text)?)
}

fn emit(value: &str, out: Option<&PathBuf>) -> anyhow::Result<()> {
    match out {
        Some(path) => fs::write(path, format!("{value}\n")).with_context(|| format!("writing {}", path.display())),
        None => Ok(writeln!(io::stdout().lock(), "{value}")?),
    }
}

fn print_json(v: &Value) -> anyhow::Result<()> {
    emit(&serde_json::to_string_pretty(v)?, None)
}

fn certify(input: &Input, cap: usize, run: fn(&twistform::linalg::Matrix, Twist, usize) -> twistform::Result<Certificate>) -> anyhow::Result<ExitCode> {
    let (a, seed) = load_matrix(&input.input)?;
    let q = Twist::for_field(input.q, a.field())?;
    let mut cert = run(&a, q, cap)?;
    cert.seed = seed;
    emit(&wire::certificate_to_string(&cert), input.out.as_ref())?;
    Ok(ExitCode::SUCCESS)
}

fn points_json(field: &Field, pts: &[ProjectivePoint]) -> Value {
    Value::Array(pts.iter().map(|p| Value::String(p.format(field))).collect())
}

fn run(cli: Cli) -> anyhow::Result<ExitCode> {
    let cap = cli.max_ext_degree;
    match cli.command {
        Command::Classify(input) => certify(&input, cap, classify::classify),
        Command::Normalize(input) => certify(&input, cap, classify::normalize),
        Command::Verify { cert } => {
            let text = read_text(&cert).map_err(Malformed)?;
            let cert = wire::parse_certificate(&text)?;
            match verify(&cert)? {
                Verdict::Pass => {
                    print_json(&json!({ "verdict": "pass", "label": label_to_json(cert.label), "seed": cert.seed }))?;
                    Ok(ExitCode::SUCCESS)
                }
                Verdict::Fail { step, reason } => {
                    print_json(&json!({ "verdict": "fail", "step": step, "reason": reason, "seed": cert.seed }))?;
                    eprintln!("verification failed at step {step}: {reason}");
                    Ok(ExitCode::from(5))
                }
            }
        }
        Command::Points { q, n, s, field_degree, counts } => {
            let q = Twist::new(q)?;
            let k = build_field(q.p() as u64, field_degree)?;
            let w = w_matrix(&k, n, s)?;
            let pts = enum_points(&w, q, &k)?;
            let sing = singular_points(&w, q, &k)?;
            let by_j = point_counts(&w_matrix(&build_field(q.p() as u64, 1)?, n, s)?, q, counts)?;
            print_json(&json!({
                "n": n,
                "s": s,
                "q": q.q(),
                "field": field_to_json(&k),
                "count": pts.len(),
                "points": points_json(&k, &pts),
                "singular": points_json(&k, &sing),
                "counts_over_q_powers": by_j,
            }))?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Aut { q, n, s, matrix } => {
            let (m, _) = load_matrix(&matrix)?;
            let q = Twist::for_field(q, m.field())?;
            if m.rows() != n + 1 || !m.is_square() {
                bail!(Error::DimensionMismatch(format!("need a {0}x{0} matrix for n={n}", n + 1)));
            }
            let k = m.field();
            let delta = aut_membership(&m, s, n, q)?;
            let report = aut_structural_check(&AutCandidate::from_matrix(&m, q)?, s, n, q)?;
            let list = |c: &[(&str, bool)]| -> Value { c.iter().map(|(name, ok)| json!({ "condition": name, "holds": ok })).collect() };
            print_json(&json!({
                "n": n,
                "s": s,
                "q": q.q(),
                "member": delta.is_some(),
                "delta": delta.map(|d| elem_to_json(k, &d)),
                "structural": { "holds": report.holds(), "conditions": list(&report.conditions) },
                "compact": { "holds": report.compact_holds(), "conditions": list(&report.compact) },
                "preserves_points": aut_point_stabilizer(&m, s, n, q, k)?,
            }))?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Orbits { n, q, m, rank } => {
            let r = brute_force_orbits(n, Twist::new(q)?, m, rank, cap)?;
            let ladder: Value = r
                .ladder
                .iter()
                .map(|l| {
                    json!({
                        "degree": l.degree,
                        "disjoint": l.disjoint,
                        "orbits": l.orbit_sizes.iter().map(|(label, size)| json!({ "label": label_to_json(*label), "size": size })).collect::<Vec<_>>(),
                    })
                })
                .collect();
            let classes: Value = r
                .classes
                .iter()
                .map(|c| {
                    json!({
                        "representative": matrix_to_json(&c.representative),
                        "size": c.size,
                        "landed": c.landed.map(|(label, degree)| json!({ "label": label_to_json(label), "degree": degree })),
                        "classified": c.pipeline.map(label_to_json),
                        "members_checked": c.checked,
                        "members_agree": c.members_agree,
                    })
                })
                .collect();
            print_json(&json!({
                "n": n,
                "q": q,
                "m": m,
                "rank": rank,
                "consistent": r.consistent(),
                "unresolved": r.unresolved(),
                "ladder": ladder,
                "classes": classes,
            }))?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Random { n, q, m, rank, seed } => {
            let q = Twist::new(q)?;
            let k = build_field(q.p() as u64, q.e() as usize * m)?;
            let a = twistform::random::random_rank_matrix(&k, n + 1, rank, seed)?;
            let mut json = matrix_to_json(&a);
            json.seed = Some(seed);
            print_json(&serde_json::to_value(json)?)?;
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(err) if err.downcast_ref::<io::Error>().is_some_and(|e| e.kind() == io::ErrorKind::BrokenPipe) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(exit_code(&err))
        }
    }
}
