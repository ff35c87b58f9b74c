//! `starpir`: analyze, search and simulate star-product PIR schemes.
//!
//! Exit codes: 0 success, 1 computation error, 2 malformed input,
//! 3 enumeration cap exceeded. Errors are written to stderr as JSON.

mod descriptor;
mod family;

use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::de::DeserializeOwned;
use serde::Serialize;
use serde_json::{json, Value};
use starpir::code::DEFAULT_ENUM_BITS;
use starpir::cyclic::{cyclotomic_cosets, two_weight_profile, two_weight_scheme};
use starpir::pir::{self, AnalyzeOptions, KnownDistances, StorageSystem, TransitivityHint};
use starpir::{frac, search, verify, Distance, Field, LinearCode};

use descriptor::{CodeDescriptor, Symbol};
use family::FamilySpec;

#[derive(Debug, thiserror::Error)]
enum CliError {
    #[error("{0}")]
    Parse(String),
    #[error("{0}")]
    Io(String),
    #[error(transparent)]
    Core(#[from] starpir::Error),
}

impl CliError {
    fn kind(&self) -> &'static str {
        match self {
            CliError::Parse(_) => "parse",
            CliError::Io(_) => "io",
            CliError::Core(starpir::Error::CapExceeded { .. }) => "cap_exceeded",
            CliError::Core(_) => "computation",
        }
    }

    fn exit_code(&self) -> u8 {
        match self.kind() {
            "parse" => 2,
            "cap_exceeded" => 3,
            _ => 1,
        }
    }
}

type CliResult<T> = Result<T, CliError>;

#[derive(Parser)]
#[command(
    name = "starpir",
    version,
    about = "Star-product PIR toolkit over small finite fields"
)]
struct Cli {
    /// Emit JSON instead of a text report.
    #[arg(long, global = true)]
    json: bool,
    /// Lower the exhaustive-enumeration cap to 2^BITS steps.
    #[arg(long, global = true, value_name = "BITS", value_parser = clap::value_parser!(u32).range(1..=DEFAULT_ENUM_BITS as i64))]
    max_enum: Option<u32>,
    /// Write the report to a file instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Hint {
    None,
    Cyclic,
    ExtendedCyclic,
    Replicated,
    /// Use the strongest hint that checks out.
    Auto,
}

#[derive(Subcommand)]
enum Command {
    /// Parameters of the scheme with storage code C and retrieval code D.
    Analyze {
        storage: PathBuf,
        retrieval: PathBuf,
        #[arg(long, value_enum, default_value_t = Hint::None)]
        hint: Hint,
        /// Known d(C), skipping its computation.
        #[arg(long, value_parser = parse_distance)]
        storage_distance: Option<Distance>,
        /// Known d(D^perp).
        #[arg(long, value_parser = parse_distance)]
        dual_distance: Option<Distance>,
        /// Known d(C * D).
        #[arg(long, value_parser = parse_distance)]
        star_distance: Option<Distance>,
    },
    /// Cyclotomic cosets of q modulo n.
    Cosets { n: usize, q: u64 },
    /// Star product of two codes.
    Star { a: PathBuf, b: PathBuf },
    /// Collusion bound from partitions into disjoint codeword supports.
    Bound { code: PathBuf },
    /// Pareto front of retrieval candidates for a storage code.
    Search { storage: PathBuf, families: PathBuf },
    /// Run the retrieval protocol for file W.
    Simulate {
        storage: PathBuf,
        retrieval: PathBuf,
        /// JSON matrix with one row of k symbols per file.
        files: PathBuf,
        /// 1-based index of the requested file.
        #[arg(long)]
        w: usize,
        #[arg(long)]
        seed: u64,
    },
    /// Two-weight irreducible code of length (2^m - 1)/e.
    Twoweight {
        m: u32,
        e: u64,
        /// Also scan BCH retrieval codes with this designed distance.
        #[arg(long)]
        delta: Option<usize>,
    },
    /// Oracle suites and the claimed-versus-computed discrepancy list.
    Verify {
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

fn parse_distance(s: &str) -> Result<Distance, String> {
    if s == "inf" {
        return Ok(Distance::Infinite);
    }
    s.parse::<usize>()
        .map(Distance::Finite)
        .map_err(|e| format!("expected a distance or \"inf\": {e}"))
}

fn read_json<T: DeserializeOwned>(path: &Path) -> CliResult<T> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| CliError::Parse(format!("{}: {e}", path.display())))
}

fn load_code(path: &Path) -> CliResult<(CodeDescriptor, LinearCode)> {
    let desc: CodeDescriptor = read_json(path)?;
    let code = desc.realize()?;
    Ok((desc, code))
}

struct Report {
    json: Value,
    text: String,
}

fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("report types serialize")
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            eprintln!("{}", error_json("parse", &e.to_string()));
            return ExitCode::from(2);
        }
    };
    match run(&cli).and_then(|r| emit(&cli, r)) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("{}", error_json(e.kind(), &e.to_string()));
            ExitCode::from(e.exit_code())
        }
    }
}

fn error_json(kind: &str, message: &str) -> Value {
    json!({ "error": { "kind": kind, "message": message.trim() } })
}

fn emit(cli: &Cli, report: Report) -> CliResult<()> {
    let body = if cli.json {
        serde_json::to_string_pretty(&report.json).expect("values serialize") + "\n"
    } else {
        report.text
    };
    match &cli.out {
        Some(path) => std::fs::write(path, body).map_err(|e| CliError::Io(format!("{}: {e}", path.display()))),
        None => {
            print!("{body}");
            Ok(())
        }
    }
}

fn run(cli: &Cli) -> CliResult<Report> {
    let cap = cli.max_enum.unwrap_or(DEFAULT_ENUM_BITS);
    match &cli.command {
        Command::Analyze {
            storage,
            retrieval,
            hint,
            storage_distance,
            dual_distance,
            star_distance,
        } => {
            let (_, c) = load_code(storage)?;
            let (_, d) = load_code(retrieval)?;
            let known = KnownDistances {
                storage: *storage_distance,
                retrieval_dual: *dual_distance,
                star: *star_distance,
            };
            analyze(&c, &d, *hint, known, cap)
        }
        Command::Cosets { n, q } => {
            let cosets = cyclotomic_cosets(*n, *q)?;
            let mut text = format!("{} cyclotomic cosets of {q} modulo {n}\n", cosets.len());
            for c in &cosets {
                let _ = writeln!(text, "C_{}: {:?}", c[0], c);
            }
            Ok(Report {
                json: json!({ "n": n, "q": q, "count": cosets.len(), "cosets": cosets }),
                text,
            })
        }
        Command::Star { a, b } => {
            let (da, ca) = load_code(a)?;
            let (db, cb) = load_code(b)?;
            let star = ca.star(&cb)?;
            let params = star.params_with_cap(cap)?;
            let desc = CodeDescriptor::Star(Box::new(da), Box::new(db));
            Ok(Report {
                text: format!("star product: {params}\n"),
                json: json!({
                    "descriptor": desc,
                    "normalized": CodeDescriptor::normalized(&star),
                    "params": params,
                }),
            })
        }
        Command::Bound { code } => {
            let (_, c) = load_code(code)?;
            let bound = pir::thm51_bound(&c, cap)?;
            let text = match &bound {
                Some(b) => format!(
                    "at most {} colluding servers (partition into {} supports)\n",
                    b.bound,
                    b.supports.len()
                ),
                None => "no partition into codeword supports exists\n".to_string(),
            };
            Ok(Report {
                json: json!({ "n": c.len(), "k": c.dim(), "collusion_bound": bound }),
                text,
            })
        }
        Command::Search { storage, families } => {
            let (_, c) = load_code(storage)?;
            let specs: Vec<FamilySpec> = read_json(families)?;
            let fams = specs.iter().map(FamilySpec::realize).collect::<Result<Vec<_>, _>>()?;
            let front = search::pareto_with_cap(&c, &fams, cap)?;
            let mut text = format!(
                "{:>4}  {:>8}  {:>8}  {:>6}  candidate\n",
                "t", "basic", "trans", "defect"
            );
            for e in &front {
                let _ = writeln!(
                    text,
                    "{:>4}  {:>8}  {:>8}  {:>6}  {}",
                    e.t,
                    frac::format(&e.rate_basic),
                    e.rate_transitive.map_or("-".into(), |r| frac::format(&r)),
                    e.defect,
                    serde_json::to_string(&e.provenance).expect("provenance serializes")
                );
            }
            Ok(Report {
                json: json!({ "front": front }),
                text,
            })
        }
        Command::Simulate {
            storage,
            retrieval,
            files,
            w,
            seed,
        } => {
            let (_, c) = load_code(storage)?;
            let (_, d) = load_code(retrieval)?;
            let rows: Vec<Vec<Symbol>> = read_json(files)?;
            let files = realize_files(c.field(), &rows)?;
            let system = StorageSystem::new(&c, files)?;
            let tr = pir::simulate_with_cap(&system, &d, *w, *seed, cap)?;
            let ok = tr.recovered_file == system.files()[*w - 1];
            let text = format!(
                "file {w}: {} rounds of {} positions, downloaded {} symbols, rate {}, recovered {}\n",
                tr.rounds.len(),
                tr.group_size,
                tr.downloaded,
                frac::format(&tr.realized_rate),
                if ok { "exactly" } else { "INCORRECTLY" }
            );
            let mut json = to_value(&tr);
            json["matches_file"] = json!(ok);
            Ok(Report { json, text })
        }
        Command::Twoweight { m, e, delta } => {
            let profile = two_weight_profile(*m, *e)?;
            let mut text = format!("length {}, dimension {m}\n", profile.n);
            for (w, count) in &profile.weights {
                let _ = writeln!(text, "A_{w} = {count}");
            }
            let mut json = json!({ "profile": profile });
            if let Some(delta) = delta {
                let s = two_weight_scheme(*m, *e, *delta)?;
                let _ = writeln!(
                    text,
                    "delta {delta}: best offset {}, |S1 + S2| = {}, rate {} (bound {})",
                    s.best_b,
                    s.sumset_size,
                    frac::format(&s.retrieval_rate),
                    frac::format(&s.bound.value)
                );
                json["scheme"] = to_value(&s);
            }
            Ok(Report { json, text })
        }
        Command::Verify { seed } => {
            let checks = verify::oracle_suites(*seed)?;
            let issues = verify::discrepancies()?;
            let mut text = String::new();
            for c in &checks {
                let status = if c.passed() { "PASS" } else { "FAIL" };
                let _ = writeln!(
                    text,
                    "{status}  {} ({} cases, {} failures)",
                    c.name, c.cases, c.failures
                );
            }
            for d in &issues {
                let _ = writeln!(
                    text,
                    "DISCREPANCY  {}: claimed {}, computed {} (computed value used; {})",
                    d.topic, d.claimed, d.computed, d.note
                );
            }
            let all_pass = checks.iter().all(|c| c.passed());
            Ok(Report {
                json: json!({ "checks": checks, "all_pass": all_pass, "discrepancies": issues }),
                text,
            })
        }
    }
}

fn analyze(c: &LinearCode, d: &LinearCode, hint: Hint, known: KnownDistances, cap: u32) -> CliResult<Report> {
    let hint = match hint {
        Hint::None => TransitivityHint::None,
        Hint::Cyclic => TransitivityHint::Cyclic,
        Hint::ExtendedCyclic => TransitivityHint::ExtendedCyclic,
        Hint::Replicated => TransitivityHint::Replicated,
        Hint::Auto => search::detect_hint(c, d)?,
    };
    let opts = AnalyzeOptions {
        hint,
        known,
        cap_bits: cap,
    };
    let a = pir::analyze(c, d, &opts)?;
    let bound = match pir::thm51_bound(c, cap) {
        Ok(b) => b,
        Err(starpir::Error::CapExceeded { .. } | starpir::Error::InvalidParameter(_)) => None,
        Err(e) => return Err(e.into()),
    };
    let mut text = String::new();
    let rows = [
        ("n", a.n.to_string()),
        ("k", a.k.to_string()),
        ("storage rate", frac::format(&a.storage_rate)),
        ("d(C)", a.storage_distance.to_string()),
        ("f", frac::format(&a.f)),
        ("d(D^perp)", a.retrieval_dual_distance.to_string()),
        ("t", a.t.to_string()),
        ("dim(C * D)", a.star_dim.to_string()),
        ("d(C * D)", a.star_distance.to_string()),
        ("rate (basic)", frac::format(&a.rate_basic)),
        (
            "rate (transitive)",
            a.rate_transitive.map_or("-".into(), |r| frac::format(&r)),
        ),
        ("defect", a.defect.to_string()),
        (
            "collusion bound",
            bound.as_ref().map_or("-".into(), |b| b.bound.to_string()),
        ),
    ];
    for (k, v) in rows {
        let _ = writeln!(text, "{k:<18} {v}");
    }
    let mut json = to_value(&a);
    json["collusion_bound"] = to_value(&bound);
    Ok(Report { json, text })
}

fn realize_files(f: &Field, rows: &[Vec<Symbol>]) -> CliResult<Vec<Vec<starpir::Elem>>> {
    rows.iter()
        .map(|r| r.iter().map(|s| s.realize(f).map_err(CliError::from)).collect())
        .collect()
}
