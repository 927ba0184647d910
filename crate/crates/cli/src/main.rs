use std::fmt::Write as _;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use wtree::enumerate::{enumerate_wtrees, Budget, SymmetryCensus, DEFAULT_BUDGET};
use wtree::partition::{cardinality, explain};
use wtree::poly::newton_q;
use wtree::sweep::{run_sweep, Status};
use wtree::system::{build_system, solve_multistart, SolveConfig};
use wtree::{automorphism_order, Error, WeightedType};

/// Count, enumerate and verify plane weighted bipartite trees.
#[derive(Parser)]
#[command(name = "wtree", version)]
struct Cli {
    /// Worker threads (defaults to available parallelism).
    #[arg(long, global = true)]
    jobs: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the number of w-trees of a type, e.g. `1,5,7|2,4,7`.
    Count {
        #[arg(value_name = "TYPE")]
        ty: String,
        /// Show every partition summand and the symmetry correction.
        #[arg(long)]
        explain: bool,
    },
    /// Print every w-tree of a type up to isotopy, in canonical order.
    Enumerate {
        #[arg(value_name = "TYPE")]
        ty: String,
        #[arg(long, value_enum, default_value_t = Format::Jsonl)]
        format: Format,
        /// Append the count of trees by automorphism order.
        #[arg(long)]
        census: bool,
    },
    /// Compare formula and enumeration counts for every type up to a weight.
    Verify {
        #[arg(long)]
        max_weight: u32,
        /// Write the full JSON report here.
        #[arg(long)]
        report: Option<PathBuf>,
    },
    /// Print the polynomial system of a type, optionally solving it.
    System {
        #[arg(value_name = "TYPE", required_unless_present = "qpoly")]
        ty: Option<String>,
        /// Print the power-sum polynomial q_i instead.
        #[arg(long, value_name = "I")]
        qpoly: Option<usize>,
        /// Also print the coefficient-matching form and its reduction.
        #[arg(long)]
        raw: bool,
        #[arg(long, value_enum, default_value_t = SystemFormat::Text)]
        format: SystemFormat,
        #[arg(long)]
        solve: bool,
        #[arg(long, default_value_t = 500)]
        starts: usize,
        #[arg(long, default_value_t = 1e-10)]
        tol: f64,
        #[arg(long, default_value_t = 1e-6)]
        dedup_radius: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Jsonl,
    Dot,
    Text,
}

#[derive(Clone, Copy, ValueEnum)]
enum SystemFormat {
    Text,
    Json,
}

struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Parse { .. }
            | Error::BadWeight(_)
            | Error::EmptySide(_)
            | Error::NonPositiveWeight(_)
            | Error::SumMismatch { .. } => 2,
            Error::NonIntegerResult(_) => 3,
            Error::ResourceBudget { .. } => 4,
            Error::NoConvergence => 5,
            _ => 1,
        };
        Failure { code, message: e.to_string() }
    }
}

fn fail(code: u8, message: impl Into<String>) -> Failure {
    Failure { code, message: message.into() }
}

type Outcome = Result<String, Failure>;

fn parse_type(literal: &str) -> Result<WeightedType, Failure> {
    WeightedType::parse(literal).map_err(|e| fail(2, format!("invalid type `{literal}`: {e}")))
}

fn budget_limit() -> Result<u64, Failure> {
    match std::env::var("WTREE_BUDGET") {
        Ok(v) => {
            v.trim().parse().map_err(|_| fail(2, format!("WTREE_BUDGET must be a non-negative integer, got `{v}`")))
        }
        Err(_) => Ok(DEFAULT_BUDGET),
    }
}

fn count(ty: &str, show: bool) -> Outcome {
    let ty = parse_type(ty)?;
    if show {
        Ok(format!("{}\n", explain(&ty)?))
    } else {
        Ok(format!("{}\n", cardinality(&ty)?))
    }
}

fn enumerate(ty: &str, format: Format, census: bool) -> Outcome {
    let ty = parse_type(ty)?;
    let trees = enumerate_wtrees(&ty, &Budget::new(budget_limit()?))?;
    let summary = census.then(|| SymmetryCensus::from_trees(&trees));
    let mut out = String::new();
    match format {
        Format::Json => {
            let docs: Vec<_> = trees.iter().map(|t| t.to_document()).collect();
            let value = match &summary {
                Some(c) => serde_json::json!({ "trees": docs, "census": c }),
                None => serde_json::json!(docs),
            };
            out = serde_json::to_string_pretty(&value).expect("serializable") + "\n";
        }
        Format::Jsonl => {
            for t in &trees {
                writeln!(out, "{}", t.to_json()).unwrap();
            }
            if let Some(c) = &summary {
                writeln!(out, "{}", serde_json::json!({ "census": c })).unwrap();
            }
        }
        Format::Dot => {
            for (i, t) in trees.iter().enumerate() {
                out.push_str(&t.to_dot(&format!("{} #{}", ty.literal(), i + 1)));
            }
            if let Some(c) = &summary {
                writeln!(out, "// census: {}", serde_json::to_string(c).unwrap()).unwrap();
            }
        }
        Format::Text => {
            for (i, t) in trees.iter().enumerate() {
                writeln!(out, "tree {} (automorphism order {})", i + 1, automorphism_order(t)).unwrap();
                for (idx, v) in t.vertices().iter().enumerate() {
                    let around: Vec<String> = t
                        .rotation_at(idx)
                        .iter()
                        .map(|&e| {
                            let edge = t.edges().iter().find(|x| x.id == e).expect("rotation edge exists");
                            let other = if edge.u == v.id { edge.v } else { edge.u };
                            format!("v{other}:{}", edge.weight)
                        })
                        .collect();
                    writeln!(out, "  v{} {} {}: {}", v.id, v.color, v.weight, around.join(" ")).unwrap();
                }
            }
            writeln!(out, "{} trees", trees.len()).unwrap();
            if let Some(c) = &summary {
                let parts: Vec<String> = c.by_order.iter().map(|(o, n)| format!("{o}: {n}")).collect();
                writeln!(out, "census: total {}, by order {{{}}}", c.total, parts.join(", ")).unwrap();
            }
        }
    }
    Ok(out)
}

/// Writes through a temporary file in the same directory and renames it into
/// place, so concurrent runs never observe a partial report.
fn write_report(path: &Path, text: &str) -> std::io::Result<()> {
    let dir = path.parent().filter(|p| !p.as_os_str().is_empty()).unwrap_or(Path::new("."));
    let name = path.file_name().map(|n| n.to_string_lossy().into_owned()).unwrap_or_default();
    let tmp = dir.join(format!(".{name}.{}.tmp", std::process::id()));
    let mut file = std::fs::OpenOptions::new().write(true).create_new(true).open(&tmp)?;
    file.write_all(text.as_bytes())?;
    file.sync_all()?;
    std::fs::rename(&tmp, path)
}

fn verify(max_weight: u32, report: Option<&Path>) -> Outcome {
    if max_weight == 0 {
        return Err(fail(2, "--max-weight must be at least 1"));
    }
    let result = run_sweep(max_weight, budget_limit()?);
    if let Some(path) = report {
        write_report(path, &result.to_json()).map_err(|e| fail(1, format!("cannot write {}: {e}", path.display())))?;
    }
    let s = &result.summary;
    let mut out = String::new();
    for row in result.rows.iter().filter(|r| r.status != Status::Ok) {
        writeln!(
            out,
            "{:?} {}: formula {} enumeration {} {}",
            row.status,
            row.ty,
            row.formula.as_deref().unwrap_or("-"),
            row.enumeration.as_deref().unwrap_or("-"),
            row.note.as_deref().unwrap_or("")
        )
        .unwrap();
    }
    writeln!(out, "types checked: {}, mismatches: {}, skipped: {}", s.types_checked, s.mismatches, s.skipped).unwrap();
    if s.mismatches > 0 {
        print!("{out}");
        return Err(fail(1, format!("{} mismatches", s.mismatches)));
    }
    if s.skipped > 0 {
        print!("{out}");
        return Err(fail(4, format!("{} types skipped: enumeration budget exhausted", s.skipped)));
    }
    Ok(out)
}

struct SystemArgs<'a> {
    ty: Option<&'a str>,
    qpoly: Option<usize>,
    raw: bool,
    format: SystemFormat,
    solve: bool,
    config: SolveConfig,
}

fn system(args: SystemArgs) -> Outcome {
    if let Some(i) = args.qpoly {
        if i == 0 {
            return Err(fail(2, "--qpoly needs i >= 1"));
        }
        let q = newton_q(i);
        return Ok(match args.format {
            SystemFormat::Text => format!("{q}\n"),
            SystemFormat::Json => format!("{}\n", serde_json::json!({ "i": i, "q": q.to_string() })),
        });
    }
    let ty = parse_type(args.ty.expect("clap requires a type without --qpoly"))?;
    let sys = build_system(&ty);
    let solved = if args.solve { Some(solve_multistart(&sys, &args.config)?) } else { None };
    let mut out = String::new();
    match args.format {
        SystemFormat::Json => {
            let mut value = serde_json::json!({ "system": sys.to_json() });
            if args.raw {
                let checks: Vec<_> = sys
                    .reduction_report()
                    .iter()
                    .map(|c| {
                        serde_json::json!({
                            "r": c.r,
                            "raw": sys.render_equation(&c.raw),
                            "via_q": sys.render_equation(&c.via_q),
                            "holds": c.holds,
                        })
                    })
                    .collect();
                value["reduction"] = checks.into();
            }
            if let Some(report) = &solved {
                value["solve"] = serde_json::to_value(report).expect("serializable");
            }
            out = serde_json::to_string_pretty(&value).expect("serializable") + "\n";
        }
        SystemFormat::Text => {
            out.push_str(&sys.to_text());
            if sys.is_empty() {
                out.push_str("empty system: one tree, no unknowns\n");
            }
            if args.raw {
                out.push_str("coefficient matching:\n");
                for c in sys.reduction_report() {
                    let verdict = if c.holds { "reduces to equation" } else { "DOES NOT reduce to equation" };
                    writeln!(out, "  s_{r}-t_{r}: {}  ({verdict} {r})", sys.render_equation(&c.raw), r = c.r).unwrap();
                }
            }
            if let Some(report) = &solved {
                writeln!(
                    out,
                    "solutions found: {} (lower bound, heuristic; {} of {} starts converged; Bézout bound {})",
                    report.solutions.len(),
                    report.converged_starts,
                    report.starts,
                    sys.bezout_bound()
                )
                .unwrap();
                for s in &report.solutions {
                    let coords: Vec<String> = report
                        .unknowns
                        .iter()
                        .zip(&s.point)
                        .map(|(name, z)| format!("{name} = {:.12}{:+.12}i", z.re, z.im))
                        .collect();
                    writeln!(out, "  {}  (residual {:.1e})", coords.join(", "), s.residual).unwrap();
                }
            }
        }
    }
    Ok(out)
}

fn run(cli: Cli) -> Outcome {
    match cli.command {
        Command::Count { ty, explain } => count(&ty, explain),
        Command::Enumerate { ty, format, census } => enumerate(&ty, format, census),
        Command::Verify { max_weight, report } => verify(max_weight, report.as_deref()),
        Command::System { ty, qpoly, raw, format, solve, starts, tol, dedup_radius, seed } => system(SystemArgs {
            ty: ty.as_deref(),
            qpoly,
            raw,
            format,
            solve,
            config: SolveConfig { starts, tol, dedup_radius, seed, ..SolveConfig::default() },
        }),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut pool = rayon::ThreadPoolBuilder::new();
    if let Some(jobs) = cli.jobs {
        pool = pool.num_threads(jobs);
    }
    let pool = match pool.build() {
        Ok(p) => p,
        Err(e) => {
            eprintln!("wtree: cannot start worker threads: {e}");
            return ExitCode::from(1);
        }
    };
    match pool.install(|| run(cli)) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(f) => {
            eprintln!("wtree: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
