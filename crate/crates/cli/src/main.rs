//! Command-line front end: every computation and verification of the
//! library behind deterministic text/JSON output.
//!
//! Exit codes: 0 success, 1 identity failure, 2 usage error, 3 guard
//! exceeded.

use std::fmt::Write as _;
use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use grothcalc::groth::Cache;
use grothcalc::hecke::enumerate_factorizations;
use grothcalc::perm::{symmetric_group, Partition, Permutation};
use grothcalc::splitting::{
    grothendieck_via_monomials, verify_splitting, CompatibleSplit, PlacementIndexing,
};
use grothcalc::transition::{a_coefficients, GuardLimits};
use grothcalc::{quiver_coefficients, verify_a_expansion, verify_cauchy, Error, SparsePoly};

const DEGREE_CAP_ENV: &str = "GROTHCALC_DEGREE_CAP";

#[derive(Parser)]
#[command(
    name = "grothcalc",
    version,
    about = "Exact Grothendieck-polynomial and quiver-coefficient calculator"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the double Grothendieck polynomial of w in S_n
    Groth {
        #[arg(short = 'w', long)]
        w: String,
        #[arg(short = 'n', long)]
        n: usize,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Print a stable Grothendieck polynomial on finite alphabets, truncated
    /// by total degree
    Stable {
        #[arg(short = 'w', long, conflicts_with = "partition")]
        w: Option<String>,
        /// Comma-separated partition parts; '' for the empty partition
        #[arg(long)]
        partition: Option<String>,
        #[arg(long, default_value_t = 1)]
        kx: usize,
        #[arg(long, default_value_t = 0)]
        ky: usize,
        /// Degree cap; defaults to GROTHCALC_DEGREE_CAP or 6
        #[arg(short = 'D', long)]
        degree: Option<usize>,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Print the expansion coefficients of G_w over the basis G_beta
    Transition {
        #[arg(short = 'w', long)]
        w: String,
        #[arg(long)]
        depth_cap: Option<usize>,
        #[arg(long)]
        support_cap: Option<usize>,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Print the quiver coefficients of w in S_{n+1}
    QuiverCoeffs {
        #[arg(short = 'w', long)]
        w: String,
        #[arg(short = 'n', long)]
        n: usize,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Count or list Hecke factorizations under per-slot support caps
    Hecke {
        #[arg(value_enum)]
        mode: HeckeMode,
        #[arg(short = 'w', long)]
        w: String,
        /// Comma-separated caps k_1,..,k_m; slot i draws factors from S_{k_i}
        #[arg(long)]
        caps: String,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Run identity verifications; exits 1 and prints residuals on failure
    Verify {
        #[arg(value_enum)]
        kind: VerifyKind,
        #[arg(short = 'w', long, conflicts_with = "all_sn")]
        w: Option<String>,
        /// Verify every element of S_k
        #[arg(long, value_name = "K")]
        all_sn: Option<usize>,
        #[arg(short = 'n', long)]
        n: Option<usize>,
        #[arg(long, default_value_t = 3)]
        kx: usize,
        #[arg(long, default_value_t = 3)]
        ky: usize,
        #[arg(short = 'D', long)]
        degree: Option<usize>,
        /// Splitting positions for the x side (verify split, single w)
        #[arg(long)]
        a: Option<String>,
        /// Splitting positions for the y side (verify split, single w)
        #[arg(long)]
        b: Option<String>,
        /// Block placement rule (verify split)
        #[arg(long, value_enum, default_value_t = IndexingArg::Proof)]
        indexing: IndexingArg,
        /// Parallel fan-out width; 1 keeps everything on one thread
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        #[command(flatten)]
        output: OutputArgs,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum HeckeMode {
    Count,
    List,
}

#[derive(Clone, Copy, ValueEnum, PartialEq)]
enum VerifyKind {
    Cauchy,
    Split,
    Monomial,
    Transition,
}

impl VerifyKind {
    fn name(self) -> &'static str {
        match self {
            VerifyKind::Cauchy => "cauchy",
            VerifyKind::Split => "split",
            VerifyKind::Monomial => "monomial",
            VerifyKind::Transition => "transition",
        }
    }
}

#[derive(Clone, Copy, ValueEnum, PartialEq)]
enum IndexingArg {
    Display,
    Proof,
}

impl From<IndexingArg> for PlacementIndexing {
    fn from(v: IndexingArg) -> Self {
        match v {
            IndexingArg::Display => PlacementIndexing::DisplayLiteral,
            IndexingArg::Proof => PlacementIndexing::ProofAligned,
        }
    }
}

#[derive(Clone, Copy, ValueEnum, PartialEq)]
enum Format {
    Text,
    Json,
}

#[derive(Args)]
struct OutputArgs {
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Write the output to a file instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,
}

struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Failure { code: 2, message: message.into() }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::GuardExceeded { .. } | Error::StabilizationCap { .. } => 3,
            _ => 2,
        };
        Failure { code, message: e.to_string() }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn emit(output: &OutputArgs, body: String) -> Result<(), Failure> {
    match &output.out {
        Some(path) => fs::write(path, body + "\n")
            .map_err(|e| Failure { code: 2, message: format!("cannot write {}: {e}", path.display()) }),
        None => {
            println!("{body}");
            Ok(())
        }
    }
}

fn parse_perm(s: &str) -> Result<Permutation, Failure> {
    Permutation::from_str(s).map_err(|e| Failure::usage(e.to_string()))
}

fn parse_partition(s: &str) -> Result<Partition, Failure> {
    Partition::from_str(s).map_err(|e| Failure::usage(e.to_string()))
}

fn parse_positions(s: &str) -> Result<Vec<usize>, Failure> {
    s.split(',')
        .map(|piece| {
            piece
                .trim()
                .parse::<usize>()
                .map_err(|_| Failure::usage(format!("cannot read `{piece}` as a position")))
        })
        .collect()
}

fn degree_cap(explicit: Option<usize>) -> usize {
    explicit
        .or_else(|| std::env::var(DEGREE_CAP_ENV).ok().and_then(|v| v.parse().ok()))
        .unwrap_or(6)
}

fn poly_json(p: &SparsePoly) -> Value {
    let mut v = p.to_json();
    v["v"] = json!(1);
    v
}

fn poly_body(p: &SparsePoly, format: Format) -> String {
    match format {
        Format::Text => p.to_text(),
        Format::Json => poly_json(p).to_string(),
    }
}

fn run(cli: Cli) -> Result<u8, Failure> {
    match cli.command {
        Command::Groth { w, n, output } => {
            let w = parse_perm(&w)?;
            let g = Cache::new().double_grothendieck(&w, n)?;
            emit(&output, poly_body(&g, output.format))?;
            Ok(0)
        }
        Command::Stable { w, partition, kx, ky, degree, output } => {
            let d = degree_cap(degree);
            let mut cache = Cache::new();
            let g = match (w, partition) {
                (Some(w), None) => cache.stable_grothendieck(&parse_perm(&w)?, kx, ky, d)?,
                (None, Some(p)) => cache.stable_for_partition(&parse_partition(&p)?, kx, ky, d)?,
                _ => return Err(Failure::usage("pass exactly one of -w or --partition")),
            };
            emit(&output, poly_body(&g, output.format))?;
            Ok(0)
        }
        Command::Transition { w, depth_cap, support_cap, output } => {
            let w = parse_perm(&w)?;
            let defaults = GuardLimits::default_for(&w);
            let guard = GuardLimits {
                max_depth: depth_cap.unwrap_or(defaults.max_depth),
                max_support: support_cap.unwrap_or(defaults.max_support),
            };
            let table = a_coefficients(&w, &guard)?;
            let body = match output.format {
                Format::Json => {
                    let mut v = table.to_json();
                    v["v"] = json!(1);
                    v.to_string()
                }
                Format::Text => {
                    let mut s = String::new();
                    for (beta, value) in table.table() {
                        let _ = writeln!(s, "a[{}] = {}", beta, value);
                    }
                    s.trim_end().to_string()
                }
            };
            emit(&output, body)?;
            Ok(0)
        }
        Command::QuiverCoeffs { w, n, output } => {
            let w = parse_perm(&w)?;
            let expansion = quiver_coefficients(&w, n)?;
            let body = match output.format {
                Format::Json | Format::Text => {
                    let mut v = expansion.to_json();
                    v["v"] = json!(1);
                    v.to_string()
                }
            };
            emit(&output, body)?;
            Ok(0)
        }
        Command::Hecke { mode, w, caps, output } => {
            let w = parse_perm(&w)?;
            let caps = parse_positions(&caps)?;
            if caps.iter().any(|&c| c == 0) {
                return Err(Failure::usage("caps must be positive"));
            }
            let facts = enumerate_factorizations(&w, &caps);
            let body = match mode {
                HeckeMode::Count => facts.len().to_string(),
                HeckeMode::List => {
                    let mut s = String::new();
                    for f in &facts {
                        let row: Vec<String> =
                            f.factors().iter().map(|u| u.to_string()).collect();
                        let _ = writeln!(s, "{}", row.join(";"));
                    }
                    s.trim_end().to_string()
                }
            };
            emit(&output, body)?;
            Ok(0)
        }
        Command::Verify {
            kind,
            w,
            all_sn,
            n,
            kx,
            ky,
            degree,
            a,
            b,
            indexing,
            jobs,
            output,
        } => {
            let d = degree_cap(degree);
            let targets: Vec<Permutation> = match (&w, all_sn) {
                (Some(w), None) => vec![parse_perm(w)?],
                (None, Some(k)) => symmetric_group(k),
                _ => return Err(Failure::usage("pass exactly one of -w or --all-sn")),
            };
            if (a.is_some() || b.is_some()) && (kind != VerifyKind::Split || w.is_none()) {
                return Err(Failure::usage("--a/--b apply to `verify split` with a single -w"));
            }
            let a = a.as_deref().map(parse_positions).transpose()?;
            let b = b.as_deref().map(parse_positions).transpose()?;
            let placement: PlacementIndexing = indexing.into();

            let check = |w: &Permutation| -> Result<(bool, SparsePoly), Error> {
                match kind {
                    VerifyKind::Cauchy => {
                        let n = n.or(all_sn).unwrap_or_else(|| w.support_size().max(2));
                        verify_cauchy(w, n)
                    }
                    VerifyKind::Split => {
                        let n = n
                            .or_else(|| all_sn.map(|k| k - 1))
                            .unwrap_or_else(|| w.support_size().max(2) - 1);
                        let split = match (&a, &b) {
                            (None, None) => CompatibleSplit::full(w.clone(), n)?,
                            (a, b) => {
                                let full: Vec<usize> = (1..=n).collect();
                                CompatibleSplit::new(
                                    w.clone(),
                                    n,
                                    a.clone().unwrap_or_else(|| full.clone()),
                                    b.clone().unwrap_or(full),
                                )?
                            }
                        };
                        verify_splitting(&split, placement, &mut Cache::new())
                    }
                    VerifyKind::Monomial => {
                        let n = n.or(all_sn).unwrap_or_else(|| w.support_size().max(2));
                        let direct = Cache::new().double_grothendieck(w, n)?.truncate(d);
                        let counted = grothendieck_via_monomials(w, n, d)?;
                        let residual = counted.sub(&direct);
                        Ok((residual.is_zero(), residual))
                    }
                    VerifyKind::Transition => verify_a_expansion(w, kx, ky, d),
                }
            };

            let results: Vec<(Permutation, Result<(bool, SparsePoly), Error>)> = if jobs > 1 {
                use rayon::prelude::*;
                let pool = rayon::ThreadPoolBuilder::new()
                    .num_threads(jobs)
                    .build()
                    .map_err(|e| Failure::usage(e.to_string()))?;
                pool.install(|| {
                    targets
                        .par_iter()
                        .map(|w| (w.clone(), check(w)))
                        .collect()
                })
            } else {
                targets.iter().map(|w| (w.clone(), check(w))).collect()
            };

            let mut ok_count = 0;
            let mut rows = Vec::new();
            let mut text = String::new();
            for (w, res) in &results {
                match res {
                    Ok((true, _)) => {
                        ok_count += 1;
                        rows.push(json!({ "w": w.to_string(), "ok": true }));
                    }
                    Ok((false, residual)) => {
                        let _ = writeln!(text, "FAIL w={w}: residual = {residual}");
                        rows.push(json!({
                            "w": w.to_string(),
                            "ok": false,
                            "residual": residual.to_text(),
                        }));
                    }
                    Err(e) => return Err(Failure::from(clone_error(e))),
                }
            }
            let total = results.len();
            let _ = write!(text, "{ok_count}/{total} ok");
            let body = match output.format {
                Format::Text => text,
                Format::Json => {
                    let mut v = json!({
                        "v": 1,
                        "verify": kind.name(),
                        "ok": ok_count,
                        "total": total,
                        "results": rows,
                    });
                    if kind == VerifyKind::Split {
                        v["placement_indexing"] = json!(placement.as_str());
                    }
                    v.to_string()
                }
            };
            emit(&output, body)?;
            Ok(if ok_count == total { 0 } else { 1 })
        }
    }
}

// Error is not Clone; rebuild the few variants verification can hit.
fn clone_error(e: &Error) -> Error {
    match e {
        Error::GuardExceeded { guard, node, limit } => Error::GuardExceeded {
            guard,
            node: node.clone(),
            limit: *limit,
        },
        Error::StabilizationCap { word, cap } => Error::StabilizationCap {
            word: word.clone(),
            cap: *cap,
        },
        other => Error::InvalidPermutation(other.to_string()),
    }
}
