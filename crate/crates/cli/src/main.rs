//! `divlab`: JSON in, JSON out. Reports go to stdout, logs to stderr.
//!
//! Exit codes: 0 success / certified, 1 usage or input error,
//! 2 counterexample or violated inequality, 3 budget exhausted.

mod bound;

use clap::{Args, Parser, Subcommand, ValueEnum};
use divlab_core::branching::{verify_branching_33, verify_branching_traced};
use divlab_core::certify::{certify, CertifyOptions, CLAIMS};
use divlab_core::constructions::{self, generated};
use divlab_core::json::{self, FamilyDoc};
use divlab_core::search::{lemma31_known, run_search, Budget, Mode, SearchTask};
use divlab_core::Family;
use serde::Serialize;
use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

#[derive(Parser)]
#[command(
    name = "divlab",
    version,
    about = "Diversity, covering and extremal checks for intersecting set families"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Command,
}

#[derive(Args, Clone)]
struct RunOpts {
    /// Stop after this many search nodes.
    #[arg(long)]
    budget_nodes: Option<u64>,
    /// Stop after this many seconds of search.
    #[arg(long)]
    budget_seconds: Option<f64>,
    /// Worker threads (0 = all cores).
    #[arg(long, env = "DIVLAB_JOBS", default_value_t = 0)]
    jobs: usize,
    /// Seed for randomized corpora.
    #[arg(long, default_value_t = 2024)]
    seed: u64,
}

impl RunOpts {
    fn budget(&self) -> Budget {
        Budget {
            max_nodes: self.budget_nodes,
            max_seconds: self.budget_seconds,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    MaxGamma,
    Classify,
    Counterexample,
}

#[derive(Clone, Copy, ValueEnum)]
enum LemmaArg {
    #[value(name = "2.2")]
    General,
    #[value(name = "3.3")]
    Pairs,
}

#[derive(Subcommand)]
enum Command {
    /// Print every functional of a family read from a JSON file (or stdin).
    Analyze {
        /// Family JSON; `-` or absent reads stdin.
        path: Option<PathBuf>,
    },
    /// Emit a named construction as family JSON.
    Construct {
        /// One of: fano, t0, l3, example-4-2, example-4-3, example-4-4,
        /// pentagon-h, t0-triangle, ekr-triangle, triangle.
        name: String,
        /// Uniformity for ekr-triangle, or for the generated family with --n.
        #[arg(long)]
        k: Option<usize>,
        /// Emit the family generated by the construction's edges on `[n]`
        /// (generators only, no edge listing).
        #[arg(long)]
        n: Option<usize>,
    },
    /// Orderly search over intersecting k-graphs.
    Search {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        ell: usize,
        #[arg(long, default_value_t = 8)]
        n_max: usize,
        #[arg(long, value_enum, default_value = "max-gamma")]
        mode: ModeArg,
        #[arg(long, default_value_t = 0)]
        tau_min: usize,
        #[arg(long, default_value_t = 0)]
        gamma_min: usize,
        /// Disable bound-based pruning.
        #[arg(long)]
        no_prune: bool,
        /// Record visited states and spot-check pruned subtrees.
        #[arg(long)]
        debug_trace: bool,
        #[command(flatten)]
        run: RunOpts,
    },
    /// Check a named claim.
    Certify {
        claim: String,
        /// Ground-set cap for the search-based claims (default 8).
        #[arg(long)]
        n_max: Option<usize>,
        #[command(flatten)]
        run: RunOpts,
    },
    /// Evaluate a closed-form count or bound.
    Bound {
        /// See `divlab bound list`.
        name: String,
        #[arg(long)]
        n: Option<u64>,
        #[arg(long)]
        k: Option<u64>,
        #[arg(long)]
        ell: Option<u32>,
        /// Value of the extremal constant plugged into the theorem bounds.
        #[arg(long)]
        m: Option<u64>,
        /// Where the constant comes from, recorded in the output.
        #[arg(long)]
        m_source: Option<String>,
    },
    /// Weighted branching certificate for a saturated intersecting family.
    Branching {
        path: Option<PathBuf>,
        #[arg(long, default_value_t = 2)]
        ell: usize,
        #[arg(long, value_enum, default_value = "2.2")]
        lemma: LemmaArg,
        /// Also run the full sequence expansion and report its stages.
        #[arg(long)]
        debug_trace: bool,
    },
}

/// Anything that ends the run with exit code 1.
struct Failure(String);

impl<E: std::fmt::Display> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure(e.to_string())
    }
}

fn read_input(path: &Option<PathBuf>) -> Result<String, Failure> {
    match path {
        Some(p) if p.as_os_str() != "-" => std::fs::read_to_string(p)
            .map_err(|e| Failure(format!("cannot read {}: {e}", p.display()))),
        _ => {
            let mut s = String::new();
            std::io::stdin().read_to_string(&mut s)?;
            Ok(s)
        }
    }
}

fn read_family(path: &Option<PathBuf>) -> Result<Family, Failure> {
    Ok(json::family_from_str(&read_input(path)?)?)
}

fn emit<T: Serialize>(x: &T) -> Result<(), Failure> {
    println!("{}", serde_json::to_string_pretty(x)?);
    Ok(())
}

fn run(cmd: Command) -> Result<u8, Failure> {
    match cmd {
        Command::Analyze { path } => {
            let fam = read_family(&path)?;
            emit(&fam.stats())?;
            Ok(0)
        }
        Command::Construct { name, k, n } => {
            let fam = constructions::by_name(&name, k)?;
            match n {
                Some(n) => {
                    let k = k.ok_or_else(|| Failure("--n needs --k".into()))?;
                    let g = generated(&fam, n, k)?;
                    emit(&FamilyDoc::from_generated(&g).with_name(format!("{name}-generated")))?;
                }
                None => emit(
                    &FamilyDoc::from_family(&fam)
                        .with_name(name.as_str())
                        .with_labels(constructions::labels(&name)),
                )?,
            }
            Ok(0)
        }
        Command::Search {
            k,
            ell,
            n_max,
            mode,
            tau_min,
            gamma_min,
            no_prune,
            debug_trace,
            run,
        } => {
            let mode = match mode {
                ModeArg::MaxGamma => Mode::MaxGamma,
                ModeArg::Classify => Mode::Classify,
                ModeArg::Counterexample => Mode::Counterexample,
            };
            let mut task = SearchTask::new(k, ell, n_max, mode);
            task.tau_min = tau_min;
            task.gamma_min = gamma_min;
            task.budget = run.budget();
            task.jobs = run.jobs;
            task.prune = !no_prune;
            task.debug = debug_trace;
            if k == 3 {
                task.known = lemma31_known();
            }
            if n_max > 8 {
                eprintln!("warning: n_max = {n_max} is above the default 8; runtime grows quickly");
            }
            let report = run_search(&task)?;
            emit(&report)?;
            let found = match mode {
                Mode::Counterexample => !report.witnesses.is_empty(),
                Mode::Classify => report.unknown_witnesses().next().is_some(),
                Mode::MaxGamma => false,
            };
            Ok(if found {
                2
            } else if !report.exhausted {
                3
            } else {
                0
            })
        }
        Command::Certify { claim, n_max, run } => {
            if !CLAIMS.contains(&claim.as_str()) {
                return Err(Failure(format!(
                    "unknown claim id `{claim}`; expected one of {}",
                    CLAIMS.join(", ")
                )));
            }
            if n_max.is_some_and(|n| n > 8) {
                eprintln!("warning: n_max above the default 8; runtime grows quickly");
            }
            let opts = CertifyOptions {
                n_max,
                budget: run.budget(),
                jobs: run.jobs,
                seed: run.seed,
            };
            let record = certify(&claim, &opts)?;
            eprintln!("{claim}: {:?}", record.status);
            emit(&record)?;
            Ok(record.exit_code() as u8)
        }
        Command::Bound {
            name,
            n,
            k,
            ell,
            m,
            m_source,
        } => {
            let rec = bound::evaluate(
                &name,
                bound::Params {
                    n,
                    k,
                    ell,
                    m,
                    m_source,
                },
            )?;
            emit(&rec)?;
            Ok(0)
        }
        Command::Branching {
            path,
            ell,
            lemma,
            debug_trace,
        } => {
            let fam = read_family(&path)?;
            let holds = match lemma {
                LemmaArg::General => {
                    let c = verify_branching_traced(&fam, ell, debug_trace)?;
                    emit(&c)?;
                    c.holds
                }
                LemmaArg::Pairs => {
                    let c = verify_branching_33(&fam)?;
                    emit(&c)?;
                    c.holds
                }
            };
            if !holds {
                eprintln!("error: certificate inequality fails; this indicates a bug");
            }
            Ok(if holds { 0 } else { 2 })
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let start = Instant::now();
    let code = match run(cli.cmd) {
        Ok(c) => c,
        Err(Failure(msg)) => {
            eprintln!("error: {msg}");
            1
        }
    };
    eprintln!("runtime: {:.3}s", start.elapsed().as_secs_f64());
    ExitCode::from(code)
}
