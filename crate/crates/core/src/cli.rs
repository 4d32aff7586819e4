//! Command-line front end.
//!
//! Exit codes: 0 success, 1 usage error, 2 domain or capacity error,
//! 3 gated-invariant violation.

use std::ffi::OsString;
use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::time::{Duration, Instant};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::Value;

use crate::analytics::{self, AnalyticContext};
use crate::augmented;
use crate::experiments::{self, ExperimentConfig, Mode};
use crate::hypergraph::{format_hypergraph, read_hypergraph, sample_hnkp, ModelParams};
use crate::solver::{self, SolveOptions};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_DOMAIN: i32 = 2;
pub const EXIT_GATED: i32 = 3;

/// Environment variable read for the log filter.
pub const LOG_ENV: &str = "HYPERALPHA_LOG";

#[derive(Parser, Debug)]
#[command(name = "hyperalpha", version, about = "Independence numbers of random k-uniform hypergraphs")]
pub struct Cli {
    /// Output format for reports.
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    pub format: Format,
    /// Write output here instead of standard output.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Concentration,
    Lemma1,
    Expectation,
    Coupling,
}

impl From<ModeArg> for Mode {
    fn from(m: ModeArg) -> Self {
        match m {
            ModeArg::Concentration => Mode::Concentration,
            ModeArg::Lemma1 => Mode::Lemma1Fuzz,
            ModeArg::Expectation => Mode::ExpectationCheck,
            ModeArg::Coupling => Mode::Coupling,
        }
    }
}

#[derive(Args, Debug, Clone)]
pub struct ModelArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub k: usize,
    #[arg(long)]
    pub p: f64,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Sample H(n, k, p) and write it in the hypergraph file format.
    Gen {
        #[command(flatten)]
        model: ModelArgs,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Exact alpha_j of a hypergraph file.
    Alpha {
        #[arg(long = "in")]
        input: PathBuf,
        /// Independence level; defaults to k - 1.
        #[arg(long)]
        j: Option<usize>,
        #[arg(long)]
        timeout_secs: Option<f64>,
    },
    /// Largest augmented independent set, or all sets of a given order.
    Augmented {
        #[arg(long = "in")]
        input: PathBuf,
        /// List augmented sets of this order instead.
        #[arg(long)]
        s: Option<usize>,
        /// Restrict the listing to matchings of this size.
        #[arg(long, requires = "s")]
        r: Option<usize>,
    },
    /// Thresholds, predicted window and gap regime.
    Predict {
        #[command(flatten)]
        model: ModelArgs,
        #[arg(long, default_value_t = analytics::DEFAULT_EPSILON)]
        epsilon: f64,
    },
    /// Anti-concentration step p -> p' and window lengths.
    Schedule {
        #[command(flatten)]
        model: ModelArgs,
        #[arg(long)]
        j: Option<usize>,
        #[arg(long, default_value_t = analytics::DEFAULT_SCHEDULE_EPSILON)]
        epsilon: f64,
    },
    /// Seeded Monte Carlo experiment.
    Experiment {
        #[arg(long, value_enum)]
        mode: ModeArg,
        #[command(flatten)]
        model: ModelArgs,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 100)]
        trials: u64,
        #[arg(long)]
        j: Option<usize>,
        #[arg(long)]
        s: Option<usize>,
        #[arg(long)]
        r: Option<usize>,
        #[arg(long)]
        p2: Option<f64>,
        #[arg(long, default_value_t = 1)]
        parallelism: usize,
        #[arg(long, default_value_t = experiments::DEFAULT_TIMEOUT_SECS)]
        timeout_secs: f64,
        #[arg(long, default_value_t = analytics::DEFAULT_EPSILON)]
        epsilon: f64,
    },
}

/// Failure carrying its exit code.
#[derive(Debug)]
pub struct Failure {
    pub code: i32,
    pub message: String,
}

fn domain(e: impl std::fmt::Display) -> Failure {
    Failure { code: EXIT_DOMAIN, message: e.to_string() }
}

struct Output {
    body: Vec<u8>,
    summary: String,
    code: i32,
}

/// Parses `args` and runs the command, writing the result to `--out` or
/// `stdout` and a one-line summary to `stderr`. Returns the exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = write!(stderr, "{e}");
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    let result = execute(&cli).and_then(|out| {
        match &cli.out {
            Some(path) => File::create(path)
                .and_then(|f| {
                    let mut w = BufWriter::new(f);
                    w.write_all(&out.body)?;
                    w.flush()
                })
                .map_err(domain)?,
            None => stdout.write_all(&out.body).map_err(domain)?,
        }
        Ok(out)
    });
    match result {
        Ok(out) => {
            let _ = writeln!(stderr, "{}", out.summary);
            out.code
        }
        Err(f) => {
            let _ = writeln!(stderr, "error: {}", f.message);
            f.code
        }
    }
}

fn model(m: &ModelArgs, seed: u64) -> Result<ModelParams, Failure> {
    ModelParams::new(m.n, m.k, m.p, seed).map_err(domain)
}

fn render<T: Serialize>(value: &T, format: Format) -> Result<Vec<u8>, Failure> {
    match format {
        Format::Json => experiments::to_stable_json(value).map(String::into_bytes).map_err(domain),
        Format::Csv => {
            let v = serde_json::from_str(&experiments::to_stable_json(value).map_err(domain)?).map_err(domain)?;
            Ok(flat_csv(&v).into_bytes())
        }
    }
}

/// Header of top-level keys and one row of values; nested values are
/// written as quoted compact JSON.
fn flat_csv(v: &Value) -> String {
    let cell = |x: &Value| match x {
        Value::Null => String::new(),
        Value::String(s) => s.clone(),
        Value::Number(_) | Value::Bool(_) => x.to_string(),
        other => format!("\"{}\"", other.to_string().replace('"', "\"\"")),
    };
    match v {
        Value::Object(map) => {
            let keys: Vec<&str> = map.keys().map(String::as_str).collect();
            let vals: Vec<String> = map.values().map(cell).collect();
            format!("{}\n{}\n", keys.join(","), vals.join(","))
        }
        other => format!("value\n{}\n", cell(other)),
    }
}

fn execute(cli: &Cli) -> Result<Output, Failure> {
    let ok = |body, summary| Ok(Output { body, summary, code: EXIT_OK });
    match &cli.command {
        Command::Gen { model: m, seed } => {
            let h = sample_hnkp(&model(m, *seed)?).map_err(domain)?;
            ok(format_hypergraph(&h).into_bytes(), format!("sampled H({}, {}, {}) with {} edges", m.n, m.k, m.p, h.edge_count()))
        }
        Command::Alpha { input, j, timeout_secs } => {
            let h = read_hypergraph(input).map_err(domain)?;
            let j = j.unwrap_or(h.k() - 1);
            let deadline = timeout_secs.map(|t| Instant::now() + Duration::from_secs_f64(t));
            let sol = solver::solve_alpha(&h, j, &SolveOptions { deadline }).map_err(domain)?;
            #[derive(Serialize)]
            struct AlphaOut {
                n: usize,
                k: usize,
                j: usize,
                alpha: usize,
                witness: Vec<usize>,
                nodes: u64,
            }
            let summary = format!("alpha_{j} = {}", sol.alpha);
            let out = AlphaOut { n: h.n(), k: h.k(), j, alpha: sol.alpha, witness: sol.witness, nodes: sol.nodes };
            ok(render(&out, cli.format)?, summary)
        }
        Command::Augmented { input, s, r } => {
            let h = read_hypergraph(input).map_err(domain)?;
            match s {
                Some(s) => {
                    let mut sets = augmented::enumerate_augmented(&h, *s).map_err(domain)?;
                    if let Some(r) = r {
                        sets.retain(|t| t.r == *r);
                    }
                    let summary = format!("{} augmented sets of order {s}", sets.len());
                    let body = match cli.format {
                        Format::Json => experiments::to_stable_json(&sets).map(String::into_bytes).map_err(domain)?,
                        Format::Csv => {
                            let mut text = String::from("order,r,vertices\n");
                            for t in &sets {
                                let vs: Vec<String> = t.vertices.iter().map(usize::to_string).collect();
                                text += &format!("{},{},{}\n", t.order, t.r, vs.join(" "));
                            }
                            text.into_bytes()
                        }
                    };
                    ok(body, summary)
                }
                None => {
                    let hat = augmented::hat_alpha(&h).map_err(domain)?;
                    let witness = augmented::enumerate_augmented(&h, hat).map_err(domain)?.into_iter().next();
                    #[derive(Serialize)]
                    struct HatOut {
                        hat_alpha: usize,
                        witness: Option<augmented::AugmentedSet>,
                    }
                    ok(render(&HatOut { hat_alpha: hat, witness }, cli.format)?, format!("hat_alpha = {hat}"))
                }
            }
        }
        Command::Predict { model: m, epsilon } => {
            let ctx = AnalyticContext::new(m.n, m.k, m.p, *epsilon).map_err(domain)?;
            let rep = analytics::predict(&ctx).map_err(domain)?;
            let summary = format!("s_x = {}, s_z = {}, window {:?}", rep.s_x, rep.s_z, rep.window);
            ok(render(&rep, cli.format)?, summary)
        }
        Command::Schedule { model: m, j, epsilon } => {
            let j = j.unwrap_or(m.k.saturating_sub(1));
            let sched = analytics::anti_schedule(m.n, m.k, j, m.p, *epsilon).map_err(domain)?;
            let summary = format!("p' = {}, ell = {}, z <= {}", sched.p_prime, sched.ell, sched.z_bound);
            ok(render(&sched, cli.format)?, summary)
        }
        Command::Experiment {
            mode,
            model: m,
            seed,
            trials,
            j,
            s,
            r,
            p2,
            parallelism,
            timeout_secs,
            epsilon,
        } => {
            let cfg = ExperimentConfig {
                model: model(m, *seed)?,
                j: *j,
                trials: *trials,
                mode: (*mode).into(),
                s: *s,
                r: *r,
                p2: *p2,
                parallelism: *parallelism,
                timeout_secs: *timeout_secs,
                epsilon: *epsilon,
            };
            let rep = experiments::run(&cfg).map_err(domain)?;
            let body = match cli.format {
                Format::Json => rep.to_json().map(String::into_bytes).map_err(domain)?,
                Format::Csv => {
                    let mut buf = Vec::new();
                    experiments::write_csv(&rep, &mut buf).map_err(domain)?;
                    buf
                }
            };
            let violations = rep.gated_violations();
            let a = &rep.aggregate;
            let mut summary = format!("{} trials completed, {} timed out", a.completed, a.timed_out);
            if let Some(w) = &a.window {
                summary += &format!(", window {:?} mass {:.3}", w.window, w.mass);
            }
            if violations > 0 {
                summary += &format!(", {violations} GATED VIOLATIONS");
            }
            Ok(Output { body, summary, code: if violations > 0 { EXIT_GATED } else { EXIT_OK } })
        }
    }
}

/// Entry point used by the binary.
pub fn main() -> i32 {
    env_logger::Builder::from_env(env_logger::Env::new().filter_or(LOG_ENV, "warn")).init();
    run(std::env::args_os(), &mut io::stdout().lock(), &mut io::stderr().lock())
}
