//! Command-line front end for the `centrum` library.
//!
//! Exit codes: 0 on success, 1 on a usage error, 2 when an input fails
//! validation or a computation is rejected, 3 when a verification suite reports
//! a violation.

use std::io::Write;
use std::path::{Path, PathBuf};

use centrum::generate::{
    gen_random_euclidean, gen_random_graph_metric, gen_tight_pair_line, gen_tight_pair_triangle, gen_tight_triple, rng,
    sample_vertices,
};
use centrum::verify::{
    emit_bound_curves, sweep_lemmas, sweep_multi, sweep_pair, Family, MultiConfig, SweepConfig, DEFAULT_CHECK_TOL,
};
use centrum::{
    beta_q, instance_to_json, load_instance, pair_bound_f, pair_bound_shared, ratio_graph, select, Method,
    MetricInstance, ObjectiveSet, DEFAULT_BETA_TOL,
};
use clap::{Args, Parser, Subcommand, ValueEnum};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_INVALID: i32 = 2;
pub const EXIT_VERIFY_FAILED: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "centrum", version, about = "Simultaneous approximation of l-centrum objectives")]
pub struct Cli {
    /// Tolerance for verification checks and the beta_q residual.
    #[arg(long, global = true)]
    pub tol: Option<f64>,
    /// Seed for generators and sweeps.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Worker thread cap.
    #[arg(long, global = true, env = "CENTRUM_THREADS")]
    pub threads: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Pick one facility for several objectives and report its ratios.
    Solve {
        #[arg(long, default_value = "graph", value_parser = parse_method)]
        method: Method,
        /// Comma-separated, strictly increasing objective values.
        #[arg(long, value_parser = parse_ks, value_delimiter = ',', required = true)]
        objectives: Vec<usize>,
        file: PathBuf,
    },
    /// Dump the ratio graph of the given objectives.
    Graph {
        #[arg(long, value_parser = parse_ks, value_delimiter = ',', required = true)]
        objectives: Vec<usize>,
        file: PathBuf,
    },
    /// Print a bound value.
    Bounds(BoundsArgs),
    /// Write a generated instance.
    Gen(GenArgs),
    /// Run a verification suite and write its JSON report.
    Verify(VerifyArgs),
    /// Write the bound curves as CSV.
    Curves {
        #[arg(long, default_value_t = 1.0)]
        xmin: f64,
        #[arg(long, default_value_t = 20.0)]
        xmax: f64,
        #[arg(long, default_value_t = 0.05)]
        xstep: f64,
        #[arg(long, default_value_t = 20)]
        qmax: usize,
        #[arg(long, default_value = ".")]
        out_dir: PathBuf,
    },
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
pub struct BoundsArgs {
    /// Two-objective bound f(x) at x = p/k.
    #[arg(long)]
    f: Option<f64>,
    /// beta_q for q objectives.
    #[arg(long)]
    beta: Option<usize>,
    /// Shared-location bound at x = p/k.
    #[arg(long)]
    shared: Option<f64>,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum GenFamily {
    Line,
    Triangle,
    Triple,
    Euclid,
    Graph,
}

#[derive(Debug, Args)]
pub struct GenArgs {
    #[arg(long, value_enum)]
    family: GenFamily,
    #[arg(long)]
    k: Option<usize>,
    #[arg(long)]
    p: Option<usize>,
    /// Client count (triple: the largest objective).
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    m: Option<usize>,
    #[arg(long, default_value_t = 2)]
    dim: usize,
    /// Graph vertex count.
    #[arg(long)]
    vertices: Option<usize>,
    #[arg(long, default_value_t = 0.3)]
    density: f64,
    /// Facilities coincide with clients.
    #[arg(long)]
    shared: bool,
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Lemmas,
    Pair,
    Multi,
    Shared,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long, value_enum)]
    suite: Suite,
    /// Number of seeded instances, starting at `--seed`.
    #[arg(long, default_value_t = 200)]
    seeds: usize,
    #[arg(long, default_value_t = 200)]
    max_clients: usize,
    #[arg(long, default_value_t = 50)]
    max_facilities: usize,
    /// Objective count for the multi suite.
    #[arg(long, default_value_t = 3)]
    q: usize,
    /// Leave out the worst-case constructions.
    #[arg(long)]
    no_tight: bool,
    #[arg(long)]
    out: Option<PathBuf>,
}

fn parse_method(s: &str) -> Result<Method, String> {
    s.parse()
}

fn parse_ks(s: &str) -> Result<usize, String> {
    s.trim().parse().map_err(|_| format!("objective {s:?} is not a positive integer"))
}

#[derive(Debug, thiserror::Error)]
enum CliError {
    #[error(transparent)]
    Core(#[from] centrum::Error),
    #[error("{path}: {source}")]
    Input { path: PathBuf, source: centrum::Error },
    #[error("{0}")]
    Usage(String),
    #[error("i/o error on {path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

/// Parses `args` (program name first) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() { err.write_all(text.as_bytes()) } else { out.write_all(text.as_bytes()) };
            return code;
        }
    };
    if let Some(n) = cli.threads {
        // a second call in the same process keeps the first pool
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build_global();
    }
    match dispatch(&cli, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            match e {
                CliError::Usage(_) => EXIT_USAGE,
                _ => EXIT_INVALID,
            }
        }
    }
}

fn load(path: &Path) -> Result<MetricInstance, CliError> {
    load_instance(path).map_err(|source| CliError::Input { path: path.to_path_buf(), source })
}

fn objective_set(ks: &[usize], inst: &MetricInstance) -> Result<ObjectiveSet, CliError> {
    if ks.is_empty() {
        return Err(CliError::Usage("--objectives is required".into()));
    }
    Ok(ObjectiveSet::new(ks.to_vec(), inst.n_clients())?)
}

fn write_json(value: &impl serde::Serialize, path: Option<&Path>, out: &mut dyn Write) -> Result<(), CliError> {
    let text = serde_json::to_string_pretty(value)?;
    emit(&text, path, out)
}

fn emit(text: &str, path: Option<&Path>, out: &mut dyn Write) -> Result<(), CliError> {
    let (result, target) = match path {
        Some(p) => (std::fs::write(p, format!("{text}\n")), p),
        None => (writeln!(out, "{text}"), Path::new("<stdout>")),
    };
    result.map_err(|source| CliError::Io { path: target.to_path_buf(), source })
}

fn need(value: Option<usize>, flag: &str) -> Result<usize, CliError> {
    value.ok_or_else(|| CliError::Usage(format!("--{flag} is required for this family")))
}

fn dispatch(cli: &Cli, out: &mut dyn Write) -> Result<i32, CliError> {
    let check_tol = cli.tol.unwrap_or(DEFAULT_CHECK_TOL);
    match &cli.command {
        Command::Solve { method, objectives, file } => {
            let inst = load(file)?;
            let ks = objective_set(objectives, &inst)?;
            write_json(&select(&inst, &ks, *method)?, None, out)?;
        }
        Command::Graph { objectives, file } => {
            let inst = load(file)?;
            let ks = objective_set(objectives, &inst)?;
            write_json(&ratio_graph(&inst, &ks)?, None, out)?;
        }
        Command::Bounds(b) => {
            let value = if let Some(x) = b.f {
                pair_bound_f(x)?
            } else if let Some(q) = b.beta {
                beta_q(q, cli.tol.unwrap_or(DEFAULT_BETA_TOL))?
            } else if let Some(x) = b.shared {
                pair_bound_shared(x)?
            } else {
                unreachable!("clap enforces one bound flag")
            };
            emit(&value.to_string(), None, out)?;
        }
        Command::Gen(g) => {
            let inst = generate(g, cli.seed)?;
            emit(&instance_to_json(&inst)?, g.output.as_deref(), out)?;
        }
        Command::Verify(v) => {
            let sweep = SweepConfig {
                seed_start: cli.seed,
                instances: v.seeds,
                max_clients: v.max_clients,
                max_facilities: v.max_facilities,
                families: vec![Family::Euclid, Family::Graph],
                shared: v.suite == Suite::Shared,
                include_tight: !v.no_tight,
                tol: check_tol,
                ..SweepConfig::default()
            };
            let report = match v.suite {
                Suite::Lemmas => sweep_lemmas(&sweep)?,
                Suite::Pair | Suite::Shared => sweep_pair(&sweep)?,
                Suite::Multi => sweep_multi(&MultiConfig::new(sweep, v.q))?,
            };
            write_json(&report, v.out.as_deref(), out)?;
            if !report.passed {
                return Ok(EXIT_VERIFY_FAILED);
            }
        }
        Command::Curves { xmin, xmax, xstep, qmax, out_dir } => {
            let (pair, beta) = emit_bound_curves(*xmin, *xmax, *xstep, *qmax, out_dir)?;
            emit(&format!("{}\n{}", pair.display(), beta.display()), None, out)?;
        }
    }
    Ok(EXIT_OK)
}

fn generate(g: &GenArgs, seed: u64) -> Result<MetricInstance, CliError> {
    Ok(match g.family {
        GenFamily::Line => gen_tight_pair_line(need(g.k, "k")?, need(g.p, "p")?)?,
        GenFamily::Triangle => gen_tight_pair_triangle(need(g.k, "k")?, need(g.p, "p")?)?,
        GenFamily::Triple => gen_tight_triple(need(g.k, "k")?, need(g.n, "n")?)?,
        GenFamily::Euclid => gen_random_euclidean(need(g.n, "n")?, g.m.unwrap_or(0), g.dim, seed, g.shared)?,
        GenFamily::Graph => {
            let v = need(g.vertices, "vertices")?;
            let (clients, facilities) = if g.shared {
                ((0..v).collect(), (0..v).collect())
            } else {
                // vertex choice uses its own stream so the graph itself depends on the seed alone
                let mut pick = rng(seed ^ 0x5eed);
                let n = g.n.unwrap_or(v).min(v);
                let m = g.m.unwrap_or(v).min(v);
                (sample_vertices(&mut pick, v, n), sample_vertices(&mut pick, v, m))
            };
            gen_random_graph_metric(v, g.density, seed, &clients, &facilities)?
        }
    })
}
