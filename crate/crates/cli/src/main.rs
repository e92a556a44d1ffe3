//! `tableaux-lab`: command-line front end for the tableaux library.
//!
//! Exit codes: 0 on success (including failed informational checks), 1 on
//! usage or input errors, 2 when a gating check of an experiment fails.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use tableaux_core::dcf::estimate_dcf;
use tableaux_core::experiments::{self, ExperimentConfig, ExperimentKind, ExperimentReport};
use tableaux_core::limit_shapes::{omega_star, LimitMeasure};
use tableaux_core::rsk::{jdt_lazy_path, responsibility_matrix, rsk, rsk_shape};
use tableaux_core::sampling::uniform_syt;
use tableaux_core::transition::exact_transition_measure;
use tableaux_core::{MonteCarlo, SeededGenerator, YoungDiagram};

const EXIT_USAGE: u8 = 1;
const EXIT_GATE: u8 = 2;

#[derive(Parser, Debug)]
#[command(name = "tableaux-lab", version, about = "Row insertion into random Poissonized Young tableaux")]
struct Cli {
    /// Master seed for all random streams.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Worker threads for Monte Carlo runs; results do not depend on it.
    #[arg(long, global = true)]
    workers: Option<usize>,
    /// TOML experiment config.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Write the output here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Transition measure of a diagram, e.g. `transition 4,2,2,2`.
    Transition { parts: YoungDiagram },
    /// Insertion tableaux and jeu de taquin paths.
    #[command(subcommand)]
    Rsk(RskCommand),
    /// Limit shape quantities.
    #[command(subcommand)]
    Limits(LimitsCommand),
    /// Double cumulative function grid of a fixed shape.
    Dcf(DcfArgs),
    /// Law of large numbers for the insertion position.
    Determinism(ExperimentArgs),
    /// Gaussian fluctuations on staircase shapes.
    StaircaseClt(ExperimentArgs),
    /// Gaussian fluctuations on Plancherel tableaux (informational).
    PlancherelClt(ExperimentArgs),
    /// Power-law decay of the distance to the limit shape (informational).
    DxyScaling(ExperimentArgs),
    /// Transition-zone profile against its Gaussian limit.
    GaussianProfile(ExperimentArgs),
    /// Monte Carlo moments of F_T(u) against exact formulas.
    MomentOracle(ExperimentArgs),
}

#[derive(Subcommand, Debug)]
enum RskCommand {
    /// P and Q tableaux of a word, e.g. `rsk insert 0.3,0.1,0.7`.
    Insert { word: Word },
    /// Shape of the insertion tableau.
    Shape { word: Word },
    /// Entry of the word responsible for each box of the insertion tableau.
    Responsibility { word: Word },
    /// Lazy jeu de taquin path of a uniformly random standard tableau.
    Jdt {
        shape: YoungDiagram,
        /// Last time index to export.
        #[arg(long)]
        n_max: Option<usize>,
        /// Also export the path at times ceil(c t^2), t = 1, 2, ...
        #[arg(long)]
        rescale: Option<f64>,
    },
}

#[derive(Subcommand, Debug)]
enum LimitsCommand {
    /// Density, cdf, energy and fluctuation variance at `u`.
    Eval {
        which: Which,
        #[arg(allow_negative_numbers = true)]
        u: f64,
    },
    /// Quantile of the limit measure at level `z`.
    Quantile { which: Which, z: f64 },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Which {
    Semicircle,
    Arcsine,
}

impl From<Which> for LimitMeasure {
    fn from(w: Which) -> Self {
        match w {
            Which::Semicircle => LimitMeasure::Semicircle,
            Which::Arcsine => LimitMeasure::Arcsine,
        }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Args, Debug)]
struct DcfArgs {
    shape: YoungDiagram,
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true, required = true)]
    u_grid: Vec<f64>,
    #[arg(long, value_delimiter = ',', required = true)]
    z_grid: Vec<f64>,
    #[arg(long, default_value_t = 10_000)]
    samples: usize,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
}

/// Overrides applied on top of the preset or the `--config` file.
#[derive(Args, Debug)]
struct ExperimentArgs {
    #[arg(long)]
    samples: Option<usize>,
    #[arg(long, value_delimiter = ',')]
    sizes: Option<Vec<usize>>,
    #[arg(long)]
    z: Option<f64>,
    #[arg(long)]
    tolerance: Option<f64>,
}

#[derive(Clone, Debug)]
struct Word(Vec<f64>);

impl std::str::FromStr for Word {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let w = s.split(',').map(|t| t.trim().parse::<f64>().map_err(|e| format!("{t:?}: {e}"))).collect::<Result<Vec<_>, _>>()?;
        Ok(Word(w))
    }
}

/// Errors that map to exit code 1.
#[derive(Debug)]
struct Usage(anyhow::Error);

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(EXIT_USAGE) } else { ExitCode::SUCCESS };
        }
    };
    match run(cli) {
        Ok(code) => code,
        Err(Usage(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(EXIT_USAGE)
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode, Usage> {
    let seed = cli.seed.unwrap_or(0);
    let workers = cli.workers.unwrap_or(1);
    if workers == 0 {
        return Err(Usage(anyhow::anyhow!("--workers must be at least 1")));
    }
    let emit = |text: String| write_output(cli.out.as_deref(), &text).map_err(Usage);
    let kind = match &cli.command {
        Command::Transition { parts } => {
            emit(transition_report(parts))?;
            return Ok(ExitCode::SUCCESS);
        }
        Command::Rsk(cmd) => {
            emit(rsk_report(cmd, seed).map_err(Usage)?)?;
            return Ok(ExitCode::SUCCESS);
        }
        Command::Limits(cmd) => {
            emit(limits_report(cmd).map_err(Usage)?)?;
            return Ok(ExitCode::SUCCESS);
        }
        Command::Dcf(args) => {
            emit(dcf_report(args, MonteCarlo::new(seed, workers)).map_err(Usage)?)?;
            return Ok(ExitCode::SUCCESS);
        }
        Command::Determinism(_) => ExperimentKind::Determinism,
        Command::StaircaseClt(_) => ExperimentKind::StaircaseClt,
        Command::PlancherelClt(_) => ExperimentKind::PlancherelClt,
        Command::DxyScaling(_) => ExperimentKind::DxyScaling,
        Command::GaussianProfile(_) => ExperimentKind::GaussianProfile,
        Command::MomentOracle(_) => ExperimentKind::MomentOracle,
    };
    let args = match &cli.command {
        Command::Determinism(a)
        | Command::StaircaseClt(a)
        | Command::PlancherelClt(a)
        | Command::DxyScaling(a)
        | Command::GaussianProfile(a)
        | Command::MomentOracle(a) => a,
        _ => unreachable!("handled above"),
    };
    let cfg = experiment_config(kind, &cli, args).map_err(Usage)?;
    let report = experiments::run(&cfg).map_err(|e| Usage(e.into()))?;
    let out = cli.out.clone().or_else(|| cfg.output.clone());
    write_output(out.as_deref(), &report.to_json()).map_err(Usage)?;
    summarise(&report);
    Ok(if report.gate_passed() { ExitCode::SUCCESS } else { ExitCode::from(EXIT_GATE) })
}

fn experiment_config(kind: ExperimentKind, cli: &Cli, args: &ExperimentArgs) -> anyhow::Result<ExperimentConfig> {
    let mut cfg = match &cli.config {
        Some(path) => {
            let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
            let cfg = ExperimentConfig::from_toml(&text)?;
            if cfg.kind != kind {
                bail!("config describes {} but the subcommand is {}", cfg.kind.name(), kind.name());
            }
            cfg
        }
        None => ExperimentConfig::preset(kind),
    };
    if let Some(seed) = cli.seed {
        cfg.seed = seed;
    }
    if let Some(workers) = cli.workers {
        cfg.workers = Some(workers);
    }
    if let Some(samples) = args.samples {
        cfg.samples = samples;
    }
    if let Some(sizes) = &args.sizes {
        cfg.sizes = sizes.clone();
    }
    if args.z.is_some() {
        cfg.z = args.z;
    }
    if args.tolerance.is_some() {
        cfg.tolerance = args.tolerance;
    }
    cfg.validate()?;
    Ok(cfg)
}

fn summarise(report: &ExperimentReport) {
    for c in &report.pass {
        let verdict = match (c.passed, c.gating) {
            (true, _) => "pass",
            (false, true) => "FAIL",
            (false, false) => "miss (informational)",
        };
        eprintln!("{verdict}: {} = {:.6} (target {:.6}, tolerance {:.6})", c.name, c.observed, c.target, c.tolerance);
    }
}

fn write_output(path: Option<&Path>, text: &str) -> anyhow::Result<()> {
    match path {
        Some(p) => fs::write(p, format!("{text}\n")).with_context(|| format!("writing {}", p.display())),
        None => {
            let mut stdout = std::io::stdout().lock();
            writeln!(stdout, "{text}").context("writing to stdout")
        }
    }
}

fn transition_report(d: &YoungDiagram) -> String {
    let m = exact_transition_measure(d);
    let atoms: Vec<_> = m
        .atoms
        .iter()
        .map(|(x, w)| json!({ "location": x, "weight": w.to_string(), "decimal": num_traits::ToPrimitive::to_f64(w) }))
        .collect();
    serde_json::to_string_pretty(&json!({ "shape": d, "n": d.n(), "atoms": atoms })).expect("serialisable")
}

fn rsk_report(cmd: &RskCommand, seed: u64) -> anyhow::Result<String> {
    let value = match cmd {
        RskCommand::Insert { word } => {
            let (p, q) = rsk(&word.0)?;
            json!({ "p": p, "q": q, "shape": p.shape() })
        }
        RskCommand::Shape { word } => json!({ "shape": rsk_shape(&word.0)? }),
        RskCommand::Responsibility { word } => {
            let boxes: Vec<_> =
                responsibility_matrix(&word.0)?.into_iter().map(|(b, v)| json!({ "x": b.x, "y": b.y, "u": b.u, "value": v })).collect();
            json!({ "boxes": boxes })
        }
        RskCommand::Jdt { shape, n_max, rescale } => {
            let mut rng = SeededGenerator::new(seed, 0);
            let q = uniform_syt(shape, &mut rng);
            let path = jdt_lazy_path(&q, n_max.unwrap_or(q.n()));
            let mut value = json!({ "seed": seed, "stream": 0, "q": q, "jdt": path });
            if let Some(c) = rescale {
                if !c.is_finite() || *c <= 0.0 {
                    bail!("--rescale must be positive");
                }
                let times: Vec<_> = (1..)
                    .map(|t: u64| (t, (c * (t * t) as f64).ceil() as usize))
                    .take_while(|&(_, n)| n <= path.lazy.len())
                    .filter(|&(_, n)| n >= 1)
                    .map(|(t, n)| json!({ "t": t, "n": n, "box": path.lazy[n - 1] }))
                    .collect();
                value["rescaled"] = json!(times);
            }
            value
        }
    };
    Ok(serde_json::to_string_pretty(&value)?)
}

fn limits_report(cmd: &LimitsCommand) -> anyhow::Result<String> {
    let value = match *cmd {
        LimitsCommand::Eval { which, u } => {
            let m = LimitMeasure::from(which);
            json!({
                "measure": format!("{which:?}").to_lowercase(),
                "u": u,
                "density": m.density(u),
                "cdf": m.cdf(u),
                "energy": m.energy(u),
                "clt_variance": m.clt_variance(u),
                "omega_star": omega_star(u),
            })
        }
        LimitsCommand::Quantile { which, z } => {
            let m = LimitMeasure::from(which);
            json!({ "measure": format!("{which:?}").to_lowercase(), "z": z, "quantile": m.quantile(z)? })
        }
    };
    Ok(serde_json::to_string_pretty(&value)?)
}

fn dcf_report(args: &DcfArgs, mc: MonteCarlo) -> anyhow::Result<String> {
    let start = std::time::Instant::now();
    let grid = estimate_dcf(&args.shape, &args.u_grid, &args.z_grid, args.samples, &mc, 0)?;
    Ok(match args.format {
        Format::Json => serde_json::to_string_pretty(&grid.to_json(Some(start.elapsed().as_secs_f64())))?,
        Format::Csv => {
            let mut buf = Vec::new();
            grid.write_csv(&mut buf)?;
            String::from_utf8(buf)?.trim_end().to_string()
        }
    })
}
