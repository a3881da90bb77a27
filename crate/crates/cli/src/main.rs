//! `pdnf`: normal forms, symmetries and convergence diagnostics for
//! polynomial vector fields.
//!
//! Exit codes: 0 success, 1 usage or parse error, 2 the analysis met an
//! obstruction, 3 an internal invariant was violated.

use clap::{Args, Parser, Subcommand};
use pdnf_cli::error::{EXIT_INTERNAL, EXIT_OBSTRUCTION, EXIT_OK, EXIT_USAGE};
use pdnf_cli::grid::{parse_grid, run_grid};
use pdnf_cli::render::{render, Format};
use pdnf_cli::{parse_assignment, parse_matrix, run_analysis, AnalyzeOptions, CliError, Task};
use pdnf_core::dsl::{parse_field, FieldSpec};
use pdnf_core::fixtures;
use pdnf_core::normalizer::FlowOptions;
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "pdnf", version, about = "Normal forms and linearization of polynomial vector fields")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Full pipeline: spectrum, resonances, symmetry, normal form, convergence.
    Analyze(Common),
    /// Parse and instantiate a field description, echoing it back.
    Parse(Common),
    /// Direct normal form with the resonant-term table.
    Normalize(Common),
    /// Search for a commuting symmetry with a given linear part.
    Symmetry(Common),
    /// Small-divisor diagnostic of the linear part (or of a declared symmetry).
    Bruno(Common),
    /// Convergence classification.
    Classify(Common),
    /// Integrate both fields and compare trajectories through the transformation.
    Flowcheck(Common),
    /// List the bundled example systems, or print one.
    Fixtures {
        /// Fixture to print.
        name: Option<String>,
    },
}

#[derive(Args)]
struct Common {
    /// Field description file.
    #[arg(required_unless_present = "fixture")]
    input: Option<PathBuf>,
    /// Use a bundled example system instead of a file.
    #[arg(long, conflicts_with = "input")]
    fixture: Option<String>,
    /// Truncation degree.
    #[arg(short = 'k', long, env = "PDNF_DEGREE", default_value_t = 8)]
    degree: usize,
    /// Parameter value, NAME=VALUE (repeatable).
    #[arg(long = "param", value_name = "NAME=VALUE")]
    params: Vec<String>,
    /// Parameter grid file; one report per grid point.
    #[arg(long)]
    grid: Option<PathBuf>,
    /// JSON output.
    #[arg(long, conflicts_with = "text")]
    json: bool,
    /// Plain-text output (the default).
    #[arg(long)]
    text: bool,
    /// Use this declared symmetry instead of searching for one.
    #[arg(long, value_name = "NAME")]
    declared_symmetry: Option<String>,
    /// Linear part of the symmetry to search for, rows separated by ';'.
    #[arg(long, value_name = "ROWS")]
    target_matrix: Option<String>,
    /// Largest k of the small-divisor diagnostic.
    #[arg(long, default_value_t = pdnf_core::convergence::DEFAULT_KMAX)]
    kmax: usize,
    /// Cap on |Q| in the small-divisor minimum.
    #[arg(long, default_value_t = pdnf_core::convergence::DEFAULT_QCAP)]
    qcap: usize,
    /// Tolerance for numerically computed eigenvalues.
    #[arg(long, default_value_t = pdnf_core::matalg::DEFAULT_EIGEN_TOL)]
    eigen_tol: f64,
    /// Run the flow check as part of analyze/normalize.
    #[arg(long)]
    flow: bool,
    /// Flow check: tolerance on the trajectory deviation.
    #[arg(long, default_value_t = 1e-6)]
    tol: f64,
    /// Flow check: radius of the initial points.
    #[arg(long, default_value_t = 0.1)]
    radius: f64,
    /// Flow check: integration time.
    #[arg(long, default_value_t = 1.0)]
    t_end: f64,
    /// Flow check: RK4 step.
    #[arg(long, default_value_t = 1e-3)]
    step: f64,
    /// Flow check: number of initial points.
    #[arg(long, default_value_t = 8)]
    samples: usize,
    /// Flow check: seed of the initial points.
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

impl Common {
    fn spec(&self) -> anyhow::Result<FieldSpec> {
        if let Some(name) = &self.fixture {
            let fx = fixtures::by_name(name).ok_or_else(|| CliError::Usage(format!("unknown fixture '{name}'")))?;
            return Ok(fx.spec());
        }
        let path = self.input.as_ref().expect("clap requires input or fixture");
        let text = std::fs::read_to_string(path).map_err(|source| CliError::Io {
            path: path.clone(),
            source,
        })?;
        parse_field(&text).map_err(|source| {
            CliError::Parse {
                path: path.display().to_string(),
                source,
            }
            .into()
        })
    }

    fn options(&self, task: Task) -> anyhow::Result<AnalyzeOptions> {
        let mut opts = AnalyzeOptions {
            degree: self.degree,
            declared_symmetry: self.declared_symmetry.clone(),
            k_max: self.kmax,
            q_sum_cap: self.qcap,
            eigen_tol: self.eigen_tol,
            ..Default::default()
        };
        for p in &self.params {
            let (name, value) = parse_assignment(p)?;
            opts.overrides.insert(name, value);
        }
        if let Some(m) = &self.target_matrix {
            opts.target = Some(parse_matrix(m)?);
        }
        if self.flow || task == Task::Flowcheck {
            opts.flow = Some(FlowOptions {
                radius: self.radius,
                t_end: self.t_end,
                step: self.step,
                tol: self.tol,
                samples: self.samples,
                seed: self.seed,
            });
        }
        Ok(opts)
    }
}

fn run(cli: Cli) -> anyhow::Result<i32> {
    let (task, common) = match cli.command {
        Command::Analyze(c) => (Task::Analyze, c),
        Command::Parse(c) => (Task::Parse, c),
        Command::Normalize(c) => (Task::Normalize, c),
        Command::Symmetry(c) => (Task::Symmetry, c),
        Command::Bruno(c) => (Task::Bruno, c),
        Command::Classify(c) => (Task::Classify, c),
        Command::Flowcheck(c) => (Task::Flowcheck, c),
        Command::Fixtures { name } => {
            match name {
                Some(n) => {
                    let fx = fixtures::by_name(&n).ok_or_else(|| CliError::Usage(format!("unknown fixture '{n}'")))?;
                    print!("{}", fx.text);
                }
                None => {
                    for fx in fixtures::ALL {
                        println!("{:<16} {}", fx.name, fx.summary);
                    }
                }
            }
            return Ok(EXIT_OK);
        }
    };
    let spec = common.spec()?;
    let opts = common.options(task)?;
    let format = if common.json { Format::Json } else { Format::Text };
    let (reports, grid) = match &common.grid {
        Some(path) => {
            let text = std::fs::read_to_string(path).map_err(|source| CliError::Io {
                path: path.clone(),
                source,
            })?;
            let points = parse_grid(&text)?;
            (run_grid(&spec, task, &opts, &points)?, true)
        }
        None => (vec![run_analysis(&spec, task, &opts)?], false),
    };
    print!("{}", render(&reports, format, grid));
    let obstructions: Vec<String> = reports.iter().filter_map(|r| r.obstruction()).collect();
    for o in &obstructions {
        eprintln!("obstruction: {o}");
    }
    Ok(if obstructions.is_empty() { EXIT_OK } else { EXIT_OBSTRUCTION })
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_USAGE as u8 } else { EXIT_OK as u8 });
        }
    };
    let code = run(cli).unwrap_or_else(|e| {
        eprintln!("error: {e}");
        e.downcast_ref::<CliError>().map_or(EXIT_INTERNAL, CliError::exit_code)
    });
    ExitCode::from(code as u8)
}
