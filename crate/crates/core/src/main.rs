//! Command-line front end.
//!
//! Exit codes: 0 success, 2 configuration error, 3 numerical failure,
//! 4 `--check` threshold violation.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use sextic_spectral::basis::Kind;
use sextic_spectral::cli::{
    self, EvolveOptions, Format, PhysicalParameters, StudyConfig, StudyProblem,
};
use sextic_spectral::eigenvalues::Parity;
use sextic_spectral::{Error, Result};

/// Default output directory: --out flag, else this environment variable,
/// else the working directory.
const OUT_ENV: &str = "SEXTIC_SPECTRAL_OUT";

#[derive(Parser)]
#[command(
    name = "sextic-spectral",
    version,
    about = "Biorthogonal Petrov-Galerkin spectral solver for sixth-order clamped-film problems"
)]
struct CliArgs {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Csv,
    Json,
}

impl From<FormatArg> for Format {
    fn from(f: FormatArg) -> Format {
        match f {
            FormatArg::Csv => Format::Csv,
            FormatArg::Json => Format::Json,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum KindArg {
    Trial,
    Test,
}

#[derive(Clone, Copy, ValueEnum)]
enum ParityArg {
    Even,
    Odd,
}

#[derive(Clone, Copy, ValueEnum)]
enum ProblemArg {
    Model1,
    Model2,
}

impl From<ProblemArg> for StudyProblem {
    fn from(p: ProblemArg) -> StudyProblem {
        match p {
            ProblemArg::Model1 => StudyProblem::Model1,
            ProblemArg::Model2 => StudyProblem::Model2,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Print the eigenvalue table (17 significant digits)
    Eigenvalues {
        #[arg(long)]
        max_index: usize,
        #[arg(long, value_enum, default_value_t = FormatArg::Csv)]
        format: FormatArg,
        /// Write to a file instead of stdout
        #[arg(long)]
        out: Option<PathBuf>,
        /// Assert the published reference values
        #[arg(long)]
        check: bool,
    },
    /// Sample one eigenfunction on a uniform grid (CSV x,value)
    Basis {
        #[arg(long, value_enum)]
        kind: KindArg,
        #[arg(long, value_enum)]
        parity: ParityArg,
        #[arg(long)]
        index: usize,
        #[arg(long, default_value_t = 201)]
        samples: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Gram matrices and biorthogonality summary
    Gram {
        #[arg(long)]
        max_index: usize,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Assert off-diagonal and constant thresholds
        #[arg(long)]
        check: bool,
    },
    /// Expand a function and fit its coefficient decay
    Expand {
        /// zero | x^P | cos-K | model1 | model2 | file:PATH
        #[arg(long)]
        function: String,
        #[arg(long)]
        max_index: usize,
        #[arg(long, default_value_t = 20)]
        m_min: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Solve a model problem and report errors and coefficient decay
    Solve {
        #[arg(long, value_enum)]
        problem: ProblemArg,
        #[arg(long)]
        max_index: usize,
        #[arg(long, default_value_t = 20)]
        m_min: usize,
        #[arg(long, default_value_t = 2001)]
        grid_points: usize,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Assert the published error and decay thresholds
        #[arg(long)]
        check: bool,
    },
    /// March the semi-discrete system with the implicit trapezoidal rule
    Evolve {
        /// Elastic Bond number of the evolution equation
        #[arg(long)]
        bond: f64,
        /// Steady forcing f(x): zero | x^P | cos-K | model1 | model2 | file:PATH
        #[arg(long, default_value = "zero")]
        rhs: String,
        /// Initial state: zero | mode:<c|s>:<M> | x^P | cos-K | file:PATH
        #[arg(long, default_value = "zero")]
        initial: String,
        #[arg(long)]
        max_index: usize,
        #[arg(long)]
        t_final: f64,
        #[arg(long)]
        dt: f64,
        /// Record every k-th step
        #[arg(long, default_value_t = 1)]
        every: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Convergence study over several truncations
    Study {
        /// JSON config file; flags override its values
        #[arg(long)]
        config: Option<PathBuf>,
        #[arg(long, value_enum)]
        problem: Option<ProblemArg>,
        /// Comma-separated strictly increasing truncations, e.g. 25,50,100
        #[arg(long, value_delimiter = ',')]
        truncations: Option<Vec<usize>>,
        #[arg(long)]
        m_min: Option<usize>,
        #[arg(long)]
        grid_points: Option<usize>,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Assert monotone errors plus the published thresholds
        #[arg(long)]
        check: bool,
    },
    /// Physical parameters -> elastic Bond number and timescale
    Nondim {
        /// Fluid density rho_f (kg/m^3)
        #[arg(long)]
        density: f64,
        /// Dynamic viscosity mu_f (Pa s)
        #[arg(long)]
        viscosity: f64,
        /// Gravitational acceleration g (m/s^2)
        #[arg(long, default_value_t = 9.81)]
        gravity: f64,
        /// Trough half-width l (m)
        #[arg(long)]
        half_width: f64,
        /// Equilibrium film height h0 (m)
        #[arg(long)]
        height: f64,
        /// Bending stiffness B (N m)
        #[arg(long)]
        bending: f64,
    },
}

fn out_dir(flag: Option<PathBuf>) -> PathBuf {
    flag.or_else(|| std::env::var_os(OUT_ENV).map(PathBuf::from))
        .unwrap_or_else(|| PathBuf::from("."))
}

fn emit(text: &str, out: Option<PathBuf>) -> Result<()> {
    match out {
        Some(path) => {
            if let Some(dir) = path.parent() {
                std::fs::create_dir_all(dir)?;
            }
            std::fs::write(path, text)?;
        }
        None => print!("{text}"),
    }
    Ok(())
}

enum Outcome {
    Ok,
    CheckFailed(String),
}

fn run(args: CliArgs) -> Result<Outcome> {
    match args.command {
        Command::Eigenvalues {
            max_index,
            format,
            out,
            check,
        } => {
            let text = cli::eigenvalue_listing(max_index, format.into())?;
            emit(&text, out)?;
            if check {
                if let Err(e) = cli::eigenvalue_check() {
                    return Ok(Outcome::CheckFailed(e.to_string()));
                }
                eprintln!("eigenvalues: check passed");
            }
            Ok(Outcome::Ok)
        }
        Command::Basis {
            kind,
            parity,
            index,
            samples,
            out,
        } => {
            let kind = match kind {
                KindArg::Trial => Kind::Trial,
                KindArg::Test => Kind::Test,
            };
            let parity = match parity {
                ParityArg::Even => Parity::Even,
                ParityArg::Odd => Parity::Odd,
            };
            let text = cli::basis_listing(kind, parity, index, samples)?;
            emit(&text, out)?;
            Ok(Outcome::Ok)
        }
        Command::Gram {
            max_index,
            out,
            check,
        } => {
            let dir = out_dir(out);
            let summary = cli::run_gram(max_index, &dir)?;
            eprintln!(
                "gram: M={} max offdiag {:.3e}, {} inconsistency flag(s) -> {}",
                summary.m_max,
                summary.max_offdiagonal_normalized,
                summary.inconsistency_flags.len(),
                dir.display()
            );
            if check {
                if summary.max_offdiagonal_normalized > 1e-9 {
                    return Ok(Outcome::CheckFailed(format!(
                        "normalized off-diagonal {:.3e} exceeds 1e-9",
                        summary.max_offdiagonal_normalized
                    )));
                }
                if (summary.c0 - 16.0 / 15.0).abs() > 1e-13 {
                    return Ok(Outcome::CheckFailed("c0 deviates from 16/15".into()));
                }
            }
            Ok(Outcome::Ok)
        }
        Command::Expand {
            function,
            max_index,
            m_min,
            out,
        } => {
            let spec = cli::parse_function_spec(&function)?;
            let dir = out_dir(out);
            let summary = cli::run_expand(&spec, max_index, m_min, &dir)?;
            eprintln!(
                "expand: {} restriction={}, fit exponent {:?} -> {}",
                function, summary.parity_restriction, summary.fit_exponent, dir.display()
            );
            Ok(Outcome::Ok)
        }
        Command::Solve {
            problem,
            max_index,
            m_min,
            grid_points,
            out,
            check,
        } => {
            let problem: StudyProblem = problem.into();
            let dir = out_dir(out);
            let summary = cli::run_solve(problem, max_index, m_min, grid_points, &dir)?;
            eprintln!(
                "solve {}: M={} max error {:.3e}, decay exponent {:?} -> {}",
                summary.problem, summary.m_max, summary.max_error, summary.fit_exponent,
                dir.display()
            );
            if check {
                if let Err(e) = cli::solve_check(problem, &summary) {
                    return Ok(Outcome::CheckFailed(e.to_string()));
                }
                eprintln!("solve {}: check passed", summary.problem);
            }
            Ok(Outcome::Ok)
        }
        Command::Evolve {
            bond,
            rhs,
            initial,
            max_index,
            t_final,
            dt,
            every,
            out,
        } => {
            let opts = EvolveOptions {
                bond,
                rhs: cli::parse_function_spec(&rhs)?,
                initial: cli::parse_function_spec(&initial)?,
                m_max: max_index,
                t_final,
                dt,
                every,
            };
            let dir = out_dir(out);
            let path = cli::run_evolve(&opts, &dir)?;
            eprintln!("evolve: wrote {}", path.display());
            Ok(Outcome::Ok)
        }
        Command::Study {
            config,
            problem,
            truncations,
            m_min,
            grid_points,
            out,
            check,
        } => {
            let mut cfg = match &config {
                Some(path) => StudyConfig::load(path)?,
                None => StudyConfig {
                    problem: StudyProblem::Model1,
                    truncations: vec![25, 50, 100],
                    m_min: 20,
                    grid_points: 2001,
                    tolerance: sextic_spectral::eigenvalues::DEFAULT_TOL,
                    out_dir: PathBuf::from("."),
                },
            };
            if let Some(p) = problem {
                cfg.problem = p.into();
            }
            if let Some(t) = truncations {
                cfg.truncations = t;
            }
            if let Some(m) = m_min {
                cfg.m_min = m;
            }
            if let Some(g) = grid_points {
                cfg.grid_points = g;
            }
            if let Some(dir) = out {
                cfg.out_dir = dir;
            } else if config.is_none() {
                cfg.out_dir = out_dir(None);
            }
            let report = cli::run_convergence_study(&cfg)?;
            for e in &report.entries {
                eprintln!(
                    "study {}: M={} max error {:?} exponent {:?}",
                    report.problem, e.m_max, e.max_error, e.fit_exponent
                );
            }
            if check {
                if let Err(e) = cli::study_check(&cfg, &report) {
                    return Ok(Outcome::CheckFailed(e.to_string()));
                }
                eprintln!("study {}: check passed", report.problem);
            }
            Ok(Outcome::Ok)
        }
        Command::Nondim {
            density,
            viscosity,
            gravity,
            half_width,
            height,
            bending,
        } => {
            let nd = cli::nondimensionalize(&PhysicalParameters {
                fluid_density: density,
                viscosity,
                gravity,
                half_width,
                equilibrium_height: height,
                bending_stiffness: bending,
            })?;
            println!("{}", serde_json::to_string_pretty(&nd)?);
            if nd.lubrication_warning {
                eprintln!(
                    "warning: h0/l = {:.3} > 0.1; the lubrication (thin-film) scaling is suspect",
                    nd.slenderness
                );
            }
            Ok(Outcome::Ok)
        }
    }
}

fn exit_code_for(err: &Error) -> u8 {
    match err {
        Error::Domain(_) | Error::Config(_) | Error::Io(_) | Error::Json(_) => 2,
        Error::RootBracketing { .. }
        | Error::Tolerance { .. }
        | Error::Evaluation { .. }
        | Error::IllConditioned { .. }
        | Error::Singular { .. }
        | Error::Compatibility { .. } => 3,
    }
}

fn main() -> ExitCode {
    let args = CliArgs::parse();
    match run(args) {
        Ok(Outcome::Ok) => ExitCode::SUCCESS,
        Ok(Outcome::CheckFailed(msg)) => {
            eprintln!("check failed: {msg}");
            ExitCode::from(4)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code_for(&e))
        }
    }
}
