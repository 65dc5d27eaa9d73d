//! Configuration, nondimensionalization, convergence studies, and the
//! deterministic CSV/JSON reporting behind the command-line binary.
//!
//! All numeric output uses Rust's shortest round-trip `f64` formatting, so
//! emitted CSV parses back losslessly; eigenvalue listings use 17
//! significant digits explicitly. Nothing here depends on time, host, or
//! hash-map iteration order: a fixed configuration produces byte-identical
//! files on every run.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::basis::Kind;
use crate::biorth::{self, gram_matrix};
use crate::eigenvalues::{self, Parity};
use crate::error::{Error, Result};
use crate::expansion::{self, fit_decay_exponent, ParityRestriction, SpectralCoefficients};
use crate::solver::{self, Forcing, TrapezoidalStepper};
use crate::Discretization;

/// Dimensional parameters of the physical film problem (SI units).
#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct PhysicalParameters {
    /// Fluid density ρ_f (kg/m³).
    pub fluid_density: f64,
    /// Dynamic viscosity μ_f (Pa·s).
    pub viscosity: f64,
    /// Gravitational acceleration g (m/s²).
    pub gravity: f64,
    /// Trough half-width ℓ (m).
    pub half_width: f64,
    /// Equilibrium film height h₀ (m).
    pub equilibrium_height: f64,
    /// Interface bending stiffness B (N·m).
    pub bending_stiffness: f64,
}

/// Dimensionless groups of the film problem.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct Nondimensional {
    /// Elastic Bond number 𝓑 = ρ_f g ℓ⁴ / B.
    pub bond: f64,
    /// Leveling timescale 12 μ_f ℓ⁶ / (B h₀³) in seconds.
    pub timescale_seconds: f64,
    /// Slenderness h₀/ℓ; the lubrication limit needs h₀ ≪ ℓ.
    pub slenderness: f64,
    /// True when h₀/ℓ > 0.1 and the thin-film scaling is suspect.
    pub lubrication_warning: bool,
}

/// Dimensionless groups from physical parameters.
pub fn nondimensionalize(p: &PhysicalParameters) -> Result<Nondimensional> {
    let all = [
        ("fluid_density", p.fluid_density),
        ("viscosity", p.viscosity),
        ("gravity", p.gravity),
        ("half_width", p.half_width),
        ("equilibrium_height", p.equilibrium_height),
        ("bending_stiffness", p.bending_stiffness),
    ];
    for (name, v) in all {
        if !(v.is_finite() && v > 0.0) {
            return Err(Error::Domain(format!(
                "physical parameter {name} must be positive and finite, got {v}"
            )));
        }
    }
    let l4 = p.half_width.powi(4);
    let bond = p.fluid_density * p.gravity * l4 / p.bending_stiffness;
    let timescale = 12.0 * p.viscosity * p.half_width.powi(6)
        / (p.bending_stiffness * p.equilibrium_height.powi(3));
    let slenderness = p.equilibrium_height / p.half_width;
    Ok(Nondimensional {
        bond,
        timescale_seconds: timescale,
        slenderness,
        lubrication_warning: slenderness > 0.1,
    })
}

// ---------------------------------------------------------------------
// Formatting helpers (determinism-critical).

/// Shortest decimal that round-trips to the same `f64`.
pub fn fmt_f64(v: f64) -> String {
    format!("{v}")
}

/// 17 significant digits (full f64 information, fixed width).
pub fn fmt_f64_17(v: f64) -> String {
    format!("{v:.16e}")
}

fn write_text(path: &Path, text: &str) -> Result<()> {
    if let Some(dir) = path.parent() {
        fs::create_dir_all(dir)?;
    }
    let mut f = fs::File::create(path)?;
    f.write_all(text.as_bytes())?;
    Ok(())
}

fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<()> {
    let mut text = serde_json::to_string_pretty(value)?;
    text.push('\n');
    write_text(path, &text)
}

// ---------------------------------------------------------------------
// Eigenvalue and basis listings.

/// Output format for listings.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Csv,
    Json,
}

/// Eigenvalue listing (CSV or JSON) at 17 significant digits.
pub fn eigenvalue_listing(max_index: usize, format: Format) -> Result<String> {
    let table = eigenvalues::build_table(max_index, eigenvalues::DEFAULT_TOL)?;
    match format {
        Format::Csv => {
            let mut out = String::from(
                "# eigenvalues of the clamped sixth-order problem; dimensionless\n\
                 index,parity,value,source\n",
            );
            for ev in table.even.iter().chain(table.odd.iter()) {
                out.push_str(&format!(
                    "{},{},{},{}\n",
                    ev.index,
                    ev.parity.as_str(),
                    fmt_f64_17(ev.value),
                    ev.source.as_str()
                ));
            }
            Ok(out)
        }
        Format::Json => {
            #[derive(Serialize)]
            struct Row<'a> {
                index: usize,
                parity: &'a str,
                value: String,
                source: &'a str,
            }
            let rows: Vec<Row> = table
                .even
                .iter()
                .chain(table.odd.iter())
                .map(|ev| Row {
                    index: ev.index,
                    parity: ev.parity.as_str(),
                    value: fmt_f64_17(ev.value),
                    source: ev.source.as_str(),
                })
                .collect();
            let mut s = serde_json::to_string_pretty(&rows)?;
            s.push('\n');
            Ok(s)
        }
    }
}

/// Reference even eigenvalues for `--check` (published to 12 digits).
pub const REFERENCE_EVEN: [f64; 6] = [
    4.71352778544,
    7.85397668926,
    10.9955743090,
    14.1371669411,
    17.2787595947,
    20.4203522483,
];

/// Assert the eigenvalue regression thresholds; Ok(()) on pass.
pub fn eigenvalue_check() -> Result<()> {
    for (i, &want) in REFERENCE_EVEN.iter().enumerate() {
        let got = eigenvalues::even_eigenvalue(i + 1, eigenvalues::DEFAULT_TOL)?.value;
        if (got - want).abs() > 1e-9 {
            return Err(Error::Config(format!(
                "even eigenvalue m={} deviates from reference: {got} vs {want}",
                i + 1
            )));
        }
    }
    for m in [4usize, 5] {
        let got = eigenvalues::even_eigenvalue(m, eigenvalues::DEFAULT_TOL)?.value;
        let asym = (m as f64 + 0.5) * std::f64::consts::PI;
        if (got - asym).abs() > 1e-9 {
            return Err(Error::Config(format!(
                "even eigenvalue m={m} should agree with (m+1/2)π to 1e-9, got diff {}",
                (got - asym).abs()
            )));
        }
    }
    Ok(())
}

/// Uniform-grid samples of one eigenfunction as CSV (x, value).
pub fn basis_listing(kind: Kind, parity: Parity, index: usize, samples: usize) -> Result<String> {
    if samples < 2 {
        return Err(Error::Config("need at least 2 samples".into()));
    }
    let f = crate::basis::BasisFunction::new(kind, parity, index)?;
    let mut out = format!(
        "# {} {} eigenfunction, index {}; x in [-1,1], dimensionless\nx,value\n",
        kind.as_str(),
        parity.as_str(),
        index
    );
    for i in 0..samples {
        let x = -1.0 + 2.0 * i as f64 / (samples - 1) as f64;
        out.push_str(&format!("{},{}\n", fmt_f64(x), fmt_f64(f.eval(x)?)));
    }
    Ok(out)
}

// ---------------------------------------------------------------------
// Gram report.

/// Summary emitted by the `gram` subcommand.
#[derive(Debug, Serialize)]
pub struct GramSummary {
    pub m_max: usize,
    pub max_offdiagonal_normalized: f64,
    pub c0: f64,
    pub c: Vec<f64>,
    pub s: Vec<f64>,
    pub inconsistency_flags: Vec<String>,
}

/// Write the full Gram matrices (CSV) and a summary JSON to `out_dir`.
pub fn run_gram(m_max: usize, out_dir: &Path) -> Result<GramSummary> {
    let disc = Discretization::new(m_max)?;
    let mut files = Vec::new();
    for (tag, trials, tests) in [
        ("even", &disc.trial_even, &disc.test_even),
        ("odd", &disc.trial_odd, &disc.test_odd),
    ] {
        let g = gram_matrix(trials, tests, &disc.rule)?;
        let mut out = format!(
            "# gram matrix <psi_l, phi_m>, {tag} parity; rows l, columns m\n"
        );
        for row in &g {
            let cells: Vec<String> = row.iter().map(|&v| fmt_f64(v)).collect();
            out.push_str(&cells.join(","));
            out.push('\n');
        }
        let path = out_dir.join(format!("gram_{tag}.csv"));
        write_text(&path, &out)?;
        files.push(path);
    }
    let summary = GramSummary {
        m_max,
        max_offdiagonal_normalized: biorth::gram_offdiag_max(&disc)?,
        c0: disc.constants.c0,
        c: disc.constants.c.clone(),
        s: disc.constants.s.clone(),
        inconsistency_flags: disc
            .constants
            .diagnostics
            .iter()
            .map(|d| d.to_string())
            .collect(),
    };
    write_json(&out_dir.join("gram_summary.json"), &summary)?;
    Ok(summary)
}

// ---------------------------------------------------------------------
// Function specs shared by `expand` and `evolve`.

/// A function selected on the command line.
#[derive(Clone, Debug, PartialEq)]
pub enum FunctionSpec {
    /// Identically zero.
    Zero,
    /// x^p for integer p ≥ 0.
    Power(u32),
    /// cos(kπx) for nonzero integer k.
    Cosine(i64),
    /// Model problem I forcing.
    Model1,
    /// Model problem II forcing.
    Model2,
    /// Samples (x, value) loaded from CSV, linearly interpolated.
    File(PathBuf),
    /// A single basis mode with unit coefficient (initial states only).
    Mode(Parity, usize),
}

/// Parse `zero | x^P | cos-K | model1 | model2 | file:PATH | mode:c:M | mode:s:M`.
pub fn parse_function_spec(s: &str) -> Result<FunctionSpec> {
    let bad = |why: &str| Error::Config(format!("cannot parse function spec '{s}': {why}"));
    if s == "zero" {
        return Ok(FunctionSpec::Zero);
    }
    if s == "model1" {
        return Ok(FunctionSpec::Model1);
    }
    if s == "model2" {
        return Ok(FunctionSpec::Model2);
    }
    if let Some(p) = s.strip_prefix("x^") {
        return p
            .parse::<u32>()
            .map(FunctionSpec::Power)
            .map_err(|_| bad("expected x^<nonnegative integer>"));
    }
    if let Some(k) = s.strip_prefix("cos-") {
        let k: i64 = k.parse().map_err(|_| bad("expected cos-<integer>"))?;
        if k == 0 {
            return Err(bad("cosine wavenumber must be nonzero"));
        }
        return Ok(FunctionSpec::Cosine(k));
    }
    if let Some(path) = s.strip_prefix("file:") {
        return Ok(FunctionSpec::File(PathBuf::from(path)));
    }
    if let Some(rest) = s.strip_prefix("mode:") {
        let (par, idx) = rest
            .split_once(':')
            .ok_or_else(|| bad("expected mode:<c|s>:<index>"))?;
        let parity = match par {
            "c" => Parity::Even,
            "s" => Parity::Odd,
            _ => return Err(bad("mode parity must be c or s")),
        };
        let index: usize = idx.parse().map_err(|_| bad("mode index must be an integer"))?;
        return Ok(FunctionSpec::Mode(parity, index));
    }
    Err(bad(
        "expected zero | x^P | cos-K | model1 | model2 | file:PATH | mode:<c|s>:<M>",
    ))
}

/// Piecewise-linear interpolant through CSV samples (x, value) covering
/// [−1, 1]. Lines starting with '#' and a header row are skipped.
fn load_sampled_function(path: &Path) -> Result<impl Fn(f64) -> f64 + Send + Sync> {
    let text = fs::read_to_string(path)?;
    let mut pts: Vec<(f64, f64)> = Vec::new();
    for line in text.lines() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let mut cells = line.split(',');
        let (Some(a), Some(b)) = (cells.next(), cells.next()) else {
            continue;
        };
        if let (Ok(x), Ok(v)) = (a.trim().parse::<f64>(), b.trim().parse::<f64>()) {
            pts.push((x, v));
        }
    }
    if pts.len() < 2 {
        return Err(Error::Config(format!(
            "{} holds fewer than 2 numeric (x,value) rows",
            path.display()
        )));
    }
    pts.sort_by(|a, b| a.0.total_cmp(&b.0));
    if pts.first().unwrap().0 > -1.0 || pts.last().unwrap().0 < 1.0 {
        return Err(Error::Config(format!(
            "{} must cover [-1, 1], spans [{}, {}]",
            path.display(),
            pts.first().unwrap().0,
            pts.last().unwrap().0
        )));
    }
    Ok(move |x: f64| {
        let i = pts.partition_point(|p| p.0 < x).min(pts.len() - 1).max(1);
        let (x0, v0) = pts[i - 1];
        let (x1, v1) = pts[i];
        if x1 == x0 {
            v0
        } else {
            v0 + (v1 - v0) * (x - x0) / (x1 - x0)
        }
    })
}

/// Materialize a function spec as a callable (Mode is rejected here; it
/// only makes sense as an initial coefficient state).
pub fn function_of_spec(spec: &FunctionSpec) -> Result<Box<dyn Fn(f64) -> f64 + Send + Sync>> {
    Ok(match spec {
        FunctionSpec::Zero => Box::new(|_| 0.0),
        FunctionSpec::Power(p) => {
            let p = *p as i32;
            Box::new(move |x: f64| x.powi(p))
        }
        FunctionSpec::Cosine(k) => {
            let k = *k as f64;
            Box::new(move |x: f64| (k * std::f64::consts::PI * x).cos())
        }
        FunctionSpec::Model1 => Box::new(solver::model_problem_1_rhs),
        FunctionSpec::Model2 => Box::new(solver::model_problem_2_rhs),
        FunctionSpec::File(path) => Box::new(load_sampled_function(path)?),
        FunctionSpec::Mode(..) => {
            return Err(Error::Config(
                "mode:<c|s>:<M> is only valid as an initial state".into(),
            ))
        }
    })
}

// ---------------------------------------------------------------------
// Expand report.

/// Summary emitted by the `expand` subcommand.
#[derive(Debug, Serialize)]
pub struct ExpandSummary {
    pub function: String,
    pub m_max: usize,
    pub parity_restriction: String,
    pub u0c: f64,
    pub fit_family: String,
    pub fit_amplitude: Option<f64>,
    pub fit_exponent: Option<f64>,
    pub fit_excluded_zeros: Option<usize>,
}

fn restriction_str(r: ParityRestriction) -> &'static str {
    match r {
        ParityRestriction::None => "none",
        ParityRestriction::EvenOnly => "even-only",
        ParityRestriction::OddOnly => "odd-only",
    }
}

/// Expand a function, write the coefficient CSV, and fit the decay of the
/// dominant-parity normalized coefficients over m > m_min.
pub fn run_expand(
    spec: &FunctionSpec,
    m_max: usize,
    m_min: usize,
    out_dir: &Path,
) -> Result<ExpandSummary> {
    let disc = Discretization::new(m_max)?;
    let f = function_of_spec(spec)?;
    let coeffs = expansion::expand(&f, &disc)?;

    let mut csv = String::from(
        "# expansion coefficients u_m = <f, phi_m>/const; dimensionless\n\
         m,parity,coefficient,coefficient_over_constant\n",
    );
    csv.push_str(&format!("0,even,{},{}\n", fmt_f64(coeffs.u0c), fmt_f64(coeffs.u0c)));
    for m in 1..=m_max {
        csv.push_str(&format!(
            "{m},even,{},{}\n",
            fmt_f64(coeffs.uc[m - 1] * disc.constants.c(m)),
            fmt_f64(coeffs.uc[m - 1])
        ));
        csv.push_str(&format!(
            "{m},odd,{},{}\n",
            fmt_f64(coeffs.us[m - 1] * disc.constants.s(m)),
            fmt_f64(coeffs.us[m - 1])
        ));
    }
    write_text(&out_dir.join("coefficients.csv"), &csv)?;

    let (family, values): (&str, Vec<f64>) = match coeffs.parity_restriction {
        ParityRestriction::OddOnly => ("odd", coeffs.us.iter().map(|v| v.abs()).collect()),
        _ => ("even", coeffs.uc.iter().map(|v| v.abs()).collect()),
    };
    let fit = fit_decay_exponent(&values, m_min).ok();
    let summary = ExpandSummary {
        function: format!("{spec:?}"),
        m_max,
        parity_restriction: restriction_str(coeffs.parity_restriction).to_string(),
        u0c: coeffs.u0c,
        fit_family: family.to_string(),
        fit_amplitude: fit.map(|f| f.amplitude),
        fit_exponent: fit.map(|f| f.exponent),
        fit_excluded_zeros: fit.map(|f| f.excluded_zeros),
    };
    write_json(&out_dir.join("expand_summary.json"), &summary)?;
    Ok(summary)
}

// ---------------------------------------------------------------------
// Solve report.

/// Which model problem to solve.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum StudyProblem {
    Model1,
    Model2,
}

impl StudyProblem {
    pub fn as_str(self) -> &'static str {
        match self {
            StudyProblem::Model1 => "model1",
            StudyProblem::Model2 => "model2",
        }
    }

    pub fn exact(self) -> fn(f64) -> f64 {
        match self {
            StudyProblem::Model1 => solver::model_problem_1_exact,
            StudyProblem::Model2 => solver::model_problem_2_exact,
        }
    }

    /// Published acceptance threshold on the M = 100 sup-norm error.
    pub fn error_threshold(self) -> f64 {
        match self {
            StudyProblem::Model1 => 5e-4,
            StudyProblem::Model2 => 1e-9,
        }
    }
}

/// Summary emitted by the `solve` subcommand.
#[derive(Debug, Serialize)]
pub struct SolveSummary {
    pub problem: String,
    pub m_max: usize,
    pub grid_points: usize,
    pub max_error: f64,
    pub fit_amplitude: Option<f64>,
    pub fit_exponent: Option<f64>,
    pub condition: Option<f64>,
    pub inconsistency_flags: Vec<String>,
}

/// Solve one model problem, writing solution and coefficient CSVs plus a
/// JSON error summary.
pub fn run_solve(
    problem: StudyProblem,
    m_max: usize,
    m_min: usize,
    grid_points: usize,
    out_dir: &Path,
) -> Result<SolveSummary> {
    let disc = Discretization::new(m_max)?;
    let sol = match problem {
        StudyProblem::Model1 => solver::solve_model_problem_1(&disc)?,
        StudyProblem::Model2 => solver::solve_model_problem_2(&disc)?,
    };
    let exact = problem.exact();

    let n = grid_points.max(2);
    let mut csv = String::from(
        "# spectral vs exact solution on the error grid; dimensionless\n\
         x,u_spectral,u_exact,abs_error\n",
    );
    let mut max_error = 0.0f64;
    for i in 0..n {
        let x = -1.0 + 2.0 * i as f64 / (n - 1) as f64;
        let u = sol.evaluate(x, &disc)?;
        let e = exact(x);
        max_error = max_error.max((u - e).abs());
        csv.push_str(&format!(
            "{},{},{},{}\n",
            fmt_f64(x),
            fmt_f64(u),
            fmt_f64(e),
            fmt_f64((u - e).abs())
        ));
    }
    write_text(&out_dir.join("solution.csv"), &csv)?;

    let (family, values): (&str, Vec<f64>) = match problem {
        StudyProblem::Model1 => ("odd", sol.coefficients.us.iter().map(|v| v.abs()).collect()),
        StudyProblem::Model2 => ("even", sol.coefficients.uc.iter().map(|v| v.abs()).collect()),
    };
    let mut ccsv = format!(
        "# solution expansion coefficients, {family} family; dimensionless\nm,abs_coefficient\n"
    );
    for (i, v) in values.iter().enumerate() {
        ccsv.push_str(&format!("{},{}\n", i + 1, fmt_f64(*v)));
    }
    write_text(&out_dir.join("coefficients.csv"), &ccsv)?;

    let fit = fit_decay_exponent(&values, m_min).ok();
    let summary = SolveSummary {
        problem: problem.as_str().to_string(),
        m_max,
        grid_points: n,
        max_error,
        fit_amplitude: fit.map(|f| f.amplitude),
        fit_exponent: fit.map(|f| f.exponent),
        condition: sol.condition,
        inconsistency_flags: sol.diagnostics.iter().map(|d| d.to_string()).collect(),
    };
    write_json(&out_dir.join("solve_summary.json"), &summary)?;
    Ok(summary)
}

/// `--check` thresholds for a solve summary (published reference numbers).
pub fn solve_check(problem: StudyProblem, summary: &SolveSummary) -> Result<()> {
    if summary.max_error > problem.error_threshold() {
        return Err(Error::Config(format!(
            "{}: max error {:.3e} exceeds threshold {:.1e}",
            problem.as_str(),
            summary.max_error,
            problem.error_threshold()
        )));
    }
    if summary.m_max >= 60 {
        match summary.fit_exponent {
            Some(e) if (e + 6.9).abs() <= 0.3 => {}
            other => {
                return Err(Error::Config(format!(
                    "{}: decay exponent {other:?} outside -6.9 +/- 0.3",
                    problem.as_str()
                )))
            }
        }
    }
    Ok(())
}

// ---------------------------------------------------------------------
// Evolve report.

/// Options for the `evolve` subcommand.
pub struct EvolveOptions {
    pub bond: f64,
    pub rhs: FunctionSpec,
    pub initial: FunctionSpec,
    pub m_max: usize,
    pub t_final: f64,
    pub dt: f64,
    /// Record every k-th step (plus the final state).
    pub every: usize,
}

/// March the semi-discrete system and write coefficient trajectories.
pub fn run_evolve(opts: &EvolveOptions, out_dir: &Path) -> Result<PathBuf> {
    if !(opts.t_final > 0.0 && opts.dt > 0.0) {
        return Err(Error::Config("t_final and dt must be positive".into()));
    }
    let disc = Discretization::new(opts.m_max)?;
    let forcing = match &opts.rhs {
        FunctionSpec::Zero => Forcing::Zero,
        spec => {
            let f = function_of_spec(spec)?;
            Forcing::Steady(solver::project_forcing(&f, &disc)?)
        }
    };
    let initial = match &opts.initial {
        FunctionSpec::Zero => SpectralCoefficients::zeros(opts.m_max),
        FunctionSpec::Mode(parity, m) => {
            SpectralCoefficients::single_mode(*parity, *m, 1.0, opts.m_max)?
        }
        spec => {
            let f = function_of_spec(spec)?;
            solver::expand_function(&f, &disc)?
        }
    };
    let system = solver::assemble_semidiscrete(&disc, opts.bond, forcing)?;
    let stepper = TrapezoidalStepper::new(&system, opts.dt)?;

    let steps = (opts.t_final / opts.dt).round() as usize;
    let every = opts.every.max(1);
    let mut csv = String::from("# coefficient trajectories; columns u0c, uc_m, us_m\n");
    csv.push_str("t,u0c");
    for m in 1..=opts.m_max {
        csv.push_str(&format!(",uc_{m}"));
    }
    for m in 1..=opts.m_max {
        csv.push_str(&format!(",us_{m}"));
    }
    csv.push('\n');
    let emit = |t: f64, u: &SpectralCoefficients, csv: &mut String| {
        csv.push_str(&fmt_f64(t));
        csv.push(',');
        csv.push_str(&fmt_f64(u.u0c));
        for v in u.uc.iter().chain(&u.us) {
            csv.push(',');
            csv.push_str(&fmt_f64(*v));
        }
        csv.push('\n');
    };
    let mut state = initial;
    let mut t = 0.0;
    emit(t, &state, &mut csv);
    for k in 1..=steps {
        state = stepper.step(&state, t)?;
        t = k as f64 * opts.dt;
        if k % every == 0 || k == steps {
            emit(t, &state, &mut csv);
        }
    }
    let path = out_dir.join("trajectories.csv");
    write_text(&path, &csv)?;
    Ok(path)
}

// ---------------------------------------------------------------------
// Convergence study.

/// Configuration of a convergence study (JSON file; flags may override).
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct StudyConfig {
    pub problem: StudyProblem,
    /// Strictly increasing truncation indices, e.g. [25, 50, 100].
    pub truncations: Vec<usize>,
    /// Decay fits use coefficients with m > m_min.
    #[serde(default = "default_m_min")]
    pub m_min: usize,
    /// Error-grid resolution.
    #[serde(default = "default_grid_points")]
    pub grid_points: usize,
    /// Residual tolerance for eigenvalue root refinement.
    #[serde(default = "default_tolerance")]
    pub tolerance: f64,
    pub out_dir: PathBuf,
}

fn default_m_min() -> usize {
    20
}

fn default_grid_points() -> usize {
    2001
}

fn default_tolerance() -> f64 {
    eigenvalues::DEFAULT_TOL
}

impl StudyConfig {
    pub fn validate(&self) -> Result<()> {
        if self.truncations.is_empty() {
            return Err(Error::Config("study needs at least one truncation".into()));
        }
        if self.truncations.windows(2).any(|w| w[1] <= w[0]) {
            return Err(Error::Config(
                "truncations must be strictly increasing".into(),
            ));
        }
        if self.grid_points < 2 {
            return Err(Error::Config("grid_points must be at least 2".into()));
        }
        if !(self.tolerance.is_finite() && self.tolerance >= f64::EPSILON) {
            return Err(Error::Config(
                "tolerance must be finite and >= machine epsilon".into(),
            ));
        }
        Ok(())
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = fs::read_to_string(path)?;
        let cfg: StudyConfig = serde_json::from_str(&text)?;
        cfg.validate()?;
        Ok(cfg)
    }
}

/// Per-truncation study result; solver errors are recorded, not fatal.
#[derive(Clone, Debug, Serialize)]
pub struct StudyEntry {
    pub m_max: usize,
    pub max_error: Option<f64>,
    pub fit_amplitude: Option<f64>,
    pub fit_exponent: Option<f64>,
    pub solver_error: Option<String>,
}

/// Full study report (also written as summary.json).
#[derive(Clone, Debug, Serialize)]
pub struct StudyReport {
    pub problem: String,
    pub m_min: usize,
    pub grid_points: usize,
    pub entries: Vec<StudyEntry>,
}

/// Run the convergence study: per truncation, solve, record the sup-norm
/// grid error and the coefficient-decay fit, and write
/// `coefficients_M*.csv`, `errors.csv`, and `summary.json` under out_dir.
pub fn run_convergence_study(cfg: &StudyConfig) -> Result<StudyReport> {
    cfg.validate()?;
    let exact = cfg.problem.exact();
    let mut entries = Vec::new();
    for &m_max in &cfg.truncations {
        let attempt = (|| -> Result<StudyEntry> {
            let disc = Discretization::with_tolerance(m_max, cfg.tolerance)?;
            let sol = match cfg.problem {
                StudyProblem::Model1 => solver::solve_model_problem_1(&disc)?,
                StudyProblem::Model2 => solver::solve_model_problem_2(&disc)?,
            };
            let max_error = sol.max_grid_error(exact, cfg.grid_points, &disc)?;
            let values: Vec<f64> = match cfg.problem {
                StudyProblem::Model1 => sol.coefficients.us.iter().map(|v| v.abs()).collect(),
                StudyProblem::Model2 => sol.coefficients.uc.iter().map(|v| v.abs()).collect(),
            };
            let mut csv = format!(
                "# |u_m| for {} at M={m_max}; dimensionless\nm,abs_coefficient\n",
                cfg.problem.as_str()
            );
            for (i, v) in values.iter().enumerate() {
                csv.push_str(&format!("{},{}\n", i + 1, fmt_f64(*v)));
            }
            write_text(
                &cfg.out_dir.join(format!("coefficients_M{m_max:04}.csv")),
                &csv,
            )?;
            let fit = fit_decay_exponent(&values, cfg.m_min).ok();
            Ok(StudyEntry {
                m_max,
                max_error: Some(max_error),
                fit_amplitude: fit.map(|f| f.amplitude),
                fit_exponent: fit.map(|f| f.exponent),
                solver_error: None,
            })
        })();
        entries.push(match attempt {
            Ok(e) => e,
            Err(err) => StudyEntry {
                m_max,
                max_error: None,
                fit_amplitude: None,
                fit_exponent: None,
                solver_error: Some(err.to_string()),
            },
        });
    }

    let mut errors_csv = String::from("# sup-norm grid error per truncation\nm_max,max_error\n");
    for e in &entries {
        errors_csv.push_str(&format!(
            "{},{}\n",
            e.m_max,
            e.max_error.map(fmt_f64).unwrap_or_else(|| "nan".into())
        ));
    }
    write_text(&cfg.out_dir.join("errors.csv"), &errors_csv)?;

    let report = StudyReport {
        problem: cfg.problem.as_str().to_string(),
        m_min: cfg.m_min,
        grid_points: cfg.grid_points,
        entries,
    };
    write_json(&cfg.out_dir.join("summary.json"), &report)?;
    Ok(report)
}

/// `--check` thresholds for a study report.
pub fn study_check(cfg: &StudyConfig, report: &StudyReport) -> Result<()> {
    let mut prev = f64::INFINITY;
    for e in &report.entries {
        let err = e.max_error.ok_or_else(|| {
            Error::Config(format!(
                "study entry M={} failed: {}",
                e.m_max,
                e.solver_error.clone().unwrap_or_default()
            ))
        })?;
        if err > prev {
            return Err(Error::Config(format!(
                "max error not non-increasing at M={}: {err:.3e} after {prev:.3e}",
                e.m_max
            )));
        }
        prev = err;
    }
    let last = report.entries.last().expect("validated nonempty");
    let summary = SolveSummary {
        problem: report.problem.clone(),
        m_max: last.m_max,
        grid_points: report.grid_points,
        max_error: last.max_error.unwrap(),
        fit_amplitude: last.fit_amplitude,
        fit_exponent: last.fit_exponent,
        condition: None,
        inconsistency_flags: Vec::new(),
    };
    solve_check(cfg.problem, &summary)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params() -> PhysicalParameters {
        PhysicalParameters {
            fluid_density: 1000.0,
            viscosity: 1.0,
            gravity: 9.81,
            half_width: 0.01,
            equilibrium_height: 1e-4,
            bending_stiffness: 1e-3,
        }
    }

    #[test]
    fn nondimensionalization_definitions() {
        // rho g l^4 = B  =>  bond = 1
        let mut p = params();
        p.bending_stiffness = p.fluid_density * p.gravity * p.half_width.powi(4);
        let nd = nondimensionalize(&p).unwrap();
        assert!((nd.bond - 1.0).abs() < 1e-15);

        // mu = B h0^3 / (12 l^6)  =>  timescale = 1
        let mut p = params();
        p.viscosity = p.bending_stiffness * p.equilibrium_height.powi(3)
            / (12.0 * p.half_width.powi(6));
        let nd = nondimensionalize(&p).unwrap();
        assert!((nd.timescale_seconds - 1.0).abs() < 1e-12);
    }

    #[test]
    fn nondimensionalization_power_laws() {
        let p = params();
        let base = nondimensionalize(&p).unwrap();
        let mut doubled = p;
        doubled.half_width *= 2.0;
        let nd = nondimensionalize(&doubled).unwrap();
        assert!((nd.bond / base.bond - 16.0).abs() < 1e-12);
        assert!((nd.timescale_seconds / base.timescale_seconds - 64.0).abs() < 1e-10);
    }

    #[test]
    fn nondimensionalization_guards() {
        let mut p = params();
        p.gravity = 0.0;
        assert!(nondimensionalize(&p).is_err());
        let mut p = params();
        p.equilibrium_height = 0.02; // h0/l = 2 > 0.1
        assert!(nondimensionalize(&p).unwrap().lubrication_warning);
        assert!(!nondimensionalize(&params()).unwrap().lubrication_warning);
    }

    #[test]
    fn eigenvalue_listing_has_17_digit_values_and_parses_back() {
        let csv = eigenvalue_listing(3, Format::Csv).unwrap();
        let mut rows = 0;
        for line in csv.lines().skip(2) {
            let cells: Vec<&str> = line.split(',').collect();
            assert_eq!(cells.len(), 4);
            let v: f64 = cells[2].parse().unwrap();
            assert!(v.is_finite());
            rows += 1;
        }
        assert_eq!(rows, 4 + 3); // even 0..=3, odd 1..=3
        assert!(eigenvalue_check().is_ok());
    }

    #[test]
    fn function_specs_parse() {
        assert_eq!(parse_function_spec("x^7").unwrap(), FunctionSpec::Power(7));
        assert_eq!(parse_function_spec("cos-2").unwrap(), FunctionSpec::Cosine(2));
        assert_eq!(parse_function_spec("zero").unwrap(), FunctionSpec::Zero);
        assert_eq!(
            parse_function_spec("mode:s:3").unwrap(),
            FunctionSpec::Mode(Parity::Odd, 3)
        );
        assert!(parse_function_spec("cos-0").is_err());
        assert!(parse_function_spec("x^-1").is_err());
        assert!(parse_function_spec("sin-2").is_err());
    }

    #[test]
    fn shortest_float_formatting_round_trips() {
        for &v in &[
            0.1,
            -3.0,
            1.0 / 3.0,
            6.02e23,
            5e-324,
            std::f64::consts::PI,
        ] {
            let s = fmt_f64(v);
            let back: f64 = s.parse().unwrap();
            assert_eq!(back.to_bits(), v.to_bits(), "{v} -> {s}");
        }
    }

    #[test]
    fn study_is_deterministic_byte_for_byte() {
        let dir = tempfile::tempdir().unwrap();
        let mk = |sub: &str| StudyConfig {
            problem: StudyProblem::Model1,
            truncations: vec![10, 20],
            m_min: 5,
            grid_points: 201,
            tolerance: default_tolerance(),
            out_dir: dir.path().join(sub),
        };
        let a = mk("a");
        let b = mk("b");
        run_convergence_study(&a).unwrap();
        run_convergence_study(&b).unwrap();
        for name in ["coefficients_M0010.csv", "coefficients_M0020.csv", "errors.csv", "summary.json"] {
            let fa = fs::read(a.out_dir.join(name)).unwrap();
            let fb = fs::read(b.out_dir.join(name)).unwrap();
            assert_eq!(fa, fb, "{name} differs between runs");
        }
    }

    #[test]
    fn study_errors_non_increasing_and_checkable() {
        let dir = tempfile::tempdir().unwrap();
        let cfg = StudyConfig {
            problem: StudyProblem::Model1,
            truncations: vec![25, 50, 100],
            m_min: 20,
            grid_points: 501,
            tolerance: default_tolerance(),
            out_dir: dir.path().to_path_buf(),
        };
        let report = run_convergence_study(&cfg).unwrap();
        let errs: Vec<f64> = report.entries.iter().map(|e| e.max_error.unwrap()).collect();
        assert!(errs[1] <= errs[0] && errs[2] <= errs[1], "{errs:?}");
        study_check(&cfg, &report).unwrap();
    }

    #[test]
    fn invalid_study_configs_are_rejected() {
        let cfg = StudyConfig {
            problem: StudyProblem::Model1,
            truncations: vec![50, 25],
            m_min: 20,
            grid_points: 201,
            tolerance: default_tolerance(),
            out_dir: PathBuf::from("."),
        };
        assert!(cfg.validate().is_err());
        let cfg = StudyConfig {
            truncations: vec![],
            ..cfg
        };
        assert!(cfg.validate().is_err());
    }

    #[test]
    fn sampled_function_loader_interpolates() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("f.csv");
        fs::write(&path, "# samples\nx,value\n-1,0\n0,1\n1,0\n").unwrap();
        let f = load_sampled_function(&path).unwrap();
        assert!((f(-1.0) - 0.0).abs() < 1e-15);
        assert!((f(0.5) - 0.5).abs() < 1e-15);
        assert!((f(0.0) - 1.0).abs() < 1e-15);
        fs::write(&path, "0,1\n0.5,1\n").unwrap();
        assert!(load_sampled_function(&path).is_err()); // does not cover [-1,1]
    }
}
