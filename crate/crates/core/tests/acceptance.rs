//! Acceptance suite: one test per published claim, each printing a
//! PASS/FAIL line (run with `cargo test --test acceptance -- --nocapture`
//! to see every line).

use std::sync::OnceLock;
use std::time::Instant;

use sextic_spectral::basis::Kind;
use sextic_spectral::biorth::{self, Method};
use sextic_spectral::cli::{run_convergence_study, StudyConfig, StudyProblem};
use sextic_spectral::eigenvalues::{self, Parity};
use sextic_spectral::expansion::{
    beta_matrix, beta_matrix_verified, chi_coefficient, cosine_coefficient, fit_decay_exponent,
};
use sextic_spectral::solver::{
    self, assemble_semidiscrete, project_forcing, solve_model_problem_1, solve_model_problem_2,
    solve_steady, Forcing, Rhs, SteadyProblem, TrapezoidalStepper, MODEL_2_BOND,
};
use sextic_spectral::{expansion, Discretization};

fn disc100() -> &'static Discretization {
    static DISC: OnceLock<Discretization> = OnceLock::new();
    DISC.get_or_init(|| Discretization::new(100).expect("discretization M=100"))
}

fn disc30() -> &'static Discretization {
    static DISC: OnceLock<Discretization> = OnceLock::new();
    DISC.get_or_init(|| Discretization::new(30).expect("discretization M=30"))
}

fn report(id: u32, name: &str, pass: bool, details: &str) {
    println!(
        "criterion {id:2} ({name}): {} — {details}",
        if pass { "PASS" } else { "FAIL" }
    );
    assert!(pass, "criterion {id} ({name}) failed: {details}");
}

#[test]
fn criterion_01_eigenvalue_regression() {
    let t0 = Instant::now();
    let reference = [
        4.71352778544,
        7.85397668926,
        10.9955743090,
        14.1371669411,
        17.2787595947,
        20.4203522483,
    ];
    let mut worst = 0.0f64;
    for (i, &want) in reference.iter().enumerate() {
        let got = eigenvalues::even_eigenvalue(i + 1, eigenvalues::DEFAULT_TOL)
            .unwrap()
            .value;
        worst = worst.max((got - want).abs());
    }
    let mut asym_worst = 0.0f64;
    for m in [4usize, 5] {
        let got = eigenvalues::even_eigenvalue(m, eigenvalues::DEFAULT_TOL)
            .unwrap()
            .value;
        asym_worst = asym_worst.max((got - (m as f64 + 0.5) * std::f64::consts::PI).abs());
    }
    let dt = t0.elapsed();
    let pass = worst <= 1e-9 && asym_worst <= 1e-9 && dt.as_secs_f64() < 1.0;
    report(
        1,
        "eigenvalue regression",
        pass,
        &format!(
            "max |λ−table| = {worst:.2e}, max |λ−(m+1/2)π| (m=4,5) = {asym_worst:.2e}, {:.0} ms",
            dt.as_secs_f64() * 1e3
        ),
    );
}

#[test]
fn criterion_02_boundary_condition_suite() {
    let t0 = Instant::now();
    let disc = disc30();
    let mut worst = 0.0f64;
    for parity in [Parity::Even, Parity::Odd] {
        for m in 1..=30 {
            for (kind, orders) in [(Kind::Trial, [0usize, 1, 5]), (Kind::Test, [1, 2, 3])] {
                let f = match kind {
                    Kind::Trial => disc.trial(parity, m),
                    Kind::Test => disc.test(parity, m),
                };
                for order in orders {
                    let scale = f.sup_norm_estimate(order, 257);
                    for x in [-1.0, 1.0] {
                        let v = if order == 0 {
                            f.eval(x).unwrap()
                        } else {
                            f.eval_derivative(x, order).unwrap()
                        };
                        worst = worst.max(v.abs() / scale);
                    }
                }
            }
        }
    }
    let dt = t0.elapsed();
    let pass = worst <= 1e-8;
    report(
        2,
        "boundary conditions",
        pass,
        &format!(
            "max boundary value / sup-norm = {worst:.2e} over indices 1..30, {:.1} s",
            dt.as_secs_f64()
        ),
    );
}

#[test]
fn criterion_03_biorthogonality() {
    let disc = disc30();
    let offdiag = biorth::gram_offdiag_max(disc).unwrap();
    let c0_err = (disc.constants.c0 - 16.0 / 15.0).abs();
    // full closed-form evaluation for the tail (no fast path)
    let table = eigenvalues::build_table(100, eigenvalues::DEFAULT_TOL).unwrap();
    let full = biorth::BiorthConstants::closed_form(&table, true);
    let mut tail = 0.0f64;
    for m in 7..=100 {
        tail = tail.max((full.c(m) - 1.0).abs()).max((full.s(m) - 1.0).abs());
    }
    // c0 also by quadrature
    let c0_quad = biorth::biorth_constant(Parity::Even, 0, Method::Quadrature).unwrap();
    let pass = offdiag <= 1e-9
        && c0_err <= 1e-13
        && (c0_quad - 16.0 / 15.0).abs() <= 1e-13
        && tail <= 1e-12;
    report(
        3,
        "biorthogonality",
        pass,
        &format!(
            "gram offdiag {offdiag:.2e}, |c0−16/15| = {c0_err:.1e} (quad {:.1e}), max |c,s−1| (7..100) = {tail:.2e}",
            (c0_quad - 16.0 / 15.0).abs()
        ),
    );
}

#[test]
fn criterion_04_adjointness_identity() {
    let disc = disc30();
    // deterministic pseudo-random index pairs
    let mut seed = 0x9e3779b97f4a7c15u64;
    let mut next = move || {
        seed ^= seed << 13;
        seed ^= seed >> 7;
        seed ^= seed << 17;
        seed
    };
    let mut worst = 0.0f64;
    for _ in 0..20 {
        let parity = if next() % 2 == 0 { Parity::Even } else { Parity::Odd };
        let lo = if parity == Parity::Even { 0 } else { 1 };
        let l = lo + (next() as usize) % (30 - lo + 1);
        let m = lo + (next() as usize) % (30 - lo + 1);
        let raw = biorth::adjointness_residual(disc, parity, l, m).unwrap();
        let lam = disc.table.get(parity, l.max(m).max(1)).value.max(1.0);
        let c = match parity {
            Parity::Even => disc.constants.c(l.max(m)),
            Parity::Odd => disc.constants.s(l.max(m)),
        };
        worst = worst.max(raw / (lam.powi(6) * c.abs().max(1.0)));
    }
    let pass = worst <= 1e-6;
    report(
        4,
        "adjointness identity",
        pass,
        &format!("max relative |<Lψ,φ>−<ψ,Mφ>| = {worst:.2e} over 20 random pairs"),
    );
}

#[test]
fn criterion_05_oracle_equivalence_typo_shield() {
    let disc = disc30();
    // c_m, s_m and beta via the verified paths: every closed-form value
    // either agrees with quadrature to 1e-8 or has been replaced by the
    // quadrature value with a report.
    let mut flagged = Vec::new();
    flagged.extend(disc.constants.diagnostics.iter().cloned());
    let (beta_c, d1) = beta_matrix_verified(Parity::Even, disc).unwrap();
    let (beta_s, d2) = beta_matrix_verified(Parity::Odd, disc).unwrap();
    flagged.extend(d1);
    flagged.extend(d2);
    // cross-check the verified matrices against plain quadrature
    let quad_c = beta_matrix(Parity::Even, Method::Quadrature, disc).unwrap();
    let quad_s = beta_matrix(Parity::Odd, Method::Quadrature, disc).unwrap();
    let mut worst = 0.0f64;
    for n in 1..=30 {
        for m in 1..=30 {
            worst = worst.max(
                (beta_c.get(n, m) - quad_c.get(n, m)).abs() / quad_c.get(n, m).abs().max(1e-12),
            );
            worst = worst.max(
                (beta_s.get(n, m) - quad_s.get(n, m)).abs() / quad_s.get(n, m).abs().max(1e-12),
            );
        }
    }
    // chi and cs closed forms against fresh quadrature
    for m in 1..=30 {
        for p in [1u32, 3, 5, 7] {
            let closed = chi_coefficient(p, m).unwrap();
            let quad = biorth::inner_product(
                |x| x.powi(p as i32),
                |x| disc.test(Parity::Odd, m).eval(x).unwrap(),
                &disc.rule,
            )
            .unwrap();
            worst = worst.max((closed - quad).abs() / quad.abs().max(1e-12));
        }
        let closed = cosine_coefficient(2, m).unwrap();
        let quad = biorth::inner_product(
            |x| (2.0 * std::f64::consts::PI * x).cos(),
            |x| disc.test(Parity::Even, m).eval(x).unwrap(),
            &disc.rule,
        )
        .unwrap();
        worst = worst.max((closed - quad).abs() / quad.abs().max(1e-12));
    }
    for d in &flagged {
        println!("  reported discrepancy: {d}");
    }
    let pass = worst <= 1e-8;
    report(
        5,
        "oracle equivalence",
        pass,
        &format!(
            "max closed-form vs quadrature rel diff = {worst:.2e} (indices ≤ 30), {} reported discrepancies",
            flagged.len()
        ),
    );
}

#[test]
fn criterion_06_model_problem_1() {
    let t0 = Instant::now();
    let disc = disc100();
    let sol = solve_model_problem_1(disc).unwrap();
    let err = sol
        .max_grid_error(solver::model_problem_1_exact, 2001, disc)
        .unwrap();
    let vals: Vec<f64> = sol.coefficients.us.iter().map(|v| v.abs()).collect();
    let fit = fit_decay_exponent(&vals, 20).unwrap();
    let dt = t0.elapsed();
    let pass = err <= 5e-4 && (fit.exponent + 6.9).abs() <= 0.3 && dt.as_secs_f64() < 60.0;
    report(
        6,
        "model problem I",
        pass,
        &format!(
            "sup error {err:.2e} (≤ 5e-4), decay {:.1}·m^{:.2} (−6.9 ± 0.3), {:.1} s",
            fit.amplitude,
            fit.exponent,
            dt.as_secs_f64()
        ),
    );
}

#[test]
fn criterion_07_model_problem_2() {
    let t0 = Instant::now();
    let disc = disc100();
    let sol = solve_model_problem_2(disc).unwrap();
    let err = sol
        .max_grid_error(solver::model_problem_2_exact, 2001, disc)
        .unwrap();
    let vals: Vec<f64> = sol.coefficients.uc.iter().map(|v| v.abs()).collect();
    let fit = fit_decay_exponent(&vals, 20).unwrap();
    let dt = t0.elapsed();
    let pass = err <= 1e-9 && (fit.exponent + 6.9).abs() <= 0.3 && dt.as_secs_f64() < 60.0;
    report(
        7,
        "model problem II",
        pass,
        &format!(
            "sup error {err:.2e} (≤ 1e-9), decay {:.0}·m^{:.2} (−6.9 ± 0.3), {:.1} s",
            fit.amplitude,
            fit.exponent,
            dt.as_secs_f64()
        ),
    );
}

#[test]
fn criterion_08_expansion_decay_rates() {
    let disc = disc100();
    let (beta, _) = beta_matrix_verified(Parity::Even, disc).unwrap();
    let b5: Vec<f64> = (1..=100)
        .map(|m| (beta.get(5, m) / disc.constants.c(m)).abs())
        .collect();
    let fit_b = fit_decay_exponent(&b5, 20).unwrap();
    let chi7: Vec<f64> = (1..=100)
        .map(|m| (chi_coefficient(7, m).unwrap() / disc.constants.s(m)).abs())
        .collect();
    let fit_chi = fit_decay_exponent(&chi7, 20).unwrap();
    let cs2: Vec<f64> = (1..=100)
        .map(|m| (cosine_coefficient(2, m).unwrap() / disc.constants.c(m)).abs())
        .collect();
    let fit_cs = fit_decay_exponent(&cs2, 20).unwrap();
    let pass = (fit_b.exponent + 0.8).abs() <= 0.2
        && (fit_chi.exponent + 1.0).abs() <= 0.2
        && (fit_cs.exponent + 1.0).abs() <= 0.2;
    report(
        8,
        "expansion decay rates",
        pass,
        &format!(
            "β_5m/c: m^{:.2} (−0.8 ± 0.2); χ⁷/s: m^{:.2} (−1 ± 0.2); ĉs²/c: m^{:.2} (−1 ± 0.2)",
            fit_b.exponent, fit_chi.exponent, fit_cs.exponent
        ),
    );
}

#[test]
fn criterion_09_unsteady_consistency() {
    // (a) single-mode decay against the exact exponential
    let disc5 = Discretization::new(5).unwrap();
    let sys0 = assemble_semidiscrete(&disc5, 0.0, Forcing::Zero).unwrap();
    let lam6 = disc5.table.odd_value(3).powi(6);
    let t_final = 1.0 / lam6;
    let stepper = TrapezoidalStepper::new(&sys0, t_final / 1000.0).unwrap();
    let init =
        expansion::SpectralCoefficients::single_mode(Parity::Odd, 3, 1.0, 5).unwrap();
    let end = stepper.run(&init, 0.0, 1000).unwrap();
    let decay_err = (end.us[2] - (-1.0f64).exp()).abs();

    // (b) long-time state under the model-II forcing vs the steady solve.
    // The dissipative embedding (bond +256π⁴) is marched; its fixed point
    // is exactly solve_steady(bond = −256π⁴, rhs = −f). The model-II
    // operator itself is an unstable equilibrium of the time-dependent
    // problem (low modes grow for bond < 0), so it is verified
    // algebraically below instead of by marching.
    let m_max = 40;
    let disc = Discretization::new(m_max).unwrap();
    let proj = project_forcing(solver::model_problem_2_rhs, &disc).unwrap();
    let sys = assemble_semidiscrete(&disc, MODEL_2_BOND, Forcing::Steady(proj)).unwrap();
    let steady = solve_steady(
        &SteadyProblem {
            bond: -MODEL_2_BOND,
            rhs: Rhs::Function(Box::new(|x| -solver::model_problem_2_rhs(x))),
            parity_restriction: expansion::ParityRestriction::None,
            m_max,
        },
        &disc,
    )
    .unwrap();
    let marched = TrapezoidalStepper::new(&sys, 5e-8)
        .unwrap()
        .run(&expansion::SpectralCoefficients::zeros(m_max), 0.0, 2000)
        .unwrap();
    let steady_err = marched
        .uc
        .iter()
        .zip(&steady.coefficients.uc)
        .map(|(a, b)| (a - b).abs())
        .fold(0.0f64, f64::max);

    // (c) the model-II solution is a stationary point of the semi-discrete
    // system that embeds it (bond −256π⁴, forcing −f): D u* + f = 0.
    let sol2 = solve_model_problem_2(&disc).unwrap();
    let proj2 = project_forcing(|x| -solver::model_problem_2_rhs(x), &disc).unwrap();
    let sys2 =
        assemble_semidiscrete(&disc, -MODEL_2_BOND, Forcing::Steady(proj2.clone())).unwrap();
    let u = nalgebra::DVector::from_column_slice(&sol2.coefficients.uc);
    let r = &sys2.even_matrix * u;
    let scale = proj2.fc.iter().fold(0.0f64, |a, &v| a.max(v.abs()));
    let stationary = (0..m_max)
        .map(|i| (r[i] + proj2.fc[i]).abs())
        .fold(0.0f64, f64::max)
        / scale;

    let pass = decay_err <= 1e-4 && steady_err <= 1e-6 && stationary <= 1e-7;
    report(
        9,
        "unsteady consistency",
        pass,
        &format!(
            "single-mode |u−e^(−λ⁶T)| = {decay_err:.2e} (≤ 1e-4), long-time vs steady {steady_err:.2e} (≤ 1e-6), model-II stationarity {stationary:.2e}"
        ),
    );
}

#[test]
fn criterion_10_study_determinism() {
    let dir = tempfile::tempdir().unwrap();
    let mk = |sub: &str| StudyConfig {
        problem: StudyProblem::Model2,
        truncations: vec![10, 25],
        m_min: 5,
        grid_points: 401,
        tolerance: sextic_spectral::eigenvalues::DEFAULT_TOL,
        out_dir: dir.path().join(sub),
    };
    let a = mk("run_a");
    let b = mk("run_b");
    run_convergence_study(&a).unwrap();
    run_convergence_study(&b).unwrap();
    let mut identical = true;
    let mut checked = 0;
    for name in [
        "coefficients_M0010.csv",
        "coefficients_M0025.csv",
        "errors.csv",
        "summary.json",
    ] {
        let fa = std::fs::read(a.out_dir.join(name)).unwrap();
        let fb = std::fs::read(b.out_dir.join(name)).unwrap();
        identical &= fa == fb;
        checked += 1;
    }
    report(
        10,
        "study determinism",
        identical,
        &format!("{checked} output files byte-identical across two runs"),
    );
}
