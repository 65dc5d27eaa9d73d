//! Unsteady clamped-film dynamics: nondimensionalize a physical film,
//! march the stiff semi-discrete system with the implicit trapezoidal
//! rule, and check the two consistency anchors — exact single-mode decay
//! and convergence of a forced film to its steady state.
//!
//! Run: `cargo run --example film_relaxation`

use sextic_spectral::cli::{nondimensionalize, PhysicalParameters};
use sextic_spectral::eigenvalues::Parity;
use sextic_spectral::expansion::{ParityRestriction, SpectralCoefficients};
use sextic_spectral::solver::{
    assemble_semidiscrete, project_forcing, solve_steady, Forcing, Rhs, SteadyProblem,
    TrapezoidalStepper,
};
use sextic_spectral::Discretization;

fn main() {
    // a silicone-oil-like film under a stiff plate
    let params = PhysicalParameters {
        fluid_density: 970.0,       // kg/m^3
        viscosity: 0.97,            // Pa s
        gravity: 9.81,              // m/s^2
        half_width: 0.02,           // m
        equilibrium_height: 5e-4,   // m
        bending_stiffness: 8e-4,    // N m
    };
    let nd = nondimensionalize(&params).unwrap();
    println!(
        "elastic Bond number B = {:.4}, timescale = {:.2} s, h0/l = {:.3}{}",
        nd.bond,
        nd.timescale_seconds,
        nd.slenderness,
        if nd.lubrication_warning { " (lubrication warning!)" } else { "" }
    );

    let m_max = 30;
    let disc = Discretization::new(m_max).expect("discretization");

    // 1. free decay of a single odd mode: u_3^s(t) = exp(-lambda^6 t)
    let sys = assemble_semidiscrete(&disc, 0.0, Forcing::Zero).unwrap();
    let lam6 = disc.table.odd_value(3).powi(6);
    let t_final = 1.0 / lam6;
    let stepper = TrapezoidalStepper::new(&sys, t_final / 1000.0).unwrap();
    let init = SpectralCoefficients::single_mode(Parity::Odd, 3, 1.0, m_max).unwrap();
    let end = stepper.run(&init, 0.0, 1000).unwrap();
    println!(
        "\nsingle-mode decay over t = 1/lambda^6: u_3^s = {:.8} vs exp(-1) = {:.8} (error {:.2e})",
        end.us[2],
        (-1.0f64).exp(),
        (end.us[2] - (-1.0f64).exp()).abs()
    );

    // 2. forced film: march to the steady state and compare with the
    //    direct steady solve of the associated problem
    let bond = nd.bond;
    let f = |x: f64| (std::f64::consts::PI * x).cos() * (1.0 - x * x) * x;
    let proj = project_forcing(f, &disc).unwrap();
    let sys = assemble_semidiscrete(&disc, bond, Forcing::Steady(proj)).unwrap();
    let steady = solve_steady(
        &SteadyProblem {
            bond: -bond,
            rhs: Rhs::Function(Box::new(move |x| -f(x))),
            parity_restriction: ParityRestriction::None,
            m_max,
        },
        &disc,
    )
    .unwrap();
    let stepper = TrapezoidalStepper::new(&sys, 2e-5).unwrap();
    let mut state = SpectralCoefficients::zeros(m_max);
    let mut t = 0.0;
    println!("\nforced relaxation toward the steady state (coefficient sup distance):");
    for _ in 0..6 {
        state = stepper.run(&state, t, 500).unwrap();
        t += 500.0 * stepper.dt;
        let dist = state
            .uc
            .iter()
            .zip(&steady.coefficients.uc)
            .chain(state.us.iter().zip(&steady.coefficients.us))
            .map(|(a, b)| (a - b).abs())
            .fold(0.0f64, f64::max);
        println!("  t = {t:.4}: {dist:.3e}");
    }
}
