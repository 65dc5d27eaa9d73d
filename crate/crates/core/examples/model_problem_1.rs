//! Model problem I: d⁶u/dx⁶ = f with a manufactured odd polynomial
//! solution u(x) = x(x−1)⁶(x+1)⁶. The Petrov–Galerkin system is diagonal;
//! the coefficient decay beats the nominal sixth-order rate.
//!
//! Run: `cargo run --example model_problem_1`

use sextic_spectral::expansion::fit_decay_exponent;
use sextic_spectral::solver::{model_problem_1_exact, solve_model_problem_1};
use sextic_spectral::Discretization;

fn main() {
    for m_max in [25usize, 50, 100] {
        let disc = Discretization::new(m_max).expect("discretization");
        let sol = solve_model_problem_1(&disc).unwrap();
        let err = sol
            .max_grid_error(model_problem_1_exact, 2001, &disc)
            .unwrap();
        print!("M = {m_max:>3}: sup error {err:.3e}");
        let vals: Vec<f64> = sol.coefficients.us.iter().map(|v| v.abs()).collect();
        if let Ok(fit) = fit_decay_exponent(&vals, 20) {
            print!("   |u_m| ~ {:.1} m^{:.2} (m > 20)", fit.amplitude, fit.exponent);
        }
        println!();
    }

    let disc = Discretization::new(100).expect("discretization");
    let sol = solve_model_problem_1(&disc).unwrap();
    println!("\nprofile at M = 100:");
    println!("{:>6} {:>14} {:>14} {:>10}", "x", "u_spectral", "u_exact", "error");
    for i in 0..=10 {
        let x = -1.0 + 0.2 * i as f64;
        let u = sol.evaluate(x, &disc).unwrap();
        let e = model_problem_1_exact(x);
        println!("{x:>6.1} {u:>14.8} {e:>14.8} {:>10.2e}", (u - e).abs());
    }
}
