//! Model problem II: d⁶u/dx⁶ − 256π⁴ d²u/dx² = −960π⁶ cos 2πx with the
//! manufactured solution cos 4πx − cos 2πx. The lower-order term couples
//! all even modes, giving a full (equilibrated) 100×100 system.
//!
//! Run: `cargo run --example model_problem_2`

use sextic_spectral::expansion::fit_decay_exponent;
use sextic_spectral::solver::{model_problem_2_exact, solve_model_problem_2};
use sextic_spectral::Discretization;

fn main() {
    for m_max in [25usize, 50, 100] {
        let disc = Discretization::new(m_max).expect("discretization");
        let sol = solve_model_problem_2(&disc).unwrap();
        let err = sol
            .max_grid_error(model_problem_2_exact, 2001, &disc)
            .unwrap();
        print!("M = {m_max:>3}: sup error {err:.3e}");
        if let Some(cond) = sol.condition {
            print!("   cond {cond:.2e}");
        }
        let vals: Vec<f64> = sol.coefficients.uc.iter().map(|v| v.abs()).collect();
        if let Ok(fit) = fit_decay_exponent(&vals, 20) {
            print!("   |u_m| ~ {:.0} m^{:.2} (m > 20)", fit.amplitude, fit.exponent);
        }
        println!();
    }

    let disc = Discretization::new(100).expect("discretization");
    let sol = solve_model_problem_2(&disc).unwrap();
    println!("\nfirst expansion coefficients at M = 100:");
    for m in 1..=8 {
        println!("  u_{m}^c = {:+.12e}", sol.coefficients.uc[m - 1]);
    }
    println!("  (u_0^c = {} by the zero-mode compatibility)", sol.coefficients.u0c);
}
