//! Expansion of x⁷ and cos 2πx into the biorthogonal basis: interior
//! accuracy despite the boundary Gibbs effect, and the first-order
//! algebraic decay of the normalized coefficients.
//!
//! Run: `cargo run --example expansion_decay`

use sextic_spectral::expansion::{expand, fit_decay_exponent, synthesize};
use sextic_spectral::Discretization;

fn main() {
    let disc = Discretization::new(100).expect("discretization");

    println!("== x^7 into the odd eigenfunctions (M = 100) ==");
    let coeffs = expand(|x| x.powi(7), &disc).unwrap();
    println!("  parity restriction detected: {:?}", coeffs.parity_restriction);
    for x in [0.0, 0.25, 0.5, 0.75, 0.95] {
        let approx = synthesize(&coeffs, x, &disc).unwrap();
        println!(
            "  x = {x:>5}: spectral {approx:>12.6}  exact {:>12.6}  error {:.2e}",
            x.powi(7),
            (approx - x.powi(7)).abs()
        );
    }
    let vals: Vec<f64> = coeffs
        .us
        .iter()
        .enumerate()
        .map(|(i, v)| (v * disc.constants.s(i + 1)).abs() / disc.constants.s(i + 1))
        .collect();
    let fit = fit_decay_exponent(&vals, 20).unwrap();
    println!(
        "  |chi^7_m / s_m| ~ {:.2} m^{:.2} over 20 < m <= 100",
        fit.amplitude, fit.exponent
    );

    println!("\n== cos 2 pi x into the even eigenfunctions (M = 100) ==");
    let coeffs = expand(|x| (2.0 * std::f64::consts::PI * x).cos(), &disc).unwrap();
    println!("  parity restriction detected: {:?}", coeffs.parity_restriction);
    for x in [0.0, 0.4, 0.9] {
        let approx = synthesize(&coeffs, x, &disc).unwrap();
        let exact = (2.0 * std::f64::consts::PI * x).cos();
        println!(
            "  x = {x:>4}: spectral {approx:>12.6}  exact {exact:>12.6}  error {:.2e}",
            (approx - exact).abs()
        );
    }
    let vals: Vec<f64> = coeffs.uc.iter().map(|v| v.abs()).collect();
    let fit = fit_decay_exponent(&vals, 20).unwrap();
    println!(
        "  |cs^2_m / c_m| ~ {:.2} m^{:.2} over 20 < m <= 100",
        fit.amplitude, fit.exponent
    );
}
