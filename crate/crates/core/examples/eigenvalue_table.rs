//! Even and odd eigenvalue families, with the even roots compared to
//! their large-index asymptote (m + 1/2)π.
//!
//! Run: `cargo run --example eigenvalue_table`

use sextic_spectral::eigenvalues::{build_table, DEFAULT_TOL};

fn main() {
    let table = build_table(10, DEFAULT_TOL).expect("eigenvalue table");
    println!("even eigenvalues (transcendental relation):");
    println!("{:>3} {:>20} {:>20} {:>12} {:>10}", "m", "lambda_m^c", "(m+1/2)pi", "difference", "source");
    for ev in &table.even {
        if ev.index == 0 {
            println!("{:>3} {:>20.12} {:>20} {:>12} {:>10}", 0, ev.value, "-", "-", ev.source.as_str());
            continue;
        }
        let asym = (ev.index as f64 + 0.5) * std::f64::consts::PI;
        println!(
            "{:>3} {:>20.12} {:>20.12} {:>12.2e} {:>10}",
            ev.index,
            ev.value,
            asym,
            ev.value - asym,
            ev.source.as_str()
        );
    }
    println!("\nodd eigenvalues are exactly m*pi:");
    for ev in table.odd.iter().take(5) {
        println!("{:>3} {:>20.12}", ev.index, ev.value);
    }
}
