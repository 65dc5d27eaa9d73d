//! Profiles of the trial and test eigenfunctions (CSV on stdout), the
//! data behind profile plots of the first few modes of each family.
//!
//! Run: `cargo run --example basis_profiles > profiles.csv`

use sextic_spectral::basis::{BasisFunction, Kind};
use sextic_spectral::eigenvalues::Parity;

fn main() {
    let picks = [
        (Kind::Trial, Parity::Even, vec![0usize, 1, 2, 3, 4]),
        (Kind::Trial, Parity::Odd, vec![1, 2, 3, 4]),
        (Kind::Test, Parity::Even, vec![0, 1, 2, 3, 4]),
        (Kind::Test, Parity::Odd, vec![1, 2, 3, 4]),
    ];
    let mut fns = Vec::new();
    let mut header = String::from("x");
    for (kind, parity, indices) in &picks {
        for &m in indices {
            header.push_str(&format!(",{}_{}_{}", kind.as_str(), parity.as_str(), m));
            fns.push(BasisFunction::new(*kind, *parity, m).expect("basis function"));
        }
    }
    println!("{header}");
    let n = 401;
    for i in 0..n {
        let x = -1.0 + 2.0 * i as f64 / (n - 1) as f64;
        let mut line = format!("{x}");
        for f in &fns {
            line.push_str(&format!(",{}", f.eval(x).unwrap()));
        }
        println!("{line}");
    }
}
