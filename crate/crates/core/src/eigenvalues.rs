//! Eigenvalues of the sixth-order clamped-film eigenvalue problem.
//!
//! The even family solves the transcendental relation
//!
//! ```text
//! cos(2λ) + 2 cos(λ) cosh(√3 λ) − 3 = 0,
//! ```
//!
//! whose raw form overflows `f64` near λ ≈ 420. Dividing by cosh(√3λ)
//! gives the scaled residual
//!
//! ```text
//! G(λ) = cos(2λ) sech(√3 λ) + 2 cos(λ) − 3 sech(√3 λ),
//! ```
//!
//! which has the same roots, stays bounded for arbitrarily large λ, and
//! tends to 2cos(λ): the even eigenvalues approach (m + 1/2)π from the
//! first index on (agreement is ~2e-3 at m = 1 and below 1e-12 by m = 5).
//! The odd family is exactly λ_m = mπ, because the second factor of the
//! odd relation sin(λ)(cos λ − cosh √3λ) never vanishes for λ > 0.

use crate::error::{Error, Result};

const SQRT3: f64 = 1.732_050_807_568_877_2;

/// Default residual tolerance for root refinement.
pub const DEFAULT_TOL: f64 = 1e-13;

/// Indices at and above this use the asymptotic formula (m + 1/2)π directly;
/// the asymptote agrees with root-finding to 12 digits from m = 5.
pub const ROOT_FIND_CUTOFF: usize = 6;

/// Eigenfunction family: even (cosine-like) or odd (sine-like).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn as_str(self) -> &'static str {
        match self {
            Parity::Even => "even",
            Parity::Odd => "odd",
        }
    }
}

/// How an eigenvalue was obtained.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Source {
    /// Known in closed form (λ₀ᶜ = 0, λ_mˢ = mπ).
    ExactClosedForm,
    /// Bracketed bisection plus Newton polishing on the scaled residual.
    RootFound,
    /// Large-index asymptote (m + 1/2)π.
    Asymptotic,
}

impl Source {
    pub fn as_str(self) -> &'static str {
        match self {
            Source::ExactClosedForm => "exact-closed-form",
            Source::RootFound => "root-found",
            Source::Asymptotic => "asymptotic",
        }
    }
}

/// One eigenvalue of the clamped sixth-order problem (shared by the adjoint
/// problem, whose eigenvalues coincide).
#[derive(Clone, Copy, Debug)]
pub struct Eigenvalue {
    pub parity: Parity,
    pub index: usize,
    pub value: f64,
    pub source: Source,
}

fn sech_sqrt3(lambda: f64) -> f64 {
    // 2 e^{-√3 λ} / (1 + e^{-2√3 λ}): all exponents nonpositive for λ > 0
    let e = (-SQRT3 * lambda).exp();
    2.0 * e / (1.0 + e * e)
}

/// Scaled even eigenvalue relation G(λ); zero exactly at the even
/// eigenvalues. Safe for λ up to (at least) 10⁶.
pub fn even_residual_scaled(lambda: f64) -> Result<f64> {
    if !lambda.is_finite() || lambda <= 0.0 {
        return Err(Error::Domain(format!(
            "even residual needs finite λ > 0, got {lambda}"
        )));
    }
    Ok(even_residual_unchecked(lambda))
}

fn even_residual_unchecked(lambda: f64) -> f64 {
    let s = sech_sqrt3(lambda);
    (2.0 * lambda).cos() * s + 2.0 * lambda.cos() - 3.0 * s
}

/// Analytic dG/dλ, used for Newton polishing.
fn even_residual_derivative(lambda: f64) -> f64 {
    let s = sech_sqrt3(lambda);
    let t = (SQRT3 * lambda).tanh();
    -2.0 * (2.0 * lambda).sin() * s - SQRT3 * (2.0 * lambda).cos() * s * t
        - 2.0 * lambda.sin()
        + 3.0 * SQRT3 * s * t
}

/// m-th even eigenvalue. m = 0 is the exact zero mode; 1 ≤ m <
/// [`ROOT_FIND_CUTOFF`] is root-found in ((m+1/2)π − π/2, (m+1/2)π + π/2);
/// larger m uses the asymptote.
pub fn even_eigenvalue(m: usize, tol: f64) -> Result<Eigenvalue> {
    if !(tol.is_finite() && tol >= f64::EPSILON) {
        return Err(Error::Domain(format!(
            "tolerance must be finite and >= machine epsilon, got {tol}"
        )));
    }
    if m == 0 {
        return Ok(Eigenvalue {
            parity: Parity::Even,
            index: 0,
            value: 0.0,
            source: Source::ExactClosedForm,
        });
    }
    let center = (m as f64 + 0.5) * std::f64::consts::PI;
    if m >= ROOT_FIND_CUTOFF {
        return Ok(Eigenvalue {
            parity: Parity::Even,
            index: m,
            value: center,
            source: Source::Asymptotic,
        });
    }

    let (mut lo, mut hi) = (center - std::f64::consts::FRAC_PI_2, center + std::f64::consts::FRAC_PI_2);
    let mut flo = even_residual_unchecked(lo);
    if flo * even_residual_unchecked(hi) > 0.0 {
        return Err(Error::RootBracketing { index: m, lo, hi });
    }

    // bisection to a narrow bracket
    for _ in 0..40 {
        let mid = 0.5 * (lo + hi);
        let fm = even_residual_unchecked(mid);
        if flo * fm <= 0.0 {
            hi = mid;
        } else {
            lo = mid;
            flo = fm;
        }
        if hi - lo < 1e-8 {
            break;
        }
    }

    // Newton polishing, falling back to bisection when an iterate escapes
    let mut x = 0.5 * (lo + hi);
    let mut fx = even_residual_unchecked(x);
    for _ in 0..60 {
        if fx.abs() <= tol {
            return Ok(Eigenvalue {
                parity: Parity::Even,
                index: m,
                value: x,
                source: Source::RootFound,
            });
        }
        let dfx = even_residual_derivative(x);
        let next = x - fx / dfx;
        x = if next.is_finite() && next > lo && next < hi {
            next
        } else {
            0.5 * (lo + hi)
        };
        fx = even_residual_unchecked(x);
        if fx * flo <= 0.0 {
            hi = x;
        } else {
            lo = x;
            flo = fx;
        }
    }
    if fx.abs() <= tol {
        Ok(Eigenvalue {
            parity: Parity::Even,
            index: m,
            value: x,
            source: Source::RootFound,
        })
    } else {
        Err(Error::Tolerance {
            index: m,
            residual: fx.abs(),
            tol,
        })
    }
}

/// m-th odd eigenvalue, exactly mπ (m ≥ 1; there is no odd zero mode).
pub fn odd_eigenvalue(m: usize) -> Result<Eigenvalue> {
    if m == 0 {
        return Err(Error::Domain(
            "odd eigenvalues start at m = 1; there is no odd zero mode".into(),
        ));
    }
    Ok(Eigenvalue {
        parity: Parity::Odd,
        index: m,
        value: m as f64 * std::f64::consts::PI,
        source: Source::ExactClosedForm,
    })
}

/// All eigenvalues up to a truncation index, even 0..=M and odd 1..=M.
#[derive(Clone, Debug)]
pub struct EigenvalueTable {
    pub max_index: usize,
    /// Even eigenvalues, indices 0..=max_index.
    pub even: Vec<Eigenvalue>,
    /// Odd eigenvalues, indices 1..=max_index (entry i holds m = i + 1).
    pub odd: Vec<Eigenvalue>,
    pub root_find_cutoff: usize,
}

/// Build the table with the given residual tolerance.
pub fn build_table(max_index: usize, tol: f64) -> Result<EigenvalueTable> {
    if max_index == 0 {
        return Err(Error::Domain("table needs max_index >= 1".into()));
    }
    let even = (0..=max_index)
        .map(|m| even_eigenvalue(m, tol))
        .collect::<Result<Vec<_>>>()?;
    let odd = (1..=max_index)
        .map(odd_eigenvalue)
        .collect::<Result<Vec<_>>>()?;
    Ok(EigenvalueTable {
        max_index,
        even,
        odd,
        root_find_cutoff: ROOT_FIND_CUTOFF,
    })
}

impl EigenvalueTable {
    /// Table with the default tolerance.
    pub fn build(max_index: usize) -> Result<Self> {
        build_table(max_index, DEFAULT_TOL)
    }

    pub fn even_value(&self, m: usize) -> f64 {
        self.even[m].value
    }

    pub fn odd_value(&self, m: usize) -> f64 {
        self.odd[m - 1].value
    }

    pub fn get(&self, parity: Parity, m: usize) -> &Eigenvalue {
        match parity {
            Parity::Even => &self.even[m],
            Parity::Odd => &self.odd[m - 1],
        }
    }

    /// Largest eigenvalue in the table; sets the quadrature resolution.
    pub fn lambda_max(&self) -> f64 {
        self.even[self.max_index].value
    }
}
