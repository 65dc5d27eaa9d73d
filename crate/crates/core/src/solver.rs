//! Petrov–Galerkin assembly and solution of the sixth-order problems.
//!
//! Steady problems follow the structure d⁶u/dx⁶ − 𝓑·d²u/dx² = f(x) with
//! the clamped-film conditions built into the trial basis. Projecting on
//! the test functions and using biorthogonality gives, per parity block,
//!
//! ```text
//! c_m λ_m⁶ u_m + 𝓑 Σ_n β_nm u_n = −⟨f, φ_m⟩,   m = 1..M,
//! ```
//!
//! a diagonal system for 𝓑 = 0 and a dense M×M system otherwise (solved by
//! direct LU after row equilibration by c_m λ_m⁶). The even zero mode is
//! special: β_n0 = 0 identically, so its equation reads 0·u₀ᶜ = ⟨f, φ₀ᶜ⟩ —
//! a compatibility condition. When it holds, u₀ᶜ is gauged to zero, which
//! reproduces the zero-mean manufactured solutions.
//!
//! The unsteady problem ∂u/∂t − 𝓑∂²u/∂x² − ∂⁶u/∂x⁶ = f(x,t) becomes the
//! semi-discrete system
//!
//! ```text
//! c₀ u̇₀ᶜ = f₀ᶜ(t),
//! c_ℓ u̇_ℓᶜ = Σ_n [𝓑 β_nℓᶜ − c_ℓ (λ_nᶜ)⁶ δ_nℓ] u_nᶜ + f_ℓᶜ(t),
//! ```
//!
//! (odd block analogous): two decoupled M×M blocks plus one scalar ODE.
//! With λ_M⁶ ≈ 10¹⁵ the system is extremely stiff, so stepping uses the
//! A-stable implicit trapezoidal rule; it is unconditionally stable in the
//! dissipative regime 𝓑 ≥ 0, and its fixed point coincides with the
//! steady solve of (bond = −𝓑, rhs = −f) exactly, independent of dt.

use nalgebra::{DMatrix, DVector};

use crate::biorth::{inner_product_sampled, Discrepancy};
use crate::eigenvalues::Parity;
use crate::error::{Error, Result};
use crate::expansion::{
    beta_matrix_verified, chi_at, cosine_at, expand_samples, CouplingMatrix, ParityRestriction,
    SpectralCoefficients,
};
use crate::Discretization;

/// Condition-number ceiling before a steady solve is rejected.
pub const CONDITION_LIMIT: f64 = 1e12;

const PI: f64 = std::f64::consts::PI;

// ---------------------------------------------------------------------
// Model problems (manufactured solutions).

/// Model problem I forcing: d⁶u/dx⁶ = f with
/// f(x) = −100800x + 907200x³ − 1995840x⁵ + 1235520x⁷.
pub fn model_problem_1_rhs(x: f64) -> f64 {
    x * (-100800.0 + x * x * (907200.0 + x * x * (-1995840.0 + x * x * 1235520.0)))
}

/// Model problem I exact solution u(x) = x(x−1)⁶(x+1)⁶.
pub fn model_problem_1_exact(x: f64) -> f64 {
    let w = x * x - 1.0;
    x * w.powi(6)
}

/// Model problem II forcing: d⁶u/dx⁶ − 256π⁴ d²u/dx² = −960π⁶ cos 2πx.
pub fn model_problem_2_rhs(x: f64) -> f64 {
    -960.0 * PI.powi(6) * (2.0 * PI * x).cos()
}

/// Model problem II exact solution u(x) = cos 4πx − cos 2πx.
pub fn model_problem_2_exact(x: f64) -> f64 {
    (4.0 * PI * x).cos() - (2.0 * PI * x).cos()
}

/// Bond coefficient of model problem II (coefficient of −d²/dx²), 256π⁴.
pub const MODEL_2_BOND: f64 = 24936.72730470462;

// ---------------------------------------------------------------------
// Steady problems.

/// Right-hand side of a steady problem: a function to project, or
/// already-extracted expansion coefficients of f.
pub enum Rhs {
    Function(Box<dyn Fn(f64) -> f64 + Send + Sync>),
    Coefficients(SpectralCoefficients),
}

/// Steady BVP d⁶u/dx⁶ − 𝓑 d²u/dx² = f(x); model I has 𝓑 = 0, model II
/// has 𝓑 = 256π⁴.
pub struct SteadyProblem {
    pub bond: f64,
    pub rhs: Rhs,
    pub parity_restriction: ParityRestriction,
    pub m_max: usize,
}

/// A solved spectral problem: coefficients plus solve diagnostics.
#[derive(Clone, Debug)]
pub struct SpectralSolution {
    pub coefficients: SpectralCoefficients,
    /// Human-readable problem descriptor.
    pub problem: String,
    /// 1-norm condition estimate of the (equilibrated) dense blocks that
    /// were factorized; None for purely diagonal solves.
    pub condition: Option<f64>,
    /// |⟨f, φ₀ᶜ⟩| left over in the zero-mode compatibility equation.
    pub compatibility_residual: Option<f64>,
    /// Closed-form entries displaced by their quadrature cross-check.
    pub diagnostics: Vec<Discrepancy>,
}

impl SpectralSolution {
    /// Evaluate the solution at x ∈ [−1, 1].
    pub fn evaluate(&self, x: f64, disc: &Discretization) -> Result<f64> {
        crate::expansion::synthesize(&self.coefficients, x, disc)
    }

    /// Sup-norm difference against a reference on a uniform grid.
    pub fn max_grid_error<F: Fn(f64) -> f64>(
        &self,
        exact: F,
        grid_points: usize,
        disc: &Discretization,
    ) -> Result<f64> {
        let n = grid_points.max(2);
        let mut worst = 0.0f64;
        for i in 0..n {
            let x = -1.0 + 2.0 * i as f64 / (n - 1) as f64;
            worst = worst.max((self.evaluate(x, disc)? - exact(x)).abs());
        }
        Ok(worst)
    }

    /// Strong-form residual d⁶u/dx⁶ − 𝓑 d²u/dx² − f at one point.
    pub fn strong_residual<F: Fn(f64) -> f64>(
        &self,
        x: f64,
        bond: f64,
        f: F,
        disc: &Discretization,
    ) -> Result<f64> {
        let c = &self.coefficients;
        let mut d6 = c.u0c * disc.trial(Parity::Even, 0).eval_order_unchecked(x, 6);
        let mut d2 = c.u0c * disc.trial(Parity::Even, 0).eval_order_unchecked(x, 2);
        for m in 1..=c.m_max {
            d6 += c.uc[m - 1] * disc.trial(Parity::Even, m).eval_order_unchecked(x, 6)
                + c.us[m - 1] * disc.trial(Parity::Odd, m).eval_order_unchecked(x, 6);
            d2 += c.uc[m - 1] * disc.trial(Parity::Even, m).eval_order_unchecked(x, 2)
                + c.us[m - 1] * disc.trial(Parity::Odd, m).eval_order_unchecked(x, 2);
        }
        Ok(d6 - bond * d2 - f(x))
    }
}

/// Raw test-function projections ⟨f, φ₀ᶜ⟩, ⟨f, φ_ℓᶜ⟩, ⟨f, φ_ℓˢ⟩.
#[derive(Clone, Debug)]
pub struct ForcingProjection {
    pub f0: f64,
    pub fc: Vec<f64>,
    pub fs: Vec<f64>,
}

impl ForcingProjection {
    pub fn zeros(m_max: usize) -> Self {
        ForcingProjection {
            f0: 0.0,
            fc: vec![0.0; m_max],
            fs: vec![0.0; m_max],
        }
    }
}

/// Project a function onto the test families under the discretization's
/// quadrature rule.
pub fn project_forcing<F: Fn(f64) -> f64>(
    f: F,
    disc: &Discretization,
) -> Result<ForcingProjection> {
    let rule = &disc.rule;
    let samples: Vec<f64> = rule.nodes.iter().map(|&x| f(x)).collect();
    if let Some(i) = samples.iter().position(|v| !v.is_finite()) {
        return Err(Error::Evaluation { x: rule.nodes[i] });
    }
    let ones = vec![1.0; rule.len()];
    let f0 = inner_product_sampled(&samples, &ones, rule);
    let m_max = disc.m_max();
    let mut fc = Vec::with_capacity(m_max);
    let mut fs = Vec::with_capacity(m_max);
    for m in 1..=m_max {
        let phi_c: Vec<f64> = rule
            .nodes
            .iter()
            .map(|&x| disc.test(Parity::Even, m).eval_order_unchecked(x, 0))
            .collect();
        fc.push(inner_product_sampled(&samples, &phi_c, rule));
        let phi_s: Vec<f64> = rule
            .nodes
            .iter()
            .map(|&x| disc.test(Parity::Odd, m).eval_order_unchecked(x, 0))
            .collect();
        fs.push(inner_product_sampled(&samples, &phi_s, rule));
    }
    Ok(ForcingProjection { f0, fc, fs })
}

fn projection_of_rhs(rhs: &Rhs, disc: &Discretization) -> Result<ForcingProjection> {
    match rhs {
        Rhs::Function(f) => project_forcing(f, disc),
        Rhs::Coefficients(c) => {
            if c.m_max > disc.m_max() {
                return Err(Error::Domain(format!(
                    "rhs coefficients truncated at {} exceed discretization {}",
                    c.m_max,
                    disc.m_max()
                )));
            }
            let m_max = disc.m_max();
            let mut fc = vec![0.0; m_max];
            let mut fs = vec![0.0; m_max];
            for m in 1..=c.m_max {
                fc[m - 1] = c.uc[m - 1] * disc.constants.c(m);
                fs[m - 1] = c.us[m - 1] * disc.constants.s(m);
            }
            Ok(ForcingProjection {
                f0: c.u0c * disc.constants.c0,
                fc,
                fs,
            })
        }
    }
}

/// 1-norm condition estimate from an LU factorization.
fn condition_estimate(a: &DMatrix<f64>) -> Result<f64> {
    let norm_a = a
        .column_iter()
        .map(|c| c.iter().map(|v| v.abs()).sum::<f64>())
        .fold(0.0f64, f64::max);
    let inv = a
        .clone()
        .lu()
        .try_inverse()
        .ok_or(Error::Singular {
            context: "condition estimate",
        })?;
    let norm_inv = inv
        .column_iter()
        .map(|c| c.iter().map(|v| v.abs()).sum::<f64>())
        .fold(0.0f64, f64::max);
    Ok(norm_a * norm_inv)
}

/// Solve one parity block: c_m λ_m⁶ u_m + 𝓑 Σ_n β_nm u_n = b_m, with rows
/// equilibrated by c_m λ_m⁶. Returns (coefficients, condition estimate).
fn solve_block(
    parity: Parity,
    bond: f64,
    b: &[f64],
    beta: Option<&CouplingMatrix>,
    disc: &Discretization,
) -> Result<(Vec<f64>, Option<f64>)> {
    let m_max = disc.m_max();
    let diag: Vec<f64> = (1..=m_max)
        .map(|m| {
            let lam = disc.table.get(parity, m).value;
            let w = match parity {
                Parity::Even => disc.constants.c(m),
                Parity::Odd => disc.constants.s(m),
            };
            w * lam.powi(6)
        })
        .collect();
    if bond == 0.0 {
        // diagonal fast path; pivots c_m λ_m⁶ are all nonzero
        return Ok(((0..m_max).map(|i| b[i] / diag[i]).collect(), None));
    }
    let beta = beta.expect("dense path requires the coupling matrix");
    let mut a = DMatrix::zeros(m_max, m_max);
    for m in 1..=m_max {
        for n in 1..=m_max {
            let delta = if n == m { 1.0 } else { 0.0 };
            a[(m - 1, n - 1)] = delta + bond * beta.get(n, m) / diag[m - 1];
        }
    }
    let cond = condition_estimate(&a)?;
    if cond > CONDITION_LIMIT {
        return Err(Error::IllConditioned {
            cond,
            limit: CONDITION_LIMIT,
        });
    }
    let rhs = DVector::from_iterator(m_max, (0..m_max).map(|i| b[i] / diag[i]));
    let sol = a.lu().solve(&rhs).ok_or(Error::Singular {
        context: "steady block solve",
    })?;
    Ok((sol.iter().copied().collect(), Some(cond)))
}

/// Tolerance for the zero-mode compatibility check, relative to the
/// forcing's largest projection.
fn compatibility_tolerance(p: &ForcingProjection) -> f64 {
    let scale = p
        .fc
        .iter()
        .chain(&p.fs)
        .fold(1.0f64, |a, &v| a.max(v.abs()));
    1e-9 * scale
}

/// General steady solver. The even zero mode is carried explicitly: its
/// equation is 0·u₀ᶜ = ⟨f, φ₀ᶜ⟩, so a nonzero zero-mode projection is a
/// compatibility error; otherwise u₀ᶜ is gauged to 0 (zero-mean gauge,
/// matching the manufactured solutions).
pub fn solve_steady(problem: &SteadyProblem, disc: &Discretization) -> Result<SpectralSolution> {
    if problem.m_max > disc.m_max() {
        return Err(Error::Domain(format!(
            "problem truncation {} exceeds discretization {}",
            problem.m_max,
            disc.m_max()
        )));
    }
    let proj = projection_of_rhs(&problem.rhs, disc)?;
    let m_max = disc.m_max();
    let mut coeffs = SpectralCoefficients::zeros(m_max);
    coeffs.parity_restriction = problem.parity_restriction;
    let mut condition: Option<f64> = None;
    let mut diagnostics = Vec::new();
    let mut compat = None;

    let solve_even = problem.parity_restriction != ParityRestriction::OddOnly;
    let solve_odd = problem.parity_restriction != ParityRestriction::EvenOnly;

    if solve_even {
        if proj.f0.abs() > compatibility_tolerance(&proj) {
            return Err(Error::Compatibility { f0: proj.f0 });
        }
        compat = Some(proj.f0.abs());
        let b: Vec<f64> = proj.fc.iter().map(|v| -v).collect();
        let beta = if problem.bond != 0.0 {
            let (m, d) = beta_matrix_verified(Parity::Even, disc)?;
            diagnostics.extend(d);
            Some(m)
        } else {
            None
        };
        let (u, cond) = solve_block(Parity::Even, problem.bond, &b, beta.as_ref(), disc)?;
        coeffs.uc = u;
        condition = cond;
    }
    if solve_odd {
        let b: Vec<f64> = proj.fs.iter().map(|v| -v).collect();
        let beta = if problem.bond != 0.0 {
            let (m, d) = beta_matrix_verified(Parity::Odd, disc)?;
            diagnostics.extend(d);
            Some(m)
        } else {
            None
        };
        let (u, cond) = solve_block(Parity::Odd, problem.bond, &b, beta.as_ref(), disc)?;
        coeffs.us = u;
        condition = match (condition, cond) {
            (Some(a), Some(b)) => Some(a.max(b)),
            (a, b) => a.or(b),
        };
    }

    Ok(SpectralSolution {
        coefficients: coeffs,
        problem: format!("steady(bond={}, M={})", problem.bond, m_max),
        condition,
        compatibility_residual: compat,
        diagnostics,
    })
}

/// Model problem I: diagonal odd-only solve with the closed-form χ
/// projections, u_mˢ = −RHS_m/(s_m (λ_mˢ)⁶).
pub fn solve_model_problem_1(disc: &Discretization) -> Result<SpectralSolution> {
    let m_max = disc.m_max();
    let mut coeffs = SpectralCoefficients::zeros(m_max);
    coeffs.parity_restriction = ParityRestriction::OddOnly;
    for m in 1..=m_max {
        let lam = disc.table.odd_value(m);
        let rhs_m = -100800.0 * chi_at(1, lam) + 907200.0 * chi_at(3, lam)
            - 1995840.0 * chi_at(5, lam)
            + 1235520.0 * chi_at(7, lam);
        coeffs.us[m - 1] = -rhs_m / (disc.constants.s(m) * lam.powi(6));
    }
    Ok(SpectralSolution {
        coefficients: coeffs,
        problem: format!("model1(M={m_max})"),
        condition: None,
        compatibility_residual: None,
        diagnostics: Vec::new(),
    })
}

/// Model problem II: dense even-only solve
/// [c_n λ_n⁶ δ_nm + 256π⁴ β_nmᶜ] u_nᶜ = 960π⁶ ĉs⁽²⁾_m, with u₀ᶜ = 0
/// (both β_n0 and ĉs⁽²⁾₀ vanish).
pub fn solve_model_problem_2(disc: &Discretization) -> Result<SpectralSolution> {
    let m_max = disc.m_max();
    let (beta, diagnostics) = beta_matrix_verified(Parity::Even, disc)?;
    let b: Vec<f64> = (1..=m_max)
        .map(|m| 960.0 * PI.powi(6) * cosine_at(2, disc.table.even_value(m)))
        .collect();
    let (u, cond) = solve_block(Parity::Even, MODEL_2_BOND, &b, Some(&beta), disc)?;
    let mut coeffs = SpectralCoefficients::zeros(m_max);
    coeffs.uc = u;
    coeffs.parity_restriction = ParityRestriction::EvenOnly;
    Ok(SpectralSolution {
        coefficients: coeffs,
        problem: format!("model2(M={m_max})"),
        condition: cond,
        compatibility_residual: Some(0.0),
        diagnostics,
    })
}

// ---------------------------------------------------------------------
// Semi-discrete dynamics.

/// Forcing of the unsteady problem, as test-space projections.
pub enum Forcing {
    Zero,
    /// Time-independent f(x); projected once.
    Steady(ForcingProjection),
    /// f(x, t); projections recomputed at each requested time.
    TimeVarying(Box<dyn Fn(f64) -> ForcingProjection + Send + Sync>),
}

/// The semi-discrete system: two decoupled M×M blocks plus the scalar
/// zero mode c₀ u̇₀ᶜ = f₀ᶜ(t).
pub struct SemiDiscreteSystem {
    pub m_max: usize,
    pub bond: f64,
    /// D_e[ℓ−1][n−1] = 𝓑 β_nℓᶜ − c_ℓ (λ_nᶜ)⁶ δ_nℓ.
    pub even_matrix: DMatrix<f64>,
    /// Odd analogue with s_ℓ, λˢ.
    pub odd_matrix: DMatrix<f64>,
    pub zero_mode_constant: f64,
    pub forcing: Forcing,
    /// Diagonal "mass" entries c_ℓ and s_ℓ.
    pub c_diag: Vec<f64>,
    pub s_diag: Vec<f64>,
}

/// Assemble the semi-discrete system for a given bond number. With
/// 𝓑 = 0 both matrices are diagonal with entries −c_ℓ λ_ℓ⁶ (pure decay).
pub fn assemble_semidiscrete(
    disc: &Discretization,
    bond: f64,
    forcing: Forcing,
) -> Result<SemiDiscreteSystem> {
    let m_max = disc.m_max();
    let mut even = DMatrix::zeros(m_max, m_max);
    let mut odd = DMatrix::zeros(m_max, m_max);
    let beta_pair = if bond != 0.0 {
        let (bc, _) = beta_matrix_verified(Parity::Even, disc)?;
        let (bs, _) = beta_matrix_verified(Parity::Odd, disc)?;
        Some((bc, bs))
    } else {
        None
    };
    for l in 1..=m_max {
        for n in 1..=m_max {
            let mut e = 0.0;
            let mut o = 0.0;
            if let Some((bc, bs)) = &beta_pair {
                e += bond * bc.get(n, l);
                o += bond * bs.get(n, l);
            }
            if n == l {
                e -= disc.constants.c(l) * disc.table.even_value(n).powi(6);
                o -= disc.constants.s(l) * disc.table.odd_value(n).powi(6);
            }
            even[(l - 1, n - 1)] = e;
            odd[(l - 1, n - 1)] = o;
        }
    }
    Ok(SemiDiscreteSystem {
        m_max,
        bond,
        even_matrix: even,
        odd_matrix: odd,
        zero_mode_constant: disc.constants.c0,
        forcing,
        c_diag: (1..=m_max).map(|m| disc.constants.c(m)).collect(),
        s_diag: (1..=m_max).map(|m| disc.constants.s(m)).collect(),
    })
}

impl SemiDiscreteSystem {
    pub fn forcing_at(&self, t: f64) -> ForcingProjection {
        match &self.forcing {
            Forcing::Zero => ForcingProjection::zeros(self.m_max),
            Forcing::Steady(p) => p.clone(),
            Forcing::TimeVarying(f) => f(t),
        }
    }

    /// Exact fixed point: solves −D u = f per block. The zero mode has a
    /// fixed point only when f₀ = 0 (otherwise u₀ᶜ drifts linearly).
    pub fn fixed_point(&self, t: f64) -> Result<SpectralCoefficients> {
        let p = self.forcing_at(t);
        let scale = p
            .fc
            .iter()
            .chain(&p.fs)
            .fold(1.0f64, |a, &v| a.max(v.abs()));
        if p.f0.abs() > 1e-9 * scale {
            return Err(Error::Compatibility { f0: p.f0 });
        }
        let solve = |d: &DMatrix<f64>, b: &[f64]| -> Result<Vec<f64>> {
            let rhs = DVector::from_column_slice(b);
            let sol = (-d.clone()).lu().solve(&rhs).ok_or(Error::Singular {
                context: "semi-discrete fixed point",
            })?;
            Ok(sol.iter().copied().collect())
        };
        let mut out = SpectralCoefficients::zeros(self.m_max);
        out.uc = solve(&self.even_matrix, &p.fc)?;
        out.us = solve(&self.odd_matrix, &p.fs)?;
        Ok(out)
    }
}

/// Implicit-trapezoidal stepper with the (C − dt/2·D) factorizations
/// cached for a fixed step size.
pub struct TrapezoidalStepper<'a> {
    system: &'a SemiDiscreteSystem,
    pub dt: f64,
    lu_even: nalgebra::LU<f64, nalgebra::Dyn, nalgebra::Dyn>,
    lu_odd: nalgebra::LU<f64, nalgebra::Dyn, nalgebra::Dyn>,
}

impl<'a> TrapezoidalStepper<'a> {
    pub fn new(system: &'a SemiDiscreteSystem, dt: f64) -> Result<Self> {
        if !(dt.is_finite() && dt > 0.0) {
            return Err(Error::Domain(format!("step size must be positive, got {dt}")));
        }
        let m = system.m_max;
        let build = |d: &DMatrix<f64>, c: &[f64]| {
            let mut a = d * (-0.5 * dt);
            for i in 0..m {
                a[(i, i)] += c[i];
            }
            a.lu()
        };
        let lu_even = build(&system.even_matrix, &system.c_diag);
        let lu_odd = build(&system.odd_matrix, &system.s_diag);
        if lu_even.determinant() == 0.0 || lu_odd.determinant() == 0.0 {
            return Err(Error::Singular {
                context: "trapezoidal factorization",
            });
        }
        Ok(TrapezoidalStepper {
            system,
            dt,
            lu_even,
            lu_odd,
        })
    }

    /// One step t → t + dt.
    pub fn step(&self, state: &SpectralCoefficients, t: f64) -> Result<SpectralCoefficients> {
        let sys = self.system;
        let m = sys.m_max;
        if state.uc.len() != m || state.us.len() != m {
            return Err(Error::Domain(format!(
                "state dimension {} does not match system {}",
                state.uc.len(),
                m
            )));
        }
        let h = self.dt;
        let f_now = sys.forcing_at(t);
        let f_next = sys.forcing_at(t + h);

        let advance = |lu: &nalgebra::LU<f64, nalgebra::Dyn, nalgebra::Dyn>,
                       d: &DMatrix<f64>,
                       c: &[f64],
                       u: &[f64],
                       f0v: &[f64],
                       f1v: &[f64]|
         -> Result<Vec<f64>> {
            let uv = DVector::from_column_slice(u);
            let mut rhs = d * &uv * (0.5 * h);
            for i in 0..m {
                rhs[i] += c[i] * uv[i] + 0.5 * h * (f0v[i] + f1v[i]);
            }
            let sol = lu.solve(&rhs).ok_or(Error::Singular {
                context: "trapezoidal step",
            })?;
            Ok(sol.iter().copied().collect())
        };

        let uc = advance(
            &self.lu_even,
            &sys.even_matrix,
            &sys.c_diag,
            &state.uc,
            &f_now.fc,
            &f_next.fc,
        )?;
        let us = advance(
            &self.lu_odd,
            &sys.odd_matrix,
            &sys.s_diag,
            &state.us,
            &f_now.fs,
            &f_next.fs,
        )?;
        let u0c = state.u0c + 0.5 * h * (f_now.f0 + f_next.f0) / sys.zero_mode_constant;

        Ok(SpectralCoefficients {
            m_max: m,
            u0c,
            uc,
            us,
            parity_restriction: ParityRestriction::None,
        })
    }

    /// March from `state` at time `t0` over `steps` steps.
    pub fn run(
        &self,
        state: &SpectralCoefficients,
        t0: f64,
        steps: usize,
    ) -> Result<SpectralCoefficients> {
        let mut u = state.clone();
        let mut t = t0;
        for _ in 0..steps {
            u = self.step(&u, t)?;
            t += self.dt;
        }
        Ok(u)
    }
}

/// One implicit-trapezoidal step (factorizes for this dt; use
/// [`TrapezoidalStepper`] directly when marching many steps).
pub fn step_ibvp(
    system: &SemiDiscreteSystem,
    state: &SpectralCoefficients,
    t: f64,
    dt: f64,
) -> Result<SpectralCoefficients> {
    TrapezoidalStepper::new(system, dt)?.step(state, t)
}

/// Expansion coefficients of a function under a discretization (utility
/// for initial states and forcing setup).
pub fn expand_function<F: Fn(f64) -> f64>(
    f: F,
    disc: &Discretization,
) -> Result<SpectralCoefficients> {
    let samples: Vec<f64> = disc.rule.nodes.iter().map(|&x| f(x)).collect();
    if let Some(i) = samples.iter().position(|v| !v.is_finite()) {
        return Err(Error::Evaluation { x: disc.rule.nodes[i] });
    }
    expand_samples(&samples, disc)
}
