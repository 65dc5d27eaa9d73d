//! The four eigenfunction families of the clamped sixth-order problem:
//! trial even ψ_mᶜ, trial odd ψ_mˢ, test (adjoint) even φ_mᶜ, test odd φ_mˢ,
//! with stable evaluation of values and derivatives up to order 6 on [−1, 1].
//!
//! Every index-m eigenfunction is a fixed linear combination of six terms,
//!
//! ```text
//! w(λx),  cos(λx/2)·C(x),  cos(λx/2)·S(x),  sin(λx/2)·C(x),  sin(λx/2)·S(x)
//! ```
//!
//! with w = cos or sin, C(x) = cosh(ax)/cosh(a), S(x) = sinh(ax)/cosh(a),
//! and a = √3λ/2. Differentiation maps this span to itself exactly, so
//! derivatives of any order are closed-form: the six coefficient vectors
//! for orders 0..=6 are precomputed at construction. The combination
//! amplitudes come from the published closed forms, re-paired with their
//! sech/csch factors through exp-scaled arithmetic so they stay O(1) for
//! indices far beyond 200.
//!
//! The zero modes are special: ψ₀ᶜ(x) = x⁴ − 2x² + 1 and φ₀ᶜ(x) = 1.

use crate::eigenvalues::{self, Eigenvalue, Parity, Source};
use crate::error::{Error, Result};
use crate::scaled::{Es, ScaledHyperbolic};

const SQRT3: f64 = 1.732_050_807_568_877_2;

/// Trial functions expand the unknown; test functions project residuals.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Kind {
    Trial,
    Test,
}

impl Kind {
    pub fn as_str(self) -> &'static str {
        match self {
            Kind::Trial => "trial",
            Kind::Test => "test",
        }
    }
}

/// Coefficients over the six-term span, ordered
/// [cos λx, sin λx, cos(λx/2)C, cos(λx/2)S, sin(λx/2)C, sin(λx/2)S].
type Terms = [f64; 6];

fn differentiate(v: &Terms, lambda: f64) -> Terms {
    let a = 0.5 * SQRT3 * lambda;
    let h = 0.5 * lambda;
    [
        lambda * v[1],
        -lambda * v[0],
        a * v[3] + h * v[4],
        a * v[2] + h * v[5],
        -h * v[2] + a * v[5],
        -h * v[3] + a * v[4],
    ]
}

#[derive(Clone, Debug)]
struct Modal {
    lambda: f64,
    hyp: ScaledHyperbolic,
    /// Coefficient vectors for derivative orders 0..=6.
    derivs: [Terms; 7],
}

#[derive(Clone, Debug)]
enum Repr {
    /// ψ₀ᶜ(x) = x⁴ − 2x² + 1
    Quartic,
    /// φ₀ᶜ(x) = 1
    Constant,
    Modal(Box<Modal>),
}

/// One eigenfunction, immutable after construction; evaluation is
/// reentrant and allocation-free.
#[derive(Clone, Debug)]
pub struct BasisFunction {
    kind: Kind,
    eigenvalue: Eigenvalue,
    repr: Repr,
}

// Amplitudes of the modal terms. Each returns the coefficients (A, B) such
// that f(x) = w(λx) + A·u(λx/2)·C(x) + B·v(λx/2)·S(x); the raw published
// coefficients multiply cosh(ax)/sinh(ax), so a factor cosh(a) is folded in
// here via exp-scaled arithmetic.

fn trial_even_terms(lambda: f64) -> Terms {
    let u = 0.5 * SQRT3 * lambda;
    let den = Es::new(SQRT3 * lambda.sin()).add(Es::sinh_u(2, u).neg(), u, 0.0);
    let kc = Es::new((0.5 * lambda).cos())
        .mul(Es::cosh_u(1, u))
        .mul(Es::cosh_u(1, u))
        .div(den);
    let t = (0.5 * lambda).tan();
    let th = u.tanh();
    let p = -2.0 * SQRT3 * lambda.cos() * t - 2.0 * (lambda.cos() - 2.0) * th;
    let q = -3.0 * t + (0.5 * lambda).sin().powi(2) * t - 1.5 * lambda.sin()
        + 2.0 * SQRT3 * lambda.cos() * th;
    let a = kc.mul(Es::new(p)).value(u, 0.0);
    let b = kc.mul(Es::new(q)).value(u, 0.0);
    [1.0, 0.0, a, 0.0, 0.0, b]
}

fn trial_odd_terms(lambda: f64) -> Terms {
    let u = 0.5 * SQRT3 * lambda;
    // −4 cos³(λ/2) sinh(a) cosh(a) / sinh(2a) = −2 cos³(λ/2)
    let a = -2.0 * (0.5 * lambda).cos().powi(3);
    let b = (-4.0 * (0.5 * lambda).sin().powi(3))
        * Es::cosh_u(1, u)
            .mul(Es::cosh_u(1, u))
            .div(Es::sinh_u(2, u))
            .value(u, 0.0);
    [0.0, 1.0, 0.0, b, a, 0.0]
}

fn test_even_terms(mu: f64) -> Terms {
    let u = 0.5 * SQRT3 * mu;
    let num = Es::new((0.5 * mu).cos())
        .mul(Es::sinh_u(1, u))
        .add(Es::new(-SQRT3 * (0.5 * mu).sin()).mul(Es::cosh_u(1, u)), u, 0.0);
    let den = Es::new(mu.cos()).add(Es::cosh_u(2, u).neg(), u, 0.0);
    let b = Es::new(2.0 * mu.sin())
        .mul(num)
        .mul(Es::cosh_u(1, u))
        .div(den)
        .value(u, 0.0);
    // sech(a) from the printed form cancels against the folded cosh(a)
    let ct = 1.0 / (0.5 * mu).tan();
    let th = u.tanh();
    let a = (mu.sin() / (0.5 * mu).sin()) * (SQRT3 * ct * th + 1.0) / (1.0 + ct * ct * th * th);
    [1.0, 0.0, a, 0.0, 0.0, b]
}

fn test_odd_terms(mu: f64) -> Terms {
    let u = 0.5 * SQRT3 * mu;
    let num = Es::new((0.5 * mu).cos())
        .mul(Es::cosh_u(1, u))
        .add(Es::new(-SQRT3 * (0.5 * mu).sin()).mul(Es::sinh_u(1, u)), u, 0.0);
    let den = Es::new(mu.cos()).add(Es::cosh_u(2, u), u, 0.0);
    let a = Es::new(2.0 * mu.cos())
        .mul(num)
        .mul(Es::cosh_u(1, u))
        .div(den)
        .value(u, 0.0);
    // csch(a)·cosh(a) = coth(a)
    let cth = 1.0 / u.tanh();
    let s2 = (0.5 * mu).sin();
    let c2 = (0.5 * mu).cos();
    let b = mu.cos() * cth * (s2 + SQRT3 * c2 * cth) / (s2 * s2 + c2 * c2 * cth * cth);
    [0.0, 1.0, 0.0, -b, a, 0.0]
}

impl BasisFunction {
    /// Construct from an already-computed eigenvalue (typically shared out
    /// of an [`eigenvalues::EigenvalueTable`]).
    pub fn with_eigenvalue(kind: Kind, eigenvalue: &Eigenvalue) -> Result<Self> {
        if eigenvalue.parity == Parity::Odd && eigenvalue.index == 0 {
            return Err(Error::Domain("odd basis functions need index >= 1".into()));
        }
        let repr = if eigenvalue.index == 0 {
            debug_assert_eq!(eigenvalue.source, Source::ExactClosedForm);
            match kind {
                Kind::Trial => Repr::Quartic,
                Kind::Test => Repr::Constant,
            }
        } else {
            let lambda = eigenvalue.value;
            let base = match (kind, eigenvalue.parity) {
                (Kind::Trial, Parity::Even) => trial_even_terms(lambda),
                (Kind::Trial, Parity::Odd) => trial_odd_terms(lambda),
                (Kind::Test, Parity::Even) => test_even_terms(lambda),
                (Kind::Test, Parity::Odd) => test_odd_terms(lambda),
            };
            let mut derivs = [[0.0; 6]; 7];
            derivs[0] = base;
            for k in 1..=6 {
                derivs[k] = differentiate(&derivs[k - 1], lambda);
            }
            Repr::Modal(Box::new(Modal {
                lambda,
                hyp: ScaledHyperbolic::new(0.5 * SQRT3 * lambda),
                derivs,
            }))
        };
        Ok(BasisFunction {
            kind,
            eigenvalue: *eigenvalue,
            repr,
        })
    }

    /// Construct by computing the eigenvalue first (default tolerance).
    pub fn new(kind: Kind, parity: Parity, index: usize) -> Result<Self> {
        let ev = match parity {
            Parity::Even => eigenvalues::even_eigenvalue(index, eigenvalues::DEFAULT_TOL)?,
            Parity::Odd => eigenvalues::odd_eigenvalue(index)?,
        };
        Self::with_eigenvalue(kind, &ev)
    }

    pub fn kind(&self) -> Kind {
        self.kind
    }

    pub fn parity(&self) -> Parity {
        self.eigenvalue.parity
    }

    pub fn index(&self) -> usize {
        self.eigenvalue.index
    }

    pub fn eigenvalue(&self) -> &Eigenvalue {
        &self.eigenvalue
    }

    fn check_x(x: f64) -> Result<()> {
        if !(x.is_finite() && (-1.0..=1.0).contains(&x)) {
            return Err(Error::Domain(format!(
                "basis functions are defined on [-1, 1], got x = {x}"
            )));
        }
        Ok(())
    }

    fn eval_terms(v: &Terms, lambda: f64, hyp: &ScaledHyperbolic, x: f64) -> f64 {
        let c = hyp.cosh_ratio(x);
        let s = hyp.sinh_ratio(x);
        let ch = (0.5 * lambda * x).cos();
        let sh = (0.5 * lambda * x).sin();
        v[0] * (lambda * x).cos()
            + v[1] * (lambda * x).sin()
            + ch * (v[2] * c + v[3] * s)
            + sh * (v[4] * c + v[5] * s)
    }

    /// Eigenfunction value at x ∈ [−1, 1].
    pub fn eval(&self, x: f64) -> Result<f64> {
        Self::check_x(x)?;
        Ok(self.eval_order_unchecked(x, 0))
    }

    /// Analytic derivative of order 1..=6 at x ∈ [−1, 1].
    pub fn eval_derivative(&self, x: f64, order: usize) -> Result<f64> {
        Self::check_x(x)?;
        if !(1..=6).contains(&order) {
            return Err(Error::Domain(format!(
                "derivative order must lie in 1..=6, got {order}"
            )));
        }
        Ok(self.eval_order_unchecked(x, order))
    }

    pub(crate) fn eval_order_unchecked(&self, x: f64, order: usize) -> f64 {
        match &self.repr {
            Repr::Constant => {
                if order == 0 {
                    1.0
                } else {
                    0.0
                }
            }
            Repr::Quartic => match order {
                0 => {
                    let x2 = x * x;
                    x2 * x2 - 2.0 * x2 + 1.0
                }
                1 => 4.0 * x * x * x - 4.0 * x,
                2 => 12.0 * x * x - 4.0,
                3 => 24.0 * x,
                4 => 24.0,
                _ => 0.0,
            },
            Repr::Modal(m) => Self::eval_terms(&m.derivs[order], m.lambda, &m.hyp, x),
        }
    }

    /// Residual of the defining ODE, d⁶f/dx⁶ + λ⁶ f; zero (to roundoff in
    /// units of λ⁶) for every family, and exactly zero for the zero modes.
    pub fn ode_residual(&self, x: f64) -> Result<f64> {
        Self::check_x(x)?;
        let lambda = self.eigenvalue.value;
        Ok(self.eval_order_unchecked(x, 6) + lambda.powi(6) * self.eval_order_unchecked(x, 0))
    }

    /// Sup-norm estimate of the order-`order` derivative on a uniform grid;
    /// the natural scale for boundary-condition tolerances (the fifth
    /// derivative grows like λ⁵).
    pub fn sup_norm_estimate(&self, order: usize, samples: usize) -> f64 {
        let n = samples.max(2);
        (0..n)
            .map(|i| -1.0 + 2.0 * i as f64 / (n - 1) as f64)
            .map(|x| self.eval_order_unchecked(x, order).abs())
            .fold(0.0, f64::max)
    }
}

#[cfg(test)]
#[allow(clippy::excessive_precision)] // frozen 50-digit oracle constants
mod tests {
    use super::*;
    use crate::eigenvalues::EigenvalueTable;
    use proptest::prelude::*;

    fn make(kind: Kind, parity: Parity, m: usize) -> BasisFunction {
        BasisFunction::new(kind, parity, m).unwrap()
    }

    /// Extended-precision (50-digit) reference values of the published
    /// closed forms, frozen as regression constants.
    const EVAL_ORACLE: [(&str, &str, usize, f64, f64); 37] = [
        ("trial", "even", 1, -0.93, -0.077267452529623545),
        ("trial", "even", 1, 0.12, 0.90246712808884047),
        ("trial", "even", 1, 0.55, -0.57672886175289394),
        ("trial", "even", 4, -0.93, 0.43272560840261604),
        ("trial", "even", 4, 0.12, -0.12533281722157542),
        ("trial", "even", 4, 0.55, 0.078776991825865481),
        ("trial", "even", 10, -0.93, 0.49200299568346116),
        ("trial", "even", 10, 0.12, -0.68454710595114744),
        ("trial", "even", 10, 0.55, 0.76040122102668185),
        ("trial", "odd", 1, -0.93, -0.037099151853868832),
        ("trial", "odd", 2, 0.5, 0.13222548608145027),
        ("trial", "odd", 1, 0.12, 0.28179691160561035),
        ("trial", "odd", 1, 0.55, 0.62343530087759707),
        ("trial", "odd", 4, -0.93, 0.37298238291883658),
        ("trial", "odd", 4, 0.12, 0.99792486553354987),
        ("trial", "odd", 4, 0.55, 0.5924001582705894),
        ("trial", "odd", 10, -0.93, 0.54367763772001306),
        ("trial", "odd", 10, 0.12, -0.58778525221627832),
        ("trial", "odd", 10, 0.55, -0.99999318627854773),
        ("test", "even", 1, -0.93, -1.7295808207412564),
        ("test", "even", 1, 0.12, 0.85383068581251345),
        ("test", "even", 1, 0.55, -1.1232185359729738),
        ("test", "even", 4, -0.93, 1.684305204186326),
        ("test", "even", 4, 0.12, -0.12529736902472344),
        ("test", "even", 4, 0.55, 0.071293392998401973),
        ("test", "even", 10, -0.93, 0.95825348137212217),
        ("test", "even", 10, 0.12, -0.68454710592514276),
        ("test", "even", 10, 0.55, 0.76041023212525522),
        ("test", "odd", 1, -0.93, -1.7469698771276967),
        ("test", "odd", 1, 0.12, 0.45651191965768673),
        ("test", "odd", 1, 0.55, 1.5781622840422),
        ("test", "odd", 4, -0.93, 1.7008935360834942),
        ("test", "odd", 4, 0.12, 0.99799656649663527),
        ("test", "odd", 4, 0.55, 0.59777799318599698),
        ("test", "odd", 10, -0.93, 1.0587708434242296),
        ("test", "odd", 10, 0.12, -0.5877852523519484),
        ("test", "odd", 10, 0.55, -1.0000093077165981),
    ];

    const DERIV_ORACLE_TRIAL_EVEN_3: [(usize, f64); 6] = [
        (1, 10.483401428234501),
        (2, 37.981470227456831),
        (3, -1255.6591289480801),
        (4, -4426.9705629973471),
        (5, 153529.03905246084),
        (6, 547941.90533335842),
    ];

    const DERIV_ORACLE_TEST_ODD_2: [(usize, f64); 6] = [
        (1, -4.3837928520390685),
        (2, -25.055071526679285),
        (3, 37.260304932605569),
        (4, 1418.8551551938599),
        (5, -774.94887817315763),
        (6, -80488.783563012429),
    ];

    #[test]
    fn eval_agrees_with_extended_precision_oracle() {
        for &(kind, parity, m, x, want) in &EVAL_ORACLE {
            let kind = if kind == "trial" { Kind::Trial } else { Kind::Test };
            let parity = if parity == "even" { Parity::Even } else { Parity::Odd };
            let got = make(kind, parity, m).eval(x).unwrap();
            assert!(
                (got - want).abs() <= 1e-10 * want.abs().max(1.0),
                "{kind:?} {parity:?} m={m} x={x}: {got} vs {want}"
            );
        }
    }

    #[test]
    fn derivatives_agree_with_extended_precision_oracle() {
        let f = make(Kind::Trial, Parity::Even, 3);
        for &(order, want) in &DERIV_ORACLE_TRIAL_EVEN_3 {
            let got = f.eval_derivative(0.4, order).unwrap();
            assert!(
                (got - want).abs() <= 1e-10 * want.abs(),
                "order {order}: {got} vs {want}"
            );
        }
        let g = make(Kind::Test, Parity::Odd, 2);
        for &(order, want) in &DERIV_ORACLE_TEST_ODD_2 {
            let got = g.eval_derivative(-0.7, order).unwrap();
            assert!(
                (got - want).abs() <= 1e-10 * want.abs(),
                "order {order}: {got} vs {want}"
            );
        }
    }

    #[test]
    fn zero_modes() {
        let psi0 = make(Kind::Trial, Parity::Even, 0);
        assert_eq!(psi0.eval(0.0).unwrap(), 1.0);
        assert_eq!(psi0.eval(1.0).unwrap(), 0.0);
        assert_eq!(psi0.ode_residual(0.3).unwrap(), 0.0);
        let phi0 = make(Kind::Test, Parity::Even, 0);
        assert_eq!(phi0.eval(0.37).unwrap(), 1.0);
        assert_eq!(phi0.eval_derivative(0.37, 2).unwrap(), 0.0);
    }

    #[test]
    fn trial_even_vanishes_at_boundary() {
        let f = make(Kind::Trial, Parity::Even, 1);
        assert!(f.eval(1.0).unwrap().abs() < 1e-10);
        assert!(f.eval(-1.0).unwrap().abs() < 1e-10);
    }

    #[test]
    fn boundary_condition_suite_indices_1_to_30() {
        let table = EigenvalueTable::build(30).unwrap();
        for parity in [Parity::Even, Parity::Odd] {
            for m in 1..=30 {
                let trial = BasisFunction::with_eigenvalue(Kind::Trial, table.get(parity, m)).unwrap();
                let test = BasisFunction::with_eigenvalue(Kind::Test, table.get(parity, m)).unwrap();
                for x in [-1.0, 1.0] {
                    for order in [0, 1, 5] {
                        let scale = trial.sup_norm_estimate(order, 257).max(f64::MIN_POSITIVE);
                        let v = trial.eval_order_unchecked(x, order);
                        assert!(
                            v.abs() <= 1e-8 * scale,
                            "trial {parity:?} m={m} order={order} x={x}: {v:.3e} vs scale {scale:.3e}"
                        );
                    }
                    for order in [1, 2, 3] {
                        let scale = test.sup_norm_estimate(order, 257).max(f64::MIN_POSITIVE);
                        let v = test.eval_order_unchecked(x, order);
                        assert!(
                            v.abs() <= 1e-8 * scale,
                            "test {parity:?} m={m} order={order} x={x}: {v:.3e} vs scale {scale:.3e}"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn ode_residual_small_for_all_families() {
        for (kind, parity, m) in [
            (Kind::Trial, Parity::Odd, 1),
            (Kind::Trial, Parity::Even, 2),
            (Kind::Test, Parity::Even, 2),
            (Kind::Test, Parity::Odd, 5),
        ] {
            let f = make(kind, parity, m);
            let lam6 = f.eigenvalue().value.powi(6);
            for x in [-0.8, 0.25, 0.9] {
                let r = f.ode_residual(x).unwrap();
                assert!(r.abs() <= 1e-6 * lam6, "{kind:?} {parity:?} m={m}: {r:.3e}");
            }
        }
    }

    #[test]
    fn bounded_and_finite_up_to_index_200() {
        let table = EigenvalueTable::build(200).unwrap();
        for parity in [Parity::Even, Parity::Odd] {
            for m in [150, 200] {
                for kind in [Kind::Trial, Kind::Test] {
                    let f = BasisFunction::with_eigenvalue(kind, table.get(parity, m)).unwrap();
                    for i in 0..=64 {
                        let x = -1.0 + i as f64 / 32.0;
                        let v = f.eval(x).unwrap();
                        assert!(v.is_finite() && v.abs() < 10.0, "m={m} x={x}: {v}");
                    }
                }
            }
        }
    }

    #[test]
    fn domain_errors() {
        let f = make(Kind::Trial, Parity::Even, 1);
        assert!(f.eval(1.2).is_err());
        assert!(f.eval(f64::NAN).is_err());
        assert!(f.eval_derivative(0.0, 0).is_err());
        assert!(f.eval_derivative(0.0, 7).is_err());
        assert!(BasisFunction::new(Kind::Trial, Parity::Odd, 0).is_err());
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn parity_symmetry(m in 0usize..=30, xi in 0.0f64..1.0, trial in any::<bool>(), even in any::<bool>()) {
            let (parity, m) = if even { (Parity::Even, m) } else { (Parity::Odd, m.max(1)) };
            let kind = if trial { Kind::Trial } else { Kind::Test };
            let f = make(kind, parity, m);
            let plus = f.eval(xi).unwrap();
            let minus = f.eval(-xi).unwrap();
            let expect = if parity == Parity::Even { plus } else { -plus };
            let scale = plus.abs().max(1e-3);
            prop_assert!((minus - expect).abs() <= 1e-12 * scale.max(1.0) + 1e-13,
                "parity violation: f({xi}) = {plus}, f(-{xi}) = {minus}");
        }
    }
}
