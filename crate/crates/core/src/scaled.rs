//! Overflow-safe hyperbolic arithmetic.
//!
//! The eigenfunction and coefficient formulas contain products like
//! cosh²(√3λ) · sech(√3λ/2) whose factors overflow `f64` near λ ≈ 420 even
//! though the combined values are O(1). Every hyperbolic argument that
//! appears is an integer multiple of one or two base scales (√3λ/2 for a
//! single index, plus √3μ/2 when two indices meet), so we carry numbers as
//!
//! ```text
//! value = m · exp(i·u + j·v),   i, j ∈ ℤ
//! ```
//!
//! with the mantissa `m` always O(1). Multiplication and division act on
//! the integer scales exactly; addition rescales the smaller operand by a
//! nonpositive-exponent `exp`, so nothing ever overflows and the leading
//! scales cancel without rounding.

/// A number `m · exp(i·u + j·v)` relative to the scale pair `(u, v)`.
///
/// The scales themselves are passed to the operations that need them
/// (`add`, `value`); single-scale formulas simply use `v = 0`.
#[derive(Clone, Copy, Debug)]
pub(crate) struct Es {
    m: f64,
    i: i32,
    j: i32,
}

impl Es {
    pub fn new(m: f64) -> Self {
        Es { m, i: 0, j: 0 }
    }

    /// cosh(k·u) = exp(k·u) · (1 + e^{-2ku})/2 in the first scale slot.
    pub fn cosh_u(k: i32, u: f64) -> Self {
        Es {
            m: 0.5 * (1.0 + (-2.0 * k as f64 * u).exp()),
            i: k,
            j: 0,
        }
    }

    /// sinh(k·u) in the first scale slot (k ≥ 1).
    pub fn sinh_u(k: i32, u: f64) -> Self {
        Es {
            m: 0.5 * (1.0 - (-2.0 * k as f64 * u).exp()),
            i: k,
            j: 0,
        }
    }

    /// cosh(k·v) in the second scale slot.
    pub fn cosh_v(k: i32, v: f64) -> Self {
        Es {
            m: 0.5 * (1.0 + (-2.0 * k as f64 * v).exp()),
            i: 0,
            j: k,
        }
    }

    /// sinh(k·v) in the second scale slot (k ≥ 1).
    pub fn sinh_v(k: i32, v: f64) -> Self {
        Es {
            m: 0.5 * (1.0 - (-2.0 * k as f64 * v).exp()),
            i: 0,
            j: k,
        }
    }

    pub fn mul(self, o: Es) -> Es {
        Es {
            m: self.m * o.m,
            i: self.i + o.i,
            j: self.j + o.j,
        }
    }

    pub fn div(self, o: Es) -> Es {
        Es {
            m: self.m / o.m,
            i: self.i - o.i,
            j: self.j - o.j,
        }
    }

    pub fn neg(self) -> Es {
        Es {
            m: -self.m,
            i: self.i,
            j: self.j,
        }
    }

    /// Add under the scale pair `(u, v)`: the smaller operand is brought to
    /// the larger scale by a factor `exp(d)` with `d ≤ 0`.
    pub fn add(self, o: Es, u: f64, v: f64) -> Es {
        let d = (self.i - o.i) as f64 * u + (self.j - o.j) as f64 * v;
        if d >= 0.0 {
            Es {
                m: self.m + o.m * (-d).exp(),
                i: self.i,
                j: self.j,
            }
        } else {
            Es {
                m: self.m * d.exp() + o.m,
                i: o.i,
                j: o.j,
            }
        }
    }

    /// Collapse to `f64`. Sound only when the residual scale is small
    /// enough to be representable; all formulas in this crate end at
    /// `i = j = 0` or negative scales.
    pub fn value(self, u: f64, v: f64) -> f64 {
        self.m * (self.i as f64 * u + self.j as f64 * v).exp()
    }
}

/// Bounded evaluation of cosh(a·x)/cosh(a) and sinh(a·x)/cosh(a) on
/// x ∈ [−1, 1], plus the tanh/coth of the scale itself.
///
/// The ratios are computed from exponentials with nonpositive arguments
/// only: cosh(ax)/cosh(a) = (e^{a(x−1)} + e^{−a(x+1)}) / (1 + e^{−2a}),
/// so no intermediate exceeds 1 in magnitude for |x| ≤ 1.
#[derive(Clone, Copy, Debug)]
pub struct ScaledHyperbolic {
    a: f64,
    exp_neg_2a: f64,
}

impl ScaledHyperbolic {
    /// `a` must be positive and finite.
    pub fn new(a: f64) -> Self {
        debug_assert!(a.is_finite() && a > 0.0);
        ScaledHyperbolic {
            a,
            exp_neg_2a: (-2.0 * a).exp(),
        }
    }

    /// The argument scale a.
    pub fn scale(&self) -> f64 {
        self.a
    }

    /// cosh(a·x)/cosh(a), bounded by 1 for |x| ≤ 1.
    pub fn cosh_ratio(&self, x: f64) -> f64 {
        let em = (self.a * (x - 1.0)).exp();
        let ep = (-self.a * (x + 1.0)).exp();
        (em + ep) / (1.0 + self.exp_neg_2a)
    }

    /// sinh(a·x)/cosh(a), bounded by 1 for |x| ≤ 1.
    pub fn sinh_ratio(&self, x: f64) -> f64 {
        let em = (self.a * (x - 1.0)).exp();
        let ep = (-self.a * (x + 1.0)).exp();
        (em - ep) / (1.0 + self.exp_neg_2a)
    }

    pub fn tanh(&self) -> f64 {
        self.a.tanh()
    }

    pub fn coth(&self) -> f64 {
        1.0 / self.a.tanh()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn es_reproduces_plain_arithmetic_at_small_scale() {
        let u = 1.3;
        let a = Es::cosh_u(2, u); // cosh(2.6)
        let b = Es::sinh_u(1, u); // sinh(1.3)
        let got = a.mul(b).add(Es::new(0.25), u, 0.0).value(u, 0.0);
        let want = (2.0 * u).cosh() * u.sinh() + 0.25;
        assert!((got - want).abs() < 1e-13 * want.abs(), "{got} vs {want}");
    }

    #[test]
    fn es_handles_scales_that_overflow_f64() {
        // cosh(600)^2 / cosh(2*600) -> 1/2 + tiny, but cosh(600) ~ 1.9e260
        let u = 600.0;
        let r = Es::cosh_u(1, u)
            .mul(Es::cosh_u(1, u))
            .div(Es::cosh_u(2, u))
            .value(u, 0.0);
        assert!((r - 0.5).abs() < 1e-15, "{r}");
    }

    #[test]
    fn es_two_scale_cancellation() {
        let (u, v) = (300.0, 451.0);
        // sinh(u) cosh(2v) / (cosh(u) cosh(2v)) = tanh(u) ~ 1
        let r = Es::sinh_u(1, u)
            .mul(Es::cosh_v(2, v))
            .div(Es::cosh_u(1, u).mul(Es::cosh_v(2, v)))
            .value(u, v);
        assert!((r - 1.0).abs() < 1e-15);
    }

    #[test]
    fn ratios_match_direct_evaluation_at_moderate_scale() {
        let h = ScaledHyperbolic::new(3.7);
        for &x in &[-1.0f64, -0.4, 0.0, 0.33, 1.0] {
            let c = (3.7 * x).cosh() / 3.7f64.cosh();
            let s = (3.7 * x).sinh() / 3.7f64.cosh();
            assert!((h.cosh_ratio(x) - c).abs() < 1e-14);
            assert!((h.sinh_ratio(x) - s).abs() < 1e-14);
        }
    }

    #[test]
    fn ratios_bounded_at_huge_scale() {
        let h = ScaledHyperbolic::new(500.0);
        for &x in &[-1.0, -0.999, 0.0, 0.5, 1.0] {
            assert!(h.cosh_ratio(x).is_finite() && h.cosh_ratio(x).abs() <= 1.0);
            assert!(h.sinh_ratio(x).is_finite() && h.sinh_ratio(x).abs() <= 1.0);
        }
        assert!((h.cosh_ratio(1.0) - 1.0).abs() < 1e-15);
    }
}
