//! Univariate reduction of the critical-point system.
//!
//! On the torus, the critical equations force the first n coordinates to a
//! common value x; writing y for the last coordinate and using a Bézout
//! relation `l1*a + l2*(n+1) = 1`, the curve `x^{n+1} = y^a` is
//! parameterized one-to-one by `(x, y) = (t^a, t^{n+1})`. The system then
//! collapses to the single constraint `h(t) = 1` with
//!
//! ```text
//! h(t) = t^{2n+2} + a t^{n+a+1}
//! ```
//!
//! and the critical values become `g(t)` at the roots of `h - 1`, where
//!
//! ```text
//! g(t) = (n+1) t^a + t^{n+1} + t^{-(n+1)}
//! g̃(t) = (n+1-a) t^a + 2 t^{-(n+1)}          (g minus t^{-(n+1)}(h-1))
//! ǧ(t) = 2 t^{n+1} + (n+1+a) t^a             (g plus t^{-(n+1)}(h-1))
//! ```
//!
//! The three forms agree exactly on the constraint set `h(t) = 1`; the
//! closed forms for general a are validated against the direct
//! multivariate solver by the oracle-equivalence tests before any scan
//! relies on them.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::model::{
    build_ray_generators, build_superpotential, log_gradient, BundleInstance, CriticalPoint,
    LaurentPolynomial,
};

/// The reduced univariate system for one bundle instance.
#[derive(Debug, Clone)]
pub struct ReducedSystem {
    instance: BundleInstance,
    h_minus_1: LaurentPolynomial,
    g: LaurentPolynomial,
    g_tilde: LaurentPolynomial,
    g_check: LaurentPolynomial,
    bezout: Option<(i64, i64)>,
    superpotential: LaurentPolynomial,
}

impl ReducedSystem {
    pub fn instance(&self) -> &BundleInstance {
        &self.instance
    }

    /// `h(t) - 1`, an ordinary polynomial of degree 2n+2.
    pub fn h_minus_1(&self) -> &LaurentPolynomial {
        &self.h_minus_1
    }

    pub fn g(&self) -> &LaurentPolynomial {
        &self.g
    }

    pub fn g_tilde(&self) -> &LaurentPolynomial {
        &self.g_tilde
    }

    pub fn g_check(&self) -> &LaurentPolynomial {
        &self.g_check
    }

    /// Bézout pair (l1, l2) with `l1*a + l2*(n+1) = 1` and `0 <= l1 < n+1`;
    /// absent for constraint-only systems with gcd(a, n+1) > 1.
    pub fn bezout(&self) -> Option<(i64, i64)> {
        self.bezout
    }

    pub fn superpotential(&self) -> &LaurentPolynomial {
        &self.superpotential
    }

    pub fn degree(&self) -> usize {
        self.instance.eigenvalue_count()
    }

    /// Fast 3-term evaluation of `h(t) - 1`.
    pub fn h_minus_1_at(&self, t: Complex64) -> Complex64 {
        let n = self.instance.n();
        let a = self.instance.a();
        t.powu(2 * n + 2) + (a as f64) * t.powu(n + a + 1) - 1.0
    }

    /// `h(t) - 1` for real t >= 0.
    pub fn h_minus_1_real(&self, t: f64) -> f64 {
        let n = self.instance.n() as i32;
        let a = self.instance.a() as i32;
        t.powi(2 * n + 2) + f64::from(a) * t.powi(n + a + 1) - 1.0
    }

    /// Inverse of the lift parameterization: `t = y^{l2} x^{l1}`. None for
    /// constraint-only systems, where the inverse map does not exist.
    pub fn parameter_from_xy(&self, x: Complex64, y: Complex64) -> Option<Complex64> {
        let (l1, l2) = self.bezout?;
        Some(x.powi(l1 as i32) * y.powi(l2 as i32))
    }
}

/// Extended Euclid, normalized so that `0 <= l1 < m`.
pub fn bezout_exponents(a: i64, m: i64) -> Result<(i64, i64)> {
    if a < 1 || m < 1 {
        return Err(Error::OutOfRange(format!(
            "bezout_exponents requires positive arguments, got ({a}, {m})"
        )));
    }
    let (mut r0, mut r1) = (a, m);
    let (mut s0, mut s1) = (1i64, 0i64);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (s0, s1) = (s1, s0 - q * s1);
    }
    if r0 != 1 {
        return Err(Error::Coprimality {
            n: (m - 1) as u32,
            a: a as u32,
            m: m as u32,
            g: r0 as u32,
        });
    }
    let l1 = s0.rem_euclid(m);
    let l2 = (1 - l1 * a) / m;
    debug_assert_eq!(l1 * a + l2 * m, 1);
    Ok((l1, l2))
}

/// Builds the reduced system. Requires `a >= 1` and `gcd(a, n+1) = 1`;
/// the reducible case yields an error, never a wrong multiset.
pub fn reduce(instance: &BundleInstance) -> Result<ReducedSystem> {
    if !instance.is_coprime() {
        let (a, m) = (instance.a(), instance.n() + 1);
        let g = if a == 0 { m } else { gcd_u32(a, m) };
        return Err(Error::Coprimality {
            n: instance.n(),
            a,
            m,
            g,
        });
    }
    constraint_system(instance)
}

/// Builds the constraint polynomial `h - 1` and the value functions for
/// any Fano-range instance with `a >= 1`, without requiring coprimality.
///
/// Without coprimality the parameterization covers only one branch of the
/// reducible curve, so g-values at the roots are not the eigenvalue
/// multiset; root localization, however, is a statement about `h - 1`
/// itself and remains meaningful. The certification path runs on these.
pub fn constraint_system(instance: &BundleInstance) -> Result<ReducedSystem> {
    let n = instance.n() as i64;
    let a = instance.a() as i64;
    if a < 1 {
        return Err(Error::OutOfRange(
            "the reduction needs a >= 1; a = 0 has no spike term".into(),
        ));
    }
    let bezout = bezout_exponents(a, n + 1).ok();

    let h_minus_1 =
        LaurentPolynomial::univariate([(2 * n + 2, 1.0), (n + a + 1, a as f64), (0, -1.0)]);
    let g = LaurentPolynomial::univariate([
        (a, (n + 1) as f64),
        (n + 1, 1.0),
        (-(n + 1), 1.0),
    ]);
    let g_tilde =
        LaurentPolynomial::univariate([(a, (n + 1 - a) as f64), (-(n + 1), 2.0)]);
    let g_check =
        LaurentPolynomial::univariate([(n + 1, 2.0), (a, (n + 1 + a) as f64)]);

    let superpotential = build_superpotential(&build_ray_generators(instance))?;

    Ok(ReducedSystem {
        instance: *instance,
        h_minus_1,
        g,
        g_tilde,
        g_check,
        bezout,
        superpotential,
    })
}

fn gcd_u32(mut a: u32, mut b: u32) -> u32 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Lifts a parameter value to the multivariate critical point
/// `(t^a, ..., t^a, t^{n+1})`, reporting the value of the superpotential
/// there and the true logarithmic-gradient residual.
pub fn lift_root(system: &ReducedSystem, t: Complex64) -> Result<CriticalPoint> {
    if t == Complex64::ZERO {
        return Err(Error::ZeroCoordinate);
    }
    let n = system.instance.n();
    let a = system.instance.a();
    let x = t.powu(a);
    let y = t.powu(n + 1);
    let mut coords = vec![x; n as usize];
    coords.push(y);
    let value = system.superpotential.eval(&coords);
    let grad = log_gradient(&system.superpotential, &coords)?;
    let residual = grad.iter().map(|g| g.norm()).fold(0.0, f64::max);
    Ok(CriticalPoint {
        coords,
        value,
        residual,
    })
}

/// Outcome of the three-way identity check `g = g̃ = ǧ` at one parameter.
#[derive(Debug, Clone, Copy)]
pub struct IdentityCheck {
    /// `|h(t) - 1|`; the identity is only claimed on the constraint set.
    pub constraint_residual: f64,
    /// Whether the relaxed precondition `|h(t)-1| < 10*tol` held.
    pub on_constraint: bool,
    /// max(|g - g̃|, |g - ǧ|) at t.
    pub deviation: f64,
    pub pass: bool,
    pub g: Complex64,
    pub g_tilde: Complex64,
    pub g_check: Complex64,
}

/// Evaluates all three critical-value forms at t and compares them.
/// Passing requires the point to satisfy the (relaxed) constraint and the
/// deviation to stay below `tol * (1 + |g(t)|)`.
pub fn check_identities(system: &ReducedSystem, t: Complex64, tol: f64) -> IdentityCheck {
    let constraint_residual = system.h_minus_1_at(t).norm();
    let on_constraint = constraint_residual < tol * 10.0;
    let g = system.g.eval1(t);
    let g_tilde = system.g_tilde.eval1(t);
    let g_check = system.g_check.eval1(t);
    let deviation = (g - g_tilde).norm().max((g - g_check).norm());
    let pass = on_constraint && deviation <= tol * (1.0 + g.norm());
    IdentityCheck {
        constraint_residual,
        on_constraint,
        deviation,
        pass,
        g,
        g_tilde,
        g_check,
    }
}
