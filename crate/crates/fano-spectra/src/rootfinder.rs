//! Root finding for the reduced constraint `h(t) = 1`.
//!
//! The primary finder is Aberth–Ehrlich simultaneous iteration in Jacobi
//! form (every update in a sweep reads the previous sweep's snapshot, so
//! the result does not depend on intra-sweep ordering), followed by a
//! per-root Newton polish. `h - 1` has three terms, so evaluation uses
//! binary exponentiation rather than Horner over a dense coefficient
//! vector. Two independent oracles cross-check the result: eigenvalues of
//! the companion matrix at moderate degree, and exact power sums from
//! Newton's identities on the coefficients.

use std::cmp::Ordering;

use ndarray::Array2;
use ndarray_linalg::Eig;
use num_complex::Complex64;
use serde::Serialize;

use crate::dd::CDd;
use crate::error::{Error, Result};
use crate::reduction::ReducedSystem;

/// Degree cap for the companion-matrix oracle.
pub const COMPANION_MAX_DEGREE: usize = 200;

/// Roots with |Im| below this are reported as exactly real.
pub const REAL_AXIS_TOL: f64 = 1e-9;

/// Pairs of roots closer than this are flagged as near-multiple.
pub const NEAR_MULTIPLE_TOL: f64 = 1e-6;

const MAX_SWEEPS: usize = 400;
const POLISH_STEPS: usize = 3;
const DD_POLISH_STEPS: usize = 4;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum RootMethod {
    #[serde(rename = "simultaneous-iteration")]
    SimultaneousIteration,
    #[serde(rename = "companion-matrix")]
    CompanionMatrix,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Precision {
    Double,
    Extended,
    Auto,
}

impl std::str::FromStr for Precision {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "double" => Ok(Precision::Double),
            "extended" => Ok(Precision::Extended),
            "auto" => Ok(Precision::Auto),
            other => Err(format!("unknown precision '{other}'")),
        }
    }
}

/// All roots of `h - 1`, sorted lexicographically by (re, im).
#[derive(Debug, Clone)]
pub struct RootSet {
    roots: Vec<Complex64>,
    residuals: Vec<f64>,
    iterations: usize,
    method: RootMethod,
    escalated: bool,
}

impl RootSet {
    pub fn roots(&self) -> &[Complex64] {
        &self.roots
    }

    pub fn residuals(&self) -> &[f64] {
        &self.residuals
    }

    pub fn len(&self) -> usize {
        self.roots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.roots.is_empty()
    }

    pub fn iterations(&self) -> usize {
        self.iterations
    }

    pub fn method(&self) -> RootMethod {
        self.method
    }

    pub fn escalated(&self) -> bool {
        self.escalated
    }

    /// Max over roots of the distance to the nearest conjugate partner.
    pub fn conjugation_defect(&self) -> f64 {
        self.roots
            .iter()
            .map(|&r| {
                let c = r.conj();
                self.roots
                    .iter()
                    .map(|&s| (s - c).norm())
                    .fold(f64::INFINITY, f64::min)
            })
            .fold(0.0, f64::max)
    }

    /// Roots on the real axis (after symmetrization these have Im == 0).
    pub fn real_roots(&self) -> Vec<f64> {
        self.roots
            .iter()
            .filter(|r| r.im == 0.0)
            .map(|r| r.re)
            .collect()
    }

    /// Index pairs closer than `tol`; nonempty means eigenvalue
    /// multiplicities downstream may be unreliable.
    pub fn near_multiple_pairs(&self, tol: f64) -> Vec<(usize, usize)> {
        let mut pairs = Vec::new();
        for i in 0..self.roots.len() {
            for j in (i + 1)..self.roots.len() {
                if (self.roots[i] - self.roots[j]).norm() < tol {
                    pairs.push((i, j));
                }
            }
        }
        pairs
    }
}

/// Three-term view of `h - 1` for fast evaluation.
struct SparsePoly {
    terms: Vec<(u32, f64)>,
    degree: u32,
}

impl SparsePoly {
    fn from_system(system: &ReducedSystem) -> Self {
        let mut terms: Vec<(u32, f64)> = system
            .h_minus_1()
            .terms()
            .map(|(e, c)| (e[0] as u32, c.re))
            .collect();
        terms.sort_by_key(|(e, _)| std::cmp::Reverse(*e));
        let degree = terms[0].0;
        SparsePoly { terms, degree }
    }

    fn eval_with_derivative(&self, z: Complex64) -> (Complex64, Complex64) {
        let mut p = Complex64::ZERO;
        let mut dp = Complex64::ZERO;
        for &(e, c) in &self.terms {
            if e == 0 {
                p += c;
            } else {
                let ze1 = z.powu(e - 1);
                p += c * ze1 * z;
                dp += c * (e as f64) * ze1;
            }
        }
        (p, dp)
    }

    fn eval(&self, z: Complex64) -> Complex64 {
        let mut p = Complex64::ZERO;
        for &(e, c) in &self.terms {
            p += c * z.powu(e);
        }
        p
    }

    fn eval_dd(&self, z: CDd) -> (CDd, CDd) {
        let mut p = CDd::from_c64(Complex64::ZERO);
        let mut dp = p;
        for &(e, c) in &self.terms {
            if e == 0 {
                p = p.add(CDd::from_c64(Complex64::new(c, 0.0)));
            } else {
                let ze1 = z.powu(e - 1);
                p = p.add(ze1.mul(z).mul_f64(c));
                dp = dp.add(ze1.mul_f64(c * e as f64));
            }
        }
        (p, dp)
    }

    /// Residual scale: max(1, |z|^degree).
    fn scale(&self, z: Complex64) -> f64 {
        z.norm().max(1.0).powi(self.degree as i32)
    }
}

/// The unique positive root of `h - 1`, bisected on [0, 1].
///
/// h is strictly increasing on the nonnegative reals with h(0) = 0 and
/// h(1) = 1 + a, so the bracket is always valid and each iterate halves it
/// while keeping `h(lo) <= 1 <= h(hi)` exactly in f64.
#[derive(Debug, Clone, Copy)]
pub struct PositiveRoot {
    pub value: f64,
    pub bracket_width: f64,
    pub residual: f64,
}

pub fn positive_root(system: &ReducedSystem, tol: f64) -> PositiveRoot {
    let mut lo = 0.0f64;
    let mut hi = 1.0f64;
    debug_assert!(system.h_minus_1_real(lo) <= 0.0);
    debug_assert!(system.h_minus_1_real(hi) >= 0.0);
    for _ in 0..200 {
        if hi - lo <= tol {
            break;
        }
        let mid = 0.5 * (lo + hi);
        if system.h_minus_1_real(mid) <= 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let value = 0.5 * (lo + hi);
    PositiveRoot {
        value,
        bracket_width: hi - lo,
        residual: system.h_minus_1_real(value).abs(),
    }
}

/// Finds all 2n+2 roots of `h - 1` to the given relative residual
/// tolerance (relative to `max(1, |t|^{2n+2})`).
///
/// `Precision::Auto` polishes failing roots in double-double arithmetic
/// before giving up; `Extended` always runs the double-double polish;
/// `Double` never escalates. Deterministic for fixed inputs.
pub fn find_roots(system: &ReducedSystem, precision: Precision, tol: f64) -> Result<RootSet> {
    let poly = SparsePoly::from_system(system);
    let d = poly.degree as usize;
    let n = system.instance().n();
    let a_plus = positive_root(system, 1e-14);

    // Initial guesses on three circles bracketing the two root clusters.
    let radii = [
        0.9 * a_plus.value,
        1.0,
        1.0 + 1.1 / f64::from(n.max(1)),
    ];
    let mut z: Vec<Complex64> = (0..d)
        .map(|k| {
            let r = radii[k % 3];
            let theta = std::f64::consts::TAU * (k as f64 + 0.25) / d as f64;
            Complex64::from_polar(r, theta)
        })
        .collect();

    // Jacobi-style Aberth sweeps.
    let mut sweeps = 0;
    for _ in 0..MAX_SWEEPS {
        sweeps += 1;
        let snapshot = z.clone();
        let mut max_step = 0.0f64;
        for i in 0..d {
            let zi = snapshot[i];
            let (p, dp) = poly.eval_with_derivative(zi);
            if p == Complex64::ZERO {
                continue;
            }
            let newton = if dp == Complex64::ZERO {
                Complex64::new(1e-8, 1e-8)
            } else {
                p / dp
            };
            let mut repulsion = Complex64::ZERO;
            for (j, &zj) in snapshot.iter().enumerate() {
                if j != i {
                    repulsion += (zi - zj).finv();
                }
            }
            let denom = Complex64::ONE - newton * repulsion;
            let w = if denom == Complex64::ZERO {
                newton
            } else {
                newton / denom
            };
            z[i] = zi - w;
            max_step = max_step.max(w.norm() / (1.0 + zi.norm()));
        }
        if max_step < 1e-15 {
            break;
        }
    }

    // Per-root Newton polish in double precision.
    for zi in z.iter_mut() {
        for _ in 0..POLISH_STEPS {
            let (p, dp) = poly.eval_with_derivative(*zi);
            if dp == Complex64::ZERO {
                break;
            }
            *zi -= p / dp;
        }
    }

    let residual_ok =
        |poly: &SparsePoly, zi: Complex64| poly.eval(zi).norm() <= tol * poly.scale(zi);

    let mut escalated = false;
    let needs_dd = |z: &[Complex64]| z.iter().any(|&zi| !residual_ok(&poly, zi));
    if matches!(precision, Precision::Extended)
        || (matches!(precision, Precision::Auto) && needs_dd(&z))
    {
        escalated = true;
        for zi in z.iter_mut() {
            if matches!(precision, Precision::Auto) && residual_ok(&poly, *zi) {
                continue;
            }
            let mut zd = CDd::from_c64(*zi);
            for _ in 0..DD_POLISH_STEPS {
                let (p, dp) = poly.eval_dd(zd);
                if dp.to_c64() == Complex64::ZERO {
                    break;
                }
                zd = zd.sub(p.div(dp));
            }
            *zi = zd.to_c64();
        }
    }

    // Symmetrize roots that sit on the real axis; h has real coefficients.
    for zi in z.iter_mut() {
        if zi.im.abs() < REAL_AXIS_TOL {
            *zi = Complex64::new(zi.re, 0.0);
        }
    }

    z.sort_by(|x, y| lex_cmp(*x, *y));
    let residuals: Vec<f64> = z.iter().map(|&zi| poly.eval(zi).norm()).collect();

    let worst_rel = z
        .iter()
        .zip(&residuals)
        .map(|(&zi, &r)| r / poly.scale(zi))
        .fold(0.0, f64::max);
    if worst_rel > tol {
        return Err(Error::NonConvergence {
            tol,
            worst: worst_rel,
        });
    }

    let set = RootSet {
        roots: z,
        residuals,
        iterations: sweeps,
        method: RootMethod::SimultaneousIteration,
        escalated,
    };

    // Completeness guard against duplicate convergence: exact power sums
    // from the coefficients must match the computed roots.
    let k_max = 20.min(d);
    let dev = power_sum_check(system, &set, k_max);
    if dev > 1e-6 * d as f64 {
        return Err(Error::NonConvergence {
            tol,
            worst: dev,
        });
    }

    Ok(set)
}

/// Companion-matrix oracle: eigenvalues of the Frobenius companion of the
/// monic `h - 1`. No polish is applied; residuals are reported as-is.
pub fn companion_roots(system: &ReducedSystem) -> Result<RootSet> {
    let poly = SparsePoly::from_system(system);
    let d = poly.degree as usize;
    if d > COMPANION_MAX_DEGREE {
        return Err(Error::OracleGuard {
            n: d,
            limit: COMPANION_MAX_DEGREE,
        });
    }
    let mut m = Array2::<f64>::zeros((d, d));
    for i in 1..d {
        m[(i, i - 1)] = 1.0;
    }
    for &(e, c) in &poly.terms {
        if (e as usize) < d {
            m[(e as usize, d - 1)] = -c;
        }
    }
    let (eig, _) = m.eig().map_err(|e| Error::Eigen(e.to_string()))?;
    let mut roots: Vec<Complex64> = eig.iter().copied().collect();
    if roots.len() != d {
        return Err(Error::Eigen(format!(
            "expected {d} eigenvalues, got {}",
            roots.len()
        )));
    }
    roots.sort_by(|x, y| lex_cmp(*x, *y));
    let residuals: Vec<f64> = roots.iter().map(|&z| poly.eval(z).norm()).collect();
    Ok(RootSet {
        roots,
        residuals,
        iterations: 0,
        method: RootMethod::CompanionMatrix,
        escalated: false,
    })
}

/// Exact power sums p_k = Σ α^k of the roots of `h - 1`, from Newton's
/// identities on the coefficients (no root values involved).
pub fn power_sums_exact(system: &ReducedSystem, max_k: usize) -> Vec<f64> {
    let poly = SparsePoly::from_system(system);
    let d = poly.degree as usize;
    let mut coeff = vec![0.0f64; d + 1];
    for &(e, c) in &poly.terms {
        coeff[e as usize] = c;
    }
    debug_assert_eq!(coeff[d], 1.0);
    newton_power_sums(&coeff, max_k)
}

/// Power sums of the reciprocals of the roots (roots of the reversed
/// polynomial, made monic).
pub fn inverse_power_sums_exact(system: &ReducedSystem, max_k: usize) -> Vec<f64> {
    let poly = SparsePoly::from_system(system);
    let d = poly.degree as usize;
    let mut coeff = vec![0.0f64; d + 1];
    for &(e, c) in &poly.terms {
        coeff[e as usize] = c;
    }
    let c0 = coeff[0];
    debug_assert!(c0 != 0.0);
    let reversed: Vec<f64> = (0..=d).map(|j| coeff[d - j] / c0).collect();
    newton_power_sums(&reversed, max_k)
}

/// Σ g(α) over all roots, evaluated exactly from coefficients:
/// `(n+1) p_a + p_{n+1} + q_{n+1}` with q the reciprocal power sums.
pub fn sum_critical_values_exact(system: &ReducedSystem) -> f64 {
    let n = system.instance().n() as usize;
    let a = system.instance().a() as usize;
    let p = power_sums_exact(system, n + 1);
    let q = inverse_power_sums_exact(system, n + 1);
    (n as f64 + 1.0) * p[a - 1] + p[n] + q[n]
}

fn newton_power_sums(coeff: &[f64], max_k: usize) -> Vec<f64> {
    let d = coeff.len() - 1;
    let mut p = Vec::with_capacity(max_k);
    for k in 1..=max_k {
        let mut s = 0.0;
        for i in 1..k.min(d + 1) {
            s += coeff[d - i] * p[k - i - 1];
        }
        if k <= d {
            s += k as f64 * coeff[d - k];
        }
        p.push(-s);
    }
    p
}

/// Max over k <= max_k of |p_k(exact) - Σ_i α_i^k| for the computed roots.
pub fn power_sum_check(system: &ReducedSystem, rootset: &RootSet, max_k: usize) -> f64 {
    let exact = power_sums_exact(system, max_k);
    let mut powers: Vec<Complex64> = vec![Complex64::ONE; rootset.len()];
    let mut worst = 0.0f64;
    for (k, &pk) in exact.iter().enumerate() {
        let _ = k;
        let mut sum = Complex64::ZERO;
        for (p, &r) in powers.iter_mut().zip(rootset.roots()) {
            *p *= r;
            sum += *p;
        }
        worst = worst.max((sum - Complex64::new(pk, 0.0)).norm());
    }
    worst
}

/// Greedy optimal matching distance between two complex multisets: pairs
/// off closest elements first and returns the largest matched distance.
/// Exact whenever the perturbation is small against the separation, which
/// is the regime all the oracle comparisons run in. Infinite if the sizes
/// differ.
pub fn matching_distance(xs: &[Complex64], ys: &[Complex64]) -> f64 {
    if xs.len() != ys.len() {
        return f64::INFINITY;
    }
    let m = xs.len();
    if m == 0 {
        return 0.0;
    }
    let mut pairs: Vec<(f64, usize, usize)> = Vec::with_capacity(m * m);
    for (i, &x) in xs.iter().enumerate() {
        for (j, &y) in ys.iter().enumerate() {
            pairs.push(((x - y).norm(), i, j));
        }
    }
    pairs.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)).then(a.2.cmp(&b.2)));
    let mut used_x = vec![false; m];
    let mut used_y = vec![false; m];
    let mut matched = 0;
    let mut worst = 0.0;
    for (dist, i, j) in pairs {
        if !used_x[i] && !used_y[j] {
            used_x[i] = true;
            used_y[j] = true;
            worst = dist;
            matched += 1;
            if matched == m {
                break;
            }
        }
    }
    worst
}

pub(crate) fn lex_cmp(a: Complex64, b: Complex64) -> Ordering {
    a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::BundleInstance;
    use crate::reduction::reduce;

    fn system(n: u32, a: u32) -> ReducedSystem {
        reduce(&BundleInstance::new(n, a).unwrap()).unwrap()
    }

    #[test]
    fn positive_root_bracket_signs() {
        let sys = system(16, 3);
        // h(0) - 1 = -1 and h(1) - 1 = a.
        assert_eq!(sys.h_minus_1_real(0.0), -1.0);
        assert_eq!(sys.h_minus_1_real(1.0), 3.0);
        let ap = positive_root(&sys, 1e-14);
        assert!(ap.value > 0.0 && ap.value < 1.0);
        assert!(ap.residual < 1e-12, "residual {}", ap.residual);
        assert!(ap.bracket_width <= 1e-14);
        // Frozen from an independent bisection.
        assert!((ap.value - 0.9403338546332298).abs() < 1e-10);
    }

    #[test]
    fn positive_root_below_one_minus_inv_n_for_larger_n() {
        use crate::reduction::constraint_system;
        for n in [21u32, 30, 100, 500] {
            let inst = BundleInstance::new_fano_only(n, 3).unwrap();
            let sys = constraint_system(&inst).unwrap();
            let ap = positive_root(&sys, 1e-14);
            assert!(ap.value < 1.0 - 1.0 / f64::from(n), "n={n}");
        }
    }

    #[test]
    fn find_roots_n16_a3() {
        let sys = system(16, 3);
        let set = find_roots(&sys, Precision::Auto, 1e-10).unwrap();
        assert_eq!(set.len(), 34);
        for (&z, &r) in set.roots().iter().zip(set.residuals()) {
            let scale = z.norm().max(1.0).powi(34);
            assert!(r <= 1e-10 * scale, "residual {r} at {z}");
        }
        assert!(set.conjugation_defect() < 1e-8);
        // 20 and 34 are even, so h(-t) = h(t) and the real roots are
        // exactly the pair ±a₊.
        let reals = set.real_roots();
        assert_eq!(reals.len(), 2);
        let ap = positive_root(&sys, 1e-14).value;
        let mut sorted = reals.clone();
        sorted.sort_by(f64::total_cmp);
        assert!((sorted[0] + ap).abs() < 1e-9);
        assert!((sorted[1] - ap).abs() < 1e-9);
        assert!(set.near_multiple_pairs(NEAR_MULTIPLE_TOL).is_empty());
    }

    #[test]
    fn find_roots_matches_companion_oracle() {
        for (n, a) in [(3u32, 3u32), (16, 3), (10, 7)] {
            let sys = system(n, a);
            let aberth = find_roots(&sys, Precision::Auto, 1e-10).unwrap();
            let comp = companion_roots(&sys).unwrap();
            assert_eq!(comp.method(), RootMethod::CompanionMatrix);
            let dist = matching_distance(aberth.roots(), comp.roots());
            assert!(dist < 1e-8, "(n={n}, a={a}) matching distance {dist}");
        }
    }

    #[test]
    fn companion_vieta_identities() {
        // a < n: the t^{2n+1} coefficient vanishes, so the trace is 0.
        let sys = system(4, 3);
        let set = companion_roots(&sys).unwrap();
        let sum: Complex64 = set.roots().iter().sum();
        assert!(sum.norm() < 1e-9, "trace defect {sum}");
        let prod: Complex64 = set.roots().iter().product();
        assert!((prod - Complex64::new(-1.0, 0.0)).norm() < 1e-8, "det defect {prod}");
        // a = n: n+a+1 = 2n+1, so the trace is -a instead.
        let sys = system(3, 3);
        let set = companion_roots(&sys).unwrap();
        let sum: Complex64 = set.roots().iter().sum();
        assert!((sum - Complex64::new(-3.0, 0.0)).norm() < 1e-9, "trace defect {sum}");
    }

    #[test]
    fn companion_guard_at_large_degree() {
        let sys = system(120, 3);
        assert!(matches!(
            companion_roots(&sys),
            Err(Error::OracleGuard { .. })
        ));
    }

    #[test]
    fn exact_power_sums_n16() {
        let sys = system(16, 3);
        let p = power_sums_exact(&sys, 20);
        // Only the t^20 and t^0 coefficients are nonzero besides the top,
        // so p_k vanishes until k = 14 and p_14 = -14 * 3.
        for k in 1..=13 {
            assert_eq!(p[k - 1], 0.0, "p_{k}");
        }
        assert_eq!(p[13], -42.0);
        for k in 15..=19 {
            assert_eq!(p[k - 1], 0.0, "p_{k}");
        }
        // p_1 = 0 whenever a < n (the t^{2n+1} coefficient vanishes); at
        // a = n that coefficient is a itself and p_1 = -a.
        for (n, a) in [(4u32, 3u32), (10, 3), (16, 3)] {
            let p = power_sums_exact(&system(n, a), 1);
            assert_eq!(p[0], 0.0);
        }
        let p = power_sums_exact(&system(1, 1), 1);
        assert_eq!(p[0], -1.0);
    }

    #[test]
    fn power_sums_match_computed_roots() {
        let sys = system(16, 3);
        let set = find_roots(&sys, Precision::Auto, 1e-10).unwrap();
        let dev = power_sum_check(&sys, &set, 20);
        assert!(dev < 1e-7 * 34.0, "deviation {dev}");
        // Vieta on the computed set.
        let sum: Complex64 = set.roots().iter().sum();
        let prod: Complex64 = set.roots().iter().product();
        assert!(sum.norm() <= 1e-8 * 34.0);
        assert!((prod - Complex64::new(-1.0, 0.0)).norm() <= 1e-8 * 34.0);
    }

    #[test]
    fn reciprocal_power_sums() {
        let sys = system(16, 3);
        let set = find_roots(&sys, Precision::Auto, 1e-10).unwrap();
        let q = inverse_power_sums_exact(&sys, 17);
        let mut powers: Vec<Complex64> = set.roots().iter().map(|z| z.finv()).collect();
        let mut acc: Vec<Complex64> = vec![Complex64::ONE; set.len()];
        for (k, &qk) in q.iter().enumerate() {
            let _ = k;
            let mut s = Complex64::ZERO;
            for (acc_i, inv) in acc.iter_mut().zip(&mut powers) {
                *acc_i *= *inv;
                s += *acc_i;
            }
            assert!(
                (s - Complex64::new(qk, 0.0)).norm() < 1e-7 * 34.0,
                "q_{} mismatch: exact {qk}, roots {s}",
                k + 1
            );
        }
    }

    #[test]
    fn extended_precision_polish_and_double_mode() {
        let sys = system(16, 3);
        let dd = find_roots(&sys, Precision::Extended, 1e-10).unwrap();
        assert!(dd.escalated());
        let plain = find_roots(&sys, Precision::Double, 1e-10).unwrap();
        assert!(!plain.escalated());
        let dist = matching_distance(dd.roots(), plain.roots());
        assert!(dist < 1e-10, "polish moved roots by {dist}");
        // The double-double polish cannot worsen the worst relative residual.
        let worst = |s: &RootSet| {
            s.roots()
                .iter()
                .zip(s.residuals())
                .map(|(z, r)| r / z.norm().max(1.0).powi(34))
                .fold(0.0, f64::max)
        };
        assert!(worst(&dd) <= worst(&plain) + 1e-15);
    }

    #[test]
    fn large_degree_roots_converge() {
        // n = 199 is admissible (gcd(3, 200) = 1).
        let sys = system(199, 3);
        let set = find_roots(&sys, Precision::Auto, 1e-10).unwrap();
        assert_eq!(set.len(), 400);
        assert!(set.conjugation_defect() < 1e-8);
        assert_eq!(set.real_roots().len(), 2);
    }

    #[test]
    fn matching_distance_basics() {
        let a = [Complex64::new(1.0, 0.0), Complex64::new(2.0, 1.0)];
        let b = [Complex64::new(2.0, 1.0 + 1e-12), Complex64::new(1.0, 0.0)];
        assert!(matching_distance(&a, &b) < 1e-11);
        assert_eq!(matching_distance(&a, &b[..1]), f64::INFINITY);
    }
}
