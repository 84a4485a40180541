//! Bundle instances, toric ray generators, the mirror superpotential, and
//! a direct multivariate critical-point solver used as an oracle at small n.

use std::cmp::Ordering;
use std::collections::BTreeMap;

use ndarray::{Array1, Array2};
use ndarray_linalg::Solve;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};

/// Dimension guard for the direct multivariate solver.
pub const ORACLE_MAX_N: usize = 8;

/// Residual below which a Newton iterate is accepted as a critical point.
pub const ORACLE_ACCEPT_RESIDUAL: f64 = 1e-10;

/// Relative clustering tolerance used to deduplicate critical points.
pub const ORACLE_DEDUP_TOL: f64 = 1e-6;

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// The pair (n, a) selecting `X = P_{P^n}(O ⊕ O(a))`.
///
/// `dim X = n + 1`; the conjectured lower bound for the spectral radius is
/// `dim X + 1 = n + 2`. Instances with `a >= 1` must satisfy
/// `gcd(a, n+1) = 1`; the reducible case is rejected at construction.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BundleInstance {
    n: u32,
    a: u32,
}

impl BundleInstance {
    pub fn new(n: u32, a: u32) -> Result<Self> {
        let inst = Self::new_fano_only(n, a)?;
        if a >= 1 && !inst.is_coprime() {
            let g = gcd(a as u64, (n + 1) as u64) as u32;
            return Err(Error::Coprimality { n, a, m: n + 1, g });
        }
        Ok(inst)
    }

    /// Validates only the Fano range. Instances with gcd(a, n+1) > 1 carry
    /// no eigenvalue interpretation through the univariate reduction (the
    /// parameterizing curve is reducible), but the constraint polynomial
    /// and its root localization are still well defined; the certification
    /// path accepts them.
    pub fn new_fano_only(n: u32, a: u32) -> Result<Self> {
        if n < 1 || a > n {
            return Err(Error::FanoRange { n, a });
        }
        Ok(Self { n, a })
    }

    /// Whether the parameterization `(x, y) = (t^a, t^{n+1})` is a
    /// bijection, i.e. a >= 1 and gcd(a, n+1) = 1.
    pub fn is_coprime(&self) -> bool {
        self.a >= 1 && gcd(self.a as u64, (self.n + 1) as u64) == 1
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn a(&self) -> u32 {
        self.a
    }

    /// Complex dimension of X.
    pub fn dim_x(&self) -> u32 {
        self.n + 1
    }

    /// The conjectured lower bound `dim X + 1`.
    pub fn bound(&self) -> u32 {
        self.n + 2
    }

    /// Degree of the reduced constraint polynomial, `2n + 2`; equals the
    /// dimension of the even cohomology and hence the eigenvalue count.
    pub fn eigenvalue_count(&self) -> usize {
        2 * self.n as usize + 2
    }
}

/// A primitive lattice vector (ray generator) in Z^{n+1}.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LatticeVector {
    coords: Vec<i64>,
}

impl LatticeVector {
    pub fn new(coords: Vec<i64>) -> Self {
        Self { coords }
    }

    pub fn coords(&self) -> &[i64] {
        &self.coords
    }

    pub fn arity(&self) -> usize {
        self.coords.len()
    }

    /// gcd of the entries is 1 (and the vector is nonzero).
    pub fn is_primitive(&self) -> bool {
        let g = self
            .coords
            .iter()
            .fold(0u64, |acc, &c| gcd(acc, c.unsigned_abs()));
        g == 1
    }
}

/// Sparse Laurent polynomial: a map from integer exponent vectors to
/// complex coefficients. Zero coefficients are never stored.
#[derive(Debug, Clone, PartialEq)]
pub struct LaurentPolynomial {
    arity: usize,
    terms: BTreeMap<Vec<i64>, Complex64>,
}

impl LaurentPolynomial {
    pub fn new(arity: usize) -> Self {
        Self {
            arity,
            terms: BTreeMap::new(),
        }
    }

    pub fn from_terms<I>(arity: usize, terms: I) -> Self
    where
        I: IntoIterator<Item = (Vec<i64>, Complex64)>,
    {
        let mut poly = Self::new(arity);
        for (exps, coeff) in terms {
            poly.add_term(&exps, coeff);
        }
        poly
    }

    /// Univariate constructor from (exponent, real coefficient) pairs.
    pub fn univariate<I>(terms: I) -> Self
    where
        I: IntoIterator<Item = (i64, f64)>,
    {
        Self::from_terms(
            1,
            terms
                .into_iter()
                .map(|(e, c)| (vec![e], Complex64::new(c, 0.0))),
        )
    }

    /// Adds `coeff * x^exps`, merging with an existing term and dropping
    /// the entry if the sum cancels exactly.
    pub fn add_term(&mut self, exps: &[i64], coeff: Complex64) {
        assert_eq!(exps.len(), self.arity, "exponent arity mismatch");
        if coeff == Complex64::ZERO {
            return;
        }
        let entry = self.terms.entry(exps.to_vec()).or_insert(Complex64::ZERO);
        *entry += coeff;
        if *entry == Complex64::ZERO {
            self.terms.remove(exps);
        }
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[i64], Complex64)> {
        self.terms.iter().map(|(e, &c)| (e.as_slice(), c))
    }

    pub fn coefficient(&self, exps: &[i64]) -> Complex64 {
        self.terms.get(exps).copied().unwrap_or(Complex64::ZERO)
    }

    pub fn has_real_coefficients(&self) -> bool {
        self.terms.values().all(|c| c.im == 0.0)
    }

    /// Evaluates at a point; every coordinate must be nonzero when negative
    /// exponents occur (checked by the public entry points, not here).
    pub fn eval(&self, point: &[Complex64]) -> Complex64 {
        assert_eq!(point.len(), self.arity, "evaluation arity mismatch");
        let mut acc = Complex64::ZERO;
        for (exps, coeff) in self.terms.iter() {
            acc += coeff * monomial(exps, point);
        }
        acc
    }

    /// Univariate evaluation.
    pub fn eval1(&self, t: Complex64) -> Complex64 {
        debug_assert_eq!(self.arity, 1);
        let mut acc = Complex64::ZERO;
        for (exps, coeff) in self.terms.iter() {
            acc += coeff * t.powi(exps[0] as i32);
        }
        acc
    }

    /// Univariate derivative d/dt.
    pub fn derivative1(&self) -> LaurentPolynomial {
        debug_assert_eq!(self.arity, 1);
        let mut out = LaurentPolynomial::new(1);
        for (exps, coeff) in self.terms.iter() {
            let e = exps[0];
            if e != 0 {
                out.add_term(&[e - 1], coeff * Complex64::new(e as f64, 0.0));
            }
        }
        out
    }

    /// (min, max) exponent of a univariate polynomial.
    pub fn exponent_range(&self) -> Option<(i64, i64)> {
        debug_assert_eq!(self.arity, 1);
        let mut it = self.terms.keys().map(|e| e[0]);
        let first = it.next()?;
        let mut min = first;
        let mut max = first;
        for e in it {
            min = min.min(e);
            max = max.max(e);
        }
        Some((min, max))
    }
}

fn monomial(exps: &[i64], point: &[Complex64]) -> Complex64 {
    let mut m = Complex64::ONE;
    for (e, x) in exps.iter().zip(point) {
        if *e != 0 {
            m *= x.powi(*e as i32);
        }
    }
    m
}

/// A critical point of the superpotential, with its value and the
/// max-norm of the logarithmic gradient at the point.
#[derive(Debug, Clone)]
pub struct CriticalPoint {
    pub coords: Vec<Complex64>,
    pub value: Complex64,
    pub residual: f64,
}

/// Ray generators of the fan of `P_{P^n}(O ⊕ O(a))`: the n+1 standard
/// basis vectors, then `-e_1 - ... - e_n + a e_{n+1}`, then `-e_{n+1}`.
pub fn build_ray_generators(instance: &BundleInstance) -> Vec<LatticeVector> {
    let n = instance.n() as usize;
    let k = n + 1;
    let mut rays = Vec::with_capacity(n + 3);
    for i in 0..k {
        let mut v = vec![0i64; k];
        v[i] = 1;
        rays.push(LatticeVector::new(v));
    }
    let mut v = vec![-1i64; k];
    v[n] = instance.a() as i64;
    rays.push(LatticeVector::new(v));
    let mut v = vec![0i64; k];
    v[n] = -1;
    rays.push(LatticeVector::new(v));
    rays
}

/// The superpotential `f(x) = Σ_i x^{b_i}` over the given ray generators.
pub fn build_superpotential(rays: &[LatticeVector]) -> Result<LaurentPolynomial> {
    let first = rays.first().ok_or(Error::EmptyInput("ray list"))?;
    let arity = first.arity();
    let mut f = LaurentPolynomial::new(arity);
    for ray in rays {
        if ray.arity() != arity {
            return Err(Error::ArityMismatch {
                expected: arity,
                found: ray.arity(),
            });
        }
        f.add_term(ray.coords(), Complex64::ONE);
    }
    Ok(f)
}

/// Logarithmic gradient `(x_1 ∂f/∂x_1, ..., x_k ∂f/∂x_k)` at a point of
/// the algebraic torus. Vanishing of all components is equivalent to the
/// point being critical.
pub fn log_gradient(f: &LaurentPolynomial, point: &[Complex64]) -> Result<Vec<Complex64>> {
    if point.len() != f.arity() {
        return Err(Error::ArityMismatch {
            expected: f.arity(),
            found: point.len(),
        });
    }
    if point.iter().any(|x| *x == Complex64::ZERO) {
        return Err(Error::ZeroCoordinate);
    }
    let mut grad = vec![Complex64::ZERO; f.arity()];
    for (exps, coeff) in f.terms() {
        let m = coeff * monomial(exps, point);
        for (i, &e) in exps.iter().enumerate() {
            if e != 0 {
                grad[i] += Complex64::new(e as f64, 0.0) * m;
            }
        }
    }
    Ok(grad)
}

fn lex_cmp(a: Complex64, b: Complex64) -> Ordering {
    a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im))
}

fn coords_cmp(a: &[Complex64], b: &[Complex64]) -> Ordering {
    for (x, y) in a.iter().zip(b) {
        let c = lex_cmp(*x, *y);
        if c != Ordering::Equal {
            return c;
        }
    }
    Ordering::Equal
}

fn coords_close(a: &[Complex64], b: &[Complex64], tol: f64) -> bool {
    let scale = 1.0 + a.iter().map(|x| x.norm()).fold(0.0, f64::max);
    a.iter().zip(b).all(|(x, y)| (x - y).norm() <= tol * scale)
}

/// Finds critical points of the superpotential directly, by damped Newton
/// iteration on `u = log x` from seeded random starts.
///
/// Deterministic for a fixed seed. Deduplicated output, sorted
/// lexicographically by coordinates and closed under coordinate-wise
/// conjugation. The result may hold fewer than `2n + 2` points if the
/// budget runs out; it is an error only if nothing converged at all.
pub fn multivariate_critical_points(
    instance: &BundleInstance,
    seed: u64,
    budget: usize,
) -> Result<Vec<CriticalPoint>> {
    let n = instance.n() as usize;
    if n > ORACLE_MAX_N {
        return Err(Error::OracleGuard {
            n,
            limit: ORACLE_MAX_N,
        });
    }
    let expected = instance.eigenvalue_count();
    if budget < expected {
        return Err(Error::OutOfRange(format!(
            "budget {budget} below the expected point count {expected}"
        )));
    }

    let rays = build_ray_generators(instance);
    let f = build_superpotential(&rays)?;
    let k = n + 1;
    // Exponent matrix, rows = monomials.
    let exps: Vec<Vec<f64>> = rays
        .iter()
        .map(|r| r.coords().iter().map(|&e| e as f64).collect())
        .collect();

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut found: Vec<CriticalPoint> = Vec::new();

    for _ in 0..budget {
        // log r uniform in [-1, 1], phase uniform: starts cluster near the
        // unit torus, where the critical points of this family live.
        let u0: Vec<Complex64> = (0..k)
            .map(|_| {
                Complex64::new(
                    rng.gen_range(-1.0..1.0),
                    rng.gen_range(0.0..std::f64::consts::TAU),
                )
            })
            .collect();
        if let Some(u) = newton_log_space(&exps, u0) {
            let x: Vec<Complex64> = u.iter().map(|ui| ui.exp()).collect();
            let grad = log_gradient(&f, &x)?;
            let residual = grad.iter().map(|g| g.norm()).fold(0.0, f64::max);
            if residual > ORACLE_ACCEPT_RESIDUAL {
                continue;
            }
            let value = f.eval(&x);
            let conj_x: Vec<Complex64> = x.iter().map(|c| c.conj()).collect();
            let conj_value = value.conj();
            push_dedup(&mut found, x, value, residual);
            // f has real coefficients, so the conjugate point is critical
            // with the same residual; keep the set conjugation-closed.
            push_dedup(&mut found, conj_x, conj_value, residual);
            if found.len() >= expected {
                break;
            }
        }
    }

    if found.is_empty() {
        return Err(Error::BudgetExhausted { budget });
    }
    found.sort_by(|p, q| coords_cmp(&p.coords, &q.coords));
    Ok(found)
}

fn push_dedup(found: &mut Vec<CriticalPoint>, coords: Vec<Complex64>, value: Complex64, residual: f64) {
    if found
        .iter()
        .any(|p| coords_close(&p.coords, &coords, ORACLE_DEDUP_TOL))
    {
        return;
    }
    found.push(CriticalPoint {
        coords,
        value,
        residual,
    });
}

/// Damped Newton on `φ(u) = Σ_r e^{<b_r, u>}`; the gradient of φ equals the
/// logarithmic gradient of f at `x = exp(u)` and its Hessian is symmetric.
fn newton_log_space(exps: &[Vec<f64>], mut u: Vec<Complex64>) -> Option<Vec<Complex64>> {
    let k = u.len();
    let max_iter = 80;
    for _ in 0..max_iter {
        let (grad, norm) = phi_gradient(exps, &u)?;
        if norm < 1e-13 {
            return Some(u);
        }
        let mut hess = Array2::<Complex64>::zeros((k, k));
        for row in exps {
            let w = dot_exp(row, &u);
            for i in 0..k {
                if row[i] == 0.0 {
                    continue;
                }
                for j in 0..k {
                    if row[j] != 0.0 {
                        hess[(i, j)] += Complex64::new(row[i] * row[j], 0.0) * w;
                    }
                }
            }
        }
        let rhs = Array1::from_iter(grad.iter().map(|g| -g));
        let delta = hess.solve(&rhs).ok()?;
        // Halve the step until the gradient norm improves.
        let mut lambda = 1.0;
        let mut accepted = false;
        for _ in 0..30 {
            let trial: Vec<Complex64> = u
                .iter()
                .zip(delta.iter())
                .map(|(ui, di)| ui + lambda * di)
                .collect();
            if let Some((_, trial_norm)) = phi_gradient(exps, &trial) {
                if trial_norm < norm {
                    u = trial;
                    accepted = true;
                    break;
                }
            }
            lambda *= 0.5;
        }
        if !accepted {
            return None;
        }
    }
    None
}

fn dot_exp(row: &[f64], u: &[Complex64]) -> Complex64 {
    let mut s = Complex64::ZERO;
    for (b, ui) in row.iter().zip(u) {
        if *b != 0.0 {
            s += Complex64::new(*b, 0.0) * ui;
        }
    }
    s.exp()
}

fn phi_gradient(exps: &[Vec<f64>], u: &[Complex64]) -> Option<(Vec<Complex64>, f64)> {
    let k = u.len();
    let mut grad = vec![Complex64::ZERO; k];
    for row in exps {
        let w = dot_exp(row, u);
        if !w.re.is_finite() || !w.im.is_finite() {
            return None;
        }
        for i in 0..k {
            if row[i] != 0.0 {
                grad[i] += Complex64::new(row[i], 0.0) * w;
            }
        }
    }
    let norm = grad.iter().map(|g| g.norm()).fold(0.0, f64::max);
    if !norm.is_finite() {
        return None;
    }
    Some((grad, norm))
}
