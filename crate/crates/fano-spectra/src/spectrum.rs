//! Critical values, spectral radius, and conjecture verdicts.
//!
//! The eigenvalues of quantum multiplication by c₁ (quantum parameters at
//! one) are the critical values of the superpotential, i.e. g(α) over the
//! roots α of h - 1. Values are evaluated through ǧ, whose exponents are
//! all positive — near the unit circle this avoids the cancellation
//! between t^{n+1} and t^{-(n+1)} that the raw g form would incur — and g
//! and g̃ are evaluated alongside as cross-checks.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::model::BundleInstance;
use crate::reduction::ReducedSystem;
use crate::rootfinder::{lex_cmp, RootMethod, RootSet};

/// A conjecture verdict flips only on a margin exceeding this fraction of
/// the bound; anything closer is reported as inconclusive.
pub const VERDICT_REL_TOL: f64 = 1e-6;

/// Critical values g(α) per root, in root order, together with the worst
/// normalized three-way identity deviation encountered.
pub fn critical_values(system: &ReducedSystem, rootset: &RootSet) -> (Vec<Complex64>, f64) {
    let mut values = Vec::with_capacity(rootset.len());
    let mut worst = 0.0f64;
    for &root in rootset.roots() {
        let v_check = system.g_check().eval1(root);
        let v_g = system.g().eval1(root);
        let v_tilde = system.g_tilde().eval1(root);
        let dev = (v_check - v_g).norm().max((v_check - v_tilde).norm());
        worst = worst.max(dev / (1.0 + v_check.norm()));
        values.push(v_check);
    }
    (values, worst)
}

/// Max modulus over the eigenvalue list.
pub fn spectral_radius(values: &[Complex64]) -> Result<f64> {
    if values.is_empty() {
        return Err(Error::EmptyInput("eigenvalue list"));
    }
    Ok(values.iter().map(|v| v.norm()).fold(0.0, f64::max))
}

/// The per-instance spectrum report.
#[derive(Debug, Clone)]
pub struct SpectrumReport {
    pub instance: BundleInstance,
    /// The multiset {g(α)}, sorted lexicographically by (re, im).
    pub eigenvalues: Vec<Complex64>,
    pub rho: f64,
    /// The conjectured lower bound dim X + 1 = n + 2.
    pub bound: f64,
    pub galkin_holds: bool,
    /// rho - (n + 2).
    pub galkin_margin: f64,
    /// Whether some real positive eigenvalue attains the spectral radius.
    pub conjecture_o_part1: bool,
    /// Eigenvalues with |λ| within tolerance of rho.
    pub max_modulus_eigenvalues: Vec<Complex64>,
    /// Count of eigenvalues at max modulus (descriptive; multiplicity
    /// statements beyond part 1 get no verdict).
    pub rho_multiplicity: usize,
    /// Worst normalized deviation among the three critical-value forms.
    pub identity_deviation: f64,
    pub root_method: RootMethod,
    pub warnings: Vec<String>,
}

/// Builds the verdicts from an eigenvalue list.
///
/// `tol` controls the numerical comparisons (which eigenvalues count as
/// attaining rho, and what counts as real); the Galkin verdict uses the
/// dedicated relative band so that rho near n+2 is never decided by
/// rounding.
pub fn verdicts(
    instance: &BundleInstance,
    values: &[Complex64],
    tol: f64,
    identity_deviation: f64,
    root_method: RootMethod,
) -> Result<SpectrumReport> {
    let rho = spectral_radius(values)?;
    let bound = f64::from(instance.bound());
    let verdict_band = VERDICT_REL_TOL * bound;
    let galkin_margin = rho - bound;
    let galkin_holds = rho >= bound - verdict_band;

    let mut warnings = Vec::new();
    if galkin_margin.abs() < verdict_band {
        warnings.push(format!(
            "galkin margin {galkin_margin:.3e} inside the verdict band {verdict_band:.3e}; verdict inconclusive"
        ));
    }

    let attain_tol = tol * (1.0 + rho);
    let mut max_modulus_eigenvalues: Vec<Complex64> = values
        .iter()
        .copied()
        .filter(|v| v.norm() >= rho - attain_tol)
        .collect();
    max_modulus_eigenvalues.sort_by(|x, y| lex_cmp(*x, *y));
    let rho_multiplicity = max_modulus_eigenvalues.len();
    let conjecture_o_part1 = max_modulus_eigenvalues
        .iter()
        .any(|v| v.im.abs() <= attain_tol && v.re > 0.0);

    let mut eigenvalues = values.to_vec();
    eigenvalues.sort_by(|x, y| lex_cmp(*x, *y));

    Ok(SpectrumReport {
        instance: *instance,
        eigenvalues,
        rho,
        bound,
        galkin_holds,
        galkin_margin,
        conjecture_o_part1,
        max_modulus_eigenvalues,
        rho_multiplicity,
        identity_deviation,
        root_method,
        warnings,
    })
}

/// Full spectrum analysis of a solved root set.
pub fn analyze(system: &ReducedSystem, rootset: &RootSet, tol: f64) -> Result<SpectrumReport> {
    let (values, identity_deviation) = critical_values(system, rootset);
    let mut report = verdicts(
        system.instance(),
        &values,
        tol,
        identity_deviation,
        rootset.method(),
    )?;
    let near = rootset.near_multiple_pairs(crate::rootfinder::NEAR_MULTIPLE_TOL);
    if !near.is_empty() {
        report.warnings.push(format!(
            "{} near-multiple root pair(s) detected; eigenvalue multiplicities may be unreliable",
            near.len()
        ));
    }
    if rootset.escalated() {
        report
            .warnings
            .push("extended-precision polish was applied".to_string());
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::reduction::reduce;
    use crate::rootfinder::{
        companion_roots, find_roots, matching_distance, sum_critical_values_exact, Precision,
    };

    fn report(n: u32, a: u32) -> SpectrumReport {
        let sys = reduce(&BundleInstance::new(n, a).unwrap()).unwrap();
        let roots = find_roots(&sys, Precision::Auto, 1e-10).unwrap();
        analyze(&sys, &roots, 1e-10).unwrap()
    }

    #[test]
    fn spectral_radius_basics() {
        assert!(matches!(spectral_radius(&[]), Err(Error::EmptyInput(_))));
        let rho = spectral_radius(&[Complex64::new(-5.0, 0.0)]).unwrap();
        assert_eq!(rho, 5.0);
    }

    #[test]
    fn eigenvalue_count_is_cohomology_dimension() {
        let r = report(16, 3);
        assert_eq!(r.eigenvalues.len(), 34);
        assert_eq!(r.eigenvalues.len(), r.instance.eigenvalue_count());
    }

    #[test]
    fn n16_a3_is_the_counterexample() {
        let r = report(16, 3);
        // Frozen from the companion-matrix oracle: rho ≈ 17.992193195.
        assert!((r.rho - 17.99219319509892).abs() < 1e-6);
        assert!(r.rho < 18.0);
        assert!(!r.galkin_holds);
        assert!(r.galkin_margin < -VERDICT_REL_TOL * 18.0);
        // No real positive eigenvalue attains rho: the max-modulus set is
        // a complex-conjugate pair.
        assert!(!r.conjecture_o_part1);
        assert_eq!(r.rho_multiplicity, 2);
        assert!(r.warnings.is_empty(), "{:?}", r.warnings);
        assert!(r.identity_deviation < 1e-9);
    }

    #[test]
    fn below_the_counterexample_galkin_holds() {
        let r = report(13, 3);
        assert!(r.rho >= 15.0);
        assert!(r.galkin_holds);
        let r = report(10, 2);
        assert!(r.galkin_holds);
    }

    #[test]
    fn positive_real_value_at_positive_root() {
        // g(a₊) is real and positive: a₊ is real positive and g has
        // nonnegative real coefficients.
        let sys = reduce(&BundleInstance::new(16, 3).unwrap()).unwrap();
        let ap = crate::rootfinder::positive_root(&sys, 1e-14);
        let v = sys.g().eval1(Complex64::new(ap.value, 0.0));
        assert!(v.im.abs() < 1e-12);
        assert!(v.re > 0.0);
    }

    #[test]
    fn conjugation_symmetry_of_eigenvalues() {
        let r = report(12, 5);
        for v in &r.eigenvalues {
            let c = v.conj();
            let ok = r
                .eigenvalues
                .iter()
                .any(|w| (w - c).norm() <= 1e-8 * (1.0 + c.norm()));
            assert!(ok, "missing conjugate of {v}");
        }
        let sum: Complex64 = r.eigenvalues.iter().sum();
        assert!(sum.im.abs() <= 1e-7 * r.eigenvalues.len() as f64);
    }

    #[test]
    fn eigenvalue_sum_matches_exact_power_sums() {
        for (n, a) in [(16u32, 3u32), (10, 3), (12, 5)] {
            let sys = reduce(&BundleInstance::new(n, a).unwrap()).unwrap();
            let roots = find_roots(&sys, Precision::Auto, 1e-10).unwrap();
            let (values, _) = critical_values(&sys, &roots);
            let sum: Complex64 = values.iter().sum();
            let exact = sum_critical_values_exact(&sys);
            assert!(
                (sum - Complex64::new(exact, 0.0)).norm() < 1e-6,
                "(n={n}, a={a}): sum {sum} vs exact {exact}"
            );
        }
    }

    #[test]
    fn method_agreement_on_rho_and_values() {
        let sys = reduce(&BundleInstance::new(16, 3).unwrap()).unwrap();
        let aberth = find_roots(&sys, Precision::Auto, 1e-10).unwrap();
        let comp = companion_roots(&sys).unwrap();
        let ra = analyze(&sys, &aberth, 1e-10).unwrap();
        let rc = analyze(&sys, &comp, 1e-10).unwrap();
        assert!((ra.rho - rc.rho).abs() <= 1e-8 * ra.rho);
        let dist = matching_distance(&ra.eigenvalues, &rc.eigenvalues);
        assert!(dist <= 1e-7, "eigenvalue matching distance {dist}");
    }

    #[test]
    fn rho_is_order_invariant() {
        let r = report(7, 3);
        let mut reversed = r.eigenvalues.clone();
        reversed.reverse();
        assert_eq!(spectral_radius(&reversed).unwrap(), r.rho);
    }
}
