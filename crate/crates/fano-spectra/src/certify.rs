//! Numeric certification of the root-localization statements: Rouché
//! margins on the three reference circles, the disc/annulus partition of
//! the root set, the positive-root bound a₊ < 1 - 1/n, the max-modulus
//! location on small circles, and the fixed inequality set tying the
//! annulus constants together.
//!
//! The asymptotic statements hold from some n onward with no effective
//! threshold given, so nothing here hard-codes a regime: each check is
//! evaluated at the concrete n and reported, and sweeps recover the
//! empirical thresholds.

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::reduction::ReducedSystem;
use crate::rootfinder::{PositiveRoot, RootSet};

/// Inner annulus constant r₁.
pub const R1: f64 = 0.96;
/// Outer annulus constant r₂.
pub const R2: f64 = 1.2;
/// Slack constant ε₀ appearing in the annulus inequalities.
pub const EPS0: f64 = 1e-3;

/// Tolerance band around the cut radii when classifying moduli.
pub const BOUNDARY_BAND: f64 = 1e-9;

/// Which of the two terms of h dominates on the circle.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CircleSplit {
    /// `|a t^{n+a+1}|` dominates `|t^{2n+2} - 1|`: certifies n+a+1 roots
    /// inside the circle.
    DominantSpike,
    /// `|t^{2n+2}|` dominates `|a t^{n+a+1} - 1|`: certifies all 2n+2
    /// roots inside the circle.
    DominantTop,
}

/// Worst-case Rouché margin on |t| = radius, as a function of the radius
/// alone. Positive certifies the corresponding root count.
pub fn rouche_margin(system: &ReducedSystem, radius: f64, split: CircleSplit) -> f64 {
    let n = system.instance().n() as i32;
    let a = system.instance().a() as i32;
    let spike = f64::from(a) * radius.powi(n + a + 1);
    let top = radius.powi(2 * n + 2);
    match split {
        CircleSplit::DominantSpike => spike - top - 1.0,
        CircleSplit::DominantTop => top - spike - 1.0,
    }
}

/// Region of a root modulus relative to the unit circle and the annulus
/// `[1 + r₁/n, 1 + r₂/n]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Region {
    #[serde(rename = "disc")]
    Disc,
    #[serde(rename = "annulus")]
    Annulus,
    #[serde(rename = "exterior")]
    Exterior,
}

/// Classifies a modulus; the flag marks boundary-ambiguous values (within
/// the band of a cut radius), which are counted toward the inner region.
pub fn classify_modulus(modulus: f64, n: u32) -> (Region, bool) {
    let lo = 1.0 + R1 / f64::from(n);
    let hi = 1.0 + R2 / f64::from(n);
    if modulus <= 1.0 + BOUNDARY_BAND {
        return (Region::Disc, (modulus - 1.0).abs() <= BOUNDARY_BAND);
    }
    if modulus >= lo - BOUNDARY_BAND && modulus <= hi + BOUNDARY_BAND {
        let flagged = (modulus - lo).abs() <= BOUNDARY_BAND || (modulus - hi).abs() <= BOUNDARY_BAND;
        return (Region::Annulus, flagged);
    }
    (Region::Exterior, false)
}

/// Per-instance localization certificate.
#[derive(Debug, Clone, Serialize)]
pub struct LocalizationCertificate {
    pub n: u32,
    pub a: u32,
    /// Whether gcd(a, n+1) = 1. Root localization holds either way; the
    /// critical values carry the eigenvalue interpretation only when true.
    pub coprime: bool,
    pub count_unit_disc: usize,
    pub count_annulus: usize,
    pub count_other: usize,
    pub boundary_flagged: usize,
    pub min_modulus_inner: f64,
    pub max_modulus: f64,
    pub annulus_bounds: (f64, f64),
    pub rouche_margin_unit: f64,
    pub rouche_margin_r1: f64,
    pub rouche_margin_r2: f64,
    pub a_plus: f64,
    pub aplus_bound_ok: bool,
    /// Witness h(1 - 1/n) - 1; positive implies the a₊ bound at this n.
    pub aplus_witness: f64,
    pub varep_ok: bool,
    /// Sup of |g(α)| over roots in the closed unit disc and the bound n+2.
    pub max_abs_value_disc: f64,
    /// Sup of |g(α)| over roots classified in the annulus.
    pub max_abs_value_annulus: f64,
    pub value_bound: f64,
    pub value_bound_disc_ok: bool,
    pub value_bound_annulus_ok: bool,
}

impl LocalizationCertificate {
    /// True when the Rouché margins certify the asymptotic partition at
    /// this n: unit margin positive, both annulus margins above ε₀.
    pub fn regime_certified(&self) -> bool {
        self.rouche_margin_unit > 0.0
            && self.rouche_margin_r1 > EPS0
            && self.rouche_margin_r2 > EPS0
    }

    /// Names of the checks that fail at this n. Empty means everything
    /// the asymptotic statements promise holds here.
    pub fn failing_checks(&self) -> Vec<String> {
        let mut fails = Vec::new();
        let n = self.n as usize;
        let a = self.a as usize;
        if self.rouche_margin_unit <= 0.0 {
            fails.push(format!("rouche-margin-unit {:.6} <= 0", self.rouche_margin_unit));
        }
        if self.rouche_margin_r1 <= EPS0 {
            fails.push(format!("rouche-margin-r1 {:.6} <= eps0", self.rouche_margin_r1));
        }
        if self.rouche_margin_r2 <= EPS0 {
            fails.push(format!("rouche-margin-r2 {:.6} <= eps0", self.rouche_margin_r2));
        }
        if self.count_unit_disc != n + a + 1 {
            fails.push(format!(
                "disc-count {} != {}",
                self.count_unit_disc,
                n + a + 1
            ));
        }
        if self.count_annulus != n + 1 - a {
            fails.push(format!(
                "annulus-count {} != {}",
                self.count_annulus,
                n + 1 - a
            ));
        }
        if self.count_other != 0 {
            fails.push(format!("other-count {} != 0", self.count_other));
        }
        if !self.aplus_bound_ok {
            fails.push(format!("aplus-bound a+ = {:.9} >= 1 - 1/n", self.a_plus));
        }
        if self.min_modulus_inner < self.a_plus - BOUNDARY_BAND {
            fails.push(format!(
                "inner-min-modulus {:.9} < a+ = {:.9}",
                self.min_modulus_inner, self.a_plus
            ));
        }
        if !self.varep_ok {
            fails.push("varep-inequalities".to_string());
        }
        if !self.value_bound_disc_ok {
            fails.push(format!(
                "disc-value-bound {:.6} >= {}",
                self.max_abs_value_disc, self.value_bound
            ));
        }
        if !self.value_bound_annulus_ok {
            fails.push(format!(
                "annulus-value-bound {:.6} >= {}",
                self.max_abs_value_annulus, self.value_bound
            ));
        }
        fails
    }
}

/// Partitions a complete root set by modulus and assembles the full
/// certificate for the instance.
pub fn partition_roots(
    rootset: &RootSet,
    system: &ReducedSystem,
    a_plus: &PositiveRoot,
) -> LocalizationCertificate {
    let inst = system.instance();
    let n = inst.n();
    let a = inst.a();
    let nf = f64::from(n);
    let bounds = (1.0 + R1 / nf, 1.0 + R2 / nf);

    let mut count_unit_disc = 0;
    let mut count_annulus = 0;
    let mut count_other = 0;
    let mut boundary_flagged = 0;
    let mut min_modulus_inner = f64::INFINITY;
    let mut max_modulus = 0.0f64;
    let mut max_abs_value_disc = 0.0f64;
    let mut max_abs_value_annulus = 0.0f64;

    for &root in rootset.roots() {
        let m = root.norm();
        max_modulus = max_modulus.max(m);
        let value = system.g_check().eval1(root).norm();
        let (region, flagged) = classify_modulus(m, n);
        if flagged {
            boundary_flagged += 1;
        }
        match region {
            Region::Disc => {
                count_unit_disc += 1;
                min_modulus_inner = min_modulus_inner.min(m);
                max_abs_value_disc = max_abs_value_disc.max(value);
            }
            Region::Annulus => {
                count_annulus += 1;
                max_abs_value_annulus = max_abs_value_annulus.max(value);
            }
            Region::Exterior => count_other += 1,
        }
    }

    let witness = system.h_minus_1_real(1.0 - 1.0 / nf);
    let value_bound = f64::from(inst.bound());
    LocalizationCertificate {
        n,
        a,
        coprime: inst.is_coprime(),
        count_unit_disc,
        count_annulus,
        count_other,
        boundary_flagged,
        min_modulus_inner,
        max_modulus,
        annulus_bounds: bounds,
        rouche_margin_unit: rouche_margin(system, 1.0, CircleSplit::DominantSpike),
        rouche_margin_r1: rouche_margin(system, bounds.0, CircleSplit::DominantSpike),
        rouche_margin_r2: rouche_margin(system, bounds.1, CircleSplit::DominantTop),
        a_plus: a_plus.value,
        aplus_bound_ok: a_plus.value < 1.0 - 1.0 / nf,
        aplus_witness: witness,
        varep_ok: check_varep_inequalities().all_positive(),
        max_abs_value_disc,
        max_abs_value_annulus,
        value_bound,
        value_bound_disc_ok: max_abs_value_disc < value_bound,
        value_bound_annulus_ok: max_abs_value_annulus < value_bound,
    }
}

/// Outcome of the a₊ bound check at one n.
#[derive(Debug, Clone, Copy)]
pub struct AplusBound {
    pub holds: bool,
    /// h(1 - 1/n) - 1; positive implies the bound by monotonicity of h.
    pub witness: f64,
}

pub fn check_aplus_bound(system: &ReducedSystem, a_plus: &PositiveRoot) -> AplusBound {
    let n = f64::from(system.instance().n());
    AplusBound {
        holds: a_plus.value < 1.0 - 1.0 / n,
        witness: system.h_minus_1_real(1.0 - 1.0 / n),
    }
}

/// The four fixed numeric inequalities (constants r₁, r₂, ε₀, twist 3)
/// used by the annulus analysis; each margin must be positive.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct VarepMargins {
    /// 3 e^{r₁} - e^{2 r₁} - 1 - ε₀
    pub lower_circle: f64,
    /// e^{2 r₂} - 3 e^{r₂} - 1 - ε₀
    pub upper_circle: f64,
    /// e⁴ - 2ε₀ - (3 - e^{-r₁})³ e^{2 e^{-r₁} + ε₀}
    pub growth_r1: f64,
    /// e⁴ - 2ε₀ - (3 - e^{-r₂})³ e^{2 e^{-r₂} + ε₀}
    pub growth_r2: f64,
}

impl VarepMargins {
    pub fn all_positive(&self) -> bool {
        self.lower_circle > 0.0
            && self.upper_circle > 0.0
            && self.growth_r1 > 0.0
            && self.growth_r2 > 0.0
    }

    pub fn as_array(&self) -> [f64; 4] {
        [
            self.lower_circle,
            self.upper_circle,
            self.growth_r1,
            self.growth_r2,
        ]
    }
}

pub fn check_varep_inequalities() -> VarepMargins {
    let growth = |r: f64| {
        let inv = (-r).exp();
        (4.0f64).exp() - 2.0 * EPS0 - (3.0 - inv).powi(3) * (2.0 * inv + EPS0).exp()
    };
    VarepMargins {
        lower_circle: 3.0 * R1.exp() - (2.0 * R1).exp() - 1.0 - EPS0,
        upper_circle: (2.0 * R2).exp() - 3.0 * R2.exp() - 1.0 - EPS0,
        growth_r1: growth(R1),
        growth_r2: growth(R2),
    }
}

/// Checks by sampling that `|(3 - z)^3 ((n-2)/n + 2z/n)^{n-2}|` on the
/// circle |z| = r is maximized at z = r, and that the sampled modulus is
/// monotone in Re(z). Valid for 0 < r < 1/2 and n > 10.
pub fn check_max_on_circle(n: u32, r: f64, samples: usize) -> Result<bool> {
    if !(r > 0.0 && r < 0.5) || n <= 10 {
        return Err(Error::OutOfRange(format!(
            "max-on-circle check requires 0 < r < 1/2 and n > 10, got n={n}, r={r}"
        )));
    }
    if samples < 8 {
        return Err(Error::OutOfRange("need at least 8 samples".into()));
    }
    let nf = f64::from(n);
    let modulus = |z: Complex64| {
        let base = Complex64::new((nf - 2.0) / nf, 0.0) + 2.0 * z / nf;
        ((Complex64::new(3.0, 0.0) - z).powu(3) * base.powu(n - 2)).norm()
    };
    let mut vals = Vec::with_capacity(samples);
    let mut points = Vec::with_capacity(samples);
    for k in 0..samples {
        let theta = std::f64::consts::TAU * k as f64 / samples as f64;
        let z = Complex64::from_polar(r, theta);
        points.push(z);
        vals.push(modulus(z));
    }
    let (argmax, &max_val) = vals
        .iter()
        .enumerate()
        .max_by(|a, b| a.1.total_cmp(b.1))
        .expect("nonempty samples");
    // The maximum must land at z = r (sample 0) up to one angular step.
    let near_zero_angle = argmax <= 1 || argmax >= samples - 1;
    let dominated = max_val <= vals[0] + 1e-12;
    // Stronger diagnostic: the modulus should increase with s = Re(z).
    let mut by_s: Vec<(f64, f64)> = points
        .iter()
        .zip(&vals)
        .map(|(z, &v)| (z.re, v))
        .collect();
    by_s.sort_by(|a, b| a.0.total_cmp(&b.0));
    let monotone = by_s
        .windows(2)
        .all(|w| w[1].1 >= w[0].1 - 1e-9 * (1.0 + w[0].1));
    Ok(near_zero_angle && dominated && monotone)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::BundleInstance;
    use crate::reduction::constraint_system;
    use crate::rootfinder::{find_roots, positive_root, Precision};

    // Localization is a statement about h - 1 alone, so these tests run on
    // constraint systems, which also cover gcd(a, n+1) > 1 instances.
    fn system(n: u32, a: u32) -> ReducedSystem {
        constraint_system(&BundleInstance::new_fano_only(n, a).unwrap()).unwrap()
    }

    #[test]
    fn unit_circle_margin_is_exact() {
        // On |t| = 1 with a = 3: 3 - 1 - 1 = 1, independent of n.
        for n in [4u32, 16, 100, 200, 500] {
            let sys = system(n, 3);
            let m = rouche_margin(&sys, 1.0, CircleSplit::DominantSpike);
            assert!((m - 1.0).abs() < 1e-12, "n={n}: {m}");
        }
    }

    #[test]
    fn annulus_margins_across_the_regime() {
        // r1 margin is comfortably positive already at n = 200; the r2
        // margin only turns positive near n ≈ 481 and exceeds ε₀ from
        // n ≈ 490 (computed; the asymptotic threshold is not effective).
        let sys = system(200, 3);
        let m1 = rouche_margin(&sys, 1.0 + R1 / 200.0, CircleSplit::DominantSpike);
        assert!(m1 > EPS0, "r1 margin {m1}");
        let m2 = rouche_margin(&sys, 1.0 + R2 / 200.0, CircleSplit::DominantTop);
        assert!(m2 < 0.0, "r2 margin at n=200 is negative, got {m2}");

        let sys = system(490, 3);
        let m2 = rouche_margin(&sys, 1.0 + R2 / 490.0, CircleSplit::DominantTop);
        assert!(m2 > EPS0, "r2 margin at n=490: {m2}");
        let sys = system(500, 3);
        let m2 = rouche_margin(&sys, 1.0 + R2 / 500.0, CircleSplit::DominantTop);
        assert!(m2 > EPS0, "r2 margin at n=500: {m2}");
    }

    #[test]
    fn partition_n16() {
        let sys = system(16, 3);
        let roots = find_roots(&sys, Precision::Auto, 1e-10).unwrap();
        let ap = positive_root(&sys, 1e-14);
        let cert = partition_roots(&roots, &sys, &ap);
        // Computed ground truth at n = 16: the unit-circle count n+4 = 20
        // is certified (margin 1), but all 14 exterior roots sit just
        // outside 1 + r₂/16, so none land in the asymptotic annulus.
        assert_eq!(cert.count_unit_disc, 20);
        assert_eq!(cert.count_annulus, 0);
        assert_eq!(cert.count_other, 14);
        assert_eq!(
            cert.count_unit_disc + cert.count_annulus + cert.count_other,
            34
        );
        assert!(cert.min_modulus_inner >= ap.value - BOUNDARY_BAND);
        assert!(!cert.aplus_bound_ok);
        assert!(cert.varep_ok);
        assert!(!cert.regime_certified());
        assert!(!cert.failing_checks().is_empty());
    }

    #[test]
    fn partition_n500_fully_certified() {
        let sys = system(500, 3);
        let roots = find_roots(&sys, Precision::Auto, 1e-10).unwrap();
        let ap = positive_root(&sys, 1e-14);
        let cert = partition_roots(&roots, &sys, &ap);
        assert_eq!(cert.count_unit_disc, 504);
        assert_eq!(cert.count_annulus, 498);
        assert_eq!(cert.count_other, 0);
        assert!(cert.regime_certified());
        assert!(cert.aplus_bound_ok);
        assert!(cert.value_bound_disc_ok);
        assert!(cert.value_bound_annulus_ok);
        assert!(cert.failing_checks().is_empty(), "{:?}", cert.failing_checks());
    }

    #[test]
    fn aplus_bound_threshold() {
        // First n at which a₊ < 1 - 1/n (computed: 21 for a = 3).
        let sys = system(19, 3);
        let ap = positive_root(&sys, 1e-14);
        assert!(!check_aplus_bound(&sys, &ap).holds);
        let sys = system(21, 3);
        let ap = positive_root(&sys, 1e-14);
        let chk = check_aplus_bound(&sys, &ap);
        assert!(chk.holds);
        assert!(chk.witness > 0.0);
    }

    #[test]
    fn aplus_witness_tends_to_limit() {
        // h(1 - 1/n) -> 1/e² + 3/e ≈ 1.2388 as n grows, so the witness
        // h(1 - 1/n) - 1 approaches 0.2388 from below.
        let n = 5000.0f64;
        let x: f64 = 1.0 - 1.0 / n;
        let w = x.powi(2 * 5000 + 2) + 3.0 * x.powi(5000 + 4) - 1.0;
        let limit = (-2.0f64).exp() + 3.0 * (-1.0f64).exp() - 1.0;
        assert!((w - limit).abs() < 2e-3, "witness {w} vs limit {limit}");
    }

    #[test]
    fn varep_margins_are_fixed_positive_facts() {
        let m = check_varep_inequalities();
        assert!(m.all_positive());
        // Frozen from direct evaluation.
        assert!((m.lower_circle - 0.013130950978604).abs() < 1e-9);
        assert!((m.upper_circle - 0.061825612431959).abs() < 1e-9);
        assert!((m.growth_r1 - 16.006101611222).abs() < 1e-6);
        assert!((m.growth_r2 - 18.657383981537).abs() < 1e-6);
    }

    #[test]
    fn max_on_circle_examples() {
        assert!(check_max_on_circle(50, 0.3, 720).unwrap());
        assert!(check_max_on_circle(11, 0.49, 720).unwrap());
        assert!(matches!(
            check_max_on_circle(50, 0.6, 720),
            Err(Error::OutOfRange(_))
        ));
        assert!(matches!(
            check_max_on_circle(10, 0.3, 720),
            Err(Error::OutOfRange(_))
        ));
    }

    #[test]
    fn classify_boundary_band() {
        let (region, flagged) = classify_modulus(1.0, 16);
        assert_eq!(region, Region::Disc);
        assert!(flagged);
        let (region, flagged) = classify_modulus(1.0 + R1 / 16.0, 16);
        assert_eq!(region, Region::Annulus);
        assert!(flagged);
        let (region, _) = classify_modulus(0.95, 16);
        assert_eq!(region, Region::Disc);
        let (region, _) = classify_modulus(2.0, 16);
        assert_eq!(region, Region::Exterior);
    }
}
