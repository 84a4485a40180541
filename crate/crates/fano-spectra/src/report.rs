//! Machine-readable output: versioned JSON documents and CSV plot data.
//!
//! Every JSON document carries `"schema": "fano-spectra/1"`. Floats are
//! serialized with 17 significant digits in scientific notation so that
//! reports are byte-stable across runs and fully round-trippable; complex
//! numbers appear as `{re, im}` objects.

use std::io;

use num_complex::Complex64;
use serde::Serialize;

use crate::certify::{LocalizationCertificate, Region, VarepMargins};
use crate::cli::{OracleComparison, ScanResult};
use crate::rootfinder::RootMethod;
use crate::spectrum::SpectrumReport;

pub const SCHEMA: &str = "fano-spectra/1";

struct SciFloatFormatter;

impl serde_json::ser::Formatter for SciFloatFormatter {
    fn write_f64<W>(&mut self, writer: &mut W, value: f64) -> io::Result<()>
    where
        W: ?Sized + io::Write,
    {
        debug_assert!(value.is_finite(), "non-finite float in report");
        write!(writer, "{value:.16e}")
    }

    fn write_f32<W>(&mut self, writer: &mut W, value: f32) -> io::Result<()>
    where
        W: ?Sized + io::Write,
    {
        write!(writer, "{value:.8e}")
    }
}

/// Serializes any document with the fixed float format.
pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut out = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut out, SciFloatFormatter);
    value.serialize(&mut ser).expect("report serialization");
    String::from_utf8(out).expect("reports are UTF-8")
}

/// One float, formatted exactly as in the JSON documents.
pub fn fmt_f64(x: f64) -> String {
    format!("{x:.16e}")
}

#[derive(Debug, Clone, Copy, Serialize)]
pub struct CxDoc {
    pub re: f64,
    pub im: f64,
}

impl From<Complex64> for CxDoc {
    fn from(z: Complex64) -> Self {
        CxDoc { re: z.re, im: z.im }
    }
}

#[derive(Serialize)]
pub struct SpectrumDoc<'a> {
    pub schema: &'static str,
    pub kind: &'static str,
    pub n: u32,
    pub a: u32,
    pub dim_x: u32,
    pub bound: f64,
    pub rho: f64,
    pub galkin_holds: bool,
    pub galkin_margin: f64,
    pub conjecture_o_part1: bool,
    pub rho_multiplicity: usize,
    pub max_modulus_eigenvalues: Vec<CxDoc>,
    pub identity_deviation: f64,
    pub root_method: RootMethod,
    pub warnings: &'a [String],
    pub eigenvalues: Vec<CxDoc>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub oracle: Option<OracleComparison>,
}

pub fn spectrum_doc<'a>(
    report: &'a SpectrumReport,
    oracle: Option<OracleComparison>,
) -> SpectrumDoc<'a> {
    SpectrumDoc {
        schema: SCHEMA,
        kind: "spectrum",
        n: report.instance.n(),
        a: report.instance.a(),
        dim_x: report.instance.dim_x(),
        bound: report.bound,
        rho: report.rho,
        galkin_holds: report.galkin_holds,
        galkin_margin: report.galkin_margin,
        conjecture_o_part1: report.conjecture_o_part1,
        rho_multiplicity: report.rho_multiplicity,
        max_modulus_eigenvalues: report
            .max_modulus_eigenvalues
            .iter()
            .map(|&v| v.into())
            .collect(),
        identity_deviation: report.identity_deviation,
        root_method: report.root_method,
        warnings: &report.warnings,
        eigenvalues: report.eigenvalues.iter().map(|&v| v.into()).collect(),
        oracle,
    }
}

#[derive(Serialize)]
pub struct CertifyDoc<'a> {
    pub schema: &'static str,
    pub kind: &'static str,
    pub certificate: &'a LocalizationCertificate,
    pub varep: VarepMargins,
    pub failing_checks: Vec<String>,
    pub regime_certified: bool,
}

pub fn certify_doc(cert: &LocalizationCertificate, varep: VarepMargins) -> CertifyDoc<'_> {
    CertifyDoc {
        schema: SCHEMA,
        kind: "certificate",
        certificate: cert,
        varep,
        failing_checks: cert.failing_checks(),
        regime_certified: cert.regime_certified(),
    }
}

#[derive(Serialize)]
pub struct VarepDoc {
    pub schema: &'static str,
    pub kind: &'static str,
    pub margins: VarepMargins,
    pub all_positive: bool,
}

pub fn varep_doc(margins: VarepMargins) -> VarepDoc {
    VarepDoc {
        schema: SCHEMA,
        kind: "varep",
        margins,
        all_positive: margins.all_positive(),
    }
}

#[derive(Serialize)]
pub struct ScanDoc<'a> {
    pub schema: &'static str,
    pub kind: &'static str,
    #[serde(flatten)]
    pub scan: &'a ScanResult,
}

pub fn scan_doc(scan: &ScanResult) -> ScanDoc<'_> {
    ScanDoc {
        schema: SCHEMA,
        kind: "scan",
        scan,
    }
}

#[derive(Serialize)]
pub struct OracleDoc {
    pub schema: &'static str,
    pub kind: &'static str,
    #[serde(flatten)]
    pub comparison: OracleComparison,
}

pub fn oracle_doc(comparison: OracleComparison) -> OracleDoc {
    OracleDoc {
        schema: SCHEMA,
        kind: "oracle",
        comparison,
    }
}

/// Eigenvalue scatter rows: one line per eigenvalue, tagged with the
/// region of the root it came from.
pub fn eigenvalue_csv(rows: &[(Complex64, Region)]) -> String {
    let mut out = String::from("re,im,modulus,region\n");
    for &(v, region) in rows {
        out.push_str(&format!(
            "{},{},{},{}\n",
            fmt_f64(v.re),
            fmt_f64(v.im),
            fmt_f64(v.norm()),
            region_str(region),
        ));
    }
    out
}

pub fn region_str(region: Region) -> &'static str {
    match region {
        Region::Disc => "disc",
        Region::Annulus => "annulus",
        Region::Exterior => "exterior",
    }
}

/// Scan rows as CSV.
pub fn scan_csv(scan: &ScanResult) -> String {
    let mut out =
        String::from("n,a,status,rho,bound,galkin_holds,conjecture_o_part1,margin\n");
    for row in &scan.rows {
        let opt_f = |x: Option<f64>| x.map(fmt_f64).unwrap_or_default();
        let opt_b = |x: Option<bool>| x.map(|b| b.to_string()).unwrap_or_default();
        out.push_str(&format!(
            "{},{},{},{},{},{},{},{}\n",
            row.n,
            row.a,
            row.status.as_str(),
            opt_f(row.rho),
            fmt_f64(row.bound),
            opt_b(row.galkin_holds),
            opt_b(row.conjecture_o_part1),
            opt_f(row.margin),
        ));
    }
    out
}

/// Certificate as flat key,value CSV.
pub fn certify_csv(cert: &LocalizationCertificate) -> String {
    let mut out = String::from("key,value\n");
    let mut kv = |k: &str, v: String| {
        out.push_str(k);
        out.push(',');
        out.push_str(&v);
        out.push('\n');
    };
    kv("n", cert.n.to_string());
    kv("a", cert.a.to_string());
    kv("count_unit_disc", cert.count_unit_disc.to_string());
    kv("count_annulus", cert.count_annulus.to_string());
    kv("count_other", cert.count_other.to_string());
    kv("boundary_flagged", cert.boundary_flagged.to_string());
    kv("min_modulus_inner", fmt_f64(cert.min_modulus_inner));
    kv("max_modulus", fmt_f64(cert.max_modulus));
    kv("annulus_lo", fmt_f64(cert.annulus_bounds.0));
    kv("annulus_hi", fmt_f64(cert.annulus_bounds.1));
    kv("rouche_margin_unit", fmt_f64(cert.rouche_margin_unit));
    kv("rouche_margin_r1", fmt_f64(cert.rouche_margin_r1));
    kv("rouche_margin_r2", fmt_f64(cert.rouche_margin_r2));
    kv("a_plus", fmt_f64(cert.a_plus));
    kv("aplus_bound_ok", cert.aplus_bound_ok.to_string());
    kv("aplus_witness", fmt_f64(cert.aplus_witness));
    kv("varep_ok", cert.varep_ok.to_string());
    kv("max_abs_value_disc", fmt_f64(cert.max_abs_value_disc));
    kv("max_abs_value_annulus", fmt_f64(cert.max_abs_value_annulus));
    kv("value_bound", fmt_f64(cert.value_bound));
    kv("value_bound_disc_ok", cert.value_bound_disc_ok.to_string());
    kv(
        "value_bound_annulus_ok",
        cert.value_bound_annulus_ok.to_string(),
    );
    out
}
