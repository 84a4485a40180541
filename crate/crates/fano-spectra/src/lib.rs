//! Spectrum of quantum multiplication by the first Chern class for the
//! toric Fano family `P_{P^n}(O ⊕ O(a))`, computed through the critical
//! values of the Hori–Vafa mirror superpotential.
//!
//! The pipeline reduces the multivariate critical-point system of the
//! superpotential to a single sparse polynomial constraint `h(t) = 1`,
//! finds all its complex roots, evaluates the critical-value function at
//! them, and reports the spectral radius together with verdicts for
//! Galkin's lower bound conjecture and Conjecture O. A separate
//! certification layer checks the Rouché-style inequalities that localize
//! the roots in a disc/annulus partition, per concrete `n`.
//!
//! Modules follow the pipeline stages:
//!
//! - [`model`]: bundle instances, ray generators, the superpotential, and
//!   a direct multivariate critical-point oracle for small `n`.
//! - [`reduction`]: the univariate reduction `h`, `g`, `g̃`, `ǧ` and the
//!   lift back to multivariate critical points.
//! - [`rootfinder`]: Aberth–Ehrlich root finding with companion-matrix and
//!   power-sum oracles, plus the bisected positive root.
//! - [`certify`]: numeric certificates for the root-localization bounds.
//! - [`spectrum`]: critical values, spectral radius, conjecture verdicts.
//! - [`cli`]: the command implementations behind the `fano-spectra` binary.

pub mod certify;
pub mod cli;
mod dd;
pub mod error;
pub mod model;
pub mod reduction;
pub mod report;
pub mod rootfinder;
pub mod spectrum;

pub use error::{Error, Result};
pub use model::BundleInstance;
