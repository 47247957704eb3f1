//! JSON report shapes. Every type round-trips through serde.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use bandspec_core::ergodics::{CesaroTable, ErgodicReport, Link};
use bandspec_core::grading::GradeCrosscheck;
use bandspec_core::operator::NormBounds;
use bandspec_core::pseudospectrum::{GridSpec, PseudoSummary};
use bandspec_core::resolvent::SummabilityCertificates;
use bandspec_core::weights::{RatioAsymptotics, SeriesVerdict};
use bandspec_core::{AlphaSequence, Citation, Complex64, Region};

use crate::config::Band;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Cited {
    pub id: Citation,
    pub statement: String,
}

impl From<Citation> for Cited {
    fn from(id: Citation) -> Self {
        Cited {
            id,
            statement: id.statement().to_string(),
        }
    }
}

pub fn cite(ids: &[Citation]) -> Vec<Cited> {
    ids.iter().copied().map(Cited::from).collect()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClassifyReport {
    pub command: String,
    pub space: String,
    pub band: Band,
    pub sigma: Region,
    pub point: Region,
    pub residual: Region,
    pub continuous: Region,
    /// Points whose class no available test settles.
    pub undetermined: Region,
    pub waelbroeck: Region,
    /// The statements behind each field above, keyed by field name.
    pub citations: BTreeMap<String, Vec<Cited>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub weighted: Option<WeightedDetails>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub graded: Option<GradedDetails>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WeightedDetails {
    pub p: f64,
    pub asymptotics: RatioAsymptotics,
    /// Summability of the adjoint eigenvector on the `L1|s|` circle.
    pub boundary_rule: SeriesVerdict,
    pub spectral_radius: f64,
    pub norm_bounds: NormBounds,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GradedDetails {
    pub alpha: AlphaSequence,
    pub l: f64,
    pub log_bound_c: Option<f64>,
    pub nuclear: bool,
    pub prefix_only: bool,
    pub crosscheck: GradeCrosscheck,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ErgodicsReport {
    pub command: String,
    pub band: Band,
    pub report: ErgodicReport,
    pub chain_violations: Vec<Link>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ResolveReport {
    pub command: String,
    pub space: String,
    pub band: Band,
    pub alpha: Complex64,
    pub m: usize,
    /// `(B - alpha I)^{-1} y` on the first `m` indices.
    pub x: Vec<Complex64>,
    /// `||(B - alpha I) x - y|| / ||y||` in the weighted norm over indices below `m - 1`.
    pub relative_residual: f64,
    pub tolerance: f64,
    pub certificates: SummabilityCertificates,
    pub citations: Vec<Cited>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CesaroReport {
    pub command: String,
    pub space: String,
    pub band: Band,
    pub table: CesaroTable,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PseudoReport {
    pub command: String,
    pub band: Band,
    pub spec: GridSpec,
    pub summary: PseudoSummary,
    /// Present only in JSON mode; CSV mode writes the grid separately.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sigma_min: Option<Vec<f64>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckResult {
    pub name: String,
    pub passed: usize,
    pub failed: usize,
    /// Largest defect seen, for checks measured against a tolerance.
    pub worst: Option<f64>,
    pub tolerance: Option<f64>,
    /// The first failing instance, if any.
    pub first_failure: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub command: String,
    pub seed: u64,
    pub cases: usize,
    pub checks: Vec<CheckResult>,
    pub passed: usize,
    pub failed: usize,
}
