//! The power series space `Λ∞(α) = ∩_k l2(e^{kα})` and its dual
//! `Λ∞(α)' = ∪_k l2(e^{-kα})`.
//!
//! The spectra on the graded spaces are read off the limiting gap
//! `l = lim(α_{n+1} - α_n)`; each answer is cross-checked against the
//! per-grade spectra on the Banach steps.

use serde::{Deserialize, Serialize};

use crate::cite::Citation;
use crate::error::{Error, Result};
use crate::operator::BandParams;
use crate::region::Region;
use crate::spectra::fine_spectrum;
use crate::weights::{
    dual_grade_weight, grade_weight, AlphaSequence, RatioAsymptotics, SeriesVerdict, TailCheck, WeightFamily,
};

/// Grade norms are hilbertian.
const GRADE_P: f64 = 2.0;

/// Relative tolerance on per-grade radii against `e^{±kl}|s|`.
const RADIUS_RTOL: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PowerSeriesSpace {
    pub alpha: AlphaSequence,
    /// `lim (α_{n+1} - α_n)`.
    pub l: f64,
    /// Some `c > 0` with `α_n >= c log(n+1)` for all `n`.
    pub log_bound_c: Option<f64>,
    pub nuclear: bool,
    pub dual: bool,
    /// Set when the log bound or nuclearity could only be checked on stored data.
    pub prefix_only: bool,
}

impl PowerSeriesSpace {
    /// Weight of grade `k`: `e^{kα}` on the primal side, `e^{-kα}` on the dual.
    pub fn grade(&self, k: u32) -> WeightFamily {
        if self.dual {
            dual_grade_weight(&self.alpha, k)
        } else {
            grade_weight(&self.alpha, k)
        }
    }
}

/// Checks the hypotheses on `α` and derives `l`, a log bound and nuclearity.
pub fn validate_space(alpha: &AlphaSequence, dual: bool) -> Result<PowerSeriesSpace> {
    let l = alpha
        .checked_limit_gap(TailCheck::default())
        .map_err(|e| Error::HypothesisFailure(format!("the gaps of alpha have no limit: {e}")))?;
    let (log_bound_c, nuclear, prefix_only) = match alpha {
        AlphaSequence::LogShift => (Some(1.0), true, false),
        // slope * n >= slope * log(n+1)
        AlphaSequence::Affine { slope, .. } => (Some(*slope), true, false),
        AlphaSequence::Table { values, .. } => {
            let c = (1..values.len())
                .map(|n| values[n] / (n as f64).ln_1p())
                .fold(f64::INFINITY, f64::min);
            let nuclear_sup = (0..values.len() - 1)
                .map(|n| (n as f64).ln_1p() / values[n + 1])
                .fold(0.0, f64::max);
            let c = (c.is_finite() && c > 0.0).then_some(c);
            // past the table α grows with slope l, which keeps both bounds when l > 0
            (c, nuclear_sup.is_finite(), l == 0.0)
        }
    };
    if !dual && l == 0.0 && log_bound_c.is_none() {
        return Err(Error::HypothesisFailure(
            "with l = 0 the primal space needs alpha_n >= c log(n+1) for some c > 0".into(),
        ));
    }
    Ok(PowerSeriesSpace {
        alpha: alpha.clone(),
        l,
        log_bound_c,
        nuclear,
        dual,
        prefix_only,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GradedFineSpectrum {
    pub sigma: Region,
    pub point: Region,
    pub residual: Region,
    pub continuous: Region,
    pub waelbroeck: Region,
    pub citations: Vec<Citation>,
}

pub fn graded_fine_spectrum(b: &BandParams, sp: &PowerSeriesSpace) -> Result<GradedFineSpectrum> {
    let (r, s) = (b.r(), b.s().abs());
    let disk = Region::closed_disk(r, s);
    let (sigma, residual, continuous, cite) = match (sp.dual, sp.l > 0.0) {
        (false, false) => (disk, disk, Region::Empty, Citation::PowerSeriesSpectrum),
        (false, true) => (
            Region::WholePlane,
            Region::WholePlane,
            Region::Empty,
            Citation::PowerSeriesSpectrum,
        ),
        (true, false) => (
            disk,
            Region::open_disk(r, s),
            Region::circle(r, s),
            Citation::DualPowerSeriesSpectrum,
        ),
        (true, true) => (
            Region::Singleton(r),
            Region::Singleton(r),
            Region::Empty,
            Citation::DualPowerSeriesSpectrum,
        ),
    };
    Ok(GradedFineSpectrum {
        sigma,
        point: Region::Empty,
        residual,
        continuous,
        waelbroeck: sigma,
        citations: vec![cite, Citation::WaelbroeckEqualsSpectrum],
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GradeRecord {
    pub k: u32,
    pub asymptotics: RatioAsymptotics,
    pub sigma_radius: f64,
    pub expected_radius: f64,
    pub residual: Region,
    pub continuous: Region,
    pub boundary_rule: SeriesVerdict,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GradeCrosscheck {
    pub grades: Vec<GradeRecord>,
    /// `∪_k σ_k` (primal) or `∩_m ∪_{k>=m} σ_k` (dual), extrapolated along
    /// the verified radius law `e^{±kl}|s|`.
    pub limit_region: Region,
    pub graded_sigma: Region,
    pub citation: Citation,
}

/// Compares the graded spectrum with the spectra on the steps `k = 1..=k_max`.
pub fn per_grade_crosscheck(b: &BandParams, sp: &PowerSeriesSpace, k_max: u32) -> Result<GradeCrosscheck> {
    if k_max < 2 {
        return Err(Error::InvalidParameter(format!(
            "k_max must be at least 2, got {k_max}"
        )));
    }
    let graded = graded_fine_spectrum(b, sp)?;
    let sign = if sp.dual { -1.0 } else { 1.0 };
    let s_abs = b.s().abs();
    let mut grades = Vec::with_capacity(k_max as usize);
    for k in 1..=k_max {
        let fs = fine_spectrum(b, GRADE_P, &sp.grade(k)).map_err(|e| match e {
            Error::ContinuityFailure(why) => Error::ContinuityFailure(format!("grade {k}: {why}")),
            other => other,
        })?;
        let expected_radius = (sign * k as f64 * sp.l).exp() * s_abs;
        let record = GradeRecord {
            k,
            asymptotics: fs.asymptotics,
            sigma_radius: fs.sigma.radius,
            expected_radius,
            residual: fs.residual(),
            continuous: fs.continuous(),
            boundary_rule: fs.boundary_rule,
        };
        if (record.sigma_radius - expected_radius).abs() > RADIUS_RTOL * expected_radius {
            return Err(Error::AggregationViolation(format!(
                "grade {k} spectral radius {} differs from e^(±kl)|s| = {expected_radius}",
                record.sigma_radius
            )));
        }
        check_grade_boundary(sp, &record)?;
        grades.push(record);
    }
    // radii are geometric in k with ratio e^{±l}: the limits are exact
    let limit_region = match (sp.dual, sp.l > 0.0) {
        (_, false) => Region::closed_disk(b.r(), s_abs),
        (false, true) => Region::WholePlane,
        (true, true) => Region::Singleton(b.r()),
    };
    if graded.sigma.is_subset_of(&limit_region) != Some(true) {
        return Err(Error::AggregationViolation(format!(
            "graded spectrum {:?} escapes the limit of the step spectra {limit_region:?}",
            graded.sigma
        )));
    }
    let citation = if sp.dual {
        Citation::InductiveLimitInclusion
    } else {
        Citation::ProjectiveLimitInclusion
    };
    Ok(GradeCrosscheck {
        grades,
        limit_region,
        graded_sigma: graded.sigma,
        citation,
    })
}

/// With `l = 0` every step shares the unit circle's boundary, and the graded
/// residual spectrum must be the one the steps eventually agree on.
fn check_grade_boundary(sp: &PowerSeriesSpace, record: &GradeRecord) -> Result<()> {
    if sp.l > 0.0 {
        return Ok(());
    }
    let expected = if sp.dual {
        Some(SeriesVerdict::Diverges)
    } else {
        // terms (n+1)^{-2kc} at worst: conclusive once 2kc clears the test band
        let c = sp.log_bound_c.unwrap_or(0.0);
        let margin = 1.0 + TailCheck::default().tolerance;
        (GRADE_P * record.k as f64 * c > margin).then_some(SeriesVerdict::Converges)
    };
    match expected {
        Some(verdict) if verdict != record.boundary_rule => Err(Error::AggregationViolation(format!(
            "grade {}: boundary circle is {:?}, the graded residual spectrum needs {verdict:?}",
            record.k, record.boundary_rule
        ))),
        _ => Ok(()),
    }
}
