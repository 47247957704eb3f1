//! Fine spectrum of `B(r,s)` on `lp(v)` in closed form.
//!
//! With `L` and `L1` the limsup and liminf of the weight ratios:
//! the spectrum is the closed `L|s|`-disk about `r`, there are no eigenvalues,
//! the residual part is the open `L1|s|`-disk (plus its circle exactly when
//! the geometric adjoint eigenvector is summable there), and the rest of the
//! disk is continuous spectrum.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::cite::Citation;
use crate::error::{Error, Result};
use crate::operator::BandParams;
use crate::region::{radial_position, Disk, RadialPosition, Region};
use crate::vector::{SeqVector, Tail};
use crate::weights::{boundary_series_test, ConjugateExponent, RatioAsymptotics, SeriesVerdict, WeightFamily};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PointClass {
    Resolvent,
    Residual,
    Continuous,
    BoundaryUndetermined,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FineSpectrum {
    pub r: f64,
    pub s: f64,
    pub p: f64,
    pub asymptotics: RatioAsymptotics,
    /// Closed disk of radius `L|s|`.
    pub sigma: Disk,
    /// Open disk of radius `L1|s|`.
    pub residual_inner: Disk,
    /// Summability of the adjoint eigenvector on the `L1|s|` circle.
    pub boundary_rule: SeriesVerdict,
    pub point_spectrum_empty: bool,
    pub waelbroeck_equals_sigma: bool,
    pub citations: Vec<Citation>,
}

impl FineSpectrum {
    pub fn spectrum(&self) -> Region {
        self.sigma.closed()
    }

    pub fn point(&self) -> Region {
        Region::Empty
    }

    pub fn residual(&self) -> Region {
        let Disk { center, radius } = self.residual_inner;
        match self.boundary_rule {
            SeriesVerdict::Converges => Region::closed_disk(center, radius),
            SeriesVerdict::Diverges | SeriesVerdict::Undetermined => Region::open_disk(center, radius),
        }
    }

    pub fn continuous(&self) -> Region {
        Region::annulus(
            self.sigma.center,
            self.residual_inner.radius,
            self.boundary_rule == SeriesVerdict::Diverges,
            self.sigma.radius,
            true,
        )
    }

    /// Points whose class the series test could not settle.
    pub fn undetermined(&self) -> Region {
        match self.boundary_rule {
            SeriesVerdict::Undetermined => Region::circle(self.residual_inner.center, self.residual_inner.radius),
            _ => Region::Empty,
        }
    }

    /// The adjoint's eigenvalues coincide with the residual spectrum.
    pub fn adjoint_point(&self) -> Region {
        self.residual()
    }

    pub fn classify(&self, alpha: Complex64) -> PointClass {
        let distance = (alpha - self.sigma.center).norm();
        if radial_position(distance, self.sigma.radius) == RadialPosition::Outside {
            return PointClass::Resolvent;
        }
        match radial_position(distance, self.residual_inner.radius) {
            RadialPosition::Inside => PointClass::Residual,
            RadialPosition::Outside => PointClass::Continuous,
            RadialPosition::OnCircle => match self.boundary_rule {
                SeriesVerdict::Converges => PointClass::Residual,
                SeriesVerdict::Diverges => PointClass::Continuous,
                SeriesVerdict::Undetermined => PointClass::BoundaryUndetermined,
            },
        }
    }
}

/// Fails with `ContinuityFailure` when the weight ratios are unbounded.
pub fn fine_spectrum(b: &BandParams, p: f64, v: &WeightFamily) -> Result<FineSpectrum> {
    let exp = ConjugateExponent::new(p)?;
    let asymptotics = v.ratio_asymptotics().map_err(|e| match e {
        Error::UnboundedRatio => {
            Error::ContinuityFailure("sup v(n+1)/v(n) is infinite, so B(r,s) is not bounded on lp(v)".into())
        }
        other => other,
    })?;
    let s_abs = b.s().abs();
    let mut citations = vec![
        Citation::WeightedSpectrumDisk,
        Citation::WeightedPointSpectrumEmpty,
        Citation::AdjointEigenvectorBracket,
        Citation::ResidualEqualsAdjointPoint,
        Citation::ContinuousOutsideResidualDisk,
        Citation::GeometricEigenvectorSeries,
        Citation::WaelbroeckEqualsSpectrum,
    ];
    if *v == WeightFamily::Unit {
        citations.insert(0, Citation::UnweightedFineSpectrum);
    }
    Ok(FineSpectrum {
        r: b.r(),
        s: b.s(),
        p: exp.p,
        asymptotics,
        sigma: Disk::new(b.r(), asymptotics.limsup * s_abs),
        residual_inner: Disk::new(b.r(), asymptotics.liminf * s_abs),
        boundary_rule: boundary_series_test(v, exp.p, asymptotics.liminf),
        point_spectrum_empty: true,
        waelbroeck_equals_sigma: true,
        citations,
    })
}

pub fn classify_point(fs: &FineSpectrum, alpha: Complex64) -> PointClass {
    fs.classify(alpha)
}

/// Whether `alpha` is an eigenvalue of the adjoint on `l_p'(1/v)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AdjointMembership {
    pub verdict: SeriesVerdict,
    /// `rho = |alpha - r| / |s|`, snapped to `L1` on the critical circle.
    pub rho: f64,
    /// First `m` entries of `((alpha - r)/s)^n` when `verdict` is `Converges`.
    pub generator: Option<SeqVector>,
}

impl AdjointMembership {
    pub fn is_member(&self) -> Option<bool> {
        match self.verdict {
            SeriesVerdict::Converges => Some(true),
            SeriesVerdict::Diverges => Some(false),
            SeriesVerdict::Undetermined => None,
        }
    }
}

pub fn adjoint_eigen_membership(
    b: &BandParams,
    alpha: Complex64,
    p: f64,
    v: &WeightFamily,
    m: usize,
) -> Result<AdjointMembership> {
    ConjugateExponent::new(p)?;
    let asym = v.ratio_asymptotics()?;
    let ratio = (alpha - b.r()) / b.s();
    let mut rho = ratio.norm();
    if radial_position(rho, asym.liminf) == RadialPosition::OnCircle {
        rho = asym.liminf;
    }
    let verdict = boundary_series_test(v, p, rho);
    let generator = (verdict == SeriesVerdict::Converges && m >= 1).then(|| {
        let mut entries = Vec::with_capacity(m);
        let mut z = Complex64::new(1.0, 0.0);
        for _ in 0..m {
            entries.push(z);
            z *= ratio;
        }
        SeqVector::new(entries, Tail::Unknown)
    });
    Ok(AdjointMembership {
        verdict,
        rho,
        generator,
    })
}

/// `|r| + L|s|`.
pub fn spectral_radius(b: &BandParams, v: &WeightFamily) -> Result<f64> {
    let asym = v.ratio_asymptotics()?;
    Ok(b.r().abs() + asym.limsup * b.s().abs())
}
