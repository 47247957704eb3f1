use serde::{Deserialize, Serialize};

/// The mathematical statement a reported value rests on.
///
/// Reports carry these next to every closed-form answer so a reader can tell
/// a proved fact from a numerical observation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Citation {
    ContinuityCriterion,
    NormBounds,
    UnweightedFineSpectrum,
    WeightedSpectrumDisk,
    WeightedPointSpectrumEmpty,
    AdjointEigenvectorBracket,
    ResidualEqualsAdjointPoint,
    ContinuousOutsideResidualDisk,
    GeometricEigenvectorSeries,
    SpectralRadius,
    PowerSeriesSpectrum,
    DualPowerSeriesSpectrum,
    WaelbroeckEqualsSpectrum,
    ProjectiveLimitInclusion,
    InductiveLimitInclusion,
    ContractionPowerBound,
    WeightedErgodicChain,
    WeightedUniformErgodicChain,
    PowerSeriesErgodicZeroGap,
    PowerSeriesErgodicPositiveGap,
    DualPowerSeriesErgodic,
    SupercyclicityExclusion,
}

impl Citation {
    pub fn statement(self) -> &'static str {
        use Citation::*;
        match self {
            ContinuityCriterion => "B(r,s) is continuous on lp(v) iff sup v(n+1)/v(n) < inf",
            NormBounds => "||B(r,s)|| <= |r| + N|s| on lp(v), and the basis quotients approach (|r|^p + N^p|s|^p)^(1/p)",
            UnweightedFineSpectrum => {
                "on lp: sigma is the closed |s|-disk at r, residual the open disk, continuous the circle"
            }
            WeightedSpectrumDisk => "sigma(B(r,s), lp(v)) is the closed disk of radius L|s| about r",
            WeightedPointSpectrumEmpty => "B(r,s) has no eigenvalues on lp(v)",
            AdjointEigenvectorBracket => {
                "eigenvalues of the adjoint lie between the open and closed L1|s|-disks about r"
            }
            ResidualEqualsAdjointPoint => "the residual spectrum equals the point spectrum of the adjoint",
            ContinuousOutsideResidualDisk => {
                "sigma minus the closed L1|s|-disk belongs to the continuous spectrum"
            }
            GeometricEigenvectorSeries => {
                "alpha is an adjoint eigenvalue iff ((alpha - r)/s)^n lies in l_p'(1/v)"
            }
            SpectralRadius => "the spectral radius of B(r,s) on lp(v) is |r| + L|s|",
            PowerSeriesSpectrum => {
                "on the power series space: the closed |s|-disk when l = 0, the whole plane when l > 0"
            }
            DualPowerSeriesSpectrum => {
                "on the dual power series space: the closed |s|-disk when l = 0, {r} when l > 0"
            }
            WaelbroeckEqualsSpectrum => "the Waelbroeck spectrum coincides with the spectrum",
            ProjectiveLimitInclusion => {
                "spectrum on a projective limit lies in the union of the step spectra"
            }
            InductiveLimitInclusion => {
                "spectrum on an inductive limit lies in the limit of unions of tail step spectra"
            }
            ContractionPowerBound => "||B^n|| <= (|r| + N|s|)^n on lp(v)",
            WeightedErgodicChain => {
                "on lp(v): power bounded, mean ergodic and B^n/n -> 0 all hold when |r| + N|s| <= 1 and fail when |r| + L|s| > 1"
            }
            WeightedUniformErgodicChain => {
                "on lp(v): uniform mean ergodicity and ||B^n|| -> 0 hold when |r| + L|s| < 1 and fail when 1 lies in sigma"
            }
            PowerSeriesErgodicZeroGap => {
                "on the power series space with l = 0 the ergodic properties are governed by |r| + |s|"
            }
            PowerSeriesErgodicPositiveGap => {
                "on the power series space with l > 0 B(r,s) is neither power bounded nor mean ergodic"
            }
            DualPowerSeriesErgodic => {
                "on the dual power series space the ergodic properties are governed by |r| + |s| and |r|"
            }
            SupercyclicityExclusion => "B(r,s) is not supercyclic when the adjoint has an open disk of eigenvalues",
        }
    }
}
