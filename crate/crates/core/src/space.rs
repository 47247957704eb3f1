use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::grading::{validate_space, PowerSeriesSpace};
use crate::weights::{AlphaSequence, ConjugateExponent, RatioAsymptotics, WeightFamily};

/// One of the three space families `B(r,s)` is studied on.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum SpaceDescriptor {
    /// `lp(v)`; `v = Unit` is plain `lp`.
    Weighted {
        p: f64,
        weight: WeightFamily,
        asymptotics: RatioAsymptotics,
    },
    PowerSeries {
        space: PowerSeriesSpace,
    },
}

impl SpaceDescriptor {
    /// Fails with `ContinuityFailure` when `B(r,s)` is unbounded on `lp(v)`.
    pub fn weighted(p: f64, weight: WeightFamily) -> Result<Self> {
        let p = ConjugateExponent::new(p)?.p;
        let asymptotics = weight.ratio_asymptotics().map_err(|e| match e {
            Error::UnboundedRatio => {
                Error::ContinuityFailure("sup v(n+1)/v(n) is infinite, so B(r,s) is not bounded on lp(v)".into())
            }
            other => other,
        })?;
        Ok(SpaceDescriptor::Weighted { p, weight, asymptotics })
    }

    pub fn power_series(alpha: &AlphaSequence, dual: bool) -> Result<Self> {
        Ok(SpaceDescriptor::PowerSeries {
            space: validate_space(alpha, dual)?,
        })
    }

    pub fn label(&self) -> &'static str {
        match self {
            SpaceDescriptor::Weighted {
                weight: WeightFamily::Unit,
                ..
            } => "lp",
            SpaceDescriptor::Weighted { .. } => "lp(v)",
            SpaceDescriptor::PowerSeries { space } if space.dual => "lambda-dual",
            SpaceDescriptor::PowerSeries { .. } => "lambda",
        }
    }
}
