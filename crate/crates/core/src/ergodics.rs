//! Ergodic behaviour of `B(r,s)`: closed-form tri-state verdicts and the
//! numerical experiments that shadow them.
//!
//! The known results are one-directional implications, so every verdict is
//! `Holds`, `Fails` or `Undetermined`, and carries the inequality that
//! decided it.

use serde::{Deserialize, Serialize};

use crate::cite::Citation;
use crate::error::Result;
use crate::operator::BandParams;
use crate::region::{radial_position, RadialPosition};
use crate::space::SpaceDescriptor;
use crate::vector::{LogSeqVector, SeqVector, Tail};
use crate::weights::{weighted_norm, LogMagnitudes, WeightFamily};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Holds,
    Fails,
    Undetermined,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TriState {
    pub verdict: Verdict,
    /// The inequality that decided the verdict, with its numbers filled in.
    pub reason: String,
    pub citation: Option<Citation>,
}

impl TriState {
    fn holds(reason: impl Into<String>, citation: Citation) -> Self {
        TriState {
            verdict: Verdict::Holds,
            reason: reason.into(),
            citation: Some(citation),
        }
    }

    fn fails(reason: impl Into<String>, citation: Citation) -> Self {
        TriState {
            verdict: Verdict::Fails,
            reason: reason.into(),
            citation: Some(citation),
        }
    }

    fn open(reason: impl Into<String>) -> Self {
        TriState {
            verdict: Verdict::Undetermined,
            reason: reason.into(),
            citation: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ErgodicReport {
    pub space: String,
    pub power_bounded: TriState,
    pub mean_ergodic: TriState,
    pub uniform_mean_ergodic: TriState,
    /// `B^n x / n -> 0` for every `x`.
    pub cesaro_null: TriState,
    pub norm_powers_to_zero: TriState,
    pub one_in_spectrum: bool,
    pub supercyclic_excluded: TriState,
}

/// Implications `A => B` that every report must respect.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Link {
    PowerBoundedImpliesMeanErgodic,
    MeanErgodicImpliesCesaroNull,
    NormDecayImpliesPowerBounded,
    UniformImpliesMeanErgodic,
    UniformImpliesOneOutsideSpectrum,
}

impl ErgodicReport {
    /// Links of the implication chains in which the premise holds and the
    /// conclusion fails.
    pub fn chain_violations(&self) -> Vec<Link> {
        use Verdict::*;
        let broken = |a: &TriState, b: Verdict| a.verdict == Holds && b == Fails;
        let mut out = Vec::new();
        if broken(&self.power_bounded, self.mean_ergodic.verdict) {
            out.push(Link::PowerBoundedImpliesMeanErgodic);
        }
        if broken(&self.mean_ergodic, self.cesaro_null.verdict) {
            out.push(Link::MeanErgodicImpliesCesaroNull);
        }
        if broken(&self.norm_powers_to_zero, self.power_bounded.verdict) {
            out.push(Link::NormDecayImpliesPowerBounded);
        }
        if broken(&self.uniform_mean_ergodic, self.mean_ergodic.verdict) {
            out.push(Link::UniformImpliesMeanErgodic);
        }
        // on the dual power series space 1 may lie in σ of a uniformly mean ergodic B(r,s)
        let dual = self.space == "lambda-dual";
        if !dual && self.uniform_mean_ergodic.verdict == Holds && self.one_in_spectrum {
            out.push(Link::UniformImpliesOneOutsideSpectrum);
        }
        out
    }
}

fn fmt(x: f64) -> String {
    format!("{x:.6}")
}

pub fn classify_ergodic(b: &BandParams, space: &SpaceDescriptor) -> Result<ErgodicReport> {
    let (r, s) = (b.r().abs(), b.s().abs());
    let report = match space {
        SpaceDescriptor::Weighted { asymptotics, .. } => {
            let (n, l, l1) = (asymptotics.sup, asymptotics.limsup, asymptotics.liminf);
            weighted_report(space.label(), b, r + n * s, r + l * s, l * s, l1)
        }
        SpaceDescriptor::PowerSeries { space: sp } if !sp.dual && sp.l > 0.0 => power_series_positive_gap(sp.l),
        SpaceDescriptor::PowerSeries { space: sp } if !sp.dual => power_series_zero_gap(b),
        SpaceDescriptor::PowerSeries { space: sp } => dual_power_series(b, sp.l),
    };
    debug_assert!(report.chain_violations().is_empty(), "{report:?}");
    Ok(report)
}

/// `lp(v)` with `t_n = |r| + N|s|`, `t_l = |r| + L|s|` and spectral radius `L|s|` about `r`.
fn weighted_report(label: &str, b: &BandParams, t_n: f64, t_l: f64, radius: f64, l1: f64) -> ErgodicReport {
    use Citation::*;
    let one_in = radial_position((1.0 - b.r()).abs(), radius) != RadialPosition::Outside;

    let chain = |what: &str| {
        if t_n <= 1.0 {
            TriState::holds(
                format!("|r| + N|s| = {} <= 1, so {what}", fmt(t_n)),
                WeightedErgodicChain,
            )
        } else if t_l > 1.0 {
            TriState::fails(
                format!("|r| + L|s| = {} > 1, so {what} fails", fmt(t_l)),
                WeightedErgodicChain,
            )
        } else {
            TriState::open(format!(
                "|r| + L|s| = {} <= 1 < |r| + N|s| = {}: no criterion applies",
                fmt(t_l),
                fmt(t_n)
            ))
        }
    };
    let uniform = if t_l < 1.0 {
        TriState::holds(format!("|r| + L|s| = {} < 1", fmt(t_l)), WeightedUniformErgodicChain)
    } else if one_in {
        TriState::fails(
            format!(
                "|1 - r| = {} <= L|s| = {}: 1 lies in the spectrum",
                fmt((1.0 - b.r()).abs()),
                fmt(radius)
            ),
            WeightedUniformErgodicChain,
        )
    } else {
        TriState::open(format!(
            "|r| + L|s| = {} >= 1 and 1 lies outside the spectrum",
            fmt(t_l)
        ))
    };
    // Gelfand: ||B^n|| -> 0 iff the spectral radius |r| + L|s| is below 1
    let decay = if t_l < 1.0 {
        TriState::holds(format!("spectral radius |r| + L|s| = {} < 1", fmt(t_l)), SpectralRadius)
    } else {
        TriState::fails(
            format!("spectral radius |r| + L|s| = {} >= 1", fmt(t_l)),
            SpectralRadius,
        )
    };
    let supercyclic = if l1 > 0.0 {
        TriState::holds(
            format!("L1 = {} > 0: the adjoint has an open disk of eigenvalues", fmt(l1)),
            SupercyclicityExclusion,
        )
    } else {
        TriState::open("L1 = 0: the adjoint eigenvalues may reduce to {r}")
    };
    ErgodicReport {
        space: label.to_string(),
        power_bounded: chain("B(r,s) is power bounded"),
        mean_ergodic: chain("B(r,s) is mean ergodic"),
        cesaro_null: chain("B^n/n -> 0"),
        uniform_mean_ergodic: uniform,
        norm_powers_to_zero: decay,
        one_in_spectrum: one_in,
        supercyclic_excluded: supercyclic,
    }
}

fn power_series_positive_gap(l: f64) -> ErgodicReport {
    use Citation::*;
    let fail = |what: &str| {
        TriState::fails(
            format!("l = {} > 0: the spectrum is the whole plane, so {what} fails", fmt(l)),
            PowerSeriesErgodicPositiveGap,
        )
    };
    ErgodicReport {
        space: "lambda".into(),
        power_bounded: fail("power boundedness"),
        mean_ergodic: fail("mean ergodicity"),
        uniform_mean_ergodic: fail("uniform mean ergodicity"),
        cesaro_null: fail("B^n/n -> 0"),
        norm_powers_to_zero: fail("B^n -> 0"),
        one_in_spectrum: true,
        supercyclic_excluded: TriState::holds(
            "every point of the plane is an adjoint eigenvalue",
            SupercyclicityExclusion,
        ),
    }
}

fn power_series_zero_gap(b: &BandParams) -> ErgodicReport {
    use Citation::*;
    let (r, s) = (b.r().abs(), b.s().abs());
    let t = r + s;
    let one_in = radial_position((1.0 - b.r()).abs(), s) != RadialPosition::Outside;
    let below = |what: &str| {
        TriState::holds(
            format!("|r| + |s| = {} < 1, so {what}", fmt(t)),
            PowerSeriesErgodicZeroGap,
        )
    };
    let above = |what: &str| {
        TriState::fails(
            format!("|r| + |s| = {} > 1, so {what} fails", fmt(t)),
            PowerSeriesErgodicZeroGap,
        )
    };
    let one = |what: &str| {
        TriState::fails(
            format!("1 lies in the spectrum D(r, |s|), so {what} fails"),
            PowerSeriesErgodicZeroGap,
        )
    };
    let open = || TriState::open(format!("|r| + |s| = {} = 1 with no criterion deciding", fmt(t)));
    let pick = |what: &str, fails_on_one: bool| {
        if t < 1.0 {
            below(what)
        } else if t > 1.0 {
            above(what)
        } else if fails_on_one && one_in {
            one(what)
        } else {
            open()
        }
    };
    ErgodicReport {
        space: "lambda".into(),
        power_bounded: pick("B(r,s) is power bounded", true),
        mean_ergodic: pick("B(r,s) is mean ergodic", false),
        uniform_mean_ergodic: pick("B(r,s) is uniformly mean ergodic", true),
        cesaro_null: pick("B^n/n -> 0", false),
        norm_powers_to_zero: pick("B^n -> 0", true),
        one_in_spectrum: one_in,
        supercyclic_excluded: TriState::holds(
            "the adjoint has the closed |s|-disk of eigenvalues",
            SupercyclicityExclusion,
        ),
    }
}

fn dual_power_series(b: &BandParams, l: f64) -> ErgodicReport {
    use Citation::*;
    let (r, s) = (b.r().abs(), b.s().abs());
    let t = r + s;
    if l == 0.0 {
        let one_in = radial_position((1.0 - b.r()).abs(), s) != RadialPosition::Outside;
        let equiv = |what: &str| {
            if t <= 1.0 {
                TriState::holds(
                    format!("|r| + |s| = {} <= 1, so {what}", fmt(t)),
                    DualPowerSeriesErgodic,
                )
            } else {
                TriState::fails(
                    format!("|r| + |s| = {} > 1, so {what} fails", fmt(t)),
                    DualPowerSeriesErgodic,
                )
            }
        };
        let decay = if t < 1.0 {
            TriState::holds(format!("|r| + |s| = {} < 1", fmt(t)), DualPowerSeriesErgodic)
        } else if t > 1.0 {
            TriState::fails(
                format!("|r| + |s| = {} > 1: not even power bounded", fmt(t)),
                DualPowerSeriesErgodic,
            )
        } else {
            TriState::open("|r| + |s| = 1: power bounded, decay of B^n undecided")
        };
        return ErgodicReport {
            space: "lambda-dual".into(),
            power_bounded: equiv("B(r,s) is power bounded"),
            mean_ergodic: equiv("B(r,s) is mean ergodic"),
            uniform_mean_ergodic: equiv("B(r,s) is uniformly mean ergodic"),
            cesaro_null: equiv("B^n/n -> 0"),
            norm_powers_to_zero: decay,
            one_in_spectrum: one_in,
            supercyclic_excluded: TriState::holds(
                "the adjoint has the open |s|-disk of eigenvalues",
                SupercyclicityExclusion,
            ),
        };
    }
    // l > 0: the spectrum is {r}
    let chain = |what: &str| {
        if r > 1.0 {
            TriState::fails(format!("|r| = {} > 1, so {what} fails", fmt(r)), DualPowerSeriesErgodic)
        } else if t < 1.0 {
            TriState::holds(
                format!("|r| + |s| = {} < 1 gives B^n -> 0, so {what}", fmt(t)),
                DualPowerSeriesErgodic,
            )
        } else {
            TriState::open(format!(
                "|r| = {} <= 1 <= |r| + |s| = {}: no criterion applies",
                fmt(r),
                fmt(t)
            ))
        }
    };
    ErgodicReport {
        space: "lambda-dual".into(),
        power_bounded: chain("B(r,s) is power bounded"),
        mean_ergodic: chain("B(r,s) is mean ergodic"),
        uniform_mean_ergodic: chain("B(r,s) is uniformly mean ergodic"),
        cesaro_null: chain("B^n/n -> 0"),
        norm_powers_to_zero: chain("B^n -> 0"),
        one_in_spectrum: b.r() == 1.0,
        supercyclic_excluded: TriState::open("l > 0: adjoint eigenvalues on the dual are not known"),
    }
}

/// The norm a probe is measured in: `lp(v)` directly, a single grade for the
/// power series spaces.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProbeNorm {
    pub p: f64,
    pub weight: WeightFamily,
    pub grade: Option<u32>,
}

impl ProbeNorm {
    /// For `Λ∞(α)` the first grade on which `B(r,s)` has spectral radius
    /// above one, so that growth is visible; grade 1 otherwise.
    pub fn for_space(b: &BandParams, space: &SpaceDescriptor) -> Self {
        match space {
            SpaceDescriptor::Weighted { p, weight, .. } => ProbeNorm {
                p: *p,
                weight: weight.clone(),
                grade: None,
            },
            SpaceDescriptor::PowerSeries { space: sp } => {
                let grade = if sp.dual {
                    1
                } else {
                    (1..=64u32)
                        .find(|&k| b.r().abs() + (k as f64 * sp.l).exp() * b.s().abs() > 1.0)
                        .unwrap_or(1)
                };
                ProbeNorm {
                    p: 2.0,
                    weight: sp.grade(grade),
                    grade: Some(grade),
                }
            }
        }
    }

    fn log_norm<X: LogMagnitudes + ?Sized>(&self, x: &X) -> f64 {
        weighted_norm(x, self.p, &self.weight).log_norm
    }
}

/// A vector held as `exp(log_scale) * values`, so iterates can grow or
/// shrink far past the `f64` range.
struct Scaled {
    values: Vec<f64>,
    log_scale: f64,
}

const RESCALE_ABOVE: f64 = 1e150;
const RESCALE_BELOW: f64 = 1e-150;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CesaroRow {
    pub n: usize,
    pub probe: usize,
    /// `ln ||T_[n] e_j||`.
    pub log_cesaro_norm: f64,
    /// `ln (||B^n e_j|| / n)`.
    pub log_power_norm_over_n: f64,
}

impl CesaroRow {
    pub fn cesaro_norm(&self) -> f64 {
        self.log_cesaro_norm.exp()
    }

    pub fn power_norm_over_n(&self) -> f64 {
        self.log_power_norm_over_n.exp()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CesaroTable {
    pub norm: ProbeNorm,
    pub rows: Vec<CesaroRow>,
    /// Some closed-form verdict is contradicted by the observed trend.
    pub diagnostics: Vec<String>,
}

/// `1, 2, 5, 10, 20, 50, ...` up to and including `n_max`.
pub fn checkpoints(n_max: usize) -> Vec<usize> {
    let mut out = Vec::new();
    let mut decade = 1;
    'outer: loop {
        for m in [1, 2, 5] {
            let n = m * decade;
            if n >= n_max {
                break 'outer;
            }
            out.push(n);
        }
        decade *= 10;
    }
    out.push(n_max);
    out
}

/// Tabulates `||T_[n] e_j||` and `||B^n e_j|| / n` at the checkpoints.
pub fn cesaro_experiment(
    b: &BandParams,
    space: &SpaceDescriptor,
    n_max: usize,
    probes: &[usize],
) -> Result<CesaroTable> {
    if n_max < 10 {
        return Err(crate::Error::InvalidParameter(format!(
            "n_max must be at least 10, got {n_max}"
        )));
    }
    let norm = ProbeNorm::for_space(b, space);
    let marks = checkpoints(n_max);
    let mut rows = Vec::new();
    for &probe in probes {
        rows.extend(cesaro_probe(b, &norm, probe, &marks));
    }
    let report = classify_ergodic(b, space)?;
    let mut diagnostics = Vec::new();
    for &probe in probes {
        let trail: Vec<&CesaroRow> = rows.iter().filter(|r| r.probe == probe && r.n >= 10).collect();
        let (Some(first), Some(last)) = (trail.first(), trail.last()) else {
            continue;
        };
        if report.mean_ergodic.verdict == Verdict::Holds && last.log_cesaro_norm >= first.log_cesaro_norm {
            diagnostics.push(format!(
                "probe e_{probe}: mean ergodic, yet ||T_[n] e_j|| did not decrease between n = {} and n = {}",
                first.n, last.n
            ));
        }
        if report.cesaro_null.verdict == Verdict::Fails && last.log_power_norm_over_n <= first.log_power_norm_over_n {
            diagnostics.push(format!(
                "probe e_{probe}: B^n/n -> 0 fails, yet ||B^n e_j||/n did not grow between n = {} and n = {}",
                first.n, last.n
            ));
        }
    }
    Ok(CesaroTable {
        norm,
        rows,
        diagnostics,
    })
}

fn cesaro_probe(b: &BandParams, norm: &ProbeNorm, probe: usize, marks: &[usize]) -> Vec<CesaroRow> {
    let n_max = *marks.last().unwrap_or(&1);
    let len = probe + n_max + 1;
    let mut x = Scaled {
        values: vec![0.0; len],
        log_scale: 0.0,
    };
    x.values[probe] = 1.0;
    let mut sum = vec![0.0; len];
    let (r, s) = (b.r(), b.s());
    let mut rows = Vec::with_capacity(marks.len());
    let mut next = marks.iter().peekable();
    for n in 1..=n_max {
        let hi = probe + n;
        for k in (probe + 1..=hi).rev() {
            x.values[k] = r * x.values[k] + s * x.values[k - 1];
        }
        x.values[probe] *= r;
        for (acc, v) in sum[probe..=hi].iter_mut().zip(&x.values[probe..=hi]) {
            *acc += v;
        }
        let peak = x.values[probe..=hi]
            .iter()
            .chain(&sum[probe..=hi])
            .fold(0.0f64, |m, v| m.max(v.abs()));
        if peak > RESCALE_ABOVE || (peak < RESCALE_BELOW && peak > 0.0) {
            let f = peak.recip();
            x.values[probe..=hi].iter_mut().for_each(|v| *v *= f);
            sum[probe..=hi].iter_mut().for_each(|v| *v *= f);
            x.log_scale += peak.ln();
        }
        if next.peek() == Some(&&n) {
            next.next();
            let ln_n = (n as f64).ln();
            let power = SeqVector::from_real(&x.values[..=hi], Tail::Zero);
            let mean = SeqVector::from_real(&sum[..=hi], Tail::Zero);
            rows.push(CesaroRow {
                n,
                probe,
                log_cesaro_norm: x.log_scale + norm.log_norm(&mean) - ln_n,
                log_power_norm_over_n: x.log_scale + norm.log_norm(&power) - ln_n,
            });
        }
    }
    rows
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GrowthEstimate {
    pub n: usize,
    /// `ln ||B^n e_0||_{p,v}`.
    pub log_norm: f64,
    /// `||B^n e_0||^{1/n}`.
    pub rate: f64,
    /// `|r| + L|s|`.
    pub spectral_radius: f64,
    pub relative_error: f64,
}

/// Estimates the spectral radius from `||B^n e_0||_{p,v}^{1/n}` with the
/// closed-form column of `B^n`; `p = 1` is accepted here.
pub fn growth_experiment(b: &BandParams, v: &WeightFamily, p: f64, n_max: usize) -> Result<GrowthEstimate> {
    if n_max < 100 {
        return Err(crate::Error::InvalidParameter(format!(
            "n_max must be at least 100, got {n_max}"
        )));
    }
    if !(p.is_finite() && p >= 1.0) {
        return Err(crate::Error::InvalidParameter(format!(
            "p must lie in [1, inf), got {p}"
        )));
    }
    let asym = v.ratio_asymptotics()?;
    let column: LogSeqVector = b.power_column(n_max);
    let log_norm = weighted_norm(&column, p, v).log_norm;
    let rate = (log_norm / n_max as f64).exp();
    let spectral_radius = b.r().abs() + asym.limsup * b.s().abs();
    Ok(GrowthEstimate {
        n: n_max,
        log_norm,
        rate,
        spectral_radius,
        relative_error: (rate - spectral_radius).abs() / spectral_radius,
    })
}
