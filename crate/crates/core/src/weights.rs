//! Weight sequences `v = (v_n)` and the ratio constants that drive every
//! spectral statement about `B(r,s)` on `lp(v)`.
//!
//! Three numbers are extracted from the consecutive ratio `v_{n+1}/v_n`:
//!
//! * `N`, the supremum: `B(r,s)` is bounded on `lp(v)` iff it is finite,
//! * `L`, the limsup: the spectrum is the closed disk of radius `L|s|`,
//! * `L1`, the liminf: the residual spectrum contains the open `L1|s|` disk.
//!
//! Every weight is evaluated through its logarithm. `e^{k alpha_n}` leaves the
//! `f64` range long before the indices we care about, so norms switch to a
//! log-sum-exp path once any term leaves the linear range.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::vector::SeqVector;

/// Log-magnitudes below this bound are summed linearly.
pub const LINEAR_RANGE: f64 = 300.0;

/// Relative tolerance used to decide that a radius sits on a critical circle.
pub const CRITICAL_RTOL: f64 = 1e-12;

/// How tabulated data is cross-checked against declared asymptotics.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TailCheck {
    /// Fraction of the stored ratios (taken from the end) forming the tail window.
    pub fraction: f64,
    /// Relative tolerance between the tail window and the declared values.
    pub tolerance: f64,
}

impl Default for TailCheck {
    fn default() -> Self {
        TailCheck {
            fraction: 0.25,
            tolerance: 0.05,
        }
    }
}

impl TailCheck {
    /// Index range `[start, len)` of the tail window over `len` stored items.
    fn window(&self, len: usize) -> std::ops::Range<usize> {
        let width = ((len as f64) * self.fraction).ceil().max(1.0) as usize;
        len.saturating_sub(width.min(len))..len
    }
}

/// A non-negative, non-decreasing sequence `alpha_n -> infinity` with a
/// limiting gap `l = lim (alpha_{n+1} - alpha_n)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AlphaSequence {
    /// `alpha_n = slope * n + offset`.
    Affine { slope: f64, offset: f64 },
    /// `alpha_n = log(n + 1)`.
    LogShift,
    /// Stored prefix; continued linearly with slope `declared_l` past the end.
    Table { values: Vec<f64>, declared_l: f64 },
}

impl AlphaSequence {
    pub fn affine(slope: f64, offset: f64) -> Result<Self> {
        if !(slope.is_finite() && slope > 0.0) {
            return Err(Error::InvalidParameter(format!(
                "affine alpha needs slope > 0, got {slope}"
            )));
        }
        if !(offset.is_finite() && offset >= 0.0) {
            return Err(Error::InvalidParameter(format!(
                "affine alpha needs offset >= 0, got {offset}"
            )));
        }
        Ok(AlphaSequence::Affine { slope, offset })
    }

    pub fn table(values: Vec<f64>, declared_l: f64) -> Result<Self> {
        if values.len() < 2 {
            return Err(Error::InvalidParameter("alpha table needs at least two values".into()));
        }
        if !(declared_l.is_finite() && declared_l >= 0.0) {
            return Err(Error::InvalidParameter(format!(
                "alpha table needs a finite declared gap limit l >= 0, got {declared_l}"
            )));
        }
        if values.iter().any(|a| !a.is_finite() || *a < 0.0) {
            return Err(Error::InvalidParameter(
                "alpha table values must be finite and non-negative".into(),
            ));
        }
        if values.windows(2).any(|w| w[1] < w[0]) {
            return Err(Error::InvalidParameter(
                "alpha table values must be non-decreasing".into(),
            ));
        }
        Ok(AlphaSequence::Table { values, declared_l })
    }

    pub fn value(&self, n: usize) -> f64 {
        match self {
            AlphaSequence::Affine { slope, offset } => slope * n as f64 + offset,
            AlphaSequence::LogShift => (n as f64).ln_1p(),
            AlphaSequence::Table { values, declared_l } => match values.get(n) {
                Some(a) => *a,
                None => {
                    let last = values.len() - 1;
                    values[last] + declared_l * (n - last) as f64
                }
            },
        }
    }

    /// `alpha_{n+1} - alpha_n`, computed without cancellation for the closed forms.
    pub fn gap(&self, n: usize) -> f64 {
        match self {
            AlphaSequence::Affine { slope, .. } => *slope,
            AlphaSequence::LogShift => (1.0 / (n as f64 + 1.0)).ln_1p(),
            AlphaSequence::Table { .. } => self.value(n + 1) - self.value(n),
        }
    }

    /// The limiting gap `l`, as declared or known in closed form.
    pub fn limit_gap(&self) -> f64 {
        match self {
            AlphaSequence::Affine { slope, .. } => *slope,
            AlphaSequence::LogShift => 0.0,
            AlphaSequence::Table { declared_l, .. } => *declared_l,
        }
    }

    pub fn is_closed_form(&self) -> bool {
        !matches!(self, AlphaSequence::Table { .. })
    }

    /// Supremum of the gaps over indices `n >= from`.
    pub fn sup_gap_from(&self, from: usize) -> f64 {
        match self {
            AlphaSequence::Affine { slope, .. } => *slope,
            // gaps log((n+2)/(n+1)) decrease, so the first one is the largest
            AlphaSequence::LogShift => self.gap(from),
            AlphaSequence::Table { values, declared_l } => (from..values.len() - 1)
                .map(|n| self.gap(n))
                .fold(*declared_l, f64::max),
        }
    }

    /// Infimum of the gaps over indices `n >= from`.
    pub fn inf_gap_from(&self, from: usize) -> f64 {
        match self {
            AlphaSequence::Affine { slope, .. } => *slope,
            AlphaSequence::LogShift => 0.0,
            AlphaSequence::Table { values, declared_l } => (from..values.len() - 1)
                .map(|n| self.gap(n))
                .fold(*declared_l, f64::min),
        }
    }

    /// Confirms that the gaps settle at `l` and returns it.
    ///
    /// Closed forms pass trivially. A table passes when every gap in the tail
    /// window lies within `tolerance * max(l, 1)` of the declared `l`; a table
    /// whose gaps keep oscillating has no limit and is rejected.
    pub fn checked_limit_gap(&self, check: TailCheck) -> Result<f64> {
        let l = self.limit_gap();
        if let AlphaSequence::Table { values, .. } = self {
            let gaps = values.len() - 1;
            let band = check.tolerance * l.max(1.0);
            for n in check.window(gaps) {
                let g = self.gap(n);
                if (g - l).abs() > band {
                    return Err(Error::DeclaredMismatch {
                        quantity: "l (limit of alpha gaps)",
                        declared: l,
                        observed: g,
                    });
                }
            }
        }
        Ok(l)
    }
}

/// A positive weight sequence.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum WeightFamily {
    /// `v_n = 1`.
    Unit,
    /// `v_n = a^{alpha_n}`, stored through `log_base = ln a`.
    GeometricExp { log_base: f64, alpha: AlphaSequence },
    /// Stored prefix with declared ratio asymptotics; continued geometrically
    /// with ratio `declared_limsup` past the end.
    Table {
        values: Vec<f64>,
        declared_sup: Option<f64>,
        declared_limsup: f64,
        declared_liminf: f64,
    },
}

impl WeightFamily {
    /// `v_n = base^{alpha_n}`.
    pub fn geometric(base: f64, alpha: AlphaSequence) -> Result<Self> {
        if !(base.is_finite() && base > 0.0) {
            return Err(Error::InvalidParameter(format!(
                "geometric weight needs base > 0, got {base}"
            )));
        }
        Ok(WeightFamily::GeometricExp {
            log_base: base.ln(),
            alpha,
        })
    }

    /// `v_n = a^n`.
    pub fn power(base: f64) -> Result<Self> {
        Self::geometric(
            base,
            AlphaSequence::Affine {
                slope: 1.0,
                offset: 0.0,
            },
        )
    }

    /// `v_n = n + 1`, i.e. `e^{log(n+1)}`.
    pub fn linear() -> Self {
        WeightFamily::GeometricExp {
            log_base: 1.0,
            alpha: AlphaSequence::LogShift,
        }
    }

    pub fn table(
        values: Vec<f64>,
        declared_sup: Option<f64>,
        declared_limsup: f64,
        declared_liminf: f64,
    ) -> Result<Self> {
        if values.len() < 2 {
            return Err(Error::InvalidParameter("weight table needs at least two values".into()));
        }
        if values.iter().any(|v| !(v.is_finite() && *v > 0.0)) {
            return Err(Error::InvalidParameter(
                "weight table values must be finite and positive".into(),
            ));
        }
        if !(declared_limsup.is_finite() && declared_limsup > 0.0) {
            return Err(Error::InvalidParameter(format!(
                "weight table needs a finite declared limsup L > 0, got {declared_limsup}"
            )));
        }
        if !(declared_liminf >= 0.0 && declared_liminf <= declared_limsup) {
            return Err(Error::InvalidParameter(format!(
                "weight table needs 0 <= L1 <= L, got L1 = {declared_liminf}, L = {declared_limsup}"
            )));
        }
        if let Some(n) = declared_sup {
            if n.is_nan() || n < declared_limsup {
                return Err(Error::InvalidParameter(format!(
                    "weight table needs N >= L, got N = {n}, L = {declared_limsup}"
                )));
            }
        }
        Ok(WeightFamily::Table {
            values,
            declared_sup,
            declared_limsup,
            declared_liminf,
        })
    }

    pub fn log_value(&self, n: usize) -> f64 {
        match self {
            WeightFamily::Unit => 0.0,
            WeightFamily::GeometricExp { log_base, alpha } => log_base * alpha.value(n),
            WeightFamily::Table {
                values,
                declared_limsup,
                ..
            } => match values.get(n) {
                Some(v) => v.ln(),
                None => {
                    let last = values.len() - 1;
                    values[last].ln() + declared_limsup.ln() * (n - last) as f64
                }
            },
        }
    }

    pub fn value(&self, n: usize) -> f64 {
        self.log_value(n).exp()
    }

    /// `ln(v_{n+1} / v_n)`.
    pub fn log_ratio(&self, n: usize) -> f64 {
        match self {
            WeightFamily::Unit => 0.0,
            WeightFamily::GeometricExp { log_base, alpha } => log_base * alpha.gap(n),
            WeightFamily::Table { .. } => self.log_value(n + 1) - self.log_value(n),
        }
    }

    pub fn ratio(&self, n: usize) -> f64 {
        self.log_ratio(n).exp()
    }

    /// Supremum of `v_{n+1}/v_n` over `n >= from`.
    pub fn ratio_sup_from(&self, from: usize) -> f64 {
        match self {
            WeightFamily::Unit => 1.0,
            WeightFamily::GeometricExp { log_base, alpha } => {
                let gap = if *log_base >= 0.0 {
                    alpha.sup_gap_from(from)
                } else {
                    alpha.inf_gap_from(from)
                };
                (log_base * gap).exp()
            }
            WeightFamily::Table {
                values,
                declared_limsup,
                ..
            } => (from..values.len() - 1)
                .map(|n| self.ratio(n))
                .fold(*declared_limsup, f64::max),
        }
    }

    /// The reciprocal weight `1/v`, the weight of the dual space `l_{p'}(1/v)`.
    pub fn reciprocal(&self) -> Result<Self> {
        match self {
            WeightFamily::Unit => Ok(WeightFamily::Unit),
            WeightFamily::GeometricExp { log_base, alpha } => Ok(WeightFamily::GeometricExp {
                log_base: -log_base,
                alpha: alpha.clone(),
            }),
            WeightFamily::Table {
                values,
                declared_limsup,
                declared_liminf,
                ..
            } => {
                if *declared_liminf <= 0.0 {
                    return Err(Error::UnboundedRatio);
                }
                let stored_min = values.windows(2).map(|w| w[1] / w[0]).fold(*declared_liminf, f64::min);
                Ok(WeightFamily::Table {
                    values: values.iter().map(|v| v.recip()).collect(),
                    declared_sup: Some(stored_min.recip()),
                    declared_limsup: declared_liminf.recip(),
                    declared_liminf: declared_limsup.recip(),
                })
            }
        }
    }

    pub fn ratio_asymptotics(&self) -> Result<RatioAsymptotics> {
        self.ratio_asymptotics_with(TailCheck::default())
    }

    /// `N`, `L` and `L1` of the ratio sequence.
    ///
    /// Closed forms are exact. Tables report their declared `L` and `L1`
    /// after checking them against the tail window, and take `N` as the
    /// largest of the stored ratios, the declared `L` and the declared `N`.
    pub fn ratio_asymptotics_with(&self, check: TailCheck) -> Result<RatioAsymptotics> {
        let asym = match self {
            WeightFamily::Unit => RatioAsymptotics {
                sup: 1.0,
                limsup: 1.0,
                liminf: 1.0,
                exact: true,
            },
            WeightFamily::GeometricExp { log_base, alpha } => {
                let l = alpha.checked_limit_gap(check)?;
                let extreme_gap = if *log_base >= 0.0 {
                    alpha.sup_gap_from(0)
                } else {
                    alpha.inf_gap_from(0)
                };
                let limit = (log_base * l).exp();
                RatioAsymptotics {
                    sup: (log_base * extreme_gap).exp(),
                    limsup: limit,
                    liminf: limit,
                    exact: alpha.is_closed_form(),
                }
            }
            WeightFamily::Table {
                values,
                declared_sup,
                declared_limsup,
                declared_liminf,
            } => {
                let ratios: Vec<f64> = values.windows(2).map(|w| w[1] / w[0]).collect();
                let stored_max = ratios.iter().copied().fold(0.0, f64::max);
                if let Some(n) = declared_sup {
                    if *n < stored_max * (1.0 - CRITICAL_RTOL) {
                        return Err(Error::DeclaredMismatch {
                            quantity: "N (sup of v(n+1)/v(n))",
                            declared: *n,
                            observed: stored_max,
                        });
                    }
                }
                let window = &ratios[check.window(ratios.len())];
                let tail_max = window.iter().copied().fold(f64::NEG_INFINITY, f64::max);
                let tail_min = window.iter().copied().fold(f64::INFINITY, f64::min);
                let band = check.tolerance * declared_limsup;
                if (tail_max - declared_limsup).abs() > band {
                    return Err(Error::DeclaredMismatch {
                        quantity: "L (limsup of v(n+1)/v(n))",
                        declared: *declared_limsup,
                        observed: tail_max,
                    });
                }
                if (tail_min - declared_liminf).abs() > band {
                    return Err(Error::DeclaredMismatch {
                        quantity: "L1 (liminf of v(n+1)/v(n))",
                        declared: *declared_liminf,
                        observed: tail_min,
                    });
                }
                RatioAsymptotics {
                    sup: stored_max.max(*declared_limsup).max(declared_sup.unwrap_or(0.0)),
                    limsup: *declared_limsup,
                    liminf: *declared_liminf,
                    exact: false,
                }
            }
        };
        if !asym.sup.is_finite() {
            return Err(Error::UnboundedRatio);
        }
        debug_assert!(asym.liminf <= asym.limsup * (1.0 + CRITICAL_RTOL));
        debug_assert!(asym.limsup <= asym.sup * (1.0 + CRITICAL_RTOL));
        Ok(asym)
    }
}

/// `N = sup`, `L = limsup`, `L1 = liminf` of `v_{n+1}/v_n`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RatioAsymptotics {
    pub sup: f64,
    pub limsup: f64,
    pub liminf: f64,
    /// True when derived in closed form, false for declared table values.
    pub exact: bool,
}

/// `p` together with its conjugate `p' = p/(p-1)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ConjugateExponent {
    pub p: f64,
    pub p_prime: f64,
}

impl ConjugateExponent {
    pub fn new(p: f64) -> Result<Self> {
        if !(p.is_finite() && p > 1.0) {
            return Err(Error::InvalidParameter(format!(
                "exponent p must lie in (1, inf), got {p}"
            )));
        }
        Ok(ConjugateExponent {
            p,
            p_prime: p / (p - 1.0),
        })
    }
}

/// Anything whose entries can be read back as `ln|x_n|`.
pub trait LogMagnitudes {
    fn len(&self) -> usize;
    /// `ln|x_n|`; `-inf` for a zero entry.
    fn log_abs(&self, n: usize) -> f64;
    /// Whether entries past `len()` are known to vanish.
    fn tail_is_zero(&self) -> bool;
    fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// A norm reported both as a logarithm and (when representable) linearly.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct WeightedNorm {
    pub log_norm: f64,
    /// `exp(log_norm)`; `inf` when it overflows.
    pub value: f64,
    /// Set when the vector's tail is unknown: the stored prefix only bounds
    /// the true norm from below.
    pub lower_bound: bool,
}

/// `||x||_{p,v} = ||(x_n v_n)||_p` for `p >= 1`.
pub fn weighted_norm<X: LogMagnitudes + ?Sized>(x: &X, p: f64, v: &WeightFamily) -> WeightedNorm {
    assert!(p >= 1.0 && p.is_finite(), "weighted_norm needs 1 <= p < inf");
    let logs: Vec<f64> = (0..x.len())
        .map(|n| x.log_abs(n) + v.log_value(n))
        .filter(|t| *t > f64::NEG_INFINITY)
        .collect();
    let lower_bound = !x.tail_is_zero();
    if logs.is_empty() {
        return WeightedNorm {
            log_norm: f64::NEG_INFINITY,
            value: 0.0,
            lower_bound,
        };
    }
    let peak = logs.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let floor = logs.iter().copied().fold(f64::INFINITY, f64::min);
    let log_norm = if peak < LINEAR_RANGE && floor > -LINEAR_RANGE {
        let sum: f64 = logs.iter().map(|t| t.exp().powf(p)).sum();
        sum.ln() / p
    } else {
        let sum: f64 = logs.iter().map(|t| (p * (t - peak)).exp()).sum();
        peak + sum.ln() / p
    };
    WeightedNorm {
        log_norm,
        value: log_norm.exp(),
        lower_bound,
    }
}

/// Outcome of a convergence test.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SeriesVerdict {
    Converges,
    Diverges,
    Undetermined,
}

fn on_critical_log_radius(log_rho: f64, log_radius: f64) -> std::cmp::Ordering {
    use std::cmp::Ordering;
    let band = CRITICAL_RTOL * log_radius.abs().max(1.0);
    if (log_rho - log_radius).abs() <= band {
        Ordering::Equal
    } else if log_rho < log_radius {
        Ordering::Less
    } else {
        Ordering::Greater
    }
}

/// Logarithmic test on stored data: with `t_n = -ln(term_n)`, the series
/// converges when `t_n / ln(n+1)` stays above `1 + tol` across the tail
/// window and diverges when it stays below `1 - tol`.
fn logarithmic_test(neg_log_terms: &[f64], check: TailCheck) -> SeriesVerdict {
    // index 0 has ln(1) = 0 and is skipped
    let usable = neg_log_terms.len().saturating_sub(1);
    if usable == 0 {
        return SeriesVerdict::Undetermined;
    }
    let window = check.window(usable);
    let quotients: Vec<f64> = window
        .map(|i| {
            let n = i + 1;
            neg_log_terms[n] / (n as f64).ln_1p()
        })
        .collect();
    let lo = quotients.iter().copied().fold(f64::INFINITY, f64::min);
    let hi = quotients.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    if lo > 1.0 + check.tolerance {
        SeriesVerdict::Converges
    } else if hi < 1.0 - check.tolerance {
        SeriesVerdict::Diverges
    } else {
        SeriesVerdict::Undetermined
    }
}

/// Decides whether `sum_n rho^{n p'} / v_n^{p'}` converges, i.e. whether the
/// geometric sequence of modulus ratio `rho` lies in `l_{p'}(1/v)`.
pub fn boundary_series_test(v: &WeightFamily, p: f64, rho: f64) -> SeriesVerdict {
    boundary_series_test_with(v, p, rho, TailCheck::default())
}

pub fn boundary_series_test_with(v: &WeightFamily, p: f64, rho: f64, check: TailCheck) -> SeriesVerdict {
    use std::cmp::Ordering::*;
    let Ok(exp) = ConjugateExponent::new(p) else {
        return SeriesVerdict::Undetermined;
    };
    if rho.is_nan() || rho < 0.0 {
        return SeriesVerdict::Undetermined;
    }
    if rho == 0.0 {
        // only the n = 0 term survives
        return SeriesVerdict::Converges;
    }
    let log_rho = rho.ln();
    // each family: log of the critical radius, then the verdict on that circle
    match v {
        WeightFamily::Unit => match on_critical_log_radius(log_rho, 0.0) {
            Less => SeriesVerdict::Converges,
            // terms identically 1 on the circle
            Equal | Greater => SeriesVerdict::Diverges,
        },
        WeightFamily::GeometricExp { log_base, alpha } => {
            let critical = log_base * alpha.limit_gap();
            match on_critical_log_radius(log_rho, critical) {
                Less => SeriesVerdict::Converges,
                Greater => SeriesVerdict::Diverges,
                Equal => match alpha {
                    // constant terms a^{-offset p'}
                    AlphaSequence::Affine { .. } => SeriesVerdict::Diverges,
                    // terms (n+1)^{-ln(a) p'}: a p-series
                    AlphaSequence::LogShift => {
                        if log_base * exp.p_prime > 1.0 {
                            SeriesVerdict::Converges
                        } else {
                            SeriesVerdict::Diverges
                        }
                    }
                    AlphaSequence::Table { values, .. } => {
                        let t: Vec<f64> = (0..values.len())
                            .map(|n| exp.p_prime * (log_base * alpha.value(n) - n as f64 * critical))
                            .collect();
                        logarithmic_test(&t, check)
                    }
                },
            }
        }
        WeightFamily::Table {
            values,
            declared_liminf,
            ..
        } => {
            if *declared_liminf == 0.0 {
                return SeriesVerdict::Diverges;
            }
            let critical = declared_liminf.ln();
            match on_critical_log_radius(log_rho, critical) {
                Less => SeriesVerdict::Converges,
                Greater => SeriesVerdict::Diverges,
                Equal => {
                    let t: Vec<f64> = (0..values.len())
                        .map(|n| exp.p_prime * (values[n].ln() - n as f64 * critical))
                        .collect();
                    logarithmic_test(&t, check)
                }
            }
        }
    }
}

/// The weight `v_k(n) = e^{k alpha_n}` of the `k`-th grade of a power series space.
pub fn grade_weight(alpha: &AlphaSequence, k: u32) -> WeightFamily {
    assert!(k >= 1, "grades start at k = 1");
    WeightFamily::GeometricExp {
        log_base: k as f64,
        alpha: alpha.clone(),
    }
}

/// The dual grade `1/v_k(n) = e^{-k alpha_n}`.
pub fn dual_grade_weight(alpha: &AlphaSequence, k: u32) -> WeightFamily {
    assert!(k >= 1, "grades start at k = 1");
    WeightFamily::GeometricExp {
        log_base: -(k as f64),
        alpha: alpha.clone(),
    }
}

/// The isometry `T_v: lp(v) -> lp`, `(T_v x)_n = v_n x_n`, on the stored prefix.
pub fn to_unweighted(x: &SeqVector, v: &WeightFamily) -> SeqVector {
    rescale(x, |n| v.value(n))
}

/// Inverse of [`to_unweighted`].
pub fn from_unweighted(y: &SeqVector, v: &WeightFamily) -> SeqVector {
    rescale(y, |n| v.value(n).recip())
}

fn rescale(x: &SeqVector, factor: impl Fn(usize) -> f64) -> SeqVector {
    let entries = x.entries().iter().enumerate().map(|(n, z)| z * factor(n)).collect();
    SeqVector::from_parts(entries, x.exact_len(), x.tail())
}

#[cfg(test)]
mod tests {
    use super::*;

    struct Dense(Vec<f64>);

    impl LogMagnitudes for Dense {
        fn len(&self) -> usize {
            self.0.len()
        }
        fn log_abs(&self, n: usize) -> f64 {
            self.0[n].abs().ln()
        }
        fn tail_is_zero(&self) -> bool {
            true
        }
    }

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol * b.abs().max(1.0)
    }

    #[test]
    fn unit_ratios_are_one() {
        let a = WeightFamily::Unit.ratio_asymptotics().unwrap();
        assert_eq!((a.sup, a.limsup, a.liminf, a.exact), (1.0, 1.0, 1.0, true));
    }

    #[test]
    fn geometric_affine_has_constant_ratio() {
        let v = WeightFamily::geometric(2.0, AlphaSequence::affine(1.0, 1.0).unwrap()).unwrap();
        let a = v.ratio_asymptotics().unwrap();
        assert!(close(a.sup, 2.0, 1e-15));
        assert!(close(a.limsup, 2.0, 1e-15));
        assert!(close(a.liminf, 2.0, 1e-15));
    }

    #[test]
    fn linear_weight_sup_is_attained_at_zero() {
        // (n+2)/(n+1): largest at n = 0, tends to 1
        let a = WeightFamily::linear().ratio_asymptotics().unwrap();
        assert!(close(a.sup, 2.0, 1e-15));
        assert_eq!(a.limsup, 1.0);
        assert_eq!(a.liminf, 1.0);
        let v = WeightFamily::linear();
        assert!(close(v.ratio(999), 1001.0 / 1000.0, 1e-14));
    }

    #[test]
    fn table_weight_matches_declarations() {
        let values: Vec<f64> = (0..200).map(|n| 3f64.powi(n)).collect();
        let v = WeightFamily::table(values, None, 3.0, 3.0).unwrap();
        let a = v.ratio_asymptotics().unwrap();
        assert!(close(a.sup, 3.0, 1e-12));
        assert!(!a.exact);
    }

    #[test]
    fn table_weight_rejects_wrong_limsup() {
        let values: Vec<f64> = (0..200).map(|n| 3f64.powi(n)).collect();
        let v = WeightFamily::table(values, None, 2.0, 2.0).unwrap();
        assert!(matches!(v.ratio_asymptotics(), Err(Error::DeclaredMismatch { .. })));
    }

    #[test]
    fn table_weight_rejects_sup_below_data() {
        let values = vec![1.0, 10.0, 20.0, 40.0, 80.0];
        let v = WeightFamily::table(values, Some(2.0), 2.0, 2.0).unwrap();
        assert!(matches!(v.ratio_asymptotics(), Err(Error::DeclaredMismatch { .. })));
    }

    #[test]
    fn unbounded_ratio_is_reported() {
        // a^{alpha_n} with a huge gap overflows the sup
        let v = WeightFamily::geometric(1e300, AlphaSequence::affine(5.0, 0.0).unwrap()).unwrap();
        assert_eq!(v.ratio_asymptotics(), Err(Error::UnboundedRatio));
    }

    #[test]
    fn alpha_table_needs_monotone_values() {
        assert!(AlphaSequence::table(vec![0.0, 2.0, 1.0], 1.0).is_err());
        assert!(AlphaSequence::table(vec![0.0, -1.0], 1.0).is_err());
        assert!(AlphaSequence::table(vec![0.0], 1.0).is_err());
    }

    #[test]
    fn oscillating_alpha_gaps_have_no_limit() {
        let values: Vec<f64> = (0..100).map(|n| (n + n / 2) as f64).collect();
        let a = AlphaSequence::table(values, 1.5).unwrap();
        assert!(a.checked_limit_gap(TailCheck::default()).is_err());
    }

    #[test]
    fn conjugate_exponent() {
        let c = ConjugateExponent::new(3.0).unwrap();
        assert!((1.0 / c.p + 1.0 / c.p_prime - 1.0).abs() < 1e-15);
        assert!(ConjugateExponent::new(1.0).is_err());
        assert!(ConjugateExponent::new(f64::INFINITY).is_err());
    }

    #[test]
    fn norm_of_basis_vector_is_the_weight() {
        let v = WeightFamily::power(3.0).unwrap();
        let mut x = vec![0.0; 6];
        x[4] = 1.0;
        let n = weighted_norm(&Dense(x), 2.5, &v);
        assert!(close(n.value, 81.0, 1e-13));
    }

    #[test]
    fn norm_direct_arithmetic() {
        let v = WeightFamily::table(vec![1.0, 2.0, 4.0], None, 2.0, 2.0).unwrap();
        let n = weighted_norm(&Dense(vec![1.0, 1.0]), 2.0, &v);
        assert!(close(n.value, 5f64.sqrt(), 1e-15));
    }

    #[test]
    fn norm_switches_to_log_domain() {
        // grade 20 of alpha_n = n + 1: weight e^{20 * 51} at n = 50
        let v = grade_weight(&AlphaSequence::affine(1.0, 1.0).unwrap(), 20);
        let mut x = vec![0.0; 51];
        x[50] = 1.0;
        let n = weighted_norm(&Dense(x), 2.0, &v);
        assert!(close(n.log_norm, 1020.0, 1e-14));
        assert_eq!(n.value, f64::INFINITY);
    }

    #[test]
    fn norm_of_zero_vector() {
        let n = weighted_norm(&Dense(vec![0.0; 4]), 2.0, &WeightFamily::Unit);
        assert_eq!(n.value, 0.0);
    }

    #[test]
    fn series_unit() {
        assert_eq!(
            boundary_series_test(&WeightFamily::Unit, 2.0, 0.5),
            SeriesVerdict::Converges
        );
        assert_eq!(
            boundary_series_test(&WeightFamily::Unit, 2.0, 1.0),
            SeriesVerdict::Diverges
        );
        assert_eq!(
            boundary_series_test(&WeightFamily::Unit, 2.0, 0.0),
            SeriesVerdict::Converges
        );
    }

    #[test]
    fn series_power_weight_on_its_circle() {
        // v_n = 2^n, rho = 2: every term is 1
        let v = WeightFamily::power(2.0).unwrap();
        assert_eq!(boundary_series_test(&v, 2.0, 2.0), SeriesVerdict::Diverges);
        assert_eq!(boundary_series_test(&v, 2.0, 1.999), SeriesVerdict::Converges);
    }

    #[test]
    fn series_power_times_linear_weight_converges_on_circle() {
        // v_n = 2^n (n+1) = 2^{n + log2(n+1)}; terms 1/(n+1)^2 at rho = 2
        let alpha: Vec<f64> = (0..512).map(|n| n as f64 + (n as f64 + 1.0).log2()).collect();
        let v = WeightFamily::geometric(2.0, AlphaSequence::table(alpha, 1.0).unwrap()).unwrap();
        assert_eq!(boundary_series_test(&v, 2.0, 2.0), SeriesVerdict::Converges);
        // p = 1.5 gives p' = 3, still convergent
        assert_eq!(boundary_series_test(&v, 1.5, 2.0), SeriesVerdict::Converges);
    }

    #[test]
    fn series_log_shift_is_a_p_series_on_the_circle() {
        // terms (n+1)^{-k p'}: converge iff k p' > 1
        let s = grade_weight(&AlphaSequence::LogShift, 1);
        assert_eq!(boundary_series_test(&s, 2.0, 1.0), SeriesVerdict::Converges);
        let dual = dual_grade_weight(&AlphaSequence::LogShift, 1);
        assert_eq!(boundary_series_test(&dual, 2.0, 1.0), SeriesVerdict::Diverges);
        // ln a = 0.4, p' = 2 -> exponent 0.8 <= 1
        let weak = WeightFamily::GeometricExp {
            log_base: 0.4,
            alpha: AlphaSequence::LogShift,
        };
        assert_eq!(boundary_series_test(&weak, 2.0, 1.0), SeriesVerdict::Diverges);
    }

    #[test]
    fn series_table_weight_inconclusive_on_circle() {
        // v_n = 2^n sqrt(n+1)-ish: t_n / ln(n+1) = p'/2 = 1 exactly -> undetermined band
        let values: Vec<f64> = (0..300).map(|n| 2f64.powi(n) * ((n + 1) as f64).sqrt()).collect();
        let v = WeightFamily::table(values, None, 2.0, 2.0).unwrap();
        assert_eq!(boundary_series_test(&v, 2.0, 2.0), SeriesVerdict::Undetermined);
        assert_eq!(boundary_series_test(&v, 2.0, 1.0), SeriesVerdict::Converges);
        assert_eq!(boundary_series_test(&v, 2.0, 3.0), SeriesVerdict::Diverges);
    }

    #[test]
    fn grade_ratios() {
        let g = grade_weight(&AlphaSequence::affine(1.0, 1.0).unwrap(), 1);
        let a = g.ratio_asymptotics().unwrap();
        assert!(close(a.sup, std::f64::consts::E, 1e-15));
        assert!(close(a.limsup, std::f64::consts::E, 1e-15));

        let g = grade_weight(&AlphaSequence::LogShift, 3);
        let a = g.ratio_asymptotics().unwrap();
        assert!(close(a.sup, 8.0, 1e-14));
        assert_eq!((a.limsup, a.liminf), (1.0, 1.0));
    }

    #[test]
    fn dual_grade_ratios_use_the_smallest_gap() {
        let alpha = AlphaSequence::table(vec![0.0, 3.0, 5.0, 6.5, 8.0, 9.5, 11.0, 12.5], 1.5).unwrap();
        let a = dual_grade_weight(&alpha, 2).ratio_asymptotics().unwrap();
        assert!(close(a.sup, (-2.0f64 * 1.5).exp(), 1e-14));
        assert!(close(a.limsup, (-3.0f64).exp(), 1e-14));
    }

    #[test]
    fn reciprocal_of_table_swaps_limits() {
        let values: Vec<f64> = (0..100)
            .map(|n| {
                if n % 2 == 0 {
                    4f64.powi(n / 2) * 2f64.powi(n / 2)
                } else {
                    4f64.powi(n / 2 + 1) * 2f64.powi(n / 2)
                }
            })
            .collect();
        let v = WeightFamily::table(values, None, 4.0, 2.0).unwrap();
        v.ratio_asymptotics().unwrap();
        let w = v.reciprocal().unwrap();
        let a = w.ratio_asymptotics().unwrap();
        assert!(close(a.limsup, 0.5, 1e-14));
        assert!(close(a.liminf, 0.25, 1e-14));
        assert!(close(a.sup, 0.5, 1e-14));
    }
}
