//! The inverse of `B(r,s) - alpha I` outside the spectral disk, a lower
//! triangular Toeplitz matrix with kernel `d_j = (-s)^j / (r - alpha)^{j+1}`.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::operator::{BandParams, TruncationConfig};
use crate::region::{radial_position, RadialPosition};
use crate::vector::{SeqVector, Tail};
use crate::weights::{ConjugateExponent, RatioAsymptotics, WeightFamily};

/// How far past the asymptotic ratio `L` the tail ratios may sit before the
/// geometric tail bound is trusted.
const SETTLED_BAND: f64 = 0.05;

/// Indices searched for the settled index when the requested horizon is too short.
const SETTLED_SEARCH_LIMIT: usize = 1 << 24;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ResolventEvaluation {
    pub alpha: Complex64,
    /// `r - alpha`.
    pub shift: Complex64,
    pub s: f64,
    /// `q = L|s| / |r - alpha| < 1`.
    pub tail_ratio: f64,
    /// `1 / (|r - alpha| (1 - q))`, the limiting size of a row or column sum.
    pub tail_bound: f64,
}

impl ResolventEvaluation {
    /// Refuses any `alpha` in the closed disk `|r - alpha| <= L|s|`.
    pub fn new(b: &BandParams, alpha: Complex64, asym: &RatioAsymptotics) -> Result<Self> {
        let shift = Complex64::new(b.r(), 0.0) - alpha;
        let distance = shift.norm();
        let radius = asym.limsup * b.s().abs();
        if radial_position(distance, radius) != RadialPosition::Outside {
            return Err(Error::SpectrumViolation {
                re: alpha.re,
                im: alpha.im,
                distance,
                radius,
            });
        }
        let tail_ratio = radius / distance;
        Ok(ResolventEvaluation {
            alpha,
            shift,
            s: b.s(),
            tail_ratio,
            tail_bound: 1.0 / (distance * (1.0 - tail_ratio)),
        })
    }

    /// `d_j = (-s)^j / (r - alpha)^{j+1}`.
    pub fn kernel(&self, j: usize) -> Complex64 {
        let ratio = Complex64::new(-self.s, 0.0) / self.shift;
        ratio.powi(j as i32) / self.shift
    }

    /// Matrix entry `(n, k)`; zero above the diagonal.
    pub fn entry(&self, n: usize, k: usize) -> Complex64 {
        if k > n {
            Complex64::new(0.0, 0.0)
        } else {
            self.kernel(n - k)
        }
    }

    /// Solves `(B - alpha I) x = y` on the stored prefix by forward substitution.
    pub fn solve(&self, y: &SeqVector) -> SeqVector {
        let ys = y.entries();
        let mut xs = Vec::with_capacity(ys.len());
        let mut prev = Complex64::new(0.0, 0.0);
        for &yn in ys {
            prev = (yn - self.s * prev) / self.shift;
            xs.push(prev);
        }
        // the inverse is not finitely supported, so the tail is never zero
        let all_zero = xs.iter().all(|z| *z == Complex64::new(0.0, 0.0));
        let tail = if all_zero && y.tail() == Tail::Zero {
            Tail::Zero
        } else {
            Tail::Unknown
        };
        SeqVector::from_parts(xs, y.exact_len(), tail)
    }
}

/// `(B(r,s) - alpha I)^{-1} y`, stored on `cfg.m` entries.
pub fn resolvent_apply(
    b: &BandParams,
    alpha: Complex64,
    y: &SeqVector,
    cfg: &TruncationConfig,
    v: &WeightFamily,
) -> Result<SeqVector> {
    let asym = v.ratio_asymptotics()?;
    let eval = ResolventEvaluation::new(b, alpha, &asym)?;
    Ok(eval.solve(&y.resized(cfg.m)))
}

/// Sup-norm bounds on the row and column sums of the weighted kernel
/// `|d_{n-k}| v_n / v_k`, which bound the resolvent on `l_1(v)` and
/// `l_inf(v)` and hence on every `lp(v)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SummabilityCertificates {
    pub p: f64,
    /// `sup_n sum_{k<=n} |d_{n-k}| v_n / v_k`.
    pub row_sup: f64,
    /// `sup_k sum_{n>=k} |d_{n-k}| v_n / v_k`.
    pub col_sup: f64,
    pub both_finite: bool,
    /// Sums are exact below this index, bounded geometrically beyond it.
    pub horizon: usize,
    /// First index past which every weight ratio is within the settled band.
    pub settled_index: usize,
    /// `|s| a / |r - alpha|` with `a` the largest ratio past the settled index.
    pub effective_ratio: f64,
    pub tail_ratio: f64,
}

pub fn summability_certificates(
    b: &BandParams,
    alpha: Complex64,
    v: &WeightFamily,
    p: f64,
    horizon: usize,
) -> Result<SummabilityCertificates> {
    let p = ConjugateExponent::new(p)?.p;
    let asym = v.ratio_asymptotics()?;
    let eval = ResolventEvaluation::new(b, alpha, &asym)?;
    let dist = eval.shift.norm();
    let rho = b.s().abs() / dist;
    let limit = asym.limsup;

    let settled = |n0: usize| {
        let a = v.ratio_sup_from(n0);
        (a <= limit * (1.0 + SETTLED_BAND) && rho * a < 1.0).then_some(a)
    };
    let (n0, a) = (0..=SETTLED_SEARCH_LIMIT)
        .find_map(|n0| settled(n0).map(|a| (n0, a)))
        .ok_or_else(|| Error::HypothesisFailure("weight ratios never settle near their limsup".into()))?;
    let h = horizon.max(n0).max(1);
    let contraction = rho * a;

    let log_v: Vec<f64> = (0..=h).map(|n| v.log_value(n)).collect();
    let step = |n: usize| rho * (log_v[n + 1] - log_v[n]).exp();

    // U_k = sum_{j>=k} rho^{j-k} v_j / v_k, closed by the geometric tail at k = h
    let mut col = 1.0 / (1.0 - contraction);
    let mut col_max = col;
    for k in (0..h).rev() {
        col = 1.0 + step(k) * col;
        col_max = col_max.max(col);
    }

    // W_n = sum_{l<=n} rho^l v_n / v_{n-l}
    let mut row = 1.0;
    let mut row_max = row;
    for n in 1..h {
        row = 1.0 + step(n - 1) * row;
        row_max = row_max.max(row);
    }
    // rows n >= h: the part reaching below n0 is controlled by
    // C = max_{j<n0} a^{j-n0} v_{n0} / v_j
    let reach_back = (0..n0)
        .map(|j| ((j as f64 - n0 as f64) * a.ln() + log_v[n0] - log_v[j]).exp())
        .fold(0.0, f64::max);
    let row_tail = (1.0 + reach_back * contraction) / (1.0 - contraction);
    row_max = row_max.max(row_tail);

    let row_sup = row_max / dist;
    let col_sup = col_max / dist;
    Ok(SummabilityCertificates {
        p,
        row_sup,
        col_sup,
        both_finite: row_sup.is_finite() && col_sup.is_finite(),
        horizon: h,
        settled_index: n0,
        effective_ratio: contraction,
        tail_ratio: eval.tail_ratio,
    })
}
