//! The lower-bidiagonal operator `B(r,s)x = (s x_{n-1} + r x_n)` with `x_{-1} = 0`.
//!
//! Because the matrix is lower triangular, the first `m` entries of `B^n x`
//! only depend on the first `m` entries of `x`; truncating to a prefix is
//! therefore exact for `B` and its powers, and only the adjoint has to look
//! past the end.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use statrs::function::gamma::ln_gamma;

use crate::error::{Error, Result};
use crate::vector::{LogSeqVector, SeqVector, Tail};
use crate::weights::RatioAsymptotics;

/// Binomial rows up to this order are built by the multiplicative recurrence,
/// which is more accurate than differences of log-gamma values.
const DIRECT_BINOMIAL_MAX: usize = 1000;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BandParams {
    r: f64,
    s: f64,
}

impl BandParams {
    pub fn new(r: f64, s: f64) -> Result<Self> {
        if !(r.is_finite() && s.is_finite()) {
            return Err(Error::InvalidParameter(format!(
                "r and s must be finite, got r = {r}, s = {s}"
            )));
        }
        if r == 0.0 || s == 0.0 {
            return Err(Error::InvalidParameter(format!(
                "B(r,s) needs r != 0 and s != 0, got r = {r}, s = {s}"
            )));
        }
        Ok(BandParams { r, s })
    }

    pub fn r(&self) -> f64 {
        self.r
    }

    pub fn s(&self) -> f64 {
        self.s
    }

    /// `y_n = s x_{n-1} + r x_n` on the stored prefix.
    pub fn apply(&self, x: &SeqVector) -> SeqVector {
        let mut entries = x.entries().to_vec();
        let hi = entries.len() - 1;
        apply_in_place(self.r, self.s, &mut entries, hi);
        // x_{m-1} feeds y_m, which is not stored
        let spills = x.get(hi) != Complex64::new(0.0, 0.0);
        let tail = if x.tail() == Tail::Zero && !spills {
            Tail::Zero
        } else {
            Tail::Unknown
        };
        SeqVector::from_parts(entries, x.exact_len(), tail)
    }

    /// `(B - alpha I) x`.
    pub fn apply_shifted(&self, alpha: Complex64, x: &SeqVector) -> SeqVector {
        let y = self.apply(x);
        let entries = y
            .entries()
            .iter()
            .zip(x.entries())
            .map(|(b, a)| b - alpha * a)
            .collect();
        SeqVector::from_parts(entries, y.exact_len(), y.tail())
    }

    /// `y_n = r x_n + s x_{n+1}`.
    ///
    /// Past the stored prefix `x_m` is taken as zero. That is exact for an
    /// asserted-zero tail; otherwise the last entry is demoted to inexact.
    pub fn apply_adjoint(&self, x: &SeqVector) -> SeqVector {
        let m = x.len();
        let xs = x.entries();
        let entries: Vec<Complex64> = (0..m)
            .map(|n| {
                let next = if n + 1 < m { xs[n + 1] } else { Complex64::new(0.0, 0.0) };
                self.r * xs[n] + self.s * next
            })
            .collect();
        let fully_known = x.tail() == Tail::Zero && x.exact_len() == m;
        let exact_len = if fully_known {
            m
        } else {
            x.exact_len().saturating_sub(1)
        };
        SeqVector::from_parts(entries, exact_len, x.tail())
    }

    /// Column `B^n e_0`, entries `binom(n,k) r^{n-k} s^k` for `k <= n`,
    /// kept as log-magnitude and sign.
    pub fn power_column(&self, n: usize) -> LogSeqVector {
        let log_r = self.r.abs().ln();
        let log_s = self.s.abs().ln();
        let log_binom = log_binomial_row(n);
        let mut log_abs = Vec::with_capacity(n + 1);
        let mut sign = Vec::with_capacity(n + 1);
        for (k, lb) in log_binom.into_iter().enumerate() {
            log_abs.push(lb + (n - k) as f64 * log_r + k as f64 * log_s);
            let negative = (self.r < 0.0 && (n - k) % 2 == 1) ^ (self.s < 0.0 && k % 2 == 1);
            sign.push(if negative { -1.0 } else { 1.0 });
        }
        LogSeqVector { log_abs, sign }
    }

    /// Cesàro mean `(1/n) sum_{j=1}^n B^j x`.
    pub fn cesaro_apply(&self, n: usize, x: &SeqVector) -> SeqVector {
        assert!(n >= 1, "the Cesàro mean needs n >= 1");
        let mut current = x.entries().to_vec();
        let mut sum = vec![Complex64::new(0.0, 0.0); current.len()];
        let last = current.len() - 1;
        // entries past the support of B^j x stay zero; only sweep the live part
        let mut hi = x.last_nonzero().unwrap_or(0);
        let mut spilled = false;
        for _ in 0..n {
            if hi == last && current[last] != Complex64::new(0.0, 0.0) {
                spilled = true;
            }
            hi = (hi + 1).min(last);
            apply_in_place(self.r, self.s, &mut current, hi);
            for (acc, c) in sum[..=hi].iter_mut().zip(&current[..=hi]) {
                *acc += c;
            }
        }
        let scale = 1.0 / n as f64;
        let entries = sum.into_iter().map(|z| z * scale).collect();
        let tail = if x.tail() == Tail::Zero && !spilled {
            Tail::Zero
        } else {
            Tail::Unknown
        };
        SeqVector::from_parts(entries, x.exact_len(), tail)
    }

    /// The `m x m` truncation `P_m B P_m`.
    pub fn finite_section(&self, m: usize) -> LowerBidiagonal {
        assert!(m >= 1, "a finite section needs m >= 1");
        LowerBidiagonal {
            dim: m,
            diag: self.r,
            sub: self.s,
        }
    }
}

/// Applies `B` to `xs[..=hi]` in place, walking down so that `x_{n-1}` is
/// still the old value when `y_n` is formed.
fn apply_in_place(r: f64, s: f64, xs: &mut [Complex64], hi: usize) {
    for n in (1..=hi).rev() {
        xs[n] = r * xs[n] + s * xs[n - 1];
    }
    xs[0] *= r;
}

/// `ln binom(n, k)` for `k = 0..=n`.
fn log_binomial_row(n: usize) -> Vec<f64> {
    if n <= DIRECT_BINOMIAL_MAX {
        let mut row = Vec::with_capacity(n + 1);
        let mut c = 1.0f64;
        for k in 0..=n {
            row.push(c.ln());
            c = c * (n - k) as f64 / (k + 1) as f64;
        }
        row
    } else {
        let top = ln_gamma(n as f64 + 1.0);
        (0..=n)
            .map(|k| top - ln_gamma(k as f64 + 1.0) - ln_gamma((n - k) as f64 + 1.0))
            .collect()
    }
}

/// A constant-band lower-bidiagonal matrix: `diag` on the diagonal, `sub` below it.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LowerBidiagonal {
    pub dim: usize,
    pub diag: f64,
    pub sub: f64,
}

impl LowerBidiagonal {
    pub fn get(&self, i: usize, j: usize) -> f64 {
        assert!(i < self.dim && j < self.dim);
        if i == j {
            self.diag
        } else if i == j + 1 {
            self.sub
        } else {
            0.0
        }
    }

    pub fn to_dense(&self) -> Vec<Vec<f64>> {
        (0..self.dim)
            .map(|i| (0..self.dim).map(|j| self.get(i, j)).collect())
            .collect()
    }

    pub fn matvec(&self, x: &[Complex64]) -> Vec<Complex64> {
        assert_eq!(x.len(), self.dim);
        (0..self.dim)
            .map(|i| {
                let below = if i > 0 {
                    self.sub * x[i - 1]
                } else {
                    Complex64::new(0.0, 0.0)
                };
                self.diag * x[i] + below
            })
            .collect()
    }

    /// Triangular, so the eigenvalues are the diagonal entries.
    pub fn eigenvalues(&self) -> Vec<f64> {
        vec![self.diag; self.dim]
    }
}

/// Exponent `p` for the operator-norm bounds; `p = 1` is allowed here.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NormBounds {
    /// `(|r|^p + N |s|^p)^{1/p}`.
    pub lower_stated: f64,
    /// `(|r|^p + N^p |s|^p)^{1/p}`, the supremum of the per-basis quotients.
    pub lower_basis_sup: f64,
    /// `|r| + N|s|`.
    pub upper: f64,
    /// The two lower bounds differ whenever `N != 1`.
    pub lower_bounds_disagree: bool,
}

/// Bounds on `||B(r,s)||` over `lp(v)`.
pub fn operator_norm_bounds(b: &BandParams, p: f64, asym: &RatioAsymptotics) -> Result<NormBounds> {
    if !(p.is_finite() && p >= 1.0) {
        return Err(Error::InvalidParameter(format!(
            "norm bounds need 1 <= p < inf, got {p}"
        )));
    }
    if !asym.sup.is_finite() {
        return Err(Error::UnboundedRatio);
    }
    let (r, s, n) = (b.r().abs(), b.s().abs(), asym.sup);
    let lower_stated = (r.powf(p) + n * s.powf(p)).powf(p.recip());
    let lower_basis_sup = (r.powf(p) + (n * s).powf(p)).powf(p.recip());
    Ok(NormBounds {
        lower_stated,
        lower_basis_sup,
        upper: r + n * s,
        lower_bounds_disagree: (lower_stated - lower_basis_sup).abs() > 1e-12 * lower_basis_sup,
    })
}

/// Truncation length and tolerance for numerical evaluations.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TruncationConfig {
    pub m: usize,
    pub tol: f64,
}

impl Default for TruncationConfig {
    fn default() -> Self {
        TruncationConfig { m: 512, tol: 1e-10 }
    }
}

impl TruncationConfig {
    pub fn new(m: usize, tol: f64) -> Result<Self> {
        if m < 2 {
            return Err(Error::InvalidParameter(format!("truncation needs m >= 2, got {m}")));
        }
        if !(tol.is_finite() && tol > 0.0) {
            return Err(Error::InvalidParameter(format!(
                "tolerance must be positive, got {tol}"
            )));
        }
        Ok(TruncationConfig { m, tol })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    #[test]
    fn rejects_zero_coefficients() {
        assert!(BandParams::new(0.0, 1.0).is_err());
        assert!(BandParams::new(1.0, 0.0).is_err());
        assert!(BandParams::new(f64::NAN, 1.0).is_err());
    }

    #[test]
    fn basis_column() {
        let b = BandParams::new(2.0, 3.0).unwrap();
        let y = b.apply(&SeqVector::basis(0, 4));
        assert_eq!(y.entries(), &[c(2.0), c(3.0), c(0.0), c(0.0)]);
        assert_eq!(y.tail(), Tail::Zero);
    }

    #[test]
    fn telescoping_difference() {
        let b = BandParams::new(1.0, -1.0).unwrap();
        let x = SeqVector::from_real(&[1.0, 1.0, 1.0, 0.0, 0.0], Tail::Zero);
        let y = b.apply(&x);
        assert_eq!(y.entries(), &[c(1.0), c(0.0), c(0.0), c(-1.0), c(0.0)]);
    }

    #[test]
    fn mass_pushed_past_the_end_is_recorded() {
        let b = BandParams::new(1.0, 1.0).unwrap();
        let y = b.apply(&SeqVector::basis(2, 3));
        assert_eq!(y.tail(), Tail::Unknown);
        assert_eq!(y.exact_len(), 3);
    }

    #[test]
    fn adjoint_on_basis_vectors() {
        let b = BandParams::new(2.0, 3.0).unwrap();
        let y0 = b.apply_adjoint(&SeqVector::basis(0, 3));
        assert_eq!(y0.entries(), &[c(2.0), c(0.0), c(0.0)]);
        let y1 = b.apply_adjoint(&SeqVector::basis(1, 3));
        assert_eq!(y1.entries(), &[c(3.0), c(2.0), c(0.0)]);
        assert_eq!(y1.exact_len(), 3);
    }

    #[test]
    fn adjoint_with_unknown_tail_demotes_last_entry() {
        let b = BandParams::new(2.0, 3.0).unwrap();
        let x = SeqVector::from_real(&[1.0, 1.0, 1.0], Tail::Unknown);
        let y = b.apply_adjoint(&x);
        assert_eq!(y.exact_len(), 2);
        assert_eq!(y.tail(), Tail::Unknown);
    }

    #[test]
    fn power_column_small_orders() {
        let b = BandParams::new(1.5, -0.5).unwrap();
        let p0 = b.power_column(0).to_seq_vector();
        assert_eq!(p0.entries(), &[c(1.0)]);
        let p2 = b.power_column(2).to_seq_vector();
        let expect = [2.25, -1.5, 0.25];
        for (z, e) in p2.entries().iter().zip(expect) {
            assert!((z.re - e).abs() < 1e-15);
        }
    }

    #[test]
    fn power_column_binomial_mass() {
        let b = BandParams::new(0.5, 0.5).unwrap();
        let col = b.power_column(100);
        let total: f64 = (0..=100).map(|k| col.value(k)).sum();
        assert!((total - 1.0).abs() < 1e-13);
    }

    #[test]
    fn power_column_uses_log_gamma_for_large_orders() {
        let b = BandParams::new(0.5, 0.5).unwrap();
        let col = b.power_column(4000);
        let total: f64 = (0..=4000).map(|k| col.value(k)).sum();
        assert!((total - 1.0).abs() < 1e-9);
        assert!(col.log_abs.iter().all(|l| l.is_finite()));
    }

    #[test]
    fn cesaro_of_one_step_is_apply() {
        let b = BandParams::new(0.3, 0.7).unwrap();
        let x = SeqVector::from_real(&[1.0, -2.0, 0.5, 0.0, 0.0, 0.0], Tail::Zero);
        assert_eq!(b.cesaro_apply(1, &x), b.apply(&x));
    }

    #[test]
    fn cesaro_tail_spill_is_recorded() {
        let b = BandParams::new(0.5, 0.5).unwrap();
        let y = b.cesaro_apply(10, &SeqVector::basis(0, 4));
        assert_eq!(y.tail(), Tail::Unknown);
        let z = b.cesaro_apply(3, &SeqVector::basis(0, 8));
        assert_eq!(z.tail(), Tail::Zero);
    }

    #[test]
    fn finite_section_layout() {
        let b = BandParams::new(1.0, -1.0).unwrap();
        assert_eq!(b.finite_section(1).to_dense(), vec![vec![1.0]]);
        assert_eq!(
            b.finite_section(3).to_dense(),
            vec![vec![1.0, 0.0, 0.0], vec![-1.0, 1.0, 0.0], vec![0.0, -1.0, 1.0]]
        );
        assert_eq!(b.finite_section(3).eigenvalues(), vec![1.0; 3]);
    }

    #[test]
    fn norm_bounds_agree_for_unit_ratio() {
        let b = BandParams::new(1.0, -1.0).unwrap();
        let unit = RatioAsymptotics {
            sup: 1.0,
            limsup: 1.0,
            liminf: 1.0,
            exact: true,
        };
        let nb = operator_norm_bounds(&b, 2.0, &unit).unwrap();
        assert!(!nb.lower_bounds_disagree);
        assert!((nb.lower_stated - 2f64.sqrt()).abs() < 1e-15);
        assert_eq!(nb.upper, 2.0);
    }

    #[test]
    fn norm_bounds_flag_the_discrepancy() {
        let b = BandParams::new(1.0, 1.0).unwrap();
        let pow2 = RatioAsymptotics {
            sup: 2.0,
            limsup: 2.0,
            liminf: 2.0,
            exact: true,
        };
        let nb = operator_norm_bounds(&b, 2.0, &pow2).unwrap();
        assert!(nb.lower_bounds_disagree);
        assert!((nb.lower_stated - 3f64.sqrt()).abs() < 1e-15);
        assert!((nb.lower_basis_sup - 5f64.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn truncation_config_validation() {
        assert!(TruncationConfig::new(1, 1e-10).is_err());
        assert!(TruncationConfig::new(2, 0.0).is_err());
        assert_eq!(TruncationConfig::default().m, 512);
    }
}
