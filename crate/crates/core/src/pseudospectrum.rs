//! ε-pseudospectra of finite sections.
//!
//! Every finite section of `B(r,s)` is triangular with `r` on the diagonal,
//! so its eigenvalues say nothing about the disk spectrum of the operator.
//! Its smallest singular value does: inside the disk `(B - αI)^{-1}` grows
//! geometrically with the section size, outside it stays bounded.

use std::fmt::Write as _;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::operator::BandParams;
use crate::weights::WeightFamily;

pub const SIGMA_TOL: f64 = 1e-12;
pub const SIGMA_MAX_ITER: usize = 500;

/// Environment variable capping the worker threads of the grid evaluation.
pub const THREADS_ENV: &str = "BANDSPEC_THREADS";

/// Thresholds reported by the sublevel-set summary.
pub const EPSILONS: [f64; 3] = [1e-1, 1e-2, 1e-3];

const RESCALE: f64 = 1e200;

/// The weighted section `T_v P_m (B - αI) P_m T_v^{-1}`: diagonal `r - α`,
/// subdiagonal `s v_n / v_{n-1}`.
struct Section {
    diag: Complex64,
    /// `sub[n]` sits in row `n + 1`, column `n`.
    sub: Vec<f64>,
}

impl Section {
    fn new(b: &BandParams, alpha: Complex64, m: usize, v: &WeightFamily) -> Self {
        Section {
            diag: Complex64::new(b.r(), 0.0) - alpha,
            sub: (0..m.saturating_sub(1)).map(|n| b.s() * v.ratio(n)).collect(),
        }
    }

    /// Overwrites `x` with `(A^H A)^{-1} x` up to the factor `exp(returned)`.
    fn normal_solve(&self, x: &mut [Complex64]) -> f64 {
        let m = x.len();
        let mut log_shift = 0.0;
        let inv = self.diag.inv();
        // A w = x, forward
        for n in 0..m {
            let below = if n > 0 {
                self.sub[n - 1] * x[n - 1]
            } else {
                Complex64::new(0.0, 0.0)
            };
            x[n] = (x[n] - below) * inv;
            if x[n].norm() > RESCALE {
                // the unprocessed right-hand side shares the scale
                x.iter_mut().for_each(|z| *z /= RESCALE);
                log_shift += RESCALE.ln();
            }
        }
        // A^H z = w, backward
        let inv_h = inv.conj();
        for n in (0..m).rev() {
            let above = if n + 1 < m {
                self.sub[n] * x[n + 1]
            } else {
                Complex64::new(0.0, 0.0)
            };
            x[n] = (x[n] - above) * inv_h;
            if x[n].norm() > RESCALE {
                x.iter_mut().for_each(|z| *z /= RESCALE);
                log_shift += RESCALE.ln();
            }
        }
        log_shift
    }
}

/// Deterministic start vector with no special alignment to the band structure.
fn start_vector(m: usize) -> Vec<Complex64> {
    // additive recurrence with the plastic ratio: equidistributed in [1, 2)
    const STEP: f64 = 0.754_877_666_246_692_8;
    let raw: Vec<f64> = (0..m).map(|n| 1.0 + (n as f64 * STEP).fract()).collect();
    let norm = raw.iter().map(|x| x * x).sum::<f64>().sqrt();
    raw.into_iter().map(|x| Complex64::new(x / norm, 0.0)).collect()
}

fn normalize(x: &mut [Complex64]) -> f64 {
    let scale = x.iter().fold(0.0f64, |m, z| m.max(z.norm()));
    if scale == 0.0 {
        return 0.0;
    }
    let norm = scale * x.iter().map(|z| (z / scale).norm_sqr()).sum::<f64>().sqrt();
    x.iter_mut().for_each(|z| *z /= norm);
    norm
}

/// Smallest singular value of the weighted `m x m` section of `B - αI`.
///
/// `A^H A` is hermitian tridiagonal and unitarily similar to a real one, so
/// its smallest eigenvalue is bracketed by Sturm-count bisection. When that
/// eigenvalue is too small to resolve against `||A^H A||` (deep inside the
/// disk) it is refined by inverse iteration with the bidiagonal solves; the
/// smallest singular value is then isolated and the iteration converges in a
/// few steps. Both paths return an upper bound: the top of the bisection
/// bracket, or a Rayleigh quotient of `(A^H A)^{-1}`.
pub fn sigma_min(b: &BandParams, alpha: Complex64, m: usize, v: &WeightFamily) -> Result<f64> {
    if m == 0 {
        return Err(Error::InvalidParameter("section size must be at least 1".into()));
    }
    let section = Section::new(b, alpha, m, v);
    if section.diag == Complex64::new(0.0, 0.0) {
        // the first row vanishes
        return Ok(0.0);
    }
    if m == 1 {
        return Ok(section.diag.norm());
    }
    let (lambda, scale) = section.bisect_smallest_normal_eigenvalue();
    if lambda > RESOLVED_FRACTION * scale {
        return Ok(lambda.sqrt());
    }
    Ok(section.inverse_iteration().min(lambda.sqrt()))
}

/// Below this fraction of `||A^H A||` bisection no longer resolves the
/// smallest eigenvalue to useful relative accuracy.
const RESOLVED_FRACTION: f64 = 1e-8;

impl Section {
    /// Upper end of the bisection bracket for the smallest eigenvalue of
    /// `A^H A`, together with a Gershgorin bound on its norm.
    fn bisect_smallest_normal_eigenvalue(&self) -> (f64, f64) {
        let m = self.sub.len() + 1;
        let d2 = self.diag.norm_sqr();
        let d = self.diag.norm();
        let t = |i: usize| if i + 1 < m { self.sub[i] } else { 0.0 };
        let diag = |i: usize| d2 + t(i) * t(i);
        // off-diagonal moduli |t_i d|, squared
        let off2 = |i: usize| {
            let o = t(i) * d;
            o * o
        };
        let mut hi = (0..m)
            .map(|i| {
                let left = if i > 0 { (t(i - 1) * d).abs() } else { 0.0 };
                diag(i) + left + (t(i) * d).abs()
            })
            .fold(0.0, f64::max);
        let scale = hi;
        let mut lo = 0.0f64;
        // number of eigenvalues below x
        let below = |x: f64| {
            let mut count = 0;
            let mut q = diag(0) - x;
            for i in 0..m {
                if i > 0 {
                    q = diag(i) - x - off2(i - 1) / q;
                }
                if q == 0.0 {
                    q = -f64::MIN_POSITIVE;
                }
                if q < 0.0 {
                    count += 1;
                }
            }
            count
        };
        for _ in 0..BISECTION_STEPS {
            let mid = 0.5 * (lo + hi);
            if mid <= lo || mid >= hi || hi - lo <= f64::EPSILON * hi {
                break;
            }
            // below this the caller falls back to inverse iteration anyway
            if hi < RESOLVED_FRACTION * scale {
                break;
            }
            if below(mid) >= 1 {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        (hi, scale)
    }

    /// Inverse iteration on `A^H A` with Rayleigh quotients.
    fn inverse_iteration(&self) -> f64 {
        let m = self.sub.len() + 1;
        let mut x = start_vector(m);
        let mut prev = f64::NAN;
        let mut log_mu = f64::NAN;
        for _ in 0..SIGMA_MAX_ITER {
            let before = x.clone();
            let shift = self.normal_solve(&mut x);
            // x^H (A^H A)^{-1} x with x a unit vector
            let dot: f64 = before.iter().zip(&x).map(|(a, z)| (a.conj() * z).re).sum();
            log_mu = shift + dot.ln();
            normalize(&mut x);
            if (log_mu - prev).abs() <= SIGMA_TOL {
                break;
            }
            prev = log_mu;
        }
        (-0.5 * log_mu).exp()
    }
}

const BISECTION_STEPS: usize = 200;

/// A rectangular grid of probe points and the section evaluated on it.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GridSpec {
    pub re_min: f64,
    pub re_max: f64,
    pub im_min: f64,
    pub im_max: f64,
    pub nx: usize,
    pub ny: usize,
    pub m: usize,
    pub weight: WeightFamily,
}

impl GridSpec {
    /// Square box about `r` of half-width `1.6 L|s|`, 201 x 201 points, `m = 300`.
    pub fn around_spectrum(b: &BandParams, weight: WeightFamily) -> Result<Self> {
        let radius = weight.ratio_asymptotics()?.limsup * b.s().abs();
        let h = 1.6 * radius;
        Ok(GridSpec {
            re_min: b.r() - h,
            re_max: b.r() + h,
            im_min: -h,
            im_max: h,
            nx: 201,
            ny: 201,
            m: 300,
            weight,
        })
    }

    pub fn validate(&self) -> Result<()> {
        let finite = [self.re_min, self.re_max, self.im_min, self.im_max]
            .iter()
            .all(|x| x.is_finite());
        if !finite || self.re_min >= self.re_max || self.im_min >= self.im_max {
            return Err(Error::InvalidParameter(
                "grid box must be a non-degenerate finite rectangle".into(),
            ));
        }
        if self.nx < 2 || self.ny < 2 {
            return Err(Error::InvalidParameter("grid needs at least 2 x 2 points".into()));
        }
        if self.m == 0 {
            return Err(Error::InvalidParameter("section size must be at least 1".into()));
        }
        Ok(())
    }

    pub fn step_re(&self) -> f64 {
        (self.re_max - self.re_min) / (self.nx - 1) as f64
    }

    pub fn step_im(&self) -> f64 {
        (self.im_max - self.im_min) / (self.ny - 1) as f64
    }

    /// Points in output order: imaginary part outer, real part inner.
    pub fn points(&self) -> Vec<Complex64> {
        let (hx, hy) = (self.step_re(), self.step_im());
        (0..self.ny)
            .flat_map(|j| {
                (0..self.nx).map(move |i| Complex64::new(self.re_min + i as f64 * hx, self.im_min + j as f64 * hy))
            })
            .collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LevelSummary {
    pub epsilon: f64,
    /// Grid points with `sigma_min < epsilon`.
    pub count: usize,
    /// Largest distance from a sublevel point to the predicted disk.
    pub excess: f64,
    /// Largest distance from a grid point of the disk to the sublevel set;
    /// `None` when the sublevel set is empty and the disk is sampled.
    pub deficit: Option<f64>,
    /// `max(excess, deficit)`.
    pub hausdorff: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PseudoSummary {
    pub center: f64,
    pub radius: f64,
    pub levels: Vec<LevelSummary>,
    /// Smaller thresholds select subsets of larger ones.
    pub nested: bool,
    /// The section's eigenvalues: all equal to `r`.
    pub section_eigenvalue: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PseudoGrid {
    pub spec: GridSpec,
    /// Row-major, imaginary part outer.
    pub sigma_min: Vec<f64>,
    pub summary: PseudoSummary,
}

impl PseudoGrid {
    pub fn point(&self, idx: usize) -> Complex64 {
        let (i, j) = (idx % self.spec.nx, idx / self.spec.nx);
        Complex64::new(
            self.spec.re_min + i as f64 * self.spec.step_re(),
            self.spec.im_min + j as f64 * self.spec.step_im(),
        )
    }

    /// `re,im,sigma_min` with 17 significant digits.
    pub fn to_csv(&self) -> String {
        let mut out = String::with_capacity(64 * self.sigma_min.len() + 32);
        out.push_str("re,im,sigma_min\n");
        for (idx, s) in self.sigma_min.iter().enumerate() {
            let z = self.point(idx);
            let _ = writeln!(out, "{:.16e},{:.16e},{:.16e}", z.re, z.im, s);
        }
        out
    }
}

/// Worker pool honouring [`THREADS_ENV`].
pub fn thread_pool() -> rayon::ThreadPool {
    let requested = std::env::var(THREADS_ENV)
        .ok()
        .and_then(|v| v.trim().parse::<usize>().ok())
        .filter(|&n| n >= 1);
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(n) = requested {
        builder = builder.num_threads(n);
    }
    builder.build().expect("failed to start the worker pool")
}

pub fn pseudo_grid(b: &BandParams, spec: &GridSpec) -> Result<PseudoGrid> {
    spec.validate()?;
    let asym = spec.weight.ratio_asymptotics()?;
    let points = spec.points();
    let values: Vec<Result<f64>> = thread_pool().install(|| {
        points
            .par_iter()
            .map(|&z| sigma_min(b, z, spec.m, &spec.weight))
            .collect()
    });
    let sigma: Vec<f64> = values.into_iter().collect::<Result<_>>()?;
    let radius = asym.limsup * b.s().abs();
    let summary = summarize(spec, &sigma, b.r(), radius);
    Ok(PseudoGrid {
        spec: spec.clone(),
        sigma_min: sigma,
        summary,
    })
}

fn summarize(spec: &GridSpec, sigma: &[f64], center: f64, radius: f64) -> PseudoSummary {
    let points = spec.points();
    let dist_to_disk: Vec<f64> = points.iter().map(|z| ((z - center).norm() - radius).max(0.0)).collect();
    let mut levels = Vec::new();
    let mut nested = true;
    let mut previous: Option<Vec<bool>> = None;
    for &epsilon in &EPSILONS {
        let member: Vec<bool> = sigma.iter().map(|&s| s < epsilon).collect();
        if let Some(larger) = &previous {
            nested &= member.iter().zip(larger).all(|(a, b)| !*a || *b);
        }
        let excess = member
            .iter()
            .zip(&dist_to_disk)
            .filter(|(m, _)| **m)
            .map(|(_, d)| *d)
            .fold(0.0, f64::max);
        let to_set = distance_transform(spec, &member);
        let deficit = dist_to_disk
            .iter()
            .zip(&to_set)
            .filter(|(d, _)| **d == 0.0)
            .map(|(_, t)| *t)
            .fold(0.0, f64::max);
        let deficit = deficit.is_finite().then_some(deficit);
        levels.push(LevelSummary {
            epsilon,
            count: member.iter().filter(|m| **m).count(),
            excess,
            deficit,
            hausdorff: deficit.map(|d| d.max(excess)),
        });
        previous = Some(member);
    }
    PseudoSummary {
        center,
        radius,
        levels,
        nested,
        section_eigenvalue: center,
    }
}

/// Euclidean distance from every grid point to the nearest marked point
/// (infinite when nothing is marked).
fn distance_transform(spec: &GridSpec, marked: &[bool]) -> Vec<f64> {
    let (nx, ny) = (spec.nx, spec.ny);
    let (hx, hy) = (spec.step_re(), spec.step_im());
    // vertical distance (in rows) to the nearest mark within each column
    let mut col = vec![f64::INFINITY; nx * ny];
    for i in 0..nx {
        let mut last: Option<usize> = None;
        for j in 0..ny {
            if marked[j * nx + i] {
                last = Some(j);
            }
            if let Some(l) = last {
                col[j * nx + i] = (j - l) as f64 * hy;
            }
        }
        let mut next: Option<usize> = None;
        for j in (0..ny).rev() {
            if marked[j * nx + i] {
                next = Some(j);
            }
            if let Some(n) = next {
                col[j * nx + i] = col[j * nx + i].min((n - j) as f64 * hy);
            }
        }
    }
    let mut out = vec![f64::INFINITY; nx * ny];
    for j in 0..ny {
        let row = &col[j * nx..(j + 1) * nx];
        for i in 0..nx {
            out[j * nx + i] = row
                .iter()
                .enumerate()
                .filter(|(_, d)| d.is_finite())
                .map(|(k, d)| {
                    let dx = (k as f64 - i as f64) * hx;
                    dx.hypot(*d)
                })
                .fold(f64::INFINITY, f64::min);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn diff() -> BandParams {
        BandParams::new(1.0, -1.0).unwrap()
    }

    #[test]
    fn one_by_one_section() {
        let s = sigma_min(&diff(), Complex64::new(0.3, 0.0), 1, &WeightFamily::Unit).unwrap();
        assert!((s - 0.7).abs() < 1e-15);
    }

    #[test]
    fn singular_at_the_diagonal() {
        assert_eq!(
            sigma_min(&diff(), Complex64::new(1.0, 0.0), 50, &WeightFamily::Unit).unwrap(),
            0.0
        );
    }

    #[test]
    fn tiny_inside_the_disk() {
        let s = sigma_min(&diff(), Complex64::new(1.5, 0.0), 300, &WeightFamily::Unit).unwrap();
        assert!(s < 1e-3, "{s}");
    }

    #[test]
    fn matches_dense_values_outside() {
        // reference values from a dense SVD of the 300 x 300 section
        let s = sigma_min(&diff(), Complex64::new(2.6, 1.6), 300, &WeightFamily::Unit).unwrap();
        assert!((s - 1.262838785).abs() < 1e-8, "{s}");
        let s = sigma_min(&diff(), Complex64::new(2.6, 0.0), 300, &WeightFamily::Unit).unwrap();
        assert!((s - 0.600143633).abs() < 1e-8, "{s}");
    }

    #[test]
    fn conjugate_symmetry() {
        let a = sigma_min(&diff(), Complex64::new(2.2, 0.7), 120, &WeightFamily::Unit).unwrap();
        let b = sigma_min(&diff(), Complex64::new(2.2, -0.7), 120, &WeightFamily::Unit).unwrap();
        assert!((a - b).abs() <= 1e-12 * a);
    }

    #[test]
    fn grid_order_and_csv() {
        let spec = GridSpec {
            re_min: 0.0,
            re_max: 1.0,
            im_min: -1.0,
            im_max: 1.0,
            nx: 2,
            ny: 3,
            m: 4,
            weight: WeightFamily::Unit,
        };
        let pts = spec.points();
        assert_eq!(pts[1], Complex64::new(1.0, -1.0));
        assert_eq!(pts[2], Complex64::new(0.0, 0.0));
        let grid = pseudo_grid(&BandParams::new(3.0, 1.0).unwrap(), &spec).unwrap();
        let csv = grid.to_csv();
        let mut lines = csv.lines();
        assert_eq!(lines.next(), Some("re,im,sigma_min"));
        assert_eq!(lines.next().unwrap().split(',').next(), Some("0.0000000000000000e0"));
        assert_eq!(csv.lines().count(), 7);
    }

    #[test]
    fn distance_transform_is_euclidean() {
        let spec = GridSpec {
            re_min: 0.0,
            re_max: 4.0,
            im_min: 0.0,
            im_max: 4.0,
            nx: 5,
            ny: 5,
            m: 1,
            weight: WeightFamily::Unit,
        };
        let mut marked = vec![false; 25];
        marked[0] = true;
        let d = distance_transform(&spec, &marked);
        assert!((d[24] - 32f64.sqrt()).abs() < 1e-15);
        assert_eq!(d[0], 0.0);
        assert!(distance_transform(&spec, &[false; 25]).iter().all(|x| x.is_infinite()));
    }
}
