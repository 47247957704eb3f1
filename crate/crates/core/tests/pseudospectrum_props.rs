mod common;

use bandspec_core::pseudospectrum::{pseudo_grid, sigma_min, GridSpec, PseudoGrid};
use bandspec_core::{BandParams, Complex64, WeightFamily};
use common::*;
use proptest::prelude::*;

fn difference() -> BandParams {
    BandParams::new(1.0, -1.0).unwrap()
}

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// Dense-SVD values for `B(1,-1)` at sections `m = 50, 100, 200, 300`.
const MONOTONE_PINS: [(f64, f64, [f64; 4]); 3] = [
    (
        2.2,
        0.0,
        [
            0.2092796188734185,
            0.20262018553841118,
            0.20069658834893614,
            0.20031597144128466,
        ],
    ),
    (
        2.0,
        0.5,
        [
            0.1308253868355015,
            0.12188494285538681,
            0.11909502684600659,
            0.11852111852462163,
        ],
    ),
    (
        -0.4,
        0.3,
        [
            0.43750446177758634,
            0.43331249023315493,
            0.4321777814627408,
            0.43195993441484665,
        ],
    ),
];

#[test]
fn monotone_in_section_size() {
    let b = difference();
    for (re, im, pins) in MONOTONE_PINS {
        let mut prev = f64::INFINITY;
        for (m, pin) in [50, 100, 200, 300].into_iter().zip(pins) {
            let s = sigma_min(&b, c(re, im), m, &WeightFamily::Unit).unwrap();
            assert!((s - pin).abs() <= 1e-9 * pin, "{re}+{im}i m={m}: {s} vs {pin}");
            assert!(s <= prev);
            prev = s;
        }
    }
}

#[test]
fn weighted_sections_match_dense_values() {
    let b = BandParams::new(0.5, 1.0).unwrap();
    let s = sigma_min(&b, c(3.2, 0.0), 200, &WeightFamily::power(2.0).unwrap()).unwrap();
    assert!((s - 0.7009154477871404).abs() < 1e-9, "{s}");
    let s = sigma_min(&b, c(2.0, 1.0), 200, &WeightFamily::linear()).unwrap();
    assert!((s - 0.600458322509321).abs() < 1e-9, "{s}");
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn adjoint_probe_bounds_sigma_min(b in band(), t in 0.0f64..0.98, theta in 0.0f64..6.3, m in 2usize..300) {
        // x_n = ((conj(alpha) - r)/s)^n is annihilated by the adjoint section
        // except in its last row, and A, A^H share their singular values
        let alpha = b.r() + Complex64::from_polar(t * b.s().abs(), theta);
        let z = (alpha.conj() - b.r()) / b.s();
        let x: Vec<Complex64> = (0..m).map(|n| z.powu(n as u32)).collect();
        let shift = Complex64::new(b.r(), 0.0) - alpha.conj();
        let ax: Vec<Complex64> = (0..m)
            .map(|n| shift * x[n] + if n + 1 < m { b.s() * x[n + 1] } else { Complex64::new(0.0, 0.0) })
            .collect();
        let norm = |v: &[Complex64]| v.iter().map(|w| w.norm_sqr()).sum::<f64>().sqrt();
        let quotient = norm(&ax) / norm(&x);
        let s = sigma_min(&b, alpha, m, &WeightFamily::Unit).unwrap();
        prop_assert!(s <= quotient * (1.0 + 1e-9) + 1e-300, "{} > {}", s, quotient);
    }

    #[test]
    fn real_symmetry(b in band(), re in -3.0f64..3.0, im in 0.0f64..3.0, m in 1usize..120, v in weight()) {
        let a = sigma_min(&b, c(re, im), m, &v).unwrap();
        let z = sigma_min(&b, c(re, -im), m, &v).unwrap();
        prop_assert!((a - z).abs() <= 1e-10 * a.max(1e-300) || a == z);
    }
}

#[test]
fn trivial_cases() {
    let b = difference();
    assert_eq!(sigma_min(&b, c(1.0, 0.0), 300, &WeightFamily::Unit).unwrap(), 0.0);
    assert!((sigma_min(&b, c(0.3, 0.4), 1, &WeightFamily::Unit).unwrap() - c(0.7, -0.4).norm()).abs() < 1e-15);
    assert!(sigma_min(&b, c(1.5, 0.0), 300, &WeightFamily::Unit).unwrap() < 1e-3);
}

fn small_grid() -> PseudoGrid {
    let spec = GridSpec {
        re_min: -0.6,
        re_max: 2.6,
        im_min: -1.6,
        im_max: 1.6,
        nx: 41,
        ny: 41,
        m: 120,
        weight: WeightFamily::Unit,
    };
    pseudo_grid(&difference(), &spec).unwrap()
}

#[test]
fn grid_is_symmetric_and_nested() {
    let g = small_grid();
    let (nx, ny) = (g.spec.nx, g.spec.ny);
    for j in 0..ny {
        for i in 0..nx {
            let a = g.sigma_min[j * nx + i];
            let b = g.sigma_min[(ny - 1 - j) * nx + i];
            assert!((a - b).abs() <= 1e-10 * a.max(1e-300) || a == b);
        }
    }
    assert!(g.summary.nested);
    let counts: Vec<usize> = g.summary.levels.iter().map(|l| l.count).collect();
    assert!(counts.windows(2).all(|w| w[0] >= w[1]), "{counts:?}");
    assert_eq!(g.summary.section_eigenvalue, 1.0);
}

#[test]
fn grid_csv_layout() {
    let g = small_grid();
    let csv = g.to_csv();
    let mut lines = csv.lines();
    assert_eq!(lines.next(), Some("re,im,sigma_min"));
    let rows: Vec<&str> = lines.collect();
    assert_eq!(rows.len(), 41 * 41);
    let first: Vec<f64> = rows[0].split(',').map(|t| t.parse().unwrap()).collect();
    let second: Vec<f64> = rows[1].split(',').map(|t| t.parse().unwrap()).collect();
    assert_eq!((first[0], first[1]), (-0.6, -1.6));
    assert!(second[0] > first[0] && second[1] == first[1]);
    assert_eq!(first[2], g.sigma_min[0]);
}

#[test]
fn grid_json_round_trip() {
    let g = small_grid();
    let text = serde_json::to_string(&g.summary).unwrap();
    let back: bandspec_core::pseudospectrum::PseudoSummary = serde_json::from_str(&text).unwrap();
    assert_eq!(back, g.summary);
}

#[test]
fn grid_is_reproducible_across_thread_counts() {
    let spec = GridSpec::around_spectrum(&difference(), WeightFamily::Unit).unwrap();
    let spec = GridSpec {
        nx: 21,
        ny: 21,
        m: 80,
        ..spec
    };
    let a = pseudo_grid(&difference(), &spec).unwrap();
    let single = rayon::ThreadPoolBuilder::new().num_threads(1).build().unwrap();
    let b = single.install(|| pseudo_grid(&difference(), &spec).unwrap());
    assert_eq!(a.sigma_min, b.sigma_min);
}

#[test]
fn empty_sublevel_sets_survive_json() {
    // the corner 1.9 + 0.05i lies inside the disk, but a 40-row section only
    // reaches sigma_min near 0.9^40 there, so the 1e-3 level is empty
    let spec = GridSpec {
        re_min: 1.9,
        re_max: 3.0,
        im_min: 0.05,
        im_max: 1.0,
        nx: 5,
        ny: 5,
        m: 40,
        weight: WeightFamily::Unit,
    };
    let g = pseudo_grid(&difference(), &spec).unwrap();
    let last = g.summary.levels.last().unwrap();
    assert_eq!(last.count, 0);
    assert_eq!(last.deficit, None);
    let text = serde_json::to_string(&g.summary).unwrap();
    let back: bandspec_core::pseudospectrum::PseudoSummary = serde_json::from_str(&text).unwrap();
    assert_eq!(back, g.summary);
}
