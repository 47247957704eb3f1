//! Randomized self-checks of the core identities, reproducible from a seed.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use bandspec_core::ergodics::classify_ergodic;
use bandspec_core::grading::{per_grade_crosscheck, validate_space};
use bandspec_core::pseudospectrum::sigma_min;
use bandspec_core::resolvent::resolvent_apply;
use bandspec_core::spectra::{adjoint_eigen_membership, fine_spectrum};
use bandspec_core::weights::{boundary_series_test, from_unweighted, to_unweighted, weighted_norm, SeriesVerdict};
use bandspec_core::{
    AlphaSequence, BandParams, Complex64, SeqVector, SpaceDescriptor, Tail, TruncationConfig, WeightFamily,
};

use crate::report::{CheckResult, VerifyReport};

fn weights() -> Vec<WeightFamily> {
    let alpha: Vec<f64> = (0..512).map(|n| n as f64 + (n as f64 + 1.0).log2()).collect();
    vec![
        WeightFamily::Unit,
        WeightFamily::power(2.0).expect("valid base"),
        WeightFamily::power(0.5).expect("valid base"),
        WeightFamily::linear(),
        WeightFamily::geometric(2.0, AlphaSequence::table(alpha, 1.0).expect("valid table")).expect("valid base"),
    ]
}

fn alphas() -> Vec<AlphaSequence> {
    vec![
        AlphaSequence::LogShift,
        AlphaSequence::affine(1.0, 1.0).expect("valid slope"),
        AlphaSequence::affine(0.25, 0.0).expect("valid slope"),
    ]
}

fn signed(rng: &mut ChaCha8Rng, lo: f64, hi: f64) -> f64 {
    let x = rng.random_range(lo..hi);
    if rng.random() {
        -x
    } else {
        x
    }
}

fn band(rng: &mut ChaCha8Rng) -> BandParams {
    BandParams::new(signed(rng, 0.05, 2.0), signed(rng, 0.05, 2.0)).expect("nonzero parameters")
}

fn around(rng: &mut ChaCha8Rng, center: f64, dist: f64) -> Complex64 {
    center + Complex64::from_polar(dist, rng.random_range(0.0..std::f64::consts::TAU))
}

fn random_vec(rng: &mut ChaCha8Rng, len: usize) -> SeqVector {
    let entries = (0..len)
        .map(|_| Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)))
        .collect();
    SeqVector::new(entries, Tail::Zero)
}

/// One instance: `Ok(defect)` when it passes, `Err(description)` otherwise.
type Instance = Result<f64, String>;

struct Check {
    name: &'static str,
    tolerance: Option<f64>,
    run: fn(&mut ChaCha8Rng) -> Instance,
}

fn measured(defect: f64, tol: f64, what: impl FnOnce() -> String) -> Instance {
    if defect <= tol {
        Ok(defect)
    } else {
        Err(format!("{}: defect {defect:e} above {tol:e}", what()))
    }
}

fn resolvent_identity(rng: &mut ChaCha8Rng) -> Instance {
    let ws = weights();
    let v = &ws[rng.random_range(0..ws.len())];
    let b = band(rng);
    let l = v.ratio_asymptotics().map_err(|e| e.to_string())?.limsup;
    let k = rng.random_range(1.05..4.0);
    let alpha = around(rng, b.r(), l * b.s().abs() * k);
    let m = rng.random_range(2..256);
    let y = random_vec(rng, m);
    let cfg = TruncationConfig::new(m, 1e-10).map_err(|e| e.to_string())?;
    let x = resolvent_apply(&b, alpha, &y, &cfg, v).map_err(|e| e.to_string())?;
    let back = b.apply_shifted(alpha, &x);
    let diff: Vec<Complex64> = (0..m - 1).map(|n| back.get(n) - y.get(n)).collect();
    let head: Vec<Complex64> = (0..m - 1).map(|n| y.get(n)).collect();
    let num = weighted_norm(&SeqVector::new(diff, Tail::Zero), 2.0, v).log_norm;
    let den = weighted_norm(&SeqVector::new(head, Tail::Zero), 2.0, v).log_norm;
    measured((num - den).exp(), 1e-10, || format!("{b:?} alpha {alpha} weight {v:?}"))
}

fn adjoint_eigenvector(rng: &mut ChaCha8Rng) -> Instance {
    let ws = weights();
    let v = &ws[rng.random_range(0..ws.len())];
    let b = band(rng);
    let l1 = v.ratio_asymptotics().map_err(|e| e.to_string())?.liminf;
    let k = rng.random_range(0.0..0.98);
    let alpha = around(rng, b.r(), l1 * b.s().abs() * k);
    let am = adjoint_eigen_membership(&b, alpha, 2.0, v, 64).map_err(|e| e.to_string())?;
    let x = am
        .generator
        .ok_or_else(|| format!("{b:?} alpha {alpha}: inside the L1 disk but not an adjoint eigenvalue"))?;
    let mut worst = 0.0f64;
    for n in 0..63 {
        let lhs = b.r() * x.get(n) + b.s() * x.get(n + 1);
        let rhs = alpha * x.get(n);
        if rhs.norm() > 0.0 {
            worst = worst.max((lhs - rhs).norm() / rhs.norm());
        }
    }
    measured(worst, 1e-12, || format!("{b:?} alpha {alpha}"))
}

fn fine_spectrum_partition(rng: &mut ChaCha8Rng) -> Instance {
    let ws = weights();
    let v = &ws[rng.random_range(0..ws.len())];
    let b = band(rng);
    let fs = fine_spectrum(&b, rng.random_range(1.1..5.0), v).map_err(|e| e.to_string())?;
    let k = rng.random_range(0.0..2.0);
    let alpha = around(rng, b.r(), fs.sigma.radius * k);
    let hits = [fs.residual(), fs.continuous(), fs.undetermined()]
        .iter()
        .filter(|g| g.contains(alpha))
        .count();
    let expected = usize::from(fs.spectrum().contains(alpha));
    if hits == expected && !fs.point().contains(alpha) {
        Ok(0.0)
    } else {
        Err(format!(
            "{b:?} alpha {alpha}: {hits} parts contain it, expected {expected}"
        ))
    }
}

fn power_column(rng: &mut ChaCha8Rng) -> Instance {
    let b = BandParams::new(signed(rng, 0.1, 1.5), signed(rng, 0.1, 1.5)).map_err(|e| e.to_string())?;
    let n = rng.random_range(0..=200);
    let mut x = SeqVector::basis(0, n + 1);
    for _ in 0..n {
        x = b.apply(&x);
    }
    let col = b.power_column(n);
    let scale = x.max_abs();
    let worst = (0..=n)
        .map(|k| (col.value(k) - x.get(k).re).abs() / scale)
        .fold(0.0, f64::max);
    measured(worst, 1e-12, || format!("{b:?} n = {n}"))
}

fn cesaro_recurrence(rng: &mut ChaCha8Rng) -> Instance {
    let b = band(rng);
    let n = rng.random_range(2..60);
    let len = rng.random_range(1..10);
    let x = random_vec(rng, len).resized(n + 10);
    let t_n = b.cesaro_apply(n, &x);
    let t_prev = b.cesaro_apply(n - 1, &x);
    let mut p = x.clone();
    for _ in 0..n {
        p = b.apply(&p);
    }
    let scale = t_n.max_abs().max(p.max_abs() / n as f64);
    let w = (n - 1) as f64 / n as f64;
    let worst = (0..x.len())
        .map(|k| (p.get(k) / n as f64 - (t_n.get(k) - w * t_prev.get(k))).norm() / scale)
        .fold(0.0, f64::max);
    measured(worst, 1e-12, || format!("{b:?} n = {n}"))
}

fn ergodic_chains(rng: &mut ChaCha8Rng) -> Instance {
    let b = band(rng);
    let space = if rng.random() {
        let ws = weights();
        SpaceDescriptor::weighted(2.0, ws[rng.random_range(0..ws.len())].clone())
    } else {
        let al = alphas();
        SpaceDescriptor::power_series(&al[rng.random_range(0..al.len())], rng.random())
    }
    .map_err(|e| e.to_string())?;
    let rep = classify_ergodic(&b, &space).map_err(|e| e.to_string())?;
    let broken = rep.chain_violations();
    if broken.is_empty() {
        Ok(0.0)
    } else {
        Err(format!("{b:?} on {}: {broken:?}", space.label()))
    }
}

fn series_monotone(rng: &mut ChaCha8Rng) -> Instance {
    let ws = weights();
    let v = &ws[rng.random_range(0..ws.len())];
    let p = rng.random_range(1.1..5.0);
    let rho = rng.random_range(0.0..4.0);
    let smaller = rho * rng.random_range(0.0..1.0);
    let (big, small) = (boundary_series_test(v, p, rho), boundary_series_test(v, p, smaller));
    let ok = !(big == SeriesVerdict::Converges && small != SeriesVerdict::Converges)
        && !(small == SeriesVerdict::Diverges && big != SeriesVerdict::Diverges);
    if ok {
        Ok(0.0)
    } else {
        Err(format!("{v:?} p = {p}: {big:?} at {rho} but {small:?} at {smaller}"))
    }
}

fn isometry(rng: &mut ChaCha8Rng) -> Instance {
    let ws = weights();
    let v = &ws[rng.random_range(0..ws.len())];
    let len = rng.random_range(1..80);
    let x = random_vec(rng, len);
    let p = rng.random_range(1.0..5.0);
    let y = to_unweighted(&x, v);
    let a = weighted_norm(&x, p, v).log_norm;
    let b = weighted_norm(&y, p, &WeightFamily::Unit).log_norm;
    let back = from_unweighted(&y, v);
    let round = (0..x.len())
        .map(|n| (back.get(n) - x.get(n)).norm() / x.get(n).norm().max(1e-300))
        .fold(0.0, f64::max);
    measured((a - b).abs().max(round), 1e-12, || format!("{v:?} p = {p}"))
}

fn sigma_min_probe(rng: &mut ChaCha8Rng) -> Instance {
    let b = band(rng);
    let k = rng.random_range(0.0..0.98);
    let alpha = around(rng, b.r(), b.s().abs() * k);
    let m = rng.random_range(2..120);
    let z = (alpha.conj() - b.r()) / b.s();
    let x: Vec<Complex64> = (0..m).map(|n| z.powu(n as u32)).collect();
    let shift = Complex64::new(b.r(), 0.0) - alpha.conj();
    let norm = |v: &[Complex64]| v.iter().map(|w| w.norm_sqr()).sum::<f64>().sqrt();
    let ax: Vec<Complex64> = (0..m)
        .map(|n| {
            shift * x[n]
                + if n + 1 < m {
                    b.s() * x[n + 1]
                } else {
                    Complex64::new(0.0, 0.0)
                }
        })
        .collect();
    let bound = norm(&ax) / norm(&x);
    let s = sigma_min(&b, alpha, m, &WeightFamily::Unit).map_err(|e| e.to_string())?;
    if s <= bound * (1.0 + 1e-9) {
        Ok(0.0)
    } else {
        Err(format!(
            "{b:?} alpha {alpha} m = {m}: sigma_min {s} above the probe bound {bound}"
        ))
    }
}

fn graded_crosscheck(rng: &mut ChaCha8Rng) -> Instance {
    let b = band(rng);
    let al = alphas();
    let sp = validate_space(&al[rng.random_range(0..al.len())], rng.random()).map_err(|e| e.to_string())?;
    per_grade_crosscheck(&b, &sp, 6)
        .map(|_| 0.0)
        .map_err(|e| format!("{b:?}: {e}"))
}

const CHECKS: [Check; 10] = [
    Check {
        name: "resolvent_identity",
        tolerance: Some(1e-10),
        run: resolvent_identity,
    },
    Check {
        name: "adjoint_eigenvector_identity",
        tolerance: Some(1e-12),
        run: adjoint_eigenvector,
    },
    Check {
        name: "fine_spectrum_partition",
        tolerance: None,
        run: fine_spectrum_partition,
    },
    Check {
        name: "power_column_matches_apply",
        tolerance: Some(1e-12),
        run: power_column,
    },
    Check {
        name: "cesaro_recurrence",
        tolerance: Some(1e-12),
        run: cesaro_recurrence,
    },
    Check {
        name: "ergodic_chain_consistency",
        tolerance: None,
        run: ergodic_chains,
    },
    Check {
        name: "series_test_monotone",
        tolerance: None,
        run: series_monotone,
    },
    Check {
        name: "weighted_isometry",
        tolerance: Some(1e-12),
        run: isometry,
    },
    Check {
        name: "sigma_min_below_adjoint_probe",
        tolerance: None,
        run: sigma_min_probe,
    },
    Check {
        name: "graded_crosscheck",
        tolerance: None,
        run: graded_crosscheck,
    },
];

/// Runs every check on `cases` instances; check `i` draws from its own
/// stream seeded by `(seed, i)`, so adding cases never reshuffles others.
pub fn verify(seed: u64, cases: usize) -> VerifyReport {
    let checks: Vec<CheckResult> = CHECKS
        .iter()
        .enumerate()
        .map(|(i, check)| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(i as u64);
            let mut result = CheckResult {
                name: check.name.to_string(),
                passed: 0,
                failed: 0,
                worst: check.tolerance.map(|_| 0.0),
                tolerance: check.tolerance,
                first_failure: None,
            };
            for _ in 0..cases {
                match (check.run)(&mut rng) {
                    Ok(defect) => {
                        result.passed += 1;
                        result.worst = result.worst.map(|w| w.max(defect));
                    }
                    Err(why) => {
                        result.failed += 1;
                        result.first_failure.get_or_insert(why);
                    }
                }
            }
            result
        })
        .collect();
    let passed = checks.iter().map(|c| c.passed).sum();
    let failed = checks.iter().map(|c| c.failed).sum();
    VerifyReport {
        command: "verify".into(),
        seed,
        cases,
        checks,
        passed,
        failed,
    }
}
