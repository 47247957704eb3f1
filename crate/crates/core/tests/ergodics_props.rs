mod common;

use bandspec_core::ergodics::{cesaro_experiment, classify_ergodic, growth_experiment, ErgodicReport, Verdict};
use bandspec_core::{AlphaSequence, BandParams, SpaceDescriptor, WeightFamily};
use common::*;
use proptest::prelude::*;

fn spaces() -> Vec<SpaceDescriptor> {
    let mut out: Vec<SpaceDescriptor> = weights()
        .into_iter()
        .map(|v| SpaceDescriptor::weighted(2.0, v).unwrap())
        .collect();
    for alpha in [AlphaSequence::LogShift, AlphaSequence::affine(1.0, 1.0).unwrap()] {
        for dual in [false, true] {
            out.push(SpaceDescriptor::power_series(&alpha, dual).unwrap());
        }
    }
    out
}

fn lp() -> SpaceDescriptor {
    SpaceDescriptor::weighted(2.0, WeightFamily::Unit).unwrap()
}

proptest! {
    #[test]
    fn chains_hold_everywhere(b in band(), i in 0usize..10) {
        let sp = &spaces()[i];
        let rep = classify_ergodic(&b, sp).unwrap();
        prop_assert!(rep.chain_violations().is_empty(), "{:?}", rep.chain_violations());
        prop_assert_ne!(rep.supercyclic_excluded.verdict, Verdict::Fails);
        let json = serde_json::to_string(&rep).unwrap();
        let back: ErgodicReport = serde_json::from_str(&json).unwrap();
        prop_assert_eq!(back, rep);
    }

    #[test]
    fn decided_verdicts_carry_a_citation(b in band(), i in 0usize..10) {
        let rep = classify_ergodic(&b, &spaces()[i]).unwrap();
        for t in [&rep.power_bounded, &rep.mean_ergodic, &rep.uniform_mean_ergodic, &rep.cesaro_null, &rep.norm_powers_to_zero] {
            prop_assert_eq!(t.verdict != Verdict::Undetermined, t.citation.is_some());
            prop_assert!(!t.reason.is_empty());
        }
    }
}

#[test]
fn threshold_is_sharp_on_lp() {
    let axis = |i: usize| -1.5 + 3.0 * (i as f64 + 0.5) / 20.0;
    for i in 0..20 {
        for j in 0..20 {
            let b = BandParams::new(axis(i), axis(j)).unwrap();
            let expected = if b.r().abs() + b.s().abs() <= 1.0 {
                Verdict::Holds
            } else {
                Verdict::Fails
            };
            let rep = classify_ergodic(&b, &lp()).unwrap();
            assert_eq!(rep.power_bounded.verdict, expected, "{b:?}");
            assert_eq!(rep.mean_ergodic.verdict, expected, "{b:?}");
            assert_eq!(rep.cesaro_null.verdict, expected, "{b:?}");
        }
    }
}

#[test]
fn pinned_reports() {
    let rep = classify_ergodic(&BandParams::new(0.5, 0.5).unwrap(), &lp()).unwrap();
    assert_eq!(rep.power_bounded.verdict, Verdict::Holds);
    assert_eq!(rep.mean_ergodic.verdict, Verdict::Holds);
    let rep = classify_ergodic(&BandParams::new(0.4, 0.5).unwrap(), &lp()).unwrap();
    assert_eq!(rep.uniform_mean_ergodic.verdict, Verdict::Holds);
    assert_eq!(rep.norm_powers_to_zero.verdict, Verdict::Holds);
    let sp = SpaceDescriptor::power_series(&AlphaSequence::affine(1.0, 1.0).unwrap(), false).unwrap();
    let rep = classify_ergodic(&BandParams::new(0.1, 0.1).unwrap(), &sp).unwrap();
    assert_eq!(rep.power_bounded.verdict, Verdict::Fails);
    assert_eq!(rep.mean_ergodic.verdict, Verdict::Fails);
    assert_eq!(rep.supercyclic_excluded.verdict, Verdict::Holds);
}

#[test]
fn experiments_shadow_the_verdicts() {
    // decay where mean ergodicity holds, growth where B^n/n -> 0 fails
    let cases = [(0.5, 0.5), (0.3, -0.6), (1.0, 1.0), (1.0, -1.0), (-0.9, 0.8)];
    for (r, s) in cases {
        let b = BandParams::new(r, s).unwrap();
        let rep = classify_ergodic(&b, &lp()).unwrap();
        let table = cesaro_experiment(&b, &lp(), 200, &[0, 3]).unwrap();
        assert!(table.diagnostics.is_empty(), "{r} {s}: {:?}", table.diagnostics);
        let last = table.rows.iter().rfind(|row| row.probe == 0).unwrap();
        if rep.mean_ergodic.verdict == Verdict::Holds {
            assert!(last.cesaro_norm() < 0.5);
        }
        if rep.cesaro_null.verdict == Verdict::Fails {
            assert!(last.power_norm_over_n() > 1.0);
        }
    }
}

#[test]
fn alternating_difference_does_not_decay() {
    let b = BandParams::new(1.0, -1.0).unwrap();
    let table = cesaro_experiment(&b, &lp(), 200, &[0]).unwrap();
    let last = table.rows.last().unwrap();
    assert_eq!(last.n, 200);
    // sqrt(binom(400, 200)) / 200, from the binomial closed form
    let expected = 1.6043106006585386e57f64;
    assert!(
        (last.power_norm_over_n() - expected).abs() / expected < 1e-9,
        "{}",
        last.power_norm_over_n()
    );
}

#[test]
fn growth_rates() {
    let g = growth_experiment(&BandParams::new(1.0, 1.0).unwrap(), &WeightFamily::Unit, 1.0, 100).unwrap();
    assert!((g.rate - 2.0).abs() < 1e-12);
    for (r, s, v, target) in [
        (1.0, -1.0, WeightFamily::Unit, 2.0),
        (1.0, 1.0, WeightFamily::power(2.0).unwrap(), 3.0),
        (1.0, 1.0, WeightFamily::linear(), 2.0),
    ] {
        let g = growth_experiment(&BandParams::new(r, s).unwrap(), &v, 2.0, 5000).unwrap();
        assert!(g.relative_error < 0.02, "{g:?}");
        assert_eq!(g.spectral_radius, target);
    }
}
