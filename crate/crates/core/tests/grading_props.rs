mod common;

use bandspec_core::grading::{graded_fine_spectrum, per_grade_crosscheck, validate_space};
use bandspec_core::{AlphaSequence, BandParams, Error, Region};
use common::*;
use proptest::prelude::*;

fn alphas() -> Vec<AlphaSequence> {
    vec![
        AlphaSequence::LogShift,
        AlphaSequence::affine(1.0, 1.0).unwrap(),
        AlphaSequence::affine(0.25, 0.0).unwrap(),
    ]
}

proptest! {
    #[test]
    fn grade_radii_are_monotone(b in band(), a in 0usize..3, dual in any::<bool>()) {
        let sp = validate_space(&alphas()[a], dual).unwrap();
        let check = per_grade_crosscheck(&b, &sp, 6).unwrap();
        for w in check.grades.windows(2) {
            let (lo, hi) = (w[0].sigma_radius, w[1].sigma_radius);
            if sp.l == 0.0 {
                prop_assert!((lo - hi).abs() <= 1e-12 * lo);
            } else if dual {
                prop_assert!(hi < lo);
            } else {
                prop_assert!(hi > lo);
            }
        }
        let graded = graded_fine_spectrum(&b, &sp).unwrap();
        prop_assert_eq!(graded.sigma.is_subset_of(&check.limit_region), Some(true));
        prop_assert_eq!(graded.point, Region::Empty);
        prop_assert_eq!(graded.waelbroeck, graded.sigma);
    }
}

#[test]
fn pinned_graded_spectra() {
    let b = BandParams::new(2.0, 5.0).unwrap();
    let log = validate_space(&AlphaSequence::LogShift, false).unwrap();
    let aff = AlphaSequence::affine(1.0, 1.0).unwrap();
    assert_eq!(
        graded_fine_spectrum(&b, &log).unwrap().sigma,
        Region::closed_disk(2.0, 5.0)
    );
    let primal = validate_space(&aff, false).unwrap();
    assert_eq!(graded_fine_spectrum(&b, &primal).unwrap().sigma, Region::WholePlane);
    let dual = validate_space(&aff, true).unwrap();
    assert_eq!(graded_fine_spectrum(&b, &dual).unwrap().sigma, Region::Singleton(2.0));
    let log_dual = validate_space(&AlphaSequence::LogShift, true).unwrap();
    let g = graded_fine_spectrum(&b, &log_dual).unwrap();
    assert_eq!(g.residual, Region::open_disk(2.0, 5.0));
    assert_eq!(g.continuous, Region::circle(2.0, 5.0));
}

#[test]
fn oscillating_gaps_are_rejected() {
    let values: Vec<f64> = (0..200)
        .map(|n| n as f64 + if n % 2 == 0 { 0.0 } else { 0.5 })
        .collect();
    let alpha = AlphaSequence::table(values, 1.0).unwrap();
    assert!(matches!(
        validate_space(&alpha, false),
        Err(Error::HypothesisFailure(_)) | Err(Error::DeclaredMismatch { .. })
    ));
}

#[test]
fn nuclearity_is_recorded() {
    assert!(validate_space(&AlphaSequence::LogShift, false).unwrap().nuclear);
    assert!(
        validate_space(&AlphaSequence::affine(1.0, 0.0).unwrap(), false)
            .unwrap()
            .nuclear
    );
}
