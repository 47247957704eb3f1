mod common;

use bandspec_core::operator::operator_norm_bounds;
use bandspec_core::weights::weighted_norm;
use bandspec_core::{BandParams, Complex64, SeqVector, Tail};
use common::*;
use nalgebra::DMatrix;
use proptest::prelude::*;

fn padded(x: &SeqVector, extra: usize) -> SeqVector {
    x.resized(x.len() + extra)
}

proptest! {
    #[test]
    fn truncation_commutes_with_powers(b in band(), x in seq(1..24), n in 1usize..12) {
        // (P_m B P_m)^n = P_m B^n P_m because B is lower triangular
        let m = x.len();
        let sec = b.finite_section(m).to_dense();
        let a = DMatrix::from_fn(m, m, |i, j| Complex64::new(sec[i][j], 0.0));
        let xv = nalgebra::DVector::from_iterator(m, x.entries().iter().copied());
        let dense = a.pow(n as u32) * xv;
        let mut y = x.clone();
        for _ in 0..n {
            y = b.apply(&y);
        }
        for i in 0..m {
            prop_assert!(close(dense[i], y.get(i), 1e-12));
        }
    }

    #[test]
    fn power_column_matches_iterated_apply(r in nonzero(0.1, 1.5), s in nonzero(0.1, 1.5), n in 0usize..=200) {
        let b = BandParams::new(r, s).unwrap();
        let mut x = SeqVector::basis(0, n + 1);
        for _ in 0..n {
            x = b.apply(&x);
        }
        let col = b.power_column(n);
        let scale = x.max_abs();
        for k in 0..=n {
            prop_assert!((col.value(k) - x.get(k).re).abs() <= 1e-12 * scale, "k = {}", k);
        }
    }

    #[test]
    fn norm_sandwich(b in band(), v in weight(), x in seq(1..40), p in 1.0f64..4.0) {
        let asym = v.ratio_asymptotics().unwrap();
        let bounds = operator_norm_bounds(&b, p, &asym).unwrap();
        prop_assume!(x.max_abs() > 0.0);
        let x = padded(&x, 1);
        let nx = weighted_norm(&x, p, &v).log_norm;
        let nbx = weighted_norm(&b.apply(&x), p, &v).log_norm;
        prop_assert!(nbx - nx <= bounds.upper.ln() + 1e-12);
        prop_assert!(bounds.lower_basis_sup <= bounds.upper * (1.0 + 1e-12));
    }

    #[test]
    fn basis_quotient_reaches_its_bound(b in band(), k in 0usize..50, p in 1.0f64..4.0) {
        let v = bandspec_core::WeightFamily::linear();
        let asym = v.ratio_asymptotics().unwrap();
        let bounds = operator_norm_bounds(&b, p, &asym).unwrap();
        let e = SeqVector::basis(k, k + 2);
        let q = (weighted_norm(&b.apply(&e), p, &v).log_norm - weighted_norm(&e, p, &v).log_norm).exp();
        prop_assert!(q <= bounds.lower_basis_sup * (1.0 + 1e-12));
        if k == 0 {
            // the ratio sup of n+1 is attained at n = 0
            prop_assert!((q - bounds.lower_basis_sup).abs() <= 1e-12 * q);
        }
    }

    #[test]
    fn cesaro_recurrence(b in band(), x in seq(1..10), n in 2usize..60) {
        let x = padded(&x, n);
        let t_n = b.cesaro_apply(n, &x);
        let t_prev = b.cesaro_apply(n - 1, &x);
        let mut p = x.clone();
        for _ in 0..n {
            p = b.apply(&p);
        }
        let scale = t_n.max_abs().max(p.max_abs() / n as f64);
        let w = (n - 1) as f64 / n as f64;
        for k in 0..x.len() {
            let lhs = p.get(k) / n as f64;
            let rhs = t_n.get(k) - w * t_prev.get(k);
            prop_assert!((lhs - rhs).norm() <= 1e-12 * scale.max(1e-300));
        }
    }

    #[test]
    fn adjoint_is_the_transpose(b in band(), x in seq(2..30), y in seq(2..30)) {
        let m = x.len().min(y.len());
        let (x, y) = (x.resized(m), y.resized(m));
        let bx = b.apply(&x);
        let bty = b.apply_adjoint(&y);
        let lhs: Complex64 = (0..m).map(|n| bx.get(n) * y.get(n)).sum();
        let rhs: Complex64 = (0..m).map(|n| x.get(n) * bty.get(n)).sum();
        prop_assert!(close(lhs, rhs, 1e-12));
    }
}

#[test]
fn stated_lower_bound_fails_for_shrinking_weights() {
    // v_n = 2^{-n}: N = 1/2, and (|r|^p + N|s|^p)^{1/p} exceeds |r| + N|s|
    let v = bandspec_core::WeightFamily::power(0.5).unwrap();
    let b = BandParams::new(0.01, 1.0).unwrap();
    let bounds = operator_norm_bounds(&b, 2.0, &v.ratio_asymptotics().unwrap()).unwrap();
    assert!(bounds.lower_stated > bounds.upper);
    assert!(bounds.lower_basis_sup <= bounds.upper);
    assert!(bounds.lower_bounds_disagree);
}

#[test]
fn cesaro_of_one_term_is_apply() {
    let b = BandParams::new(0.3, -0.7).unwrap();
    let x = SeqVector::from_real(&[1.0, -2.0, 0.5, 0.0], Tail::Zero);
    assert_eq!(b.cesaro_apply(1, &x), b.apply(&x));
}

#[test]
fn section_eigenvalues_are_all_r() {
    let b = BandParams::new(1.0, -1.0).unwrap();
    assert!(b.finite_section(300).eigenvalues().iter().all(|&e| e == 1.0));
}
