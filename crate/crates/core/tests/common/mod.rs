#![allow(dead_code)]

use bandspec_core::{AlphaSequence, BandParams, Complex64, SeqVector, Tail, WeightFamily};
use proptest::prelude::*;

pub fn nonzero(lo: f64, hi: f64) -> impl Strategy<Value = f64> {
    (lo..hi, any::<bool>()).prop_map(|(x, neg)| if neg { -x } else { x })
}

pub fn band() -> impl Strategy<Value = BandParams> {
    (nonzero(0.05, 2.0), nonzero(0.05, 2.0)).prop_map(|(r, s)| BandParams::new(r, s).unwrap())
}

/// `v_n = 2^n (n + 1)` through a tabulated exponent.
pub fn power_times_linear() -> WeightFamily {
    let alpha: Vec<f64> = (0..512).map(|n| n as f64 + (n as f64 + 1.0).log2()).collect();
    WeightFamily::geometric(2.0, AlphaSequence::table(alpha, 1.0).unwrap()).unwrap()
}

pub fn weights() -> Vec<WeightFamily> {
    vec![
        WeightFamily::Unit,
        WeightFamily::power(2.0).unwrap(),
        WeightFamily::power(0.5).unwrap(),
        WeightFamily::linear(),
        WeightFamily::geometric(3.0, AlphaSequence::LogShift).unwrap(),
        power_times_linear(),
    ]
}

pub fn weight() -> impl Strategy<Value = WeightFamily> {
    (0..weights().len()).prop_map(|i| weights()[i].clone())
}

pub fn complex_vec(len: std::ops::Range<usize>) -> impl Strategy<Value = Vec<Complex64>> {
    prop::collection::vec(
        (-1.0..1.0f64, -1.0..1.0f64).prop_map(|(a, b)| Complex64::new(a, b)),
        len,
    )
}

pub fn seq(len: std::ops::Range<usize>) -> impl Strategy<Value = SeqVector> {
    complex_vec(len).prop_map(|v| SeqVector::new(v, Tail::Zero))
}

pub fn close(a: Complex64, b: Complex64, tol: f64) -> bool {
    (a - b).norm() <= tol * (1.0 + a.norm().max(b.norm()))
}
