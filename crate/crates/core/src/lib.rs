//! Spectral theory of the generalized difference operator `B(r,s)`,
//! `(B(r,s)x)_n = s x_{n-1} + r x_n`, on weighted `lp` spaces, power series
//! spaces of infinite type and their duals.
//!
//! Closed-form answers (spectra, fine spectra, ergodic verdicts) live next to
//! numerical probes (resolvent solves, growth rates, Cesàro means,
//! pseudospectra) that check them.

pub mod cite;
pub mod ergodics;
mod error;
pub mod grading;
pub mod operator;
pub mod parse;
pub mod pseudospectrum;
pub mod region;
pub mod resolvent;
pub mod space;
pub mod spectra;
pub mod vector;
pub mod weights;

pub use cite::Citation;
pub use error::{Error, Result};
pub use operator::{BandParams, TruncationConfig};
pub use region::{Disk, Region};
pub use space::SpaceDescriptor;
pub use vector::{SeqVector, Tail};
pub use weights::{AlphaSequence, WeightFamily};

pub use num_complex::Complex64;
