//! Truncated sequences with an explicit statement about what lies past the
//! stored prefix.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::weights::LogMagnitudes;

/// What is known about the entries at index `>= len()`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Tail {
    Zero,
    Unknown,
}

/// A prefix `x_0..x_{m-1}` of a complex sequence.
///
/// Entries below `exact_len` are exact; the remaining stored entries are
/// best-effort values computed without knowledge of the tail.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SeqVector {
    entries: Vec<Complex64>,
    exact_len: usize,
    tail: Tail,
}

impl SeqVector {
    /// Panics when `entries` is empty or holds a non-finite value.
    pub fn new(entries: Vec<Complex64>, tail: Tail) -> Self {
        assert!(!entries.is_empty(), "a sequence prefix needs at least one entry");
        assert!(
            entries.iter().all(|z| z.re.is_finite() && z.im.is_finite()),
            "sequence entries must be finite"
        );
        let exact_len = entries.len();
        SeqVector {
            entries,
            exact_len,
            tail,
        }
    }

    pub fn from_real(values: &[f64], tail: Tail) -> Self {
        Self::new(values.iter().map(|&x| Complex64::new(x, 0.0)).collect(), tail)
    }

    pub fn zeros(m: usize) -> Self {
        Self::new(vec![Complex64::new(0.0, 0.0); m], Tail::Zero)
    }

    /// The unit vector `e_k` stored on `m` entries.
    pub fn basis(k: usize, m: usize) -> Self {
        assert!(k < m, "basis index {k} outside a prefix of length {m}");
        let mut x = Self::zeros(m);
        x.entries[k] = Complex64::new(1.0, 0.0);
        x
    }

    pub(crate) fn from_parts(entries: Vec<Complex64>, exact_len: usize, tail: Tail) -> Self {
        debug_assert!(exact_len <= entries.len());
        SeqVector {
            entries,
            exact_len,
            tail,
        }
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> &[Complex64] {
        &self.entries
    }

    pub fn into_entries(self) -> Vec<Complex64> {
        self.entries
    }

    pub fn get(&self, n: usize) -> Complex64 {
        self.entries[n]
    }

    pub fn exact_len(&self) -> usize {
        self.exact_len
    }

    pub fn tail(&self) -> Tail {
        self.tail
    }

    /// Largest index with a nonzero entry, if any.
    pub fn last_nonzero(&self) -> Option<usize> {
        self.entries.iter().rposition(|z| *z != Complex64::new(0.0, 0.0))
    }

    /// Re-stores the prefix on `m` entries.
    ///
    /// Growing pads with zeros, which stay exact only when the tail is zero.
    /// Shrinking keeps a zero tail only if every dropped entry vanished.
    pub fn resized(&self, m: usize) -> Self {
        assert!(m >= 1, "a sequence prefix needs at least one entry");
        let zero = Complex64::new(0.0, 0.0);
        if m >= self.len() {
            let mut entries = self.entries.clone();
            entries.resize(m, zero);
            let exact_len = match self.tail {
                Tail::Zero if self.exact_len == self.len() => m,
                _ => self.exact_len,
            };
            SeqVector::from_parts(entries, exact_len, self.tail)
        } else {
            let dropped_zero = self.entries[m..].iter().all(|z| *z == zero);
            let tail = if self.tail == Tail::Zero && dropped_zero {
                Tail::Zero
            } else {
                Tail::Unknown
            };
            SeqVector::from_parts(self.entries[..m].to_vec(), self.exact_len.min(m), tail)
        }
    }

    /// Largest `|x_n|` over the stored prefix.
    pub fn max_abs(&self) -> f64 {
        self.entries.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// Plain euclidean norm of the stored prefix.
    pub fn l2_norm(&self) -> f64 {
        let scale = self.max_abs();
        if scale == 0.0 {
            return 0.0;
        }
        let sum: f64 = self.entries.iter().map(|z| (z / scale).norm_sqr()).sum();
        scale * sum.sqrt()
    }
}

impl LogMagnitudes for SeqVector {
    fn len(&self) -> usize {
        self.entries.len()
    }

    fn log_abs(&self, n: usize) -> f64 {
        self.entries[n].norm().ln()
    }

    fn tail_is_zero(&self) -> bool {
        self.tail == Tail::Zero
    }
}

/// A finitely supported real sequence stored as `sign_n * exp(log_abs_n)`.
///
/// Used where the entries themselves overflow `f64`, e.g. columns of high
/// powers of the operator.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LogSeqVector {
    pub log_abs: Vec<f64>,
    /// `+1.0`, `-1.0`, or `0.0` for a vanishing entry.
    pub sign: Vec<f64>,
}

impl LogSeqVector {
    pub fn len(&self) -> usize {
        self.log_abs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.log_abs.is_empty()
    }

    pub fn value(&self, n: usize) -> f64 {
        self.sign[n] * self.log_abs[n].exp()
    }

    /// Converts to linear storage; panics if an entry overflows.
    pub fn to_seq_vector(&self) -> SeqVector {
        let values: Vec<f64> = (0..self.len()).map(|n| self.value(n)).collect();
        SeqVector::from_real(&values, Tail::Zero)
    }
}

impl LogMagnitudes for LogSeqVector {
    fn len(&self) -> usize {
        self.log_abs.len()
    }

    fn log_abs(&self, n: usize) -> f64 {
        if self.sign[n] == 0.0 {
            f64::NEG_INFINITY
        } else {
            self.log_abs[n]
        }
    }

    fn tail_is_zero(&self) -> bool {
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn growing_a_zero_tail_stays_exact() {
        let x = SeqVector::basis(1, 3).resized(8);
        assert_eq!(x.len(), 8);
        assert_eq!(x.exact_len(), 8);
        assert_eq!(x.tail(), Tail::Zero);
    }

    #[test]
    fn growing_an_unknown_tail_keeps_exact_prefix() {
        let x = SeqVector::from_real(&[1.0, 2.0], Tail::Unknown).resized(5);
        assert_eq!(x.exact_len(), 2);
        assert_eq!(x.tail(), Tail::Unknown);
    }

    #[test]
    fn shrinking_drops_mass_into_the_tail() {
        let x = SeqVector::from_real(&[1.0, 0.0, 3.0], Tail::Zero);
        assert_eq!(x.resized(2).tail(), Tail::Unknown);
        let y = SeqVector::from_real(&[1.0, 0.0, 0.0], Tail::Zero);
        assert_eq!(y.resized(2).tail(), Tail::Zero);
    }

    #[test]
    fn l2_norm_survives_large_entries() {
        let x = SeqVector::from_real(&[3e200, 4e200], Tail::Zero);
        assert!((x.l2_norm() / 5e200 - 1.0).abs() < 1e-15);
    }

    #[test]
    #[should_panic]
    fn rejects_non_finite_entries() {
        SeqVector::from_real(&[f64::NAN], Tail::Zero);
    }
}
