//! Quantum erasure channel sampling.
//!
//! Randomness comes from counter-based ChaCha8 streams: trial `t` of a run
//! seeded with `seed` draws from `RngStream::new(seed, t)`, so results do not
//! depend on how trials are spread over worker threads.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{check_len, Error, Result};
use crate::gf2::BinaryVector;
use crate::hgp::HgpCode;

/// A `(seed, stream_id)` pair identifying an independent ChaCha8 stream.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct RngStream {
    pub seed: u64,
    pub stream_id: u64,
}

impl RngStream {
    pub fn new(seed: u64, stream_id: u64) -> Self {
        Self { seed, stream_id }
    }

    /// Fresh generator positioned at the start of this stream.
    pub fn generator(&self) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(self.stream_id);
        rng
    }
}

/// One channel use: which qubits were erased, the hidden X error, and the
/// Z syndrome it produces.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ErasureSample {
    pub erasure: BinaryVector,
    pub error: BinaryVector,
    pub syndrome: BinaryVector,
}

impl ErasureSample {
    /// Builds a sample from a fixed erasure and error, computing the syndrome.
    /// The error must lie inside the erasure.
    pub fn from_parts(code: &HgpCode, erasure: BinaryVector, error: BinaryVector) -> Result<Self> {
        check_len(code.num_qubits(), erasure.len(), "qubits vs erasure length")?;
        check_len(code.num_qubits(), error.len(), "qubits vs error length")?;
        if !error.is_subset_of(&erasure) {
            return Err(Error::InvalidParams("error support is not inside the erasure".into()));
        }
        let syndrome = code.syndrome(&error)?;
        Ok(Self {
            erasure,
            error,
            syndrome,
        })
    }
}

/// Erases each qubit with probability `p`; an erased qubit carries X with
/// probability 1/2.
pub fn sample(code: &HgpCode, p: f64, rng: &RngStream) -> Result<ErasureSample> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::InvalidParams(format!(
            "erasure probability {p} outside [0, 1]"
        )));
    }
    let n = code.num_qubits();
    let mut gen = rng.generator();
    let mut erasure = BinaryVector::zeros(n);
    let mut error = BinaryVector::zeros(n);
    for q in 0..n {
        if gen.gen::<f64>() < p {
            erasure.set(q, true);
            if gen.gen::<bool>() {
                error.set(q, true);
            }
        }
    }
    let syndrome = code.syndrome(&error)?;
    Ok(ErasureSample {
        erasure,
        error,
        syndrome,
    })
}

/// Draws a uniform error inside a fixed erasure.
pub fn sample_with_erasure(
    code: &HgpCode,
    erasure: &BinaryVector,
    rng: &RngStream,
) -> Result<ErasureSample> {
    check_len(code.num_qubits(), erasure.len(), "qubits vs erasure length")?;
    let mut gen = rng.generator();
    let error = BinaryVector::from_indices(
        erasure.len(),
        erasure.iter_ones().filter(|_| gen.gen::<bool>()),
    );
    let syndrome = code.syndrome(&error)?;
    Ok(ErasureSample {
        erasure: erasure.clone(),
        error,
        syndrome,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classical::TannerGraph;

    fn surface13() -> HgpCode {
        let g = TannerGraph::from_edges(2, 3, [(0, 0), (0, 1), (1, 1), (1, 2)]).unwrap();
        HgpCode::new(&g).unwrap()
    }

    #[test]
    fn extremes() {
        let code = surface13();
        let s = sample(&code, 0.0, &RngStream::new(1, 2)).unwrap();
        assert!(s.erasure.is_zero() && s.error.is_zero() && s.syndrome.is_zero());
        let s = sample(&code, 1.0, &RngStream::new(1, 2)).unwrap();
        assert_eq!(s.erasure, BinaryVector::ones(13));
        assert!(sample(&code, 1.5, &RngStream::new(1, 2)).is_err());
    }

    #[test]
    fn fixed_erasure() {
        let code = surface13();
        let zero = BinaryVector::zeros(13);
        let s = sample_with_erasure(&code, &zero, &RngStream::new(5, 0)).unwrap();
        assert!(s.error.is_zero() && s.syndrome.is_zero());
        let full = BinaryVector::ones(13);
        let a = sample_with_erasure(&code, &full, &RngStream::new(5, 9)).unwrap();
        let b = sample_with_erasure(&code, &full, &RngStream::new(5, 9)).unwrap();
        assert_eq!(a, b);
        assert!(a.error.is_subset_of(&a.erasure));
    }

    #[test]
    fn streams_differ() {
        let code = surface13();
        let a = sample(&code, 0.5, &RngStream::new(1, 0)).unwrap();
        let b = sample(&code, 0.5, &RngStream::new(1, 0)).unwrap();
        assert_eq!(a, b);
        let distinct = (1..20)
            .map(|t| sample(&code, 0.5, &RngStream::new(1, t)).unwrap())
            .filter(|s| s.erasure != a.erasure)
            .count();
        assert!(distinct > 10);
    }
}
