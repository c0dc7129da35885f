//! Seeded random-number streams.
//!
//! A run derives every source of randomness from one master seed through
//! independent, documented ChaCha substreams, so that runs are reproducible
//! byte for byte and the acceleration-equivalence property can be tested
//! against identical draws.

use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha12Rng;

/// The independent consumers of randomness within a run.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SubStream {
    /// Initial design points: live-point initialization for nested sampling,
    /// or the uniform-random design sequence for Monte Carlo.
    DesignInit = 0,
    /// Replacement proposals drawn inside the enclosing ellipsoid.
    Proposals = 1,
    /// Generation of the model-parameter sample set.
    Uncertainty = 2,
}

/// A ChaCha stream for one consumer, derived from the master seed.
pub fn substream(seed: u64, stream: SubStream) -> ChaCha12Rng {
    let mut rng = ChaCha12Rng::seed_from_u64(seed);
    rng.set_stream(stream as u64);
    rng
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::Rng;

    #[test]
    fn substreams_are_independent_and_reproducible() {
        let mut a = substream(7, SubStream::DesignInit);
        let mut b = substream(7, SubStream::Proposals);
        let mut a2 = substream(7, SubStream::DesignInit);
        let xa: f64 = a.random();
        let xb: f64 = b.random();
        assert_ne!(xa, xb);
        assert_eq!(xa, a2.random::<f64>());
    }
}
