//! Counter-based random streams.
//!
//! Every random quantity in the crate is drawn from a stream identified by
//! `(seed, purpose, index)`. The seed and purpose tag form the ChaCha key and
//! the index selects the ChaCha stream, so a draw never depends on which
//! other streams were consumed first or on which thread consumed them.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// What a stream is used for. Distinct purposes never share a key.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Purpose {
    GaussianEigvecs,
    ObservationPerturbation,
    PairSample,
    MeasurementNoise,
    RandomSystem,
}

impl Purpose {
    fn tag(self) -> u64 {
        match self {
            Purpose::GaussianEigvecs => 0x6569_6776_6563_7331,
            Purpose::ObservationPerturbation => 0x6f62_7370_6572_7432,
            Purpose::PairSample => 0x7061_6972_7361_6d33,
            Purpose::MeasurementNoise => 0x6e6f_6973_6573_6d34,
            Purpose::RandomSystem => 0x7379_7374_656d_7235,
        }
    }
}

pub fn stream(seed: u64, purpose: Purpose, index: u64) -> ChaCha8Rng {
    let mut key = [0u8; 32];
    key[..8].copy_from_slice(&seed.to_le_bytes());
    key[8..16].copy_from_slice(&purpose.tag().to_le_bytes());
    let mut rng = ChaCha8Rng::from_seed(key);
    rng.set_stream(index);
    rng
}

/// Packs a sweep cell `(M, trial)` into a stream index.
pub fn cell_index(m: usize, trial: usize) -> u64 {
    ((m as u64) << 32) | (trial as u64 & 0xffff_ffff)
}
