use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Independent random-number domains inside one Monte Carlo realization.
///
/// Keeping taps, codes, and the selection heuristic on separate streams means
/// changing how many draws one consumer makes never perturbs the others, so
/// paired comparisons across algorithms and sweep points stay paired.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StreamDomain {
    /// Channel tap signs and magnitudes.
    Taps,
    /// Time-hopping and polarity codes.
    Codes,
    /// Randomized selection (population init, pairing, mating, mutation).
    Ga,
}

impl StreamDomain {
    fn tag(self) -> u64 {
        match self {
            StreamDomain::Taps => 1,
            StreamDomain::Codes => 2,
            StreamDomain::Ga => 3,
        }
    }
}

/// Deterministic substream for `(master_seed, realization, domain)`.
///
/// The 32-byte ChaCha seed is the little-endian concatenation of the three
/// coordinates plus a fixed tag word, so distinct tuples give distinct seeds.
pub fn substream(master_seed: u64, realization: u64, domain: StreamDomain) -> ChaCha8Rng {
    let mut seed = [0u8; 32];
    seed[0..8].copy_from_slice(&master_seed.to_le_bytes());
    seed[8..16].copy_from_slice(&realization.to_le_bytes());
    seed[16..24].copy_from_slice(&domain.tag().to_le_bytes());
    seed[24..32].copy_from_slice(&0x5eed_cafe_u64.to_le_bytes());
    ChaCha8Rng::from_seed(seed)
}

/// A plain `u64` seed for consumers that own their generator, derived from the
/// same coordinates as [`substream`].
pub fn substream_seed(master_seed: u64, realization: u64, domain: StreamDomain) -> u64 {
    use rand::RngCore;
    substream(master_seed, realization, domain).next_u64()
}
