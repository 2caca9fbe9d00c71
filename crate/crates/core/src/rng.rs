//! Seed expansion: every subsystem draws from its own ChaCha stream of one
//! user-supplied 64-bit seed.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub type Rng = ChaCha8Rng;

/// Stream identifiers, one per consumer of randomness.
pub mod stream {
    pub const GRAPH: u64 = 1;
    pub const SAT: u64 = 2;
    pub const PORTFOLIO: u64 = 3;
    pub const TSP: u64 = 4;
    pub const SAMPLER: u64 = 10;
    pub const SHOTS: u64 = 20;
    pub const OPTIMIZER: u64 = 30;
}

pub fn rng_for(seed: u64, stream: u64) -> Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}
