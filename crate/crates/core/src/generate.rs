//! Seeded random contexts.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::context::{AttrId, Context};
use crate::error::{Error, Result};

/// Densities used by fuzz cases.
pub const FUZZ_DENSITIES: [f64; 9] = [0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9];

/// An `n × m` context where each incidence is drawn independently with
/// probability `density`. The same arguments always give the same context.
pub fn random_context(n: usize, m: usize, density: f64, seed: u64) -> Result<Context> {
    if !(0.0..=1.0).contains(&density) {
        return Err(Error::invalid(format!("density {density} is outside [0, 1]")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    Ok(fill(&mut rng, n, m, density))
}

fn fill(rng: &mut ChaCha8Rng, n: usize, m: usize, density: f64) -> Context {
    let rows = (0..n)
        .map(|_| (0..m as AttrId).filter(|_| rng.random_bool(density)).collect())
        .collect();
    Context::from_rows(m, rows).expect("generated ids are in range")
}

/// One generated fuzz input.
#[derive(Debug, Clone)]
pub struct FuzzCase {
    pub index: usize,
    pub density: f64,
    pub context: Context,
}

/// `count` cases with `n ∈ 0..=max_n`, `m ∈ 0..=max_m` and a density from
/// [`FUZZ_DENSITIES`], all derived from `seed`. Case `k` depends only on
/// `seed` and `k`.
pub fn fuzz_cases(count: usize, max_n: usize, max_m: usize, seed: u64) -> Vec<FuzzCase> {
    (0..count).map(|k| fuzz_case(k, max_n, max_m, seed)).collect()
}

pub fn fuzz_case(index: usize, max_n: usize, max_m: usize, seed: u64) -> FuzzCase {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index as u64);
    let n = rng.random_range(0..=max_n);
    let m = rng.random_range(0..=max_m);
    let density = FUZZ_DENSITIES[rng.random_range(0..FUZZ_DENSITIES.len())];
    FuzzCase {
        index,
        density,
        context: fill(&mut rng, n, m, density),
    }
}
