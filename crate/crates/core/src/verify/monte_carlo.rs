use rand::distr::{Distribution, Uniform};
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::polyhedron::Vec3;

/// Samples per batch. Batch `i` draws from ChaCha stream `i` of the seed, so
/// the hit count does not depend on how batches are scheduled.
pub const BATCH_SIZE: u64 = 4096;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct McEstimate {
    pub estimate: f64,
    pub stderr: f64,
    pub hits: u64,
    pub samples: u64,
}

/// Hit-or-miss volume of `{p : inside(p)}` within the box `[lo, hi]`.
pub fn monte_carlo_volume<F>(inside: F, lo: Vec3, hi: Vec3, samples: u64, seed: u64) -> McEstimate
where
    F: Fn(&Vec3) -> bool + Sync,
{
    let axes: Vec<Uniform<f64>> = (0..3)
        .map(|k| Uniform::new_inclusive(lo[k], hi[k]).expect("non-empty box"))
        .collect();
    let batches = samples.div_ceil(BATCH_SIZE);
    let hits: u64 = (0..batches)
        .into_par_iter()
        .map(|b| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(b);
            let count = BATCH_SIZE.min(samples - b * BATCH_SIZE);
            let mut hits = 0u64;
            for _ in 0..count {
                let p = Vec3::new(axes[0].sample(&mut rng), axes[1].sample(&mut rng), axes[2].sample(&mut rng));
                if inside(&p) {
                    hits += 1;
                }
            }
            hits
        })
        .sum();
    let volume = (hi - lo).iter().product::<f64>();
    let f = hits as f64 / samples as f64;
    McEstimate {
        estimate: f * volume,
        stderr: volume * (f * (1.0 - f) / samples as f64).sqrt(),
        hits,
        samples,
    }
}
