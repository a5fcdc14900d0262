// SPDX-License-Identifier: Apache-2.0

use rand::seq::index;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::Vertex;
use crate::error::{invalid, Result};

/// Generator used for every algorithmic random choice.
pub type TrialRng = ChaCha8Rng;

pub fn trial_rng(seed: u64) -> TrialRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Child generator seeded from the parent's next output.
///
/// Forking gives each phase of an algorithm its own stream, so lengthening
/// one phase (more samples) leaves the prefix of that phase's stream intact.
pub fn fork_rng<R: Rng + ?Sized>(rng: &mut R) -> TrialRng {
    ChaCha8Rng::seed_from_u64(rng.gen())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SampleMode {
    WithReplacement,
    WithoutReplacement,
}

/// Uniform sample of `count` vertex ids from `[0, n)`, deterministic in `rng_seed`.
pub fn sample_vertices(n: usize, count: usize, mode: SampleMode, rng_seed: u64) -> Result<Vec<Vertex>> {
    sample_with(&mut trial_rng(rng_seed), n, count, mode)
}

pub fn sample_with<R: Rng + ?Sized>(
    rng: &mut R,
    n: usize,
    count: usize,
    mode: SampleMode,
) -> Result<Vec<Vertex>> {
    match mode {
        SampleMode::WithReplacement => {
            if n == 0 && count > 0 {
                return Err(invalid("cannot sample from an empty vertex set"));
            }
            Ok((0..count).map(|_| rng.gen_range(0..n) as Vertex).collect())
        }
        SampleMode::WithoutReplacement => {
            if count > n {
                return Err(invalid(format!(
                    "cannot draw {count} distinct vertices from {n}"
                )));
            }
            Ok(index::sample(rng, n, count)
                .into_iter()
                .map(|v| v as Vertex)
                .collect())
        }
    }
}
