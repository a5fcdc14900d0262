// SPDX-License-Identifier: Apache-2.0

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};
use crate::numeric;

/// Knobs shared by every recovery algorithm.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Tunables {
    /// Completion seed sets have size `⌈(1 + c) log n⌉`.
    pub c: f64,
    /// Reuse the degree test for vertices sampled more than once instead of
    /// recomputing (and re-charging) it.
    pub memoize: bool,
}

impl Default for Tunables {
    fn default() -> Self {
        Self {
            c: 1.0,
            memoize: false,
        }
    }
}

impl Tunables {
    pub fn validate(&self) -> Result<()> {
        if !(self.c.is_finite() && self.c > 0.0) {
            return Err(invalid(format!("c = {} must be a positive constant", self.c)));
        }
        Ok(())
    }
}

/// Parameters of keep-high-degree-and-complete on a graph of `n` vertices.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct KhdacParams {
    /// Number of vertices sampled (with replacement).
    pub l_in: usize,
    /// Sampled vertices with degree at least this are kept.
    pub degree_threshold: f64,
    /// Seed-set size handed to clique completion.
    pub completion_subset_size: usize,
    pub tunables: Tunables,
}

impl KhdacParams {
    pub fn new(n: usize, l_in: usize, tunables: Tunables) -> Result<Self> {
        tunables.validate()?;
        if l_in == 0 {
            return Err(invalid("l_in must be at least 1"));
        }
        Ok(Self {
            l_in,
            degree_threshold: numeric::degree_threshold(n),
            completion_subset_size: numeric::completion_size(n, tunables.c),
            tunables,
        })
    }

    /// Uses the sample count `⌈4 n (log n)^2 / k⌉` that suffices for a clique
    /// of (at least) size `k`.
    pub fn for_clique_size(n: usize, k: f64, tunables: Tunables) -> Result<Self> {
        if !(k.is_finite() && k > 0.0) {
            return Err(invalid(format!("clique size estimate {k} must be positive")));
        }
        Self::new(n, numeric::khdac_sample_size(n, k), tunables)
    }

    pub fn with_threshold(mut self, threshold: f64) -> Self {
        self.degree_threshold = threshold;
        self
    }
}

/// Parameters of subsample-and-filter.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct FilterParams {
    /// Inclusion probability for vertices of the first half, clamped to 1.
    pub p_sub: f64,
    /// Inclusive band on second-half degree: `(n + k)/4 ± 2 sqrt(n)`.
    pub lower: f64,
    pub upper: f64,
}

impl FilterParams {
    pub fn new(n: usize, k: usize, p: f64) -> Result<Self> {
        if !(p.is_finite() && p > 0.0) {
            return Err(invalid(format!("subsample probability {p} must be positive")));
        }
        if p > 1.0 {
            log::debug!("subsample probability {p} clamped to 1");
        }
        let (lower, upper) = numeric::filter_band(n, k);
        Ok(Self {
            p_sub: p.min(1.0),
            lower,
            upper,
        })
    }

    /// The probability `(n log n / k^2) exp(-k^2 / 24n)`, clamped.
    pub fn recommended(n: usize, k: usize) -> Result<Self> {
        Self::new(n, k, numeric::filter_rate(n, k))
    }
}
