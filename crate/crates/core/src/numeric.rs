// SPDX-License-Identifier: Apache-2.0

//! Parameter formulas shared by the algorithms, detectors and harness.
//!
//! Logarithms are base 2. Fractional sizes are rounded up.

/// Base-2 logarithm of a vertex count.
pub fn log2(n: usize) -> f64 {
    (n as f64).log2()
}

/// Ceiling that ignores floating-point noise just above an integer.
pub fn ceil(x: f64) -> usize {
    let r = x.round();
    if (x - r).abs() < 1e-9 {
        r.max(0.0) as usize
    } else {
        x.ceil().max(0.0) as usize
    }
}

/// Seed-set size `⌈(1 + c) log n⌉` for clique completion, at least 1.
pub fn completion_size(n: usize, c: f64) -> usize {
    ceil((1.0 + c) * log2(n)).max(1)
}

/// High-degree cutoff `n/2 + 2 sqrt(n log n)`.
pub fn degree_threshold(n: usize) -> f64 {
    let nf = n as f64;
    nf / 2.0 + 2.0 * (nf * log2(n)).sqrt()
}

/// `⌈4 n (log n)^2 / k⌉`, the sample count that collects a full completion
/// seed set when the clique has size `k`.
pub fn khdac_sample_size(n: usize, k: f64) -> usize {
    let l = log2(n);
    ceil(4.0 * n as f64 * l * l / k).max(1)
}

/// `⌈mult · sqrt(n log n)⌉`.
pub fn sqrt_n_log_n(n: usize, mult: f64) -> usize {
    ceil(mult * (n as f64 * log2(n)).sqrt())
}

/// Subsampling fraction `512 n log n / k^2` for subsample-then-KHDAC.
pub fn subsample_rate(n: usize, k: usize) -> f64 {
    512.0 * n as f64 * log2(n) / (k as f64).powi(2)
}

/// Subsampling probability `(n log n / k^2) exp(-k^2 / 24n)` for
/// subsample-and-filter, before clamping.
pub fn filter_rate(n: usize, k: usize) -> f64 {
    let (nf, kf) = (n as f64, k as f64);
    nf * log2(n) / (kf * kf) * (-kf * kf / (24.0 * nf)).exp()
}

/// Inclusive degree band `(n + k)/4 ± 2 sqrt(n)`.
pub fn filter_band(n: usize, k: usize) -> (f64, f64) {
    let centre = (n + k) as f64 / 4.0;
    let half = 2.0 * (n as f64).sqrt();
    (centre - half, centre + half)
}

/// Least-squares slope of `ln y` against `ln x`.
pub fn loglog_slope(xs: &[f64], ys: &[f64]) -> f64 {
    assert_eq!(xs.len(), ys.len());
    let lx: Vec<f64> = xs.iter().map(|x| x.ln()).collect();
    let ly: Vec<f64> = ys.iter().map(|y| y.ln()).collect();
    let m = lx.len() as f64;
    let mx = lx.iter().sum::<f64>() / m;
    let my = ly.iter().sum::<f64>() / m;
    let sxy: f64 = lx.iter().zip(&ly).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = lx.iter().map(|x| (x - mx).powi(2)).sum();
    sxy / sxx
}
