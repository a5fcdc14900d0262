// SPDX-License-Identifier: Apache-2.0

//! Seeded Monte-Carlo checks of per-operation behaviour.

use rand::seq::SliceRandom;
use rand::Rng;
use rayon::prelude::*;

use planted_clique::algorithms::{
    clique_completion, khdac, subsample_filter, subsample_khdac, KhdacParams, RecoveryOutcome, Tunables,
};
use planted_clique::detection::{detect_subsampled, rectangular_audit, Hypothesis, RectanglePlan};
use planted_clique::exact::{all_maximum_cliques, materialize, max_clique_exact, verify_clique};
use planted_clique::graph::{
    degree, sample_vertices, trial_rng, AdjacencyOracle, Graph, HiddenClique, InstanceSpec, QueryLedger,
    SampleMode, Vertex, VertexSet,
};
use planted_clique::numeric;
use planted_clique::reductions::{query_budget_check, realized_clique_size, restrict_prefix};

fn oracle(spec: InstanceSpec) -> AdjacencyOracle {
    AdjacencyOracle::build(&spec).unwrap()
}

fn subset_of_clique(g: &AdjacencyOracle, size: usize, seed: u64) -> VertexSet {
    let mut ids = g.hidden_clique().into_vec();
    ids.shuffle(&mut trial_rng(seed ^ 0x5eed));
    ids.truncate(size);
    VertexSet::from_unsorted(ids)
}

/// Successes over `0..trials`, run in parallel.
fn count(trials: u64, f: impl Fn(u64) -> bool + Sync + Send) -> usize {
    (0..trials).into_par_iter().filter(|&s| f(s)).count()
}

/// A `Recovered` output on a null instance must still be a clique.
fn honest_on_null(g: &AdjacencyOracle, out: &RecoveryOutcome) -> bool {
    !out.is_recovered() || verify_clique(g, &mut QueryLedger::new(), &out.clique).unwrap()
}

#[test]
fn completion_small() {
    let (n, k) = (24, 12);
    let size = numeric::completion_size(n, 1.0);
    assert_eq!(size, 10);
    let ok = count(100, |seed| {
        let g = oracle(InstanceSpec::planted(n, k, seed));
        let s = subset_of_clique(&g, size, seed);
        let out = clique_completion(&g, &mut QueryLedger::new(), &s, 1.0, &mut trial_rng(seed)).unwrap();
        let dense = materialize(&g, &mut QueryLedger::new()).unwrap();
        let all = all_maximum_cliques(&dense);
        if all.len() == 1 && out.clique == g.hidden_clique() {
            assert_eq!(all[0], out.clique, "seed {seed}");
        }
        out.clique == g.hidden_clique()
    });
    assert!(ok >= 95, "{ok}/100");
}

#[test]
fn completion_at_scale() {
    let n = 4096;
    let k = numeric::sqrt_n_log_n(n, 8.0);
    let ok = count(100, |seed| {
        let g = oracle(InstanceSpec::planted(n, k, seed));
        let s = subset_of_clique(&g, 24, seed);
        let out = clique_completion(&g, &mut QueryLedger::new(), &s, 1.0, &mut trial_rng(seed)).unwrap();
        out.is_recovered() && out.clique == g.hidden_clique()
    });
    assert!(ok >= 90, "{ok}/100");
}

#[test]
fn khdac_budget_and_null_failure() {
    let n = 4096;
    let k = numeric::sqrt_n_log_n(n, 8.0);
    let params = KhdacParams::for_clique_size(n, k as f64, Tunables::default()).unwrap();
    let budget = (2.0 * (params.l_in as f64 * n as f64 + 2.0 * n as f64 * numeric::log2(n))) as u64;
    let within = count(100, |seed| {
        let g = oracle(InstanceSpec::planted(n, k, 200 + seed));
        let mut l = QueryLedger::new();
        khdac(&g, &mut l, &params, &mut trial_rng(seed)).unwrap();
        query_budget_check(&l, budget).passed
    });
    assert_eq!(within, 100);
    let failed = count(100, |seed| {
        let g = oracle(InstanceSpec::erdos_renyi(n, seed));
        let out = khdac(&g, &mut QueryLedger::new(), &params, &mut trial_rng(seed)).unwrap();
        assert!(honest_on_null(&g, &out), "seed {seed}");
        !out.is_recovered()
    });
    assert!(failed >= 99, "{failed}/100");
}

#[test]
fn subsample_khdac_null_failure() {
    let (n, k) = (65536, 32768);
    let p = numeric::subsample_rate(n, k);
    let failed = count(100, |seed| {
        let g = oracle(InstanceSpec::erdos_renyi(n, seed));
        let out = subsample_khdac(&g, &mut QueryLedger::new(), k, p, Tunables::default(), &mut trial_rng(seed)).unwrap();
        assert!(honest_on_null(&g, &out), "seed {seed}");
        !out.is_recovered()
    });
    assert!(failed >= 99, "{failed}/100");
}

#[test]
fn subsample_khdac_cost_falls_with_k() {
    let n = 4096;
    let means: Vec<f64> = [1500, 2000, 2500, 3000]
        .iter()
        .map(|&k| {
            let p = numeric::subsample_rate(n, k);
            let total: u64 = (0..5u64)
                .into_par_iter()
                .map(|seed| {
                    let g = oracle(InstanceSpec::planted(n, k, seed));
                    let mut l = QueryLedger::new();
                    subsample_khdac(&g, &mut l, k, p, Tunables::default(), &mut trial_rng(seed)).unwrap();
                    l.raw_count()
                })
                .sum();
            total as f64 / 5.0
        })
        .collect();
    assert!(means.windows(2).all(|w| w[1] < w[0]), "{means:?}");
}

#[test]
fn subsample_filter_null_failure_or_unverified() {
    let (n, k) = (16384, 300);
    let p = numeric::filter_rate(n, k);
    let flagged = count(100, |seed| {
        let g = oracle(InstanceSpec::erdos_renyi(n, seed));
        let out = subsample_filter(&g, &mut QueryLedger::new(), k, p, Tunables::default(), &mut trial_rng(seed)).unwrap();
        !out.is_recovered() || !verify_clique(&g, &mut QueryLedger::new(), &out.clique).unwrap()
    });
    assert!(flagged >= 99, "{flagged}/100");
}

#[test]
fn detect_subsampled_half_rate() {
    let (n, k) = (65536, 32768);
    let p = numeric::subsample_rate(n, k);
    let pn = p * n as f64;
    let budget = (2.0 * pn * pn) as u64;
    let correct = count(100, |seed| {
        [(InstanceSpec::erdos_renyi(n, seed), Hypothesis::H0), (InstanceSpec::planted(n, k, seed), Hypothesis::H1)]
            .into_iter()
            .all(|(spec, truth)| {
                let g = oracle(spec);
                let mut l = QueryLedger::new();
                let out = detect_subsampled(&g, &mut l, k, p, &mut trial_rng(seed)).unwrap();
                assert!(l.raw_count() <= budget, "seed {seed}: {}", l.raw_count());
                out.decision == truth
            })
    });
    assert!(correct >= 90, "{correct}/100");
}

#[test]
fn detect_subsampled_null_at_reduced_rate() {
    let (n, k) = (4096, 1774);
    let h0 = count(100, |seed| {
        let g = oracle(InstanceSpec::erdos_renyi(n, seed));
        detect_subsampled(&g, &mut QueryLedger::new(), k, 0.25, &mut trial_rng(seed)).unwrap().decision == Hypothesis::H0
    });
    assert!(h0 >= 99, "{h0}/100");
}

#[test]
fn detection_under_budget_is_flagged() {
    let (n, k) = (1024, 512);
    let p = numeric::subsample_rate(n, k).min(1.0);
    let g = oracle(InstanceSpec::planted(n, k, 4));
    let mut l = QueryLedger::new();
    detect_subsampled(&g, &mut l, k, p, &mut trial_rng(4)).unwrap();
    let pn = p * n as f64;
    let verdict = query_budget_check(&l, (pn * pn / 4.0) as u64);
    assert!(!verdict.passed, "{verdict:?}");
}

#[test]
fn khdac_run_fails_the_rectangle_audit_in_completion() {
    let n = 1024;
    let k = numeric::sqrt_n_log_n(n, 8.0);
    let params = KhdacParams::for_clique_size(n, k as f64, Tunables::default()).unwrap();
    let g = oracle(InstanceSpec::planted(n, k, 2));
    let mut l = QueryLedger::recording();
    let out = khdac(&g, &mut l, &params, &mut trial_rng(2)).unwrap();
    assert!(out.is_recovered());
    // Without memoization the degree phase is `l_in` rows of `n - 1` pairs,
    // each row sharing its sampled vertex.
    let pairs = l.recorded_pairs().unwrap();
    let row = n - 1;
    let (degree_phase, completion_phase) = pairs.split_at(params.l_in * row);
    let rows: VertexSet = degree_phase
        .chunks(row)
        .map(|c| {
            let (a, b) = c[0];
            if c.iter().all(|&(x, y)| x == a || y == a) { a } else { b }
        })
        .collect();
    let plan = RectanglePlan::new(VertexSet::range(n).difference(&rows), rows).unwrap();
    let report = rectangular_audit(&l, &plan).unwrap();
    assert!(!report.passed);
    assert!(!report.offending.is_empty());
    assert!(degree_phase.iter().all(|&(u, v)| plan.contains_pair(u, v)));
    let late: std::collections::BTreeSet<_> = completion_phase.iter().copied().collect();
    assert!(report.offending.iter().all(|p| late.contains(p)));
}

#[test]
fn prefix_of_iid_instance() {
    let total: usize = (0..10_000u64)
        .into_par_iter()
        .map(|seed| {
            let g = oracle(InstanceSpec::planted_iid(1_000_000, 1e-3, seed));
            realized_clique_size(&restrict_prefix(&g, 1000).unwrap())
        })
        .sum();
    let mean = total as f64 / 10_000.0;
    assert!((mean - 1.0).abs() <= 0.3, "{mean}");
}

#[test]
fn prefix_of_fixed_instance_is_hypergeometric() {
    let (n, k, m, seeds) = (10_000usize, 1000usize, 500usize, 10_000u64);
    let total: usize = (0..seeds)
        .into_par_iter()
        .map(|seed| realized_clique_size(&restrict_prefix(&oracle(InstanceSpec::planted(n, k, seed)), m).unwrap()))
        .sum();
    let mean = total as f64 / seeds as f64;
    let q = k as f64 / n as f64;
    let var = m as f64 * q * (1.0 - q) * (n - m) as f64 / (n - 1) as f64;
    let sigma = (var / seeds as f64).sqrt();
    assert!((mean - m as f64 * q).abs() <= 3.0 * sigma, "{mean} vs {} ± {}", m as f64 * q, 3.0 * sigma);
}

#[test]
fn with_replacement_sampling_is_uniform() {
    let (n, draws, reps) = (10_000usize, 1000usize, 100_000u64);
    let hits = (0..reps)
        .into_par_iter()
        .fold(
            || vec![0u32; n],
            |mut acc, seed| {
                for v in sample_vertices(n, draws, SampleMode::WithReplacement, seed).unwrap() {
                    acc[v as usize] += 1;
                }
                acc
            },
        )
        .reduce(|| vec![0u32; n], |a, b| a.iter().zip(&b).map(|(x, y)| x + y).collect());
    // Per-vertex hits per repetition have mean draws / n = 0.1.
    let q = 1.0 / n as f64;
    let trials = (draws as u64 * reps) as f64;
    let (mean, sd) = (trials * q, (trials * q * (1.0 - q)).sqrt());
    assert!((mean / reps as f64 - 0.1).abs() < 1e-12);
    let within = hits.iter().filter(|&&h| (h as f64 - mean).abs() <= 3.0 * sd).count();
    assert!(within as f64 >= 0.99 * n as f64, "{within}");
    let chi2: f64 = hits.iter().map(|&h| (h as f64 - mean).powi(2) / mean).sum();
    let dof = (n - 1) as f64;
    assert!((chi2 - dof).abs() <= 4.0 * (2.0 * dof).sqrt(), "chi2 = {chi2}");
}

#[test]
fn clique_plus_outsider_is_rejected() {
    let n = 4096;
    let k = numeric::sqrt_n_log_n(n, 8.0);
    let rejected = count(100, |seed| {
        let g = oracle(InstanceSpec::planted(n, k, seed));
        let clique = g.hidden_clique();
        assert!(verify_clique(&g, &mut QueryLedger::new(), &clique).unwrap());
        let outside: Vec<Vertex> = (0..n as Vertex).filter(|&v| !g.is_planted(v)).collect();
        let extra = outside[trial_rng(seed).gen_range(0..outside.len())];
        !verify_clique(&g, &mut QueryLedger::new(), &clique.union(&VertexSet::from(vec![extra]))).unwrap()
    });
    assert!(rejected >= 99, "{rejected}/100");
}

#[test]
fn exact_solver_finds_the_planted_clique() {
    let (mut seed, mut unique, mut hits) = (0u64, 0, 0);
    while unique < 100 {
        let g = oracle(InstanceSpec::planted(24, 10, seed));
        seed += 1;
        let dense = materialize(&g, &mut QueryLedger::new()).unwrap();
        if all_maximum_cliques(&dense).len() != 1 {
            continue;
        }
        unique += 1;
        hits += (max_clique_exact(&dense) == g.hidden_clique()) as usize;
    }
    assert!(hits >= 95, "{hits}/100");
}

#[test]
fn materialized_rows_match_degrees() {
    for seed in 0..10 {
        let g = oracle(InstanceSpec::planted(24, 7, seed));
        let dense = materialize(&g, &mut QueryLedger::new()).unwrap();
        for v in 0..24 {
            let d = degree(&g, &mut QueryLedger::new(), v, &VertexSet::range(24)).unwrap();
            assert_eq!(dense.row_sum(v), d);
        }
    }
}

#[test]
fn iid_instances_build_in_linear_time() {
    let start = std::time::Instant::now();
    let g = oracle(InstanceSpec::planted_iid(1_000_000, 1e-3, 1));
    let size = g.hidden_clique().len();
    assert!(size > 800 && size < 1200);
    assert!(start.elapsed().as_secs_f64() < 5.0);
    assert_eq!(g.order(), 1_000_000);
}
