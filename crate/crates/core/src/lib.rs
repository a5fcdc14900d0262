// SPDX-License-Identifier: Apache-2.0

//! Planted clique recovery and detection in sublinear time.
//!
//! Instances are lazy: an [`AdjacencyOracle`] answers adjacency probes from a
//! keyed hash, so graphs with millions of vertices cost almost no memory. Every
//! probe an algorithm makes is charged to a [`QueryLedger`], which is the cost
//! model the algorithms are measured against.
//!
//! - [`graph`]: instance distributions, the oracle, the ledger, vertex sets.
//! - [`algorithms`]: clique completion and the three degree-based recovery
//!   algorithms built on it.
//! - [`detection`]: non-adaptive rectangular detectors and the query-set audit.
//! - [`reductions`]: prefix restriction, realized clique size, budget checks.
//! - [`exact`]: brute-force ground truth for graphs of at most 32 vertices.
//! - [`harness`]: seeded Monte-Carlo experiments with CSV output.

pub mod algorithms;
pub mod detection;
pub mod error;
pub mod exact;
pub mod graph;
pub mod harness;
pub mod numeric;
pub mod reductions;

pub use algorithms::{
    clique_completion, khdac, subsample_filter, subsample_khdac, FilterParams, KhdacParams,
    RecoveryOutcome, RecoveryStatus, Tunables,
};
pub use detection::{
    detect_khd, detect_subsampled, rectangular_audit, AuditReport, DetectionOutcome, Hypothesis,
    RectanglePlan, SealedPlan,
};
pub use error::{Error, Result};
pub use graph::{
    degree, degree_over, query, sample_vertices, AdjacencyOracle, Graph, HiddenClique,
    InstanceKind, InstanceSpec, QueryLedger, SampleMode, Vertex, VertexSet,
};
