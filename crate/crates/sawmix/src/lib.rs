//! Marginals and spatial-mixing diagnostics for binary pairwise
//! Markov random fields.
//!
//! The crate computes exact conditional marginals by enumeration, the
//! same marginals through self-avoiding-walk tree recursion, and
//! depth-truncated variants with rigorous two-sided intervals. On top
//! of that sit closed-form mixing thresholds, per-model condition
//! checks, correlation-decay certificates, and randomized verifiers
//! for the structural inequalities the certificates rest on.
//!
//! Start with [`model::Bmrf`] for building models, [`inference`] for
//! marginals, and [`verify`] for the inequality suite. The `sawmix`
//! binary exposes the same operations as JSON-emitting subcommands.
//!
//! ```
//! use sawmix::inference::{exact_marginal, saw_marginal};
//! use sawmix::saw::BuildLimits;
//! use sawmix::{Bmrf, Graph, PartialConfiguration};
//!
//! let model = Bmrf::ising(Graph::cycle(6)?, 0.4, 0.1);
//! let free = PartialConfiguration::new();
//! let exact = exact_marginal(&model, 0, &free)?.p;
//! let saw = saw_marginal(&model, 0, &free, &BuildLimits::default())?.p;
//! assert!((exact - saw).abs() < 1e-12);
//! # Ok::<(), sawmix::Error>(())
//! ```

pub mod cli;
pub mod error;
pub mod graph;
pub mod inference;
pub mod model;
pub mod modelfile;
pub mod numeric;
pub mod saw;
pub mod verify;

pub use error::{Error, Result};
pub use graph::{EdgeOrder, Graph, GraphMetrics, Path};
pub use inference::{
    exact_marginal, exact_partition, saw_marginal, tree_marginal, truncated_marginal,
    MarginalResult, Method,
};
pub use model::{
    check_conditions, decay_bound, ssm_threshold, Bmrf, Branch, CheckMode, ConditionReport,
    DecayBound, ModelSummary, PairPotential, PartialConfiguration, Spin, VertexPotential,
};
pub use saw::{BuildLimits, SawTree};
pub use verify::{random_suite, run_experiment, CheckTarget, SsmExperiment};
