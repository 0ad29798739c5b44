//! Command-line front end. Every successful invocation prints exactly
//! one JSON record to stdout; diagnostics and timing go to stderr so
//! identical inputs produce byte-identical stdout. Numeric record
//! fields are rounded to 12 significant digits.

use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::inference::{
    exact_marginal_with, saw_marginal, truncated_marginal, ExactOptions, MarginalResult,
};
use crate::model::{check_conditions, Bmrf, CheckMode, ModelSummary, PartialConfiguration};
use crate::modelfile::{emit_model, parse_condition, parse_model};
use crate::numeric::Ratio;
use crate::saw::{BuildLimits, NodeStatus, SawTree, DEFAULT_MAX_NODES};
use crate::verify::{random_suite, run_experiment, CheckTarget, SsmExperiment, SsmMethod};

#[derive(Parser)]
#[command(
    name = "sawmix",
    version,
    about = "Marginals and spatial-mixing diagnostics for binary pairwise Markov random fields"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Conditional plus-marginal of one vertex
    Marginal {
        #[arg(long)]
        model: PathBuf,
        /// Vertex id as written in the model file
        #[arg(long)]
        vertex: u64,
        /// Condition file pinning spins
        #[arg(long)]
        condition: Option<PathBuf>,
        #[arg(long, value_enum)]
        method: MethodArg,
        /// Truncation depth; required by the truncated method
        #[arg(long)]
        depth: Option<usize>,
        /// Density bound for the decay certificate
        #[arg(long, allow_negative_numbers = true)]
        d: Option<f64>,
        /// Cap on free vertices for exact enumeration
        #[arg(long, default_value_t = crate::inference::DEFAULT_MAX_FREE)]
        max_free: usize,
        /// Cap on walk-tree nodes
        #[arg(long, default_value_t = DEFAULT_MAX_NODES)]
        max_nodes: usize,
    },
    /// Path-density metrics of the model's graph
    Metrics {
        #[arg(long)]
        model: PathBuf,
        /// Number of path steps
        #[arg(long)]
        radius: usize,
        /// Restrict to one start vertex; otherwise scan all
        #[arg(long)]
        vertex: Option<u64>,
        /// Search budget in vertex visits
        #[arg(long, default_value_t = crate::graph::DEFAULT_SEARCH_BUDGET)]
        budget: u64,
    },
    /// Closed-form mixing threshold
    Threshold {
        #[arg(long, allow_negative_numbers = true)]
        d: f64,
        #[arg(long, allow_negative_numbers = true)]
        alpha: f64,
        #[arg(long, allow_negative_numbers = true)]
        gamma: f64,
    },
    /// Check a model against the mixing condition
    Check {
        #[arg(long)]
        model: PathBuf,
        #[arg(long, value_enum)]
        mode: ModeArg,
        /// Density bound; required by theorem1, ignored by corollary1
        #[arg(long, allow_negative_numbers = true)]
        d: Option<f64>,
    },
    /// Build a self-avoiding-walk tree
    SawTree {
        #[arg(long)]
        model: PathBuf,
        /// Root vertex id
        #[arg(long)]
        root: u64,
        /// Depth limit
        #[arg(long)]
        depth: Option<usize>,
        #[arg(long)]
        condition: Option<PathBuf>,
        /// Write a Graphviz rendering here
        #[arg(long)]
        dot: Option<PathBuf>,
        #[arg(long, default_value_t = DEFAULT_MAX_NODES)]
        max_nodes: usize,
    },
    /// Compare two conditioned marginals against the decay bound
    SsmVerify {
        #[arg(long)]
        model: PathBuf,
        #[arg(long)]
        vertex: u64,
        #[arg(long)]
        condition_a: PathBuf,
        #[arg(long)]
        condition_b: PathBuf,
        /// Density bound for the decay bound
        #[arg(long, allow_negative_numbers = true)]
        d: Option<f64>,
        #[arg(long, value_enum)]
        method: SsmMethodArg,
    },
    /// Randomized verification of the underlying inequalities
    Verify {
        /// One target id, or "all"
        #[arg(long)]
        target: String,
        #[arg(long, default_value_t = 100)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Generate a model file over a standard graph
    Gen {
        #[arg(long, value_enum)]
        kind: KindArg,
        /// Vertex count (gnp, cycle, grid, path, complete)
        #[arg(long)]
        n: Option<usize>,
        /// Edge probability (gnp)
        #[arg(long)]
        p: Option<f64>,
        #[arg(long)]
        rows: Option<usize>,
        #[arg(long)]
        cols: Option<usize>,
        /// Children per internal vertex (regular_tree)
        #[arg(long)]
        branching: Option<usize>,
        /// Tree height (regular_tree)
        #[arg(long)]
        height: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Coupling on every edge
        #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
        ising_j: f64,
        /// Field on every vertex
        #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
        ising_b: f64,
        #[arg(long)]
        out: PathBuf,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum MethodArg {
    Exact,
    Saw,
    Truncated,
}

#[derive(Clone, Copy, ValueEnum)]
enum SsmMethodArg {
    Exact,
    Saw,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Theorem1,
    Corollary1,
}

#[derive(Clone, Copy, ValueEnum)]
enum KindArg {
    Gnp,
    Cycle,
    Grid,
    Path,
    Complete,
    #[value(name = "regular_tree")]
    RegularTree,
}

impl KindArg {
    fn tag(self) -> &'static str {
        match self {
            KindArg::Gnp => "gnp",
            KindArg::Cycle => "cycle",
            KindArg::Grid => "grid",
            KindArg::Path => "path",
            KindArg::Complete => "complete",
            KindArg::RegularTree => "regular_tree",
        }
    }
}

/// Parses arguments, runs one command, prints one record, and returns
/// the process exit code.
pub fn run() -> i32 {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            let _ = err.print();
            return err.exit_code();
        }
    };
    let start = Instant::now();
    let outcome = dispatch(cli.command);
    let code = match outcome {
        Ok(record) => {
            println!("{record}");
            0
        }
        Err(err) => {
            eprintln!("error: {err}");
            err.exit_code()
        }
    };
    eprintln!("elapsed_ms={}", start.elapsed().as_millis());
    code
}

/// Finite numbers rounded to 12 significant digits; infinities become
/// strings, since JSON has no representation for them.
fn num(x: f64) -> Value {
    if !x.is_finite() {
        return json!(x.to_string());
    }
    if x == 0.0 {
        return json!(0.0);
    }
    let rounded: f64 = format!("{x:.11e}").parse().expect("formatted float parses");
    json!(rounded)
}

fn ratio_value(r: &Ratio) -> Value {
    json!({ "num": r.num(), "den": r.den(), "value": num(r.as_f64()) })
}

fn record(command: &str) -> Map<String, Value> {
    let mut map = Map::new();
    map.insert("version".into(), json!(env!("CARGO_PKG_VERSION")));
    map.insert("command".into(), json!(command));
    map
}

fn load_model(path: &Path) -> Result<Bmrf> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::input(format!("cannot read {}: {e}", path.display())))?;
    parse_model(&text)
}

fn load_condition(path: Option<&Path>, m: &Bmrf) -> Result<PartialConfiguration> {
    match path {
        None => Ok(PartialConfiguration::new()),
        Some(path) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| Error::input(format!("cannot read {}: {e}", path.display())))?;
            parse_condition(&text, m)
        }
    }
}

fn resolve_vertex(m: &Bmrf, id: u64) -> Result<usize> {
    m.graph()
        .index_of(id)
        .ok_or_else(|| Error::input(format!("vertex {id} is not in the model")))
}

fn labels_of(g: &Graph, vs: impl IntoIterator<Item = usize>) -> Vec<u64> {
    vs.into_iter().map(|v| g.label(v)).collect()
}

fn marginal_fields(map: &mut Map<String, Value>, r: &MarginalResult) {
    map.insert("method".into(), json!(r.method.tag()));
    map.insert("p".into(), num(r.p));
    map.insert("odds".into(), num(r.odds()));
    if let Some((lo, hi)) = r.interval {
        map.insert("interval".into(), json!([num(lo), num(hi)]));
        map.insert("width".into(), num(r.width()));
    }
    if let Some(cert) = r.certificate {
        map.insert("certificate".into(), num(cert));
    }
}

fn summary_fields(s: &ModelSummary) -> Value {
    let mut map = Map::new();
    map.insert("field_min".into(), num(s.field_min));
    map.insert("field_max".into(), num(s.field_max));
    map.insert("coupling".into(), num(s.coupling));
    if let Some(a) = s.alpha_min {
        map.insert("alpha_min".into(), num(a));
    }
    if let Some(a) = s.alpha_max {
        map.insert("alpha_max".into(), num(a));
    }
    if let Some(g) = s.gamma {
        map.insert("gamma".into(), num(g));
    }
    Value::Object(map)
}

fn dispatch(command: Command) -> Result<Value> {
    match command {
        Command::Marginal {
            model,
            vertex,
            condition,
            method,
            depth,
            d,
            max_free,
            max_nodes,
        } => {
            let m = load_model(&model)?;
            let v = resolve_vertex(&m, vertex)?;
            let cond = load_condition(condition.as_deref(), &m)?;
            let limits = BuildLimits {
                max_depth: None,
                max_nodes,
            };
            let result = match method {
                MethodArg::Exact => exact_marginal_with(&m, v, &cond, &ExactOptions { max_free })?,
                MethodArg::Saw => saw_marginal(&m, v, &cond, &limits)?,
                MethodArg::Truncated => {
                    let t = depth.ok_or_else(|| Error::input("--depth is required for the truncated method"))?;
                    truncated_marginal(&m, v, &cond, t, d, &limits)?
                }
            };
            let mut map = record("marginal");
            map.insert("model".into(), json!(model.display().to_string()));
            map.insert("vertex".into(), json!(vertex));
            if let Some(path) = condition {
                map.insert("condition".into(), json!(path.display().to_string()));
            }
            if let Some(t) = depth {
                map.insert("depth".into(), json!(t));
            }
            if let Some(d) = d {
                map.insert("d".into(), num(d));
            }
            marginal_fields(&mut map, &result);
            Ok(Value::Object(map))
        }
        Command::Metrics {
            model,
            radius,
            vertex,
            budget,
        } => {
            let m = load_model(&model)?;
            let g = m.graph();
            let mut map = record("metrics");
            map.insert("model".into(), json!(model.display().to_string()));
            map.insert("radius".into(), json!(radius));
            match vertex {
                Some(id) => {
                    let v = resolve_vertex(&m, id)?;
                    let metrics = g.max_path_density_budgeted(v, radius, budget)?;
                    map.insert("vertex".into(), json!(id));
                    map.insert("density".into(), json!(metrics.density));
                    map.insert(
                        "delta".into(),
                        metrics.delta.as_ref().map_or(Value::Null, ratio_value),
                    );
                    map.insert(
                        "witness".into(),
                        json!(labels_of(g, metrics.witness.vertices().iter().copied())),
                    );
                }
                None => {
                    let (delta, argmax) = g.max_avg_degree_budgeted(radius, budget)?;
                    map.insert("max_avg_degree".into(), ratio_value(&delta));
                    map.insert("argmax_vertex".into(), json!(g.label(argmax)));
                }
            }
            Ok(Value::Object(map))
        }
        Command::Threshold { d, alpha, gamma } => {
            let value = crate::model::ssm_threshold(d, alpha, gamma)?;
            let mut map = record("threshold");
            map.insert("d".into(), num(d));
            map.insert("alpha".into(), num(alpha));
            map.insert("gamma".into(), num(gamma));
            map.insert("threshold".into(), num(value));
            Ok(Value::Object(map))
        }
        Command::Check { model, mode, d } => {
            let m = load_model(&model)?;
            let check_mode = match mode {
                ModeArg::Theorem1 => CheckMode::Uniform,
                ModeArg::Corollary1 => CheckMode::PerVertex,
            };
            let report = check_conditions(&m, d, check_mode)?;
            let mut map = record("check");
            map.insert("model".into(), json!(model.display().to_string()));
            map.insert(
                "mode".into(),
                json!(match mode {
                    ModeArg::Theorem1 => "theorem1",
                    ModeArg::Corollary1 => "corollary1",
                }),
            );
            map.insert("d".into(), num(report.d));
            map.insert("tanh_term".into(), num(report.tanh_term));
            map.insert("in_regime".into(), json!(report.in_regime));
            if let Some(t) = report.upper_threshold {
                map.insert("upper_threshold".into(), num(t));
            }
            if let Some(t) = report.lower_threshold {
                map.insert("lower_threshold".into(), num(t));
            }
            map.insert("field_min_ok".into(), json!(report.field_min_ok));
            map.insert("field_max_ok".into(), json!(report.field_max_ok));
            map.insert("satisfied".into(), json!(report.satisfied));
            if let Some(branch) = report.branch {
                map.insert("branch".into(), json!(branch.tag()));
            }
            map.insert(
                "violations".into(),
                json!(labels_of(m.graph(), report.violations.iter().copied())),
            );
            map.insert("summary".into(), summary_fields(&report.summary));
            Ok(Value::Object(map))
        }
        Command::SawTree {
            model,
            root,
            depth,
            condition,
            dot,
            max_nodes,
        } => {
            let m = load_model(&model)?;
            let g = m.graph();
            let r = resolve_vertex(&m, root)?;
            let cond = load_condition(condition.as_deref(), &m)?;
            let limits = BuildLimits {
                max_depth: depth,
                max_nodes,
            };
            let tree = SawTree::build(g, r, &cond, &limits)?;
            let mut free = 0u64;
            let mut fixed = 0u64;
            let mut frontier = 0u64;
            for node in tree.nodes() {
                match node.status {
                    NodeStatus::Free => free += 1,
                    NodeStatus::Fixed(_) => fixed += 1,
                    NodeStatus::Frontier => frontier += 1,
                }
            }
            let mut map = record("saw-tree");
            map.insert("model".into(), json!(model.display().to_string()));
            map.insert("root".into(), json!(root));
            if let Some(path) = condition {
                map.insert("condition".into(), json!(path.display().to_string()));
            }
            map.insert("nodes".into(), json!(tree.len()));
            map.insert("depth".into(), json!(tree.depth()));
            map.insert("levels".into(), json!(tree.level_counts()));
            map.insert("free".into(), json!(free));
            map.insert("fixed".into(), json!(fixed));
            map.insert("frontier".into(), json!(frontier));
            map.insert("complete".into(), json!(tree.is_complete()));
            map.insert(
                "truncated_at".into(),
                tree.truncated_at().map_or(Value::Null, |t| json!(t)),
            );
            if let Some(path) = dot {
                std::fs::write(&path, tree.to_dot(g))
                    .map_err(|e| Error::input(format!("cannot write {}: {e}", path.display())))?;
                map.insert("dot".into(), json!(path.display().to_string()));
            }
            Ok(Value::Object(map))
        }
        Command::SsmVerify {
            model,
            vertex,
            condition_a,
            condition_b,
            d,
            method,
        } => {
            let m = load_model(&model)?;
            let v = resolve_vertex(&m, vertex)?;
            let sigma = load_condition(Some(&condition_a), &m)?;
            let eta = load_condition(Some(&condition_b), &m)?;
            let experiment = SsmExperiment::new(m.graph(), v, sigma, eta)?;
            let method = match method {
                SsmMethodArg::Exact => SsmMethod::Exact,
                SsmMethodArg::Saw => SsmMethod::Saw,
            };
            let report = run_experiment(&m, &experiment, d, method)?;
            let mut map = record("ssm-verify");
            map.insert("model".into(), json!(model.display().to_string()));
            map.insert("vertex".into(), json!(vertex));
            map.insert("condition_a".into(), json!(condition_a.display().to_string()));
            map.insert("condition_b".into(), json!(condition_b.display().to_string()));
            map.insert("method".into(), json!(report.method.tag()));
            if let Some(d) = d {
                map.insert("d".into(), num(d));
            }
            map.insert(
                "theta".into(),
                json!(labels_of(m.graph(), experiment.theta().iter().copied())),
            );
            map.insert("distance".into(), json!(report.distance));
            map.insert("p_a".into(), num(report.p_sigma));
            map.insert("p_b".into(), num(report.p_eta));
            map.insert("measured".into(), num(report.measured));
            if let Some(bound) = report.bound {
                map.insert("bound".into(), num(bound));
            }
            if let Some(pass) = report.pass {
                map.insert("pass".into(), json!(pass));
            }
            Ok(Value::Object(map))
        }
        Command::Verify { target, trials, seed } => {
            let targets: Vec<CheckTarget> = if target == "all" {
                CheckTarget::ALL.to_vec()
            } else {
                vec![CheckTarget::parse(&target)?]
            };
            let suite = random_suite(&targets, trials, seed)?;
            let mut map = record("verify");
            map.insert("target".into(), json!(target));
            map.insert("trials".into(), json!(trials));
            map.insert("seed".into(), json!(seed));
            map.insert("all_passed".into(), json!(suite.all_passed()));
            let results: Vec<Value> = suite
                .results
                .iter()
                .map(|r| {
                    let mut entry = Map::new();
                    entry.insert("target".into(), json!(r.target.tag()));
                    entry.insert("trials".into(), json!(r.trials));
                    entry.insert("passes".into(), json!(r.passes));
                    entry.insert(
                        "worst_margin".into(),
                        r.worst_margin.map_or(Value::Null, num),
                    );
                    Value::Object(entry)
                })
                .collect();
            map.insert("results".into(), json!(results));
            Ok(Value::Object(map))
        }
        Command::Gen {
            kind,
            n,
            p,
            rows,
            cols,
            branching,
            height,
            seed,
            ising_j,
            ising_b,
            out,
        } => {
            let need = |opt: Option<usize>, flag: &str| {
                opt.ok_or_else(|| Error::input(format!("--{flag} is required for this kind")))
            };
            let graph = match kind {
                KindArg::Gnp => {
                    let n = need(n, "n")?;
                    let p = p.ok_or_else(|| Error::input("--p is required for this kind"))?;
                    Graph::gnp(n, p, seed)?
                }
                KindArg::Cycle => Graph::cycle(need(n, "n")?)?,
                KindArg::Grid => Graph::grid(need(rows, "rows")?, need(cols, "cols")?)?,
                KindArg::Path => Graph::path_graph(need(n, "n")?)?,
                KindArg::Complete => Graph::complete(need(n, "n")?)?,
                KindArg::RegularTree => Graph::regular_tree(need(branching, "branching")?, need(height, "height")?)?,
            };
            let model = Bmrf::ising(graph, ising_j, ising_b);
            std::fs::write(&out, emit_model(&model))
                .map_err(|e| Error::input(format!("cannot write {}: {e}", out.display())))?;
            let mut map = record("gen");
            map.insert("kind".into(), json!(kind.tag()));
            map.insert("vertices".into(), json!(model.graph().vertex_count()));
            map.insert("edges".into(), json!(model.graph().edge_count()));
            map.insert("seed".into(), json!(seed));
            map.insert("ising_j".into(), num(ising_j));
            map.insert("ising_b".into(), num(ising_b));
            map.insert("out".into(), json!(out.display().to_string()));
            Ok(Value::Object(map))
        }
    }
}
