//! Numerical verification: spatial-mixing experiments that compare two
//! conditioned marginals against the decay bound, plus grid and
//! randomized checks of every inequality the bounds rest on.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};
use crate::inference::{exact_marginal, saw_marginal};
use crate::model::{check_conditions, decay_bound, Bmrf, CheckMode, PairPotential, PartialConfiguration};
use crate::saw::{BuildLimits, SawTree};

/// Slack added to the favorable side of every inequality comparison,
/// absorbing f64 rounding without masking a real violation.
pub const PASS_TOLERANCE: f64 = 1e-10;

/// Interior grid resolution used by the randomized suite for checks
/// that scan the unit interval.
const SUITE_GRID: usize = 1000;

/// Two conditions on the same vertex set, compared at a common root.
/// The disagreement set is where they differ; its distance from the
/// root is the scale the decay bound applies at.
#[derive(Clone, Debug)]
pub struct SsmExperiment {
    root: usize,
    sigma: PartialConfiguration,
    eta: PartialConfiguration,
    theta: VertexSet,
    distance: usize,
}

impl SsmExperiment {
    pub fn new(g: &Graph, root: usize, sigma: PartialConfiguration, eta: PartialConfiguration) -> Result<SsmExperiment> {
        g.check_vertex(root)?;
        sigma.validate_for(g.vertex_count())?;
        eta.validate_for(g.vertex_count())?;
        let dom_sigma: Vec<usize> = sigma.vertices().collect();
        let dom_eta: Vec<usize> = eta.vertices().collect();
        if dom_sigma != dom_eta {
            return Err(Error::input("both conditions must fix the same vertex set"));
        }
        let theta: VertexSet = sigma
            .iter()
            .filter(|&(v, s)| eta.get(v) != Some(s))
            .map(|(v, _)| v)
            .collect();
        if theta.is_empty() {
            return Err(Error::input("conditions agree everywhere; no disagreement set"));
        }
        if theta.contains(&root) {
            return Err(Error::input(format!("root {root} lies in the disagreement set")));
        }
        let dist = g.bfs_distances(root);
        let distance = theta
            .iter()
            .map(|&v| dist[v])
            .min()
            .expect("disagreement set is non-empty");
        if distance == u32::MAX {
            return Err(Error::input("disagreement set is unreachable from the root"));
        }
        Ok(SsmExperiment {
            root,
            sigma,
            eta,
            theta,
            distance: distance as usize,
        })
    }

    pub fn root(&self) -> usize {
        self.root
    }

    pub fn sigma(&self) -> &PartialConfiguration {
        &self.sigma
    }

    pub fn eta(&self) -> &PartialConfiguration {
        &self.eta
    }

    /// Vertices where the two conditions disagree.
    pub fn theta(&self) -> &VertexSet {
        &self.theta
    }

    /// Graph distance from the root to the disagreement set.
    pub fn distance(&self) -> usize {
        self.distance
    }
}

/// Marginal backend for an experiment.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SsmMethod {
    Exact,
    Saw,
}

impl SsmMethod {
    pub fn tag(self) -> &'static str {
        match self {
            SsmMethod::Exact => "exact",
            SsmMethod::Saw => "saw",
        }
    }
}

/// Outcome of one spatial-mixing experiment.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SsmReport {
    pub p_sigma: f64,
    pub p_eta: f64,
    /// Absolute difference of the two conditioned marginals.
    pub measured: f64,
    /// Decay bound at the experiment's distance; absent when the
    /// mixing condition does not certify at the supplied density.
    pub bound: Option<f64>,
    /// `measured <= bound` up to tolerance; absent without a bound.
    pub pass: Option<bool>,
    pub distance: usize,
    pub method: SsmMethod,
}

/// Runs an experiment: both conditioned marginals at the root, their
/// gap, and the decay bound when `d` is given and certifies.
pub fn run_experiment(m: &Bmrf, e: &SsmExperiment, d: Option<f64>, method: SsmMethod) -> Result<SsmReport> {
    let marginal = |condition: &PartialConfiguration| -> Result<f64> {
        Ok(match method {
            SsmMethod::Exact => exact_marginal(m, e.root, condition)?.p,
            SsmMethod::Saw => saw_marginal(m, e.root, condition, &BuildLimits::default())?.p,
        })
    };
    let p_sigma = marginal(&e.sigma)?;
    let p_eta = marginal(&e.eta)?;
    let measured = (p_sigma - p_eta).abs();
    let bound = d.and_then(|d| {
        let report = check_conditions(m, Some(d), CheckMode::Uniform).ok()?;
        if !report.satisfied {
            return None;
        }
        let branch = report.branch?;
        let bound = decay_bound(&report.summary, d, m.graph().degree(e.root), branch).ok()?;
        Some(bound.eval(e.distance as u32))
    });
    Ok(SsmReport {
        p_sigma,
        p_eta,
        measured,
        bound,
        pass: bound.map(|b| measured <= b + PASS_TOLERANCE),
        distance: e.distance,
        method,
    })
}

/// The individual inequalities the decay bound rests on.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CheckTarget {
    /// |h(x)| <= gamma over the unit interval, per edge.
    EdgeBound,
    /// prod(1 + v_i) >= (1 + geometric mean)^n.
    ProductAmGm,
    /// Path density over j*l steps composes from l-step densities.
    PathComposition,
    /// Walk-tree sphere growth against the per-step density.
    SphereGrowth,
    /// gamma >= 4 tanh |J|, per edge.
    GammaTanh,
    /// Transfer ratio stays inside its endpoint exponentials.
    TransferRange,
}

impl CheckTarget {
    pub const ALL: [CheckTarget; 6] = [
        CheckTarget::EdgeBound,
        CheckTarget::ProductAmGm,
        CheckTarget::PathComposition,
        CheckTarget::SphereGrowth,
        CheckTarget::GammaTanh,
        CheckTarget::TransferRange,
    ];

    /// Stable identifier used on the command line and in records.
    pub fn tag(self) -> &'static str {
        match self {
            CheckTarget::EdgeBound => "lemma1",
            CheckTarget::ProductAmGm => "lemma3",
            CheckTarget::PathComposition => "prop2_path",
            CheckTarget::SphereGrowth => "prop2_sphere",
            CheckTarget::GammaTanh => "gamma_tanh",
            CheckTarget::TransferRange => "f_range",
        }
    }

    pub fn parse(s: &str) -> Result<CheckTarget> {
        CheckTarget::ALL
            .into_iter()
            .find(|t| t.tag() == s)
            .ok_or_else(|| Error::input(format!("unknown verification target {s:?}")))
    }
}

/// One verified inequality instance. `pass` means `lhs <= rhs` held up
/// to tolerance, or the check's guard made it vacuous.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CheckReport {
    pub target: CheckTarget,
    pub lhs: f64,
    pub rhs: f64,
    /// `rhs - lhs`; negative means violated.
    pub margin: f64,
    pub pass: bool,
    /// True when the inequality's precondition failed and the
    /// comparison was skipped.
    pub vacuous: bool,
}

fn report(target: CheckTarget, lhs: f64, rhs: f64) -> CheckReport {
    CheckReport {
        target,
        lhs,
        rhs,
        margin: rhs - lhs,
        pass: lhs <= rhs + PASS_TOLERANCE,
        vacuous: false,
    }
}

/// Scans |h| over the unit grid and compares against the edge's gamma.
pub fn edge_bound_check(pot: &PairPotential, grid_points: usize) -> CheckReport {
    let mut max_abs_h: f64 = 0.0;
    for x in crate::numeric::unit_grid(grid_points) {
        let (_, h) = pot.transfer(x).expect("grid points lie in [0, 1]");
        max_abs_h = max_abs_h.max(h.abs());
    }
    report(CheckTarget::EdgeBound, max_abs_h, pot.gamma())
}

/// Compares the product of (1 + v_i) against the same product with
/// every entry replaced by the geometric mean.
pub fn product_amgm_check(values: &[f64]) -> Result<CheckReport> {
    if values.is_empty() {
        return Err(Error::input("need at least one value"));
    }
    if values.iter().any(|&v| !v.is_finite() || v < 0.0) {
        return Err(Error::input("values must be finite and non-negative"));
    }
    let n = values.len() as f64;
    let mean_log: f64 = values.iter().map(|&v| v.ln()).sum::<f64>() / n;
    let gm = mean_log.exp();
    let lhs = (1.0 + gm).powf(n);
    let rhs: f64 = values.iter().map(|&v| 1.0 + v).product();
    Ok(report(CheckTarget::ProductAmGm, lhs, rhs))
}

/// Density over `j*l` steps from `v` against `j` times the best
/// one-block excess plus the root degree.
pub fn path_composition_check(g: &Graph, v: usize, l: usize, j: usize) -> Result<CheckReport> {
    if l == 0 || j == 0 {
        return Err(Error::input("block length and block count must be at least 1"));
    }
    let lhs = g.max_path_density(v, l * j)?.density;
    let mut max_excess: u64 = 0;
    for u in 0..g.vertex_count() {
        let m = g.max_path_density(u, l)?.density;
        max_excess = max_excess.max(m - g.degree(u) as u64);
    }
    let rhs = j as u64 * max_excess + g.degree(v) as u64;
    Ok(report(CheckTarget::PathComposition, lhs as f64, rhs as f64))
}

/// Size of the walk tree's level `l+1` against
/// `deg(v) * (delta - 1)^l`. Vacuous when the per-step density is at
/// most 1, where the geometric form does not apply.
pub fn sphere_growth_check(g: &Graph, v: usize, l: usize) -> Result<CheckReport> {
    if l == 0 {
        return Err(Error::input("radius must be at least 1"));
    }
    let metrics = g.max_path_density(v, l)?;
    let delta = metrics.delta.expect("radius is positive").as_f64();
    let tree = SawTree::build(g, v, &PartialConfiguration::new(), &BuildLimits::depth(l + 1))?;
    let lhs = tree.level_counts().get(l + 1).copied().unwrap_or(0) as f64;
    let rhs = g.degree(v) as f64 * (delta - 1.0).powi(l as i32);
    let mut rep = report(CheckTarget::SphereGrowth, lhs, rhs);
    if delta <= 1.0 {
        rep.vacuous = true;
        rep.pass = true;
    }
    Ok(rep)
}

/// Per-edge floor on gamma in terms of the coupling strength.
pub fn gamma_tanh_check(pot: &PairPotential) -> CheckReport {
    let lhs = 4.0 * pot.coupling().abs().tanh();
    report(CheckTarget::GammaTanh, lhs, pot.gamma())
}

/// Scans the transfer ratio over the unit grid and checks it stays
/// inside the exponentials of its endpoint log-ratios. Reports the
/// binding side.
pub fn transfer_range_check(pot: &PairPotential, grid_points: usize) -> CheckReport {
    let mut f_min = f64::INFINITY;
    let mut f_max = f64::NEG_INFINITY;
    for x in crate::numeric::unit_grid(grid_points) {
        let (f, _) = pot.transfer(x).expect("grid points lie in [0, 1]");
        f_min = f_min.min(f);
        f_max = f_max.max(f);
    }
    let (lo, hi) = pot.endpoint_log_ratios();
    let lower = lo.min(hi).exp();
    let upper = lo.max(hi).exp();
    if upper - f_max <= f_min - lower {
        report(CheckTarget::TransferRange, f_max, upper)
    } else {
        report(CheckTarget::TransferRange, lower, f_min)
    }
}

/// Aggregate of one randomized batch for one target.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TargetSummary {
    pub target: CheckTarget,
    pub trials: usize,
    pub passes: usize,
    /// Smallest non-vacuous margin seen; absent when every trial was
    /// vacuous.
    pub worst_margin: Option<f64>,
}

/// Outcome of a randomized verification run.
#[derive(Clone, Debug, PartialEq)]
pub struct SuiteReport {
    pub seed: u64,
    pub trials: usize,
    pub results: Vec<TargetSummary>,
}

impl SuiteReport {
    pub fn all_passed(&self) -> bool {
        self.results.iter().all(|r| r.passes == r.trials)
    }
}

fn random_potential(rng: &mut ChaCha8Rng) -> PairPotential {
    PairPotential::new(
        rng.gen_range(-2.0..2.0),
        rng.gen_range(-2.0..2.0),
        rng.gen_range(-2.0..2.0),
        rng.gen_range(-2.0..2.0),
    )
}

fn random_sparse_graph(rng: &mut ChaCha8Rng) -> Graph {
    let n = rng.gen_range(8..=40);
    let mean_degree = rng.gen_range(0.5..3.0);
    let p = (mean_degree / n as f64).min(1.0);
    Graph::gnp(n, p, rng.gen()).expect("parameters are in range")
}

/// Runs `trials` randomized instances of each requested target.
/// Reproducible: the same seed yields the same instances regardless of
/// target order.
pub fn random_suite(targets: &[CheckTarget], trials: usize, seed: u64) -> Result<SuiteReport> {
    if trials == 0 {
        return Err(Error::input("trials must be at least 1"));
    }
    if targets.is_empty() {
        return Err(Error::input("need at least one verification target"));
    }
    let mut results = Vec::with_capacity(targets.len());
    for &target in targets {
        // independent stream per target, keyed by its identity
        let stream = seed ^ (CheckTarget::ALL.iter().position(|&t| t == target).unwrap() as u64 + 1)
            .wrapping_mul(0x9E37_79B9_7F4A_7C15);
        let mut rng = ChaCha8Rng::seed_from_u64(stream);
        let mut passes = 0;
        let mut worst: Option<f64> = None;
        for _ in 0..trials {
            let rep = match target {
                CheckTarget::EdgeBound => edge_bound_check(&random_potential(&mut rng), SUITE_GRID),
                CheckTarget::GammaTanh => gamma_tanh_check(&random_potential(&mut rng)),
                CheckTarget::TransferRange => transfer_range_check(&random_potential(&mut rng), SUITE_GRID),
                CheckTarget::ProductAmGm => {
                    let len = rng.gen_range(1..=10);
                    let values: Vec<f64> = (0..len)
                        .map(|_| {
                            if rng.gen_bool(0.05) {
                                0.0
                            } else {
                                rng.gen_range(0.0..5.0)
                            }
                        })
                        .collect();
                    product_amgm_check(&values)?
                }
                CheckTarget::PathComposition => {
                    let g = random_sparse_graph(&mut rng);
                    let v = rng.gen_range(0..g.vertex_count());
                    let l = rng.gen_range(1..=3);
                    let j = rng.gen_range(1..=2);
                    path_composition_check(&g, v, l, j)?
                }
                CheckTarget::SphereGrowth => {
                    let g = random_sparse_graph(&mut rng);
                    let v = rng.gen_range(0..g.vertex_count());
                    let l = rng.gen_range(1..=5);
                    sphere_growth_check(&g, v, l)?
                }
            };
            if rep.pass {
                passes += 1;
            }
            if !rep.vacuous {
                worst = Some(worst.map_or(rep.margin, |w: f64| w.min(rep.margin)));
            }
        }
        results.push(TargetSummary {
            target,
            trials,
            passes,
            worst_margin: worst,
        });
    }
    Ok(SuiteReport {
        seed,
        trials,
        results,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::Spin;

    const GAMMA_ISING06: f64 = 3.0189227108243455; // 2 sinh 1.2
    const FOUR_TANH06: f64 = 2.148198267992141; // 4 tanh 0.6
    const E12: f64 = 3.3201169227365477; // e^1.2

    fn p6_strong() -> Bmrf {
        Bmrf::ising(Graph::path_graph(6).unwrap(), 0.6, 2.0)
    }

    #[test]
    fn experiment_validates_inputs() {
        let g = Graph::path_graph(4).unwrap();
        let sigma = PartialConfiguration::from_pairs([(3, Spin::Plus)]).unwrap();
        let eta = PartialConfiguration::from_pairs([(3, Spin::Minus)]).unwrap();
        assert!(SsmExperiment::new(&g, 0, sigma.clone(), eta.clone()).is_ok());
        // same condition twice: no disagreement
        assert!(SsmExperiment::new(&g, 0, sigma.clone(), sigma.clone()).is_err());
        // root inside the disagreement set
        assert!(SsmExperiment::new(&g, 3, sigma.clone(), eta.clone()).is_err());
        // mismatched domains
        let other = PartialConfiguration::from_pairs([(2, Spin::Minus)]).unwrap();
        assert!(SsmExperiment::new(&g, 0, sigma.clone(), other).is_err());
        // unreachable disagreement
        let split = Graph::from_edges(4, &[(0, 1)]).unwrap();
        assert!(SsmExperiment::new(&split, 0, sigma, eta).is_err());
    }

    #[test]
    fn experiment_distance_is_min_over_disagreements() {
        let g = Graph::path_graph(6).unwrap();
        let sigma = PartialConfiguration::from_pairs([(2, Spin::Plus), (5, Spin::Plus)]).unwrap();
        let eta = PartialConfiguration::from_pairs([(2, Spin::Plus), (5, Spin::Minus)]).unwrap();
        let e = SsmExperiment::new(&g, 0, sigma, eta).unwrap();
        assert_eq!(e.theta(), &VertexSet::from([5]));
        assert_eq!(e.distance(), 5);
    }

    #[test]
    fn experiment_measures_within_bound() {
        let m = p6_strong();
        let sigma = PartialConfiguration::from_pairs([(5, Spin::Plus)]).unwrap();
        let eta = PartialConfiguration::from_pairs([(5, Spin::Minus)]).unwrap();
        let e = SsmExperiment::new(m.graph(), 0, sigma, eta).unwrap();
        let r = run_experiment(&m, &e, Some(3.0), SsmMethod::Exact).unwrap();
        assert_eq!(r.distance, 5);
        assert!(r.measured < r.bound.unwrap());
        assert_eq!(r.pass, Some(true));
        let by_saw = run_experiment(&m, &e, Some(3.0), SsmMethod::Saw).unwrap();
        assert!((by_saw.measured - r.measured).abs() < 1e-10);
        assert_eq!(by_saw.pass, Some(true));
    }

    #[test]
    fn experiment_without_density_has_no_bound() {
        let m = p6_strong();
        let sigma = PartialConfiguration::from_pairs([(4, Spin::Plus)]).unwrap();
        let eta = PartialConfiguration::from_pairs([(4, Spin::Minus)]).unwrap();
        let e = SsmExperiment::new(m.graph(), 0, sigma, eta).unwrap();
        let r = run_experiment(&m, &e, None, SsmMethod::Exact).unwrap();
        assert_eq!(r.bound, None);
        assert_eq!(r.pass, None);
        assert!(r.measured >= 0.0);
    }

    #[test]
    fn experiment_bound_absent_when_unsatisfied() {
        let weak = Bmrf::ising(Graph::path_graph(6).unwrap(), 0.6, 0.2);
        let sigma = PartialConfiguration::from_pairs([(5, Spin::Plus)]).unwrap();
        let eta = PartialConfiguration::from_pairs([(5, Spin::Minus)]).unwrap();
        let e = SsmExperiment::new(weak.graph(), 0, sigma, eta).unwrap();
        let r = run_experiment(&weak, &e, Some(3.0), SsmMethod::Exact).unwrap();
        assert_eq!(r.bound, None);
        assert_eq!(r.pass, None);
    }

    #[test]
    fn edge_bound_tight_for_symmetric_coupling() {
        let rep = edge_bound_check(&PairPotential::ising(0.6), 10_000);
        assert!(rep.pass);
        // the scan hits the maximum at the endpoints exactly
        assert!((rep.lhs - GAMMA_ISING06).abs() < 1e-12);
        assert!(rep.margin.abs() < 1e-12);
        assert_eq!(rep.target.tag(), "lemma1");
    }

    #[test]
    fn product_amgm_cases() {
        let rep = product_amgm_check(&[1.0, 1.0]).unwrap();
        assert!((rep.lhs - rep.rhs).abs() < 1e-12);
        assert!(rep.pass);
        let rep = product_amgm_check(&[4.0, 0.25]).unwrap();
        assert_eq!(rep.rhs, 6.25);
        assert!((rep.lhs - 4.0).abs() < 1e-12);
        assert!(rep.pass);
        // zero entry collapses the geometric mean
        let rep = product_amgm_check(&[0.0, 9.0]).unwrap();
        assert_eq!(rep.lhs, 1.0);
        assert_eq!(rep.rhs, 10.0);
        assert!(product_amgm_check(&[]).is_err());
        assert!(product_amgm_check(&[-0.5]).is_err());
        assert!(product_amgm_check(&[f64::INFINITY]).is_err());
    }

    #[test]
    fn path_composition_tight_on_cycle() {
        let g = Graph::cycle(4).unwrap();
        let rep = path_composition_check(&g, 0, 1, 2).unwrap();
        assert_eq!(rep.lhs, 6.0);
        assert_eq!(rep.rhs, 6.0);
        assert!(rep.pass);
        assert!(path_composition_check(&g, 0, 0, 2).is_err());
    }

    #[test]
    fn sphere_growth_on_cycle_and_path() {
        // on a long cycle delta is 2, so the bound is deg = 2 at every l
        let g = Graph::cycle(12).unwrap();
        for l in 1..=4 {
            let rep = sphere_growth_check(&g, 0, l).unwrap();
            assert_eq!(rep.lhs, 2.0);
            assert_eq!(rep.rhs, 2.0);
            assert!(rep.pass);
            assert!(!rep.vacuous);
        }
        // from a path end the tree is a single walk and the bound is 1
        let p = Graph::path_graph(8).unwrap();
        let rep = sphere_growth_check(&p, 0, 3).unwrap();
        assert_eq!(rep.lhs, 1.0);
        assert_eq!(rep.rhs, 1.0);
        assert!(rep.pass);
        assert!(!rep.vacuous);
        // a single edge cannot sustain a unit per-step density
        let k2 = Graph::path_graph(2).unwrap();
        let rep = sphere_growth_check(&k2, 0, 3).unwrap();
        assert!(rep.vacuous);
        assert!(rep.pass);
        assert_eq!(rep.lhs, 0.0);
    }

    #[test]
    fn gamma_tanh_on_symmetric_coupling() {
        let rep = gamma_tanh_check(&PairPotential::ising(0.6));
        assert!((rep.lhs - FOUR_TANH06).abs() < 1e-13);
        assert!((rep.rhs - GAMMA_ISING06).abs() < 1e-13);
        assert!(rep.pass);
        // decoupled edge: both sides vanish
        let rep = gamma_tanh_check(&PairPotential::new(0.5, 0.5, 0.5, 0.5));
        assert_eq!(rep.lhs, 0.0);
        assert_eq!(rep.rhs, 0.0);
        assert!(rep.pass);
    }

    #[test]
    fn transfer_range_tight_at_endpoints() {
        let rep = transfer_range_check(&PairPotential::ising(0.6), 10_000);
        assert!(rep.pass);
        assert!(rep.margin.abs() < 1e-12);
        // binding side is the maximum, which equals e^1.2
        assert!((rep.rhs - E12).abs() < 1e-12 || (rep.lhs - 1.0 / E12).abs() < 1e-12);
    }

    #[test]
    fn random_suites_pass_and_are_deterministic() {
        let a = random_suite(&CheckTarget::ALL, 60, 20240817).unwrap();
        assert!(a.all_passed(), "{:?}", a.results);
        for r in &a.results {
            assert_eq!(r.trials, 60);
            assert_eq!(r.passes, 60);
        }
        let b = random_suite(&CheckTarget::ALL, 60, 20240817).unwrap();
        assert_eq!(a, b);
        // per-target streams do not depend on the target list order
        let solo = random_suite(&[CheckTarget::GammaTanh], 60, 20240817).unwrap();
        let in_full = a
            .results
            .iter()
            .find(|r| r.target == CheckTarget::GammaTanh)
            .unwrap();
        assert_eq!(&solo.results[0], in_full);
        assert!(random_suite(&CheckTarget::ALL, 0, 1).is_err());
        assert!(random_suite(&[], 5, 1).is_err());
    }

    #[test]
    fn target_tags_round_trip() {
        for t in CheckTarget::ALL {
            assert_eq!(CheckTarget::parse(t.tag()).unwrap(), t);
        }
        assert!(CheckTarget::parse("nonsense").is_err());
    }
}
