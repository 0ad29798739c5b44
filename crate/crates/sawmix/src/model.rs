//! Binary pairwise Markov random fields: potentials, per-edge transfer
//! functions, model-wide summaries, and the closed-form spatial-mixing
//! threshold with its geometric decay certificate.

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::numeric::{logistic_neg, logsumexp};

/// Pair potentials whose entries exceed this magnitude are evaluated in
/// the log domain; below it, direct exponentials stay comfortably
/// inside f64 range (products of two entries reach at most e^120).
const LOG_DOMAIN_BETA: f64 = 30.0;

/// One of the two spin values a vertex can take.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Spin {
    Plus,
    Minus,
}

impl Spin {
    pub fn flipped(self) -> Spin {
        match self {
            Spin::Plus => Spin::Minus,
            Spin::Minus => Spin::Plus,
        }
    }

    pub fn symbol(self) -> char {
        match self {
            Spin::Plus => '+',
            Spin::Minus => '-',
        }
    }
}

impl std::fmt::Display for Spin {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.symbol())
    }
}

impl std::str::FromStr for Spin {
    type Err = Error;

    fn from_str(s: &str) -> Result<Spin> {
        match s {
            "+" => Ok(Spin::Plus),
            "-" => Ok(Spin::Minus),
            other => Err(Error::input(format!("expected + or -, got {other:?}"))),
        }
    }
}

/// Log-weights a vertex contributes for each of its two spins.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct VertexPotential {
    pub h_plus: f64,
    pub h_minus: f64,
}

impl VertexPotential {
    pub fn new(h_plus: f64, h_minus: f64) -> VertexPotential {
        VertexPotential { h_plus, h_minus }
    }

    pub fn zero() -> VertexPotential {
        VertexPotential::new(0.0, 0.0)
    }

    /// Effective external field: half the log-weight gap between spins.
    pub fn field(&self) -> f64 {
        (self.h_plus - self.h_minus) / 2.0
    }

    /// Log of the activity that multiplies the minus branch in the tree
    /// recursion; equals minus twice the field.
    pub fn log_activity(&self) -> f64 {
        self.h_minus - self.h_plus
    }

    pub fn log_weight(&self, s: Spin) -> f64 {
        match s {
            Spin::Plus => self.h_plus,
            Spin::Minus => self.h_minus,
        }
    }
}

/// Log-weights an edge contributes for each ordered spin pair. Entry
/// `beta_pm` is the weight when the first endpoint is plus and the
/// second is minus.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PairPotential {
    pub beta_pp: f64,
    pub beta_pm: f64,
    pub beta_mp: f64,
    pub beta_mm: f64,
}

impl PairPotential {
    pub fn new(beta_pp: f64, beta_pm: f64, beta_mp: f64, beta_mm: f64) -> PairPotential {
        PairPotential {
            beta_pp,
            beta_pm,
            beta_mp,
            beta_mm,
        }
    }

    pub fn zero() -> PairPotential {
        PairPotential::new(0.0, 0.0, 0.0, 0.0)
    }

    /// Symmetric two-spin coupling: weight `j` when the endpoints agree
    /// and `-j` when they differ.
    pub fn ising(j: f64) -> PairPotential {
        PairPotential::new(j, -j, -j, j)
    }

    pub fn log_weight(&self, first: Spin, second: Spin) -> f64 {
        match (first, second) {
            (Spin::Plus, Spin::Plus) => self.beta_pp,
            (Spin::Plus, Spin::Minus) => self.beta_pm,
            (Spin::Minus, Spin::Plus) => self.beta_mp,
            (Spin::Minus, Spin::Minus) => self.beta_mm,
        }
    }

    /// Same edge viewed from the other endpoint.
    pub fn transposed(&self) -> PairPotential {
        PairPotential::new(self.beta_pp, self.beta_mp, self.beta_pm, self.beta_mm)
    }

    pub fn max_abs_beta(&self) -> f64 {
        self.beta_pp
            .abs()
            .max(self.beta_pm.abs())
            .max(self.beta_mp.abs())
            .max(self.beta_mm.abs())
    }

    /// Quarter of the agreement-minus-disagreement log-weight; the
    /// edge's effective symmetric coupling strength.
    pub fn coupling(&self) -> f64 {
        (self.beta_pp + self.beta_mm - self.beta_pm - self.beta_mp) / 4.0
    }

    /// The two log-values the transfer ratio takes at the endpoints of
    /// [0, 1]: `(log f(0), log f(1))`. The transfer ratio is monotone,
    /// so these bound its entire range on the interval.
    pub fn endpoint_log_ratios(&self) -> (f64, f64) {
        (self.beta_mm - self.beta_pm, self.beta_mp - self.beta_pp)
    }

    /// Uniform bound on the magnitude of the transfer derivative term
    /// over [0, 1]. Evaluated in the log domain so nearly-cancelling
    /// entries do not lose the small difference.
    pub fn gamma(&self) -> f64 {
        let log_ad = self.beta_pp + self.beta_mm;
        let log_bc = self.beta_pm + self.beta_mp;
        let four_j = log_ad - log_bc;
        if four_j == 0.0 {
            return 0.0;
        }
        // |ad - bc| = max(ad, bc) * (1 - e^{-|4J|})
        let log_diff = log_ad.max(log_bc) + log1m_exp_neg(four_j.abs());
        let log_min_den = (self.beta_pp + self.beta_mp).min(self.beta_pm + self.beta_mm);
        (log_diff - log_min_den).exp()
    }

    /// Transfer ratio `f(x)` and derivative term `h(x)` at a point of
    /// [0, 1], where `f` maps a child's plus-probability to the factor
    /// it contributes at its parent and `h` is `f` prime up to sign.
    pub fn transfer(&self, x: f64) -> Result<(f64, f64)> {
        if !(0.0..=1.0).contains(&x) {
            return Err(Error::input(format!("transfer argument {x} outside [0, 1]")));
        }
        if self.max_abs_beta() <= LOG_DOMAIN_BETA {
            let a = self.beta_pp.exp();
            let b = self.beta_pm.exp();
            let c = self.beta_mp.exp();
            let d = self.beta_mm.exp();
            let num = c * x + d * (1.0 - x);
            let den = a * x + b * (1.0 - x);
            Ok((num / den, (a * d - b * c) / (num * den)))
        } else {
            let (log_num, log_den) = self.log_transfer_parts(x);
            let f = (log_num - log_den).exp();
            let log_ad = self.beta_pp + self.beta_mm;
            let log_bc = self.beta_pm + self.beta_mp;
            let four_j = log_ad - log_bc;
            let h = if four_j == 0.0 {
                0.0
            } else {
                let log_abs = log_ad.max(log_bc) + log1m_exp_neg(four_j.abs());
                four_j.signum() * (log_abs - log_num - log_den).exp()
            };
            Ok((f, h))
        }
    }

    /// log f(x) for the recursion hot path; `x` must lie in [0, 1].
    pub fn log_transfer(&self, x: f64) -> f64 {
        debug_assert!((0.0..=1.0).contains(&x));
        if self.max_abs_beta() <= LOG_DOMAIN_BETA {
            let a = self.beta_pp.exp();
            let b = self.beta_pm.exp();
            let c = self.beta_mp.exp();
            let d = self.beta_mm.exp();
            ((c * x + d * (1.0 - x)) / (a * x + b * (1.0 - x))).ln()
        } else {
            let (log_num, log_den) = self.log_transfer_parts(x);
            log_num - log_den
        }
    }

    /// (log numerator, log denominator) of the transfer ratio, written
    /// as convex combinations of all-positive terms.
    fn log_transfer_parts(&self, x: f64) -> (f64, f64) {
        let lx = x.ln();
        let l1x = (-x).ln_1p();
        let log_num = logsumexp(self.beta_mp + lx, self.beta_mm + l1x);
        let log_den = logsumexp(self.beta_pp + lx, self.beta_pm + l1x);
        (log_num, log_den)
    }
}

/// log(1 - e^{-y}) for y > 0, precise for small y.
fn log1m_exp_neg(y: f64) -> f64 {
    (-(-y).exp_m1()).ln()
}

/// Spins pinned on a subset of vertices. Iteration order is by vertex
/// id so every consumer sees conditions in the same order.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct PartialConfiguration {
    assignments: std::collections::BTreeMap<usize, Spin>,
}

impl PartialConfiguration {
    pub fn new() -> PartialConfiguration {
        PartialConfiguration::default()
    }

    /// Builds from pairs, rejecting duplicate vertices.
    pub fn from_pairs(pairs: impl IntoIterator<Item = (usize, Spin)>) -> Result<PartialConfiguration> {
        let mut config = PartialConfiguration::new();
        for (v, s) in pairs {
            if config.assignments.insert(v, s).is_some() {
                return Err(Error::input(format!("vertex {v} is fixed twice")));
            }
        }
        Ok(config)
    }

    /// Pins `v` to `s`, returning the previous spin if there was one.
    pub fn fix(&mut self, v: usize, s: Spin) -> Option<Spin> {
        self.assignments.insert(v, s)
    }

    pub fn get(&self, v: usize) -> Option<Spin> {
        self.assignments.get(&v).copied()
    }

    pub fn contains(&self, v: usize) -> bool {
        self.assignments.contains_key(&v)
    }

    pub fn len(&self) -> usize {
        self.assignments.len()
    }

    pub fn is_empty(&self) -> bool {
        self.assignments.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, Spin)> + '_ {
        self.assignments.iter().map(|(&v, &s)| (v, s))
    }

    /// Fixed vertices, ascending.
    pub fn vertices(&self) -> impl Iterator<Item = usize> + '_ {
        self.assignments.keys().copied()
    }

    /// Checks every fixed vertex exists in a graph of `n` vertices.
    pub fn validate_for(&self, n: usize) -> Result<()> {
        match self.assignments.keys().next_back() {
            Some(&v) if v >= n => Err(Error::input(format!(
                "condition fixes vertex {v}, but the graph has {n} vertices"
            ))),
            _ => Ok(()),
        }
    }
}

/// A binary Markov random field: a graph plus one potential per vertex
/// and per edge. Pair potentials are oriented `(u, v)` with `u < v`,
/// matching the graph's canonical edge order.
#[derive(Clone, Debug, PartialEq)]
pub struct Bmrf {
    graph: Graph,
    vertex_pots: Vec<VertexPotential>,
    pair_pots: Vec<PairPotential>,
}

impl Bmrf {
    pub fn new(graph: Graph, vertex_pots: Vec<VertexPotential>, pair_pots: Vec<PairPotential>) -> Result<Bmrf> {
        if vertex_pots.len() != graph.vertex_count() {
            return Err(Error::input(format!(
                "expected {} vertex potentials, got {}",
                graph.vertex_count(),
                vertex_pots.len()
            )));
        }
        if pair_pots.len() != graph.edge_count() {
            return Err(Error::input(format!(
                "expected {} pair potentials, got {}",
                graph.edge_count(),
                pair_pots.len()
            )));
        }
        Ok(Bmrf {
            graph,
            vertex_pots,
            pair_pots,
        })
    }

    /// Homogeneous Ising model: coupling `j` on every edge, field `b`
    /// on every vertex.
    pub fn ising(graph: Graph, j: f64, b: f64) -> Bmrf {
        let vertex_pots = vec![VertexPotential::new(b, -b); graph.vertex_count()];
        let pair_pots = vec![PairPotential::ising(j); graph.edge_count()];
        Bmrf {
            graph,
            vertex_pots,
            pair_pots,
        }
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn vertex_pot(&self, v: usize) -> &VertexPotential {
        &self.vertex_pots[v]
    }

    pub fn pair_pot(&self, edge_ix: usize) -> &PairPotential {
        &self.pair_pots[edge_ix]
    }

    /// Pair potential oriented `(from, to)`, or `None` when the two
    /// vertices are not adjacent.
    pub fn pair_between(&self, from: usize, to: usize) -> Option<PairPotential> {
        let ix = self.graph.edge_index(from, to)?;
        let pot = self.pair_pots[ix];
        Some(if from < to { pot } else { pot.transposed() })
    }

    /// Model-wide bounds feeding the threshold and decay formulas.
    pub fn summarize(&self) -> ModelSummary {
        let mut field_min = f64::INFINITY;
        let mut field_max = f64::NEG_INFINITY;
        for pot in &self.vertex_pots {
            field_min = field_min.min(pot.field());
            field_max = field_max.max(pot.field());
        }
        let mut coupling: f64 = 0.0;
        let mut alpha_min = f64::INFINITY;
        let mut alpha_max = f64::NEG_INFINITY;
        let mut gamma: f64 = 0.0;
        for pot in &self.pair_pots {
            coupling = coupling.max(pot.coupling().abs());
            let (lo, hi) = pot.endpoint_log_ratios();
            alpha_min = alpha_min.min(lo.min(hi));
            alpha_max = alpha_max.max(lo.max(hi));
            gamma = gamma.max(pot.gamma());
        }
        let has_edges = !self.pair_pots.is_empty();
        ModelSummary {
            field_min,
            field_max,
            coupling,
            alpha_min: has_edges.then_some(alpha_min),
            alpha_max: has_edges.then_some(alpha_max),
            gamma: has_edges.then_some(gamma),
        }
    }
}

/// Extremes of a model's fields, couplings, and transfer bounds. The
/// edge-derived entries are absent for edgeless models.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ModelSummary {
    /// Smallest per-vertex field.
    pub field_min: f64,
    /// Largest per-vertex field.
    pub field_max: f64,
    /// Largest per-edge coupling magnitude.
    pub coupling: f64,
    /// Smallest endpoint log of any edge's transfer ratio.
    pub alpha_min: Option<f64>,
    /// Largest endpoint log of any edge's transfer ratio.
    pub alpha_max: Option<f64>,
    /// Largest per-edge transfer derivative bound.
    pub gamma: Option<f64>,
}

impl ModelSummary {
    fn edge_terms(&self) -> Result<(f64, f64, f64)> {
        match (self.gamma, self.alpha_max, self.alpha_min) {
            (Some(g), Some(hi), Some(lo)) => Ok((g, hi, lo)),
            _ => Err(Error::domain("model has no edges; mixing conditions do not apply")),
        }
    }
}

/// Field threshold above which marginal influence decays
/// geometrically: `(d-1) alpha / 2 + log((sqrt(g(d-1)) + sqrt(g(d-1) - 4)) / 2)`
/// where `g` is the transfer derivative bound.
pub fn ssm_threshold(d: f64, alpha: f64, gamma: f64) -> Result<f64> {
    if !d.is_finite() || !alpha.is_finite() || !gamma.is_finite() {
        return Err(Error::input("threshold arguments must be finite"));
    }
    if d <= 1.0 {
        return Err(Error::input(format!("density bound d = {d} must exceed 1")));
    }
    if gamma < 0.0 {
        return Err(Error::input(format!("gamma = {gamma} must be non-negative")));
    }
    let t = gamma * (d - 1.0);
    if t < 4.0 {
        return Err(Error::domain(format!(
            "gamma * (d - 1) = {t} is below 4; the threshold is undefined in this regime"
        )));
    }
    Ok((d - 1.0) * alpha / 2.0 + ((t.sqrt() + (t - 4.0).sqrt()) / 2.0).ln())
}

/// Which side of the field interval certifies mixing.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Branch {
    /// All fields sit above the positive threshold.
    FieldMin,
    /// All fields sit below the negative threshold.
    FieldMax,
}

impl Branch {
    pub fn tag(self) -> &'static str {
        match self {
            Branch::FieldMin => "field_min",
            Branch::FieldMax => "field_max",
        }
    }
}

/// How the field condition is checked: one bound for the whole model
/// against a caller-supplied density, or per vertex against the graph's
/// maximum degree.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CheckMode {
    Uniform,
    PerVertex,
}

/// Outcome of checking a model against the mixing condition.
#[derive(Clone, Debug, PartialEq)]
pub struct ConditionReport {
    pub mode: CheckMode,
    /// Density bound actually used; the maximum degree in per-vertex
    /// mode.
    pub d: f64,
    /// `(d - 1) tanh J`; at least 1 inside the regime.
    pub tanh_term: f64,
    pub in_regime: bool,
    /// Fields must exceed this for the upper branch.
    pub upper_threshold: Option<f64>,
    /// Fields must fall below this for the lower branch.
    pub lower_threshold: Option<f64>,
    pub field_min_ok: bool,
    pub field_max_ok: bool,
    /// Vertices failing both branches; only populated per vertex.
    pub violations: Vec<usize>,
    pub satisfied: bool,
    /// Branch to use for a decay certificate, when one applies
    /// uniformly.
    pub branch: Option<Branch>,
    pub summary: ModelSummary,
}

/// Checks whether the model's fields clear the mixing threshold. An
/// out-of-regime model yields a negative verdict, not an error;
/// `d` is required in uniform mode and ignored per vertex.
pub fn check_conditions(m: &Bmrf, d: Option<f64>, mode: CheckMode) -> Result<ConditionReport> {
    let summary = m.summarize();
    let (gamma, alpha_max, alpha_min) = summary.edge_terms()?;
    let d_used = match mode {
        CheckMode::Uniform => {
            let d = d.ok_or_else(|| Error::input("uniform mode requires a density bound d"))?;
            if !d.is_finite() || d <= 1.0 {
                return Err(Error::input(format!("density bound d = {d} must exceed 1")));
            }
            d
        }
        CheckMode::PerVertex => m.graph().max_degree() as f64,
    };
    let tanh_term = (d_used - 1.0) * summary.coupling.tanh();
    let mut report = ConditionReport {
        mode,
        d: d_used,
        tanh_term,
        in_regime: tanh_term >= 1.0,
        upper_threshold: None,
        lower_threshold: None,
        field_min_ok: false,
        field_max_ok: false,
        violations: Vec::new(),
        satisfied: false,
        branch: None,
        summary,
    };
    if !report.in_regime {
        return Ok(report);
    }
    let upper = ssm_threshold(d_used, alpha_max, gamma)?;
    let lower = -ssm_threshold(d_used, -alpha_min, gamma)?;
    report.upper_threshold = Some(upper);
    report.lower_threshold = Some(lower);
    report.field_min_ok = summary.field_min > upper;
    report.field_max_ok = summary.field_max < lower;
    report.branch = if report.field_min_ok {
        Some(Branch::FieldMin)
    } else if report.field_max_ok {
        Some(Branch::FieldMax)
    } else {
        None
    };
    match mode {
        CheckMode::Uniform => {
            report.satisfied = report.field_min_ok || report.field_max_ok;
        }
        CheckMode::PerVertex => {
            for v in 0..m.graph().vertex_count() {
                let field = m.vertex_pot(v).field();
                if !(field > upper || field < lower) {
                    report.violations.push(v);
                }
            }
            report.satisfied = report.violations.is_empty();
        }
    }
    Ok(report)
}

/// Geometric envelope `prefactor * ratio^(t-1)` bounding how much a
/// disagreement at distance `t` can move the root marginal.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DecayBound {
    pub prefactor: f64,
    pub ratio: f64,
    pub branch: Branch,
}

impl DecayBound {
    /// Bound at distance `t`; `t` must be at least 1.
    pub fn eval(&self, t: u32) -> f64 {
        assert!(t >= 1, "decay bound is defined for distances >= 1");
        self.prefactor * self.ratio.powi(t as i32 - 1)
    }
}

/// Decay certificate for a model whose summary satisfies the chosen
/// branch of the mixing condition at density bound `d`, rooted at a
/// vertex of degree `root_degree`.
pub fn decay_bound(summary: &ModelSummary, d: f64, root_degree: usize, branch: Branch) -> Result<DecayBound> {
    let (gamma, alpha_max, alpha_min) = summary.edge_terms()?;
    if !d.is_finite() || d <= 1.0 {
        return Err(Error::input(format!("density bound d = {d} must exceed 1")));
    }
    let tanh_term = (d - 1.0) * summary.coupling.tanh();
    if tanh_term < 1.0 {
        return Err(Error::domain(format!(
            "(d - 1) tanh J = {tanh_term} is below 1; no decay bound in this regime"
        )));
    }
    let u = match branch {
        Branch::FieldMin => {
            let threshold = ssm_threshold(d, alpha_max, gamma)?;
            if summary.field_min <= threshold {
                return Err(Error::domain(format!(
                    "field minimum {} does not exceed the threshold {threshold}",
                    summary.field_min
                )));
            }
            2.0 * summary.field_min - (d - 1.0) * alpha_max
        }
        Branch::FieldMax => {
            let threshold = -ssm_threshold(d, -alpha_min, gamma)?;
            if summary.field_max >= threshold {
                return Err(Error::domain(format!(
                    "field maximum {} is not below the threshold {threshold}",
                    summary.field_max
                )));
            }
            2.0 * summary.field_max - (d - 1.0) * alpha_min
        }
    };
    // e^u / (1 + e^u)^2, from the overflow-safe side
    let ratio = (d - 1.0) * gamma * logistic_neg(-u) * logistic_neg(u);
    assert!(
        ratio < 1.0,
        "decay ratio {ratio} must fall below 1 once the threshold condition holds"
    );
    Ok(DecayBound {
        prefactor: root_degree as f64 * gamma / 4.0,
        ratio,
        branch,
    })
}
