//! Batch empirical verification of the proved inequalities and bounds.
//!
//! Every check records a normalised slack `(lhs - rhs) / max(1, |rhs|)` for an
//! inequality `lhs <= rhs`; a slack above the tolerance is a violation. Bound
//! statistics record the observed worst ratio against the proved bound with an
//! absolute tolerance. Per-instance results are merged in instance order, so
//! reports are deterministic no matter how many worker threads ran.

use std::collections::BTreeMap;
use std::fs::File;
use std::path::{Path, PathBuf};

use rand::Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::bounds::{beta_q, pair_bound_f, pair_bound_shared, DEFAULT_BETA_TOL, LARGEST_OBJECTIVE_BOUND};
use crate::centrum::{CostProfile, RatioGraph};
use crate::error::{Error, Result};
use crate::generate::{
    gen_random_euclidean, gen_random_graph_metric, gen_tight_pair_line, gen_tight_pair_triangle, gen_tight_triple, rng,
    sample_vertices,
};
use crate::metric::{MetricInstance, ObjectiveSet};
use crate::selection::{select_exhaustive_in, select_largest_objective_in, select_multi_graph_in, select_pair_in};

pub const SCHEMA_VERSION: u32 = 1;
/// Tolerance for every inequality and bound check.
pub const DEFAULT_CHECK_TOL: f64 = 1e-9;
/// Largest objective set for which all directed cycles are enumerated.
pub const MAX_CYCLE_Q: usize = 5;
const MAX_EXAMPLES: usize = 16;

/// `p/k` values whose tight instances are mixed into pair sweeps.
pub const TIGHT_PAIR_RATIOS: [(usize, usize); 8] = [(2, 3), (1, 2), (1, 3), (1, 4), (2, 9), (1, 6), (1, 10), (1, 100)];

/// Objective values tried on every instance of the pair and inequality sweeps,
/// clipped to `[1, n]` and completed with `n`.
const ANCHORS: [usize; 21] = [1, 2, 3, 4, 5, 6, 8, 10, 12, 16, 20, 25, 32, 40, 50, 64, 80, 100, 128, 160, 200];

#[derive(Debug, Clone, Serialize)]
pub struct ViolationRecord {
    pub instance: String,
    pub detail: String,
    pub slack: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct CheckStat {
    pub name: String,
    pub instances: usize,
    pub evaluations: usize,
    /// Largest normalised slack seen; `None` before any evaluation.
    pub max_slack: Option<f64>,
    pub violations: usize,
    pub examples: Vec<ViolationRecord>,
}

impl CheckStat {
    fn new(name: &str) -> Self {
        Self {
            name: name.to_string(),
            instances: 0,
            evaluations: 0,
            max_slack: None,
            violations: 0,
            examples: Vec::new(),
        }
    }

    fn merge(&mut self, other: CheckStat) {
        self.instances += other.instances;
        self.evaluations += other.evaluations;
        self.max_slack = match (self.max_slack, other.max_slack) {
            (Some(a), Some(b)) => Some(a.max(b)),
            (a, b) => a.or(b),
        };
        self.violations += other.violations;
        let room = MAX_EXAMPLES.saturating_sub(self.examples.len());
        self.examples.extend(other.examples.into_iter().take(room));
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct BoundStat {
    pub name: String,
    pub evaluations: usize,
    pub max_observed: Option<f64>,
    /// Bound in force where `max_observed` was seen.
    pub bound_at_max: Option<f64>,
    /// Smallest `bound - observed`; zero or negative means the bound was reached.
    pub min_gap: Option<f64>,
    pub violations: usize,
    pub examples: Vec<ViolationRecord>,
}

impl BoundStat {
    fn new(name: &str) -> Self {
        Self {
            name: name.to_string(),
            evaluations: 0,
            max_observed: None,
            bound_at_max: None,
            min_gap: None,
            violations: 0,
            examples: Vec::new(),
        }
    }

    fn merge(&mut self, other: BoundStat) {
        self.evaluations += other.evaluations;
        if other.max_observed > self.max_observed {
            self.max_observed = other.max_observed;
            self.bound_at_max = other.bound_at_max;
        }
        self.min_gap = match (self.min_gap, other.min_gap) {
            (Some(a), Some(b)) => Some(a.min(b)),
            (a, b) => a.or(b),
        };
        self.violations += other.violations;
        let room = MAX_EXAMPLES.saturating_sub(self.examples.len());
        self.examples.extend(other.examples.into_iter().take(room));
    }
}

/// Check and bound statistics for one instance or a merged batch.
#[derive(Debug, Clone, Default)]
pub struct Tally {
    checks: BTreeMap<String, CheckStat>,
    bounds: BTreeMap<String, BoundStat>,
    tol: f64,
    instance: String,
}

impl Tally {
    pub fn new(instance: impl Into<String>, tol: f64) -> Self {
        Self { checks: BTreeMap::new(), bounds: BTreeMap::new(), tol, instance: instance.into() }
    }

    /// Records `lhs <= rhs`.
    pub fn check_le(&mut self, name: &str, lhs: f64, rhs: f64, detail: impl FnOnce() -> String) {
        let slack = (lhs - rhs) / rhs.abs().max(1.0);
        self.check_slack(name, slack, detail);
    }

    /// Records an already normalised slack.
    pub fn check_slack(&mut self, name: &str, slack: f64, detail: impl FnOnce() -> String) {
        let tol = self.tol;
        let stat = self.checks.entry(name.to_string()).or_insert_with(|| {
            let mut s = CheckStat::new(name);
            s.instances = 1;
            s
        });
        stat.evaluations += 1;
        stat.max_slack = Some(stat.max_slack.map_or(slack, |m| m.max(slack)));
        // NaN slack is a violation too.
        if slack.is_nan() || slack > tol {
            stat.violations += 1;
            if stat.examples.len() < MAX_EXAMPLES {
                stat.examples.push(ViolationRecord { instance: self.instance.clone(), detail: detail(), slack });
            }
        }
    }

    /// Records `observed <= bound + tol` for a proved bound.
    pub fn bound(&mut self, name: &str, observed: f64, bound: f64, detail: impl FnOnce() -> String) {
        self.observe(name, observed, bound, true, detail);
    }

    /// Records an observation against a reference value without treating an
    /// excess as a failure.
    pub fn observe(&mut self, name: &str, observed: f64, bound: f64, enforce: bool, detail: impl FnOnce() -> String) {
        let tol = self.tol;
        let stat = self.bounds.entry(name.to_string()).or_insert_with(|| BoundStat::new(name));
        stat.evaluations += 1;
        if stat.max_observed.is_none_or(|m| observed > m) {
            stat.max_observed = Some(observed);
            stat.bound_at_max = Some(bound);
        }
        let gap = bound - observed;
        stat.min_gap = Some(stat.min_gap.map_or(gap, |g| g.min(gap)));
        if enforce && (observed.is_nan() || observed > bound + tol) {
            stat.violations += 1;
            if stat.examples.len() < MAX_EXAMPLES {
                stat.examples.push(ViolationRecord { instance: self.instance.clone(), detail: detail(), slack: -gap });
            }
        }
    }

    pub fn merge(&mut self, other: Tally) {
        for (name, stat) in other.checks {
            match self.checks.get_mut(&name) {
                Some(s) => s.merge(stat),
                None => {
                    self.checks.insert(name, stat);
                }
            }
        }
        for (name, stat) in other.bounds {
            match self.bounds.get_mut(&name) {
                Some(s) => s.merge(stat),
                None => {
                    self.bounds.insert(name, stat);
                }
            }
        }
    }

    pub fn check(&self, name: &str) -> Option<&CheckStat> {
        self.checks.get(name)
    }

    pub fn bound_stat(&self, name: &str) -> Option<&BoundStat> {
        self.bounds.get(name)
    }

    pub fn violations(&self) -> usize {
        self.checks.values().map(|c| c.violations).sum::<usize>()
            + self.bounds.values().map(|b| b.violations).sum::<usize>()
    }

    fn into_report(self, suite: &str, config: serde_json::Value) -> VerificationReport {
        let passed = self.violations() == 0;
        VerificationReport {
            schema: SCHEMA_VERSION,
            suite: suite.to_string(),
            config,
            per_check: self.checks.into_values().collect(),
            per_bound: self.bounds.into_values().collect(),
            passed,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct VerificationReport {
    pub schema: u32,
    pub suite: String,
    pub config: serde_json::Value,
    pub per_check: Vec<CheckStat>,
    pub per_bound: Vec<BoundStat>,
    pub passed: bool,
}

impl VerificationReport {
    pub fn check(&self, name: &str) -> Option<&CheckStat> {
        self.per_check.iter().find(|c| c.name == name)
    }

    pub fn bound(&self, name: &str) -> Option<&BoundStat> {
        self.per_bound.iter().find(|b| b.name == name)
    }

    pub fn bounds_with_prefix<'a>(&'a self, prefix: &'a str) -> impl Iterator<Item = &'a BoundStat> + 'a {
        self.per_bound.iter().filter(move |b| b.name.starts_with(prefix))
    }

    pub fn total_violations(&self) -> usize {
        self.per_check.iter().map(|c| c.violations).sum::<usize>()
            + self.per_bound.iter().map(|b| b.violations).sum::<usize>()
    }
}

/// Enumerates every simple directed cycle of length >= 2 over `q` nodes.
/// Each cycle starts at its smallest node, so rotations are not repeated.
pub fn directed_cycles(q: usize) -> Vec<Vec<usize>> {
    fn extend(path: &mut Vec<usize>, used: &mut [bool], q: usize, out: &mut Vec<Vec<usize>>) {
        if path.len() >= 2 {
            out.push(path.clone());
        }
        for next in path[0] + 1..q {
            if !used[next] {
                used[next] = true;
                path.push(next);
                extend(path, used, q, out);
                path.pop();
                used[next] = false;
            }
        }
    }
    let mut out = Vec::new();
    for start in 0..q {
        let mut used = vec![false; q];
        used[start] = true;
        extend(&mut vec![start], &mut used, q, &mut out);
    }
    out
}

/// Evaluates every proved inequality over all objective pairs `k < p` of
/// `objectives` and, for up to [`MAX_CYCLE_Q`] objectives, the cycle property of
/// the ratio graph. Metric-dependent checks run only on metric-verified instances.
pub fn check_inequalities(inst: &MetricInstance, objectives: &ObjectiveSet, tol: f64, label: &str) -> Result<Tally> {
    let profile = CostProfile::new(inst, objectives)?;
    let mut t = Tally::new(label, tol);
    let ks = objectives.ks();
    let metric = inst.is_metric_verified();
    let m = inst.m_facilities();

    for jp in 0..ks.len() {
        for jk in 0..jp {
            let (k, p) = (ks[jk], ks[jp]);
            let (kf, pf) = (k as f64, p as f64);
            let ctx = |what: &str| format!("{what} k={k} p={p}");

            // clients ordered by distance from O_k, farthest first
            let o_k = profile.optimum(jk).facility;
            let mut order: Vec<usize> = (0..inst.n_sites()).collect();
            order.sort_by(|&a, &b| inst.distance(b, o_k).total_cmp(&inst.distance(a, o_k)));

            for a in 0..m {
                let (ck, cp) = (profile.cost(a, jk), profile.cost(a, jp));
                t.check_le("monotone_in_k", ck, cp, || ctx(&format!("facility {a}")));
                t.check_le("cost_scaling", cp, pf / kf * ck, || ctx(&format!("facility {a}")));
                t.check_le("cost_increment", kf / (pf - kf) * (cp - ck), ck, || ctx(&format!("facility {a}")));
                let mut left = p;
                let mut sum = 0.0;
                for &s in &order {
                    if left == 0 {
                        break;
                    }
                    let take = inst.multiplicity(s).min(left);
                    sum += inst.distance(s, a) * take as f64;
                    left -= take;
                }
                t.check_le("top_p_domination", sum, cp, || ctx(&format!("facility {a}")));
            }

            let o_p = profile.optimum(jp).facility;
            let a_k_op = profile.ratio(o_p, jk);
            let a_p_ok = profile.ratio(o_k, jp);
            let (ck_ok, cp_op) = (profile.optimum(jk).cost, profile.optimum(jp).cost);
            let x = pf / kf;
            t.check_le("ratio_product", a_k_op, x / a_p_ok, || ctx("alpha_k(O_p)"));
            t.check_le("ratio_product", a_p_ok, x / a_k_op, || ctx("alpha_p(O_k)"));
            t.check_le("ratio_cap_p_over_k", a_k_op, x, || ctx("alpha_k(O_p)"));
            t.check_le("ratio_cap_p_over_k", a_p_ok, x, || ctx("alpha_p(O_k)"));
            t.check_le("k_optimum_lower_bound", kf / pf * a_p_ok * cp_op, ck_ok, || ctx("c_k(O_k)"));
            if metric {
                t.check_le("cross_ratio", a_k_op, 1.0 / a_p_ok + 2.0, || ctx("alpha_k(O_p)"));
                t.check_le("cross_ratio_three", a_k_op, LARGEST_OBJECTIVE_BOUND, || ctx("alpha_k(O_p)"));
                if 2 * k <= p {
                    t.check_le("cross_ratio_refined", a_k_op, 1.0 / a_p_ok + 2.0 - 2.0 * kf / pf, || {
                        ctx("alpha_k(O_p)")
                    });
                }
                t.check_le("p_optimum_lower_bound", x * (a_k_op - 2.0) * ck_ok, cp_op, || ctx("c_p(O_p)"));
            }
        }
    }

    if metric && ks.len() >= 2 && ks.len() <= MAX_CYCLE_Q {
        let graph = RatioGraph::from_profile(&profile);
        check_cycles(&mut t, &graph)?;
    }
    Ok(t)
}

fn check_cycles(t: &mut Tally, graph: &RatioGraph) -> Result<()> {
    let ks = graph.objectives().ks();
    let mut betas = vec![0.0; graph.len() + 1];
    for (j, b) in betas.iter_mut().enumerate().skip(2) {
        *b = beta_q(j, DEFAULT_BETA_TOL)?;
    }
    for cycle in directed_cycles(graph.len()) {
        let j = cycle.len();
        let min_edge = (0..j).map(|i| graph.weight(cycle[i], cycle[(i + 1) % j])).fold(f64::INFINITY, f64::min);
        t.check_le("cycle_beta", min_edge, betas[j], || {
            let nodes: Vec<usize> = cycle.iter().map(|&c| ks[c]).collect();
            format!("cycle over objectives {nodes:?}")
        });
    }
    Ok(())
}

/// Instance families drawn by the random sweeps.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Family {
    Euclid,
    Graph,
}

#[derive(Debug, Clone, Serialize)]
pub struct SweepConfig {
    pub seed_start: u64,
    pub instances: usize,
    pub min_clients: usize,
    pub max_clients: usize,
    pub max_facilities: usize,
    /// Largest vertex count for graph-metric instances.
    pub max_graph_vertices: usize,
    pub families: Vec<Family>,
    /// Facilities coincide with clients.
    pub shared: bool,
    /// Mix the worst-case constructions into the sweep.
    pub include_tight: bool,
    pub tol: f64,
}

impl Default for SweepConfig {
    fn default() -> Self {
        Self {
            seed_start: 0,
            instances: 200,
            min_clients: 2,
            max_clients: 200,
            max_facilities: 50,
            max_graph_vertices: 120,
            families: vec![Family::Euclid, Family::Graph],
            shared: false,
            include_tight: true,
            tol: DEFAULT_CHECK_TOL,
        }
    }
}

impl SweepConfig {
    fn validate(&self) -> Result<()> {
        let bad = |m: &str| Err(Error::BadConfig(m.to_string()));
        if self.instances == 0 {
            return bad("instances must be positive");
        }
        if self.min_clients < 1 || self.min_clients > self.max_clients {
            return bad("need 1 <= min_clients <= max_clients");
        }
        if self.max_facilities == 0 {
            return bad("max_facilities must be positive");
        }
        if self.families.is_empty() {
            return bad("at least one instance family is required");
        }
        if self.families.contains(&Family::Graph) && self.max_graph_vertices < 2 {
            return bad("max_graph_vertices must be at least 2");
        }
        if !(self.tol.is_finite() && self.tol >= 0.0) {
            return bad("tolerance must be finite and nonnegative");
        }
        Ok(())
    }

    fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("config serialises")
    }
}

/// Draws the `index`-th random instance of a sweep.
pub fn sample_instance(config: &SweepConfig, index: usize) -> Result<(String, MetricInstance)> {
    let seed = config.seed_start.wrapping_add(index as u64);
    let family = config.families[index % config.families.len()];
    // parameters come from a stream separate from the instance's own
    let mut params = rng(seed ^ 0x9e37_79b9_7f4a_7c15);
    match family {
        Family::Euclid => {
            let n = params.gen_range(config.min_clients..=config.max_clients);
            let m = params.gen_range(1..=config.max_facilities);
            let dim = params.gen_range(1..=3);
            let inst = gen_random_euclidean(n, m, dim, seed, config.shared)?;
            Ok((format!("euclid seed={seed} n={n} m={} dim={dim}", inst.m_facilities()), inst))
        }
        Family::Graph => {
            let hi = config.max_graph_vertices.min(config.max_clients.max(2));
            let lo = config.min_clients.clamp(2, hi);
            let v = params.gen_range(lo..=hi);
            let floor = (2.0 * (v as f64).ln() / v as f64).clamp(0.05, 1.0);
            let density = params.gen_range(floor..=1.0);
            let (clients, facilities) = if config.shared {
                let all: Vec<usize> = (0..v).collect();
                (all.clone(), all)
            } else {
                let nc = params.gen_range(config.min_clients.min(v)..=v);
                let mf = params.gen_range(1..=config.max_facilities.min(v));
                (sample_vertices(&mut params, v, nc), sample_vertices(&mut params, v, mf))
            };
            let inst = gen_random_graph_metric(v, density, seed, &clients, &facilities)?;
            Ok((
                format!("graph seed={seed} v={v} density={density:.3} n={} m={}", clients.len(), facilities.len()),
                inst,
            ))
        }
    }
}

fn anchor_objectives(n: usize) -> ObjectiveSet {
    let ks: Vec<usize> = ANCHORS.iter().copied().filter(|&k| k <= n).chain(std::iter::once(n)).collect();
    ObjectiveSet::from_unsorted(ks, n).expect("anchors lie in [1, n]")
}

fn x_bucket(x: f64) -> &'static str {
    match x {
        x if x < 1.5 => "0 [1,1.5)",
        x if x < 2.0 => "1 [1.5,2)",
        x if x < 3.0 => "2 [2,3)",
        x if x <= 4.0 => "3 [3,4]",
        x if x <= 6.0 => "4 (4,6]",
        x if x <= 10.0 => "5 (6,10]",
        x if x <= 100.0 => "6 (10,100]",
        _ => "7 (100,inf)",
    }
}

/// Runs `work` over every sampled instance in parallel and merges in order.
fn sweep_instances(
    config: &SweepConfig,
    work: impl Fn(&str, &MetricInstance) -> Result<Tally> + Sync,
) -> Result<Tally> {
    let parts: Vec<Result<Tally>> = (0..config.instances)
        .into_par_iter()
        .map(|i| {
            let (label, inst) = sample_instance(config, i)?;
            work(&label, &inst)
        })
        .collect();
    let mut total = Tally::new("", config.tol);
    for part in parts {
        total.merge(part?);
    }
    Ok(total)
}

fn pair_tally(label: &str, inst: &MetricInstance, config: &SweepConfig) -> Result<Tally> {
    let mut t = Tally::new(label, config.tol);
    if inst.n_clients() < 2 {
        return Ok(t);
    }
    let objectives = anchor_objectives(inst.n_clients());
    let profile = CostProfile::new(inst, &objectives)?;
    let ks = objectives.ks();
    for jp in 0..ks.len() {
        for jk in 0..jp {
            let (k, p) = (ks[jk], ks[jp]);
            let x = p as f64 / k as f64;
            let detail = || format!("k={k} p={p}");
            let pair = select_pair_in(&profile, jk, jp)?;
            let f = pair_bound_f(x)?;
            t.bound("pair_f", pair.worst_ratio, f, detail);
            t.bound(&format!("pair_f/{}", x_bucket(x)), pair.worst_ratio, f, detail);
            let oracle = select_exhaustive_in(&profile, &[jk, jp]);
            t.check_le("oracle_dominance", oracle.worst_ratio, pair.worst_ratio, detail);
            if config.shared {
                let shared = pair_bound_shared(x)?;
                t.bound("pair_shared", oracle.worst_ratio, shared, detail);
                t.bound(&format!("pair_shared/{}", x_bucket(x)), oracle.worst_ratio, shared, detail);
            }
        }
    }
    Ok(t)
}

/// Best-of-two selection against `f(p/k)` over random instances and, when
/// configured, the tight constructions. With `shared`, also the exhaustive
/// oracle against the shared-location bound.
pub fn sweep_pair(config: &SweepConfig) -> Result<VerificationReport> {
    config.validate()?;
    let mut total = sweep_instances(config, |label, inst| pair_tally(label, inst, config))?;
    if config.include_tight && !config.shared {
        total.merge(tight_pair_tally(config.tol)?);
    }
    let suite = if config.shared { "shared" } else { "pair" };
    Ok(total.into_report(suite, config.to_json()))
}

/// Tight pair constructions: both cross ratios and the selected worst ratio must
/// equal `f(p/k)`.
pub fn tight_pair_tally(tol: f64) -> Result<Tally> {
    let mut total = Tally::new("", tol);
    for &(k, p) in &TIGHT_PAIR_RATIOS {
        let x = p as f64 / k as f64;
        let inst = if p > 4 * k { gen_tight_pair_line(k, p)? } else { gen_tight_pair_triangle(k, p)? };
        let label = format!("tight k={k} p={p}");
        let mut t = Tally::new(label.as_str(), tol);
        let profile = CostProfile::new(&inst, &ObjectiveSet::new(vec![k, p], p)?)?;
        let f = pair_bound_f(x)?;
        let pair = select_pair_in(&profile, 0, 1)?;
        t.bound("pair_f", pair.worst_ratio, f, || label.clone());
        t.bound(&format!("pair_f/{}", x_bucket(x)), pair.worst_ratio, f, || label.clone());
        let cross = [profile.ratio(profile.optimum(1).facility, 0), profile.ratio(profile.optimum(0).facility, 1)];
        for r in cross.into_iter().chain(std::iter::once(pair.worst_ratio)) {
            t.check_slack("pair_tight_witness", (r - f).abs(), || format!("{label}: ratio {r} vs f {f}"));
        }
        t.check_slack("pair_tight_optima", 0.0, String::new);
        if profile.optimum(0).facility != 0 || profile.optimum(1).facility != 1 {
            t.check_slack("pair_tight_optima", f64::INFINITY, || format!("{label}: unexpected optima"));
        }
        total.merge(t);
    }
    Ok(total)
}

/// How objective sets are drawn in [`sweep_multi`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ObjectiveSampler {
    /// `q` distinct values uniform in `[1, n]`.
    Uniform,
    /// Always contains 1 and `n`; the rest uniform.
    WithExtremes,
}

#[derive(Debug, Clone, Serialize)]
pub struct MultiConfig {
    pub sweep: SweepConfig,
    pub q: usize,
    pub sets_per_instance: usize,
    pub sampler: ObjectiveSampler,
    /// `(k, n)` sizes of the three-objective construction added when `q = 3`.
    pub triple_sizes: Vec<(usize, usize)>,
}

impl MultiConfig {
    pub fn new(sweep: SweepConfig, q: usize) -> Self {
        Self {
            sweep,
            q,
            sets_per_instance: 4,
            sampler: ObjectiveSampler::WithExtremes,
            triple_sizes: vec![(2, 3), (100, 10_000), (10_000, 1_000_000)],
        }
    }
}

fn sample_objectives(rng: &mut impl Rng, n: usize, q: usize, sampler: ObjectiveSampler) -> Option<ObjectiveSet> {
    if q > n {
        return None;
    }
    let mut ks: Vec<usize> = match sampler {
        ObjectiveSampler::WithExtremes if q >= 2 => vec![1, n],
        _ => Vec::new(),
    };
    while ks.len() < q {
        let k = rng.gen_range(1..=n);
        if !ks.contains(&k) {
            ks.push(k);
        }
    }
    ObjectiveSet::from_unsorted(ks, n).ok()
}

/// Records the multi-objective rules on one instance and objective set.
pub fn multi_tally(inst: &MetricInstance, objectives: &ObjectiveSet, label: &str, tol: f64) -> Result<Tally> {
    let mut t = Tally::new(label, tol);
    let profile = CostProfile::new(inst, objectives)?;
    let idx: Vec<usize> = (0..objectives.len()).collect();
    let q = objectives.len();
    let detail = || format!("K={:?}", objectives.ks());
    let graph = select_multi_graph_in(&profile, &idx)?;
    let oracle = select_exhaustive_in(&profile, &idx);
    let largest = select_largest_objective_in(&profile, &idx);
    t.check_le("oracle_dominance", oracle.worst_ratio, graph.worst_ratio, detail);
    t.check_le("oracle_dominance", oracle.worst_ratio, largest.worst_ratio, detail);
    t.observe("oracle_gap", graph.worst_ratio - oracle.worst_ratio, 0.0, false, detail);
    let k_max = objectives.largest() as f64;
    for (&k, &r) in objectives.ks().iter().zip(&largest.ratios) {
        t.check_le("largest_ratio_cap", r, k_max / k as f64, detail);
    }
    if inst.is_metric_verified() && q >= 2 {
        let beta = beta_q(q, DEFAULT_BETA_TOL)?;
        t.bound(&format!("multi_graph_beta_{q}"), graph.worst_ratio, beta, detail);
        t.bound("largest_objective_three", largest.worst_ratio, LARGEST_OBJECTIVE_BOUND, detail);
    }
    Ok(t)
}

/// The ratio-graph rule against `beta_q` over random objective sets, with the
/// gap to the exhaustive oracle. For `q = 3` the three-objective construction is
/// added and reported under `triple_max_outgoing/*`.
pub fn sweep_multi(config: &MultiConfig) -> Result<VerificationReport> {
    config.sweep.validate()?;
    if config.q == 0 || config.sets_per_instance == 0 {
        return Err(Error::BadConfig("q and sets_per_instance must be positive".into()));
    }
    let tol = config.sweep.tol;
    let mut total = sweep_instances(&config.sweep, |label, inst| {
        let mut t = Tally::new(label, tol);
        let mut draw = rng(config.sweep.seed_start.wrapping_add(inst.n_clients() as u64) ^ label.len() as u64);
        for _ in 0..config.sets_per_instance {
            if let Some(objectives) = sample_objectives(&mut draw, inst.n_clients(), config.q, config.sampler) {
                t.merge(multi_tally(inst, &objectives, label, tol)?);
            }
        }
        Ok(t)
    })?;
    if config.q == 3 && config.sweep.include_tight {
        for &(k, n) in &config.triple_sizes {
            total.merge(triple_tally(k, n, tol)?);
        }
    }
    Ok(total.into_report("multi", serde_json::to_value(config).expect("config serialises")))
}

/// The three-objective construction: bound checks plus each node's maximum
/// outgoing ratio, reported against `beta_3` without enforcing closeness.
pub fn triple_tally(k: usize, n: usize, tol: f64) -> Result<Tally> {
    let inst = gen_tight_triple(k, n)?;
    let objectives = ObjectiveSet::new(vec![1, k, n], n)?;
    let label = format!("triple k={k} n={n}");
    let mut t = multi_tally(&inst, &objectives, &label, tol)?;
    let beta3 = beta_q(3, DEFAULT_BETA_TOL)?;
    let graph = RatioGraph::from_profile(&CostProfile::new(&inst, &objectives)?);
    for i in 0..graph.len() {
        let name = format!("triple_max_outgoing/k={k} n={n} node=O_{}", objectives.ks()[i]);
        t.observe(&name, graph.max_outgoing(i), beta3, false, || label.clone());
    }
    Ok(t)
}

/// Every inequality check over random instances: all anchor pairs, plus cycle
/// checks on sampled objective sets of size 3 to [`MAX_CYCLE_Q`].
pub fn sweep_lemmas(config: &SweepConfig) -> Result<VerificationReport> {
    config.validate()?;
    let tol = config.tol;
    let mut total = sweep_instances(config, |label, inst| {
        let n = inst.n_clients();
        let mut t = check_inequalities(inst, &anchor_objectives(n), tol, label)?;
        let mut draw = rng(n as u64 ^ label.len() as u64);
        for q in 3..=MAX_CYCLE_Q {
            if let Some(objectives) = sample_objectives(&mut draw, n, q, ObjectiveSampler::Uniform) {
                t.merge(check_inequalities(inst, &objectives, tol, label)?);
            }
        }
        Ok(t)
    })?;
    if config.include_tight {
        for &(k, p) in &TIGHT_PAIR_RATIOS {
            let inst = if p > 4 * k { gen_tight_pair_line(k, p)? } else { gen_tight_pair_triangle(k, p)? };
            let objectives = ObjectiveSet::new(vec![k, p], p)?;
            total.merge(check_inequalities(&inst, &objectives, tol, &format!("tight k={k} p={p}"))?);
        }
        let inst = gen_tight_triple(100, 10_000)?;
        total.merge(check_inequalities(&inst, &ObjectiveSet::new(vec![1, 100, 10_000], 10_000)?, tol, "triple")?);
    }
    Ok(total.into_report("lemmas", config.to_json()))
}

/// Rows of the two bound curves.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundCurves {
    /// `(x, f(x), shared(x))`
    pub pair: Vec<(f64, f64, f64)>,
    /// `(q, beta_q)`
    pub beta: Vec<(usize, f64)>,
}

/// Evaluates the bound curves on `x = x_min + i * x_step` up to `x_max`
/// (always including the breakpoint `x = 4` when in range) and `q = 2..=q_max`.
pub fn bound_curves(x_min: f64, x_max: f64, x_step: f64, q_max: usize) -> Result<BoundCurves> {
    if !(x_min >= 1.0 && x_max >= x_min && x_step > 0.0 && x_max.is_finite()) {
        return Err(Error::BadConfig(format!("x range [{x_min}, {x_max}] step {x_step}")));
    }
    if q_max < 2 {
        return Err(Error::InvalidQ(q_max));
    }
    let snap = |x: f64| (x * 1e9).round() / 1e9;
    let mut xs: Vec<f64> = Vec::new();
    let mut i = 0usize;
    loop {
        let x = snap(x_min + i as f64 * x_step);
        if x > x_max + 1e-12 {
            break;
        }
        xs.push(x.min(x_max));
        i += 1;
    }
    if (x_min..=x_max).contains(&4.0) && !xs.contains(&4.0) {
        xs.push(4.0);
        xs.sort_by(f64::total_cmp);
    }
    let pair = xs.into_iter().map(|x| Ok((x, pair_bound_f(x)?, pair_bound_shared(x)?))).collect::<Result<Vec<_>>>()?;
    let beta = (2..=q_max).map(|q| Ok((q, beta_q(q, DEFAULT_BETA_TOL)?))).collect::<Result<Vec<_>>>()?;
    Ok(BoundCurves { pair, beta })
}

pub const PAIR_CURVE_FILE: &str = "pair_bound.csv";
pub const BETA_CURVE_FILE: &str = "beta_q.csv";

/// Writes `pair_bound.csv` (`x,f,shared`) and `beta_q.csv` (`q,beta`) into `out_dir`.
pub fn emit_bound_curves(
    x_min: f64,
    x_max: f64,
    x_step: f64,
    q_max: usize,
    out_dir: &Path,
) -> Result<(PathBuf, PathBuf)> {
    let curves = bound_curves(x_min, x_max, x_step, q_max)?;
    std::fs::create_dir_all(out_dir)?;
    let pair_path = out_dir.join(PAIR_CURVE_FILE);
    let mut w = csv::Writer::from_writer(File::create(&pair_path)?);
    w.write_record(["x", "f", "shared"])?;
    for (x, f, s) in &curves.pair {
        w.write_record([x.to_string(), f.to_string(), s.to_string()])?;
    }
    w.flush()?;
    let beta_path = out_dir.join(BETA_CURVE_FILE);
    let mut w = csv::Writer::from_writer(File::create(&beta_path)?);
    w.write_record(["q", "beta"])?;
    for (q, b) in &curves.beta {
        w.write_record([q.to_string(), b.to_string()])?;
    }
    w.flush()?;
    Ok((pair_path, beta_path))
}
