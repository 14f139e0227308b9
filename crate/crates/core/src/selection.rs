//! Single-facility selection rules with simultaneous-approximation guarantees.
//!
//! Each rule has an instance-level entry point (`select_*`) and a variant
//! (`select_*_in`) that works on a precomputed [`CostProfile`] restricted to a
//! subset of its objectives, given by objective positions. Sweeps use the
//! latter to evaluate many objective subsets against one profile.

use rayon::prelude::*;
use serde::Serialize;

use crate::bounds::BoundValue;
use crate::centrum::CostProfile;
use crate::error::{Error, Result};
use crate::metric::{MetricInstance, ObjectiveSet};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    PairBestOfTwo,
    LargestObjective,
    MultiGraph,
    Exhaustive,
}

impl std::str::FromStr for Method {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "pair" | "pair_best_of_two" => Ok(Method::PairBestOfTwo),
            "largest" | "largest_objective" => Ok(Method::LargestObjective),
            "graph" | "multi_graph" => Ok(Method::MultiGraph),
            "exhaustive" => Ok(Method::Exhaustive),
            other => Err(format!("unknown method {other:?}")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum Guarantee {
    Proved(BoundValue),
    /// Ground-truth search; no a-priori bound.
    Oracle,
}

impl Guarantee {
    pub fn value(&self) -> Option<f64> {
        match self {
            Guarantee::Proved(b) => Some(b.value),
            Guarantee::Oracle => None,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct SelectionResult {
    pub facility: usize,
    pub label: String,
    pub objectives: Vec<usize>,
    /// `alpha_k(facility)` for each objective, in objective order.
    pub ratios: Vec<f64>,
    pub worst_ratio: f64,
    pub guarantee: Guarantee,
    pub method: Method,
}

fn worst(ratios: &[f64]) -> f64 {
    ratios.iter().copied().fold(1.0, f64::max)
}

fn build(
    profile: &CostProfile,
    idx: &[usize],
    facility: usize,
    guarantee: Guarantee,
    method: Method,
) -> SelectionResult {
    let ratios: Vec<f64> = idx.iter().map(|&j| profile.ratio(facility, j)).collect();
    SelectionResult {
        facility,
        label: profile.facility_label(facility).to_string(),
        objectives: idx.iter().map(|&j| profile.objectives().ks()[j]).collect(),
        worst_ratio: worst(&ratios),
        ratios,
        guarantee,
        method,
    }
}

/// A zero-cost optimum means all clients share one location; that facility is
/// optimal for every objective.
fn degenerate(profile: &CostProfile, idx: &[usize], guarantee: Guarantee, method: Method) -> Option<SelectionResult> {
    let j = idx.iter().copied().find(|&j| profile.optimum(j).cost == 0.0)?;
    Some(build(profile, idx, profile.optimum(j).facility, guarantee, method))
}

fn all_positions(profile: &CostProfile) -> Vec<usize> {
    (0..profile.objectives().len()).collect()
}

/// Best of `O_k` and `O_p` by worst ratio; ties go to `O_p`.
pub fn select_pair(inst: &MetricInstance, k: usize, p: usize) -> Result<SelectionResult> {
    let n = inst.n_clients();
    if k == 0 || k >= p || p > n {
        return Err(Error::BadObjectivePair { k, p, n });
    }
    let profile = CostProfile::new(inst, &ObjectiveSet::new(vec![k, p], n)?)?;
    select_pair_in(&profile, 0, 1)
}

/// [`select_pair`] over objective positions `jk < jp` of a profile.
pub fn select_pair_in(profile: &CostProfile, jk: usize, jp: usize) -> Result<SelectionResult> {
    let ks = profile.objectives().ks();
    let (k, p) = (ks[jk], ks[jp]);
    if jk >= jp {
        return Err(Error::BadObjectivePair { k, p, n: *ks.last().unwrap_or(&0) });
    }
    let guarantee = Guarantee::Proved(BoundValue::pair_f(p as f64 / k as f64)?);
    let idx = [jk, jp];
    if let Some(r) = degenerate(profile, &idx, guarantee, Method::PairBestOfTwo) {
        return Ok(r);
    }
    let o_k = profile.optimum(jk).facility;
    let o_p = profile.optimum(jp).facility;
    let worst_of = |f: usize| worst(&[profile.ratio(f, jk), profile.ratio(f, jp)]);
    let chosen = if worst_of(o_k) < worst_of(o_p) { o_k } else { o_p };
    Ok(build(profile, &idx, chosen, guarantee, Method::PairBestOfTwo))
}

/// `O_{k_q}` for the largest objective in the set.
pub fn select_largest_objective(inst: &MetricInstance, objectives: &ObjectiveSet) -> Result<SelectionResult> {
    let profile = CostProfile::new(inst, objectives)?;
    Ok(select_largest_objective_in(&profile, &all_positions(&profile)))
}

pub fn select_largest_objective_in(profile: &CostProfile, idx: &[usize]) -> SelectionResult {
    let guarantee = if idx.len() == 1 {
        Guarantee::Proved(BoundValue::single_objective())
    } else {
        Guarantee::Proved(BoundValue::largest_objective())
    };
    if let Some(r) = degenerate(profile, idx, guarantee, Method::LargestObjective) {
        return r;
    }
    let last = *idx.iter().max_by_key(|&&j| profile.objectives().ks()[j]).expect("nonempty objective subset");
    build(profile, idx, profile.optimum(last).facility, guarantee, Method::LargestObjective)
}

/// The node of the ratio graph with the smallest maximum outgoing weight.
/// Ties go to the node of the smallest objective.
pub fn select_multi_graph(inst: &MetricInstance, objectives: &ObjectiveSet) -> Result<SelectionResult> {
    let profile = CostProfile::new(inst, objectives)?;
    select_multi_graph_in(&profile, &all_positions(&profile))
}

pub fn select_multi_graph_in(profile: &CostProfile, idx: &[usize]) -> Result<SelectionResult> {
    let guarantee = match idx.len() {
        1 => Guarantee::Proved(BoundValue::single_objective()),
        q => Guarantee::Proved(BoundValue::beta(q)?),
    };
    if let Some(r) = degenerate(profile, idx, guarantee, Method::MultiGraph) {
        return Ok(r);
    }
    let mut best: Option<(f64, usize)> = None;
    for &i in idx {
        let node = profile.optimum(i).facility;
        let out = worst(&idx.iter().map(|&j| profile.ratio(node, j)).collect::<Vec<_>>());
        if best.is_none_or(|(w, _)| out < w) {
            best = Some((out, node));
        }
    }
    let (_, facility) = best.expect("nonempty objective subset");
    Ok(build(profile, idx, facility, guarantee, Method::MultiGraph))
}

/// Scans every facility for the smallest worst ratio; ties go to the lowest index.
pub fn select_exhaustive(inst: &MetricInstance, objectives: &ObjectiveSet) -> Result<SelectionResult> {
    let profile = CostProfile::new(inst, objectives)?;
    Ok(select_exhaustive_in(&profile, &all_positions(&profile)))
}

pub fn select_exhaustive_in(profile: &CostProfile, idx: &[usize]) -> SelectionResult {
    let worsts: Vec<f64> = (0..profile.m_facilities())
        .into_par_iter()
        .map(|f| worst(&idx.iter().map(|&j| profile.ratio(f, j)).collect::<Vec<_>>()))
        .collect();
    let mut facility = 0;
    for (f, &w) in worsts.iter().enumerate() {
        if w < worsts[facility] {
            facility = f;
        }
    }
    build(profile, idx, facility, Guarantee::Oracle, Method::Exhaustive)
}

/// Dispatches on `method`. The pair rule needs exactly two objectives.
pub fn select(inst: &MetricInstance, objectives: &ObjectiveSet, method: Method) -> Result<SelectionResult> {
    match method {
        Method::PairBestOfTwo => match objectives.ks() {
            &[k, p] => select_pair(inst, k, p),
            ks => Err(Error::BadObjectivePair {
                k: ks.first().copied().unwrap_or(0),
                p: ks.get(1).copied().unwrap_or(0),
                n: inst.n_clients(),
            }),
        },
        Method::LargestObjective => select_largest_objective(inst, objectives),
        Method::MultiGraph => select_multi_graph(inst, objectives),
        Method::Exhaustive => select_exhaustive(inst, objectives),
    }
}
