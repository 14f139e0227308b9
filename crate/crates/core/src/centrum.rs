//! l-centrum costs, per-objective optima, approximation ratios and the ratio graph.
//!
//! Every top-k sum here is accumulated in descending distance order with each
//! site contributing `d * count`, so the single-query path and the profile path
//! produce bit-identical costs and identical optimum tie-breaks.

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::metric::{MetricInstance, ObjectiveSet};

fn check_k(inst: &MetricInstance, k: usize) -> Result<()> {
    if k == 0 || k > inst.n_clients() {
        return Err(Error::KOutOfRange { k, n: inst.n_clients() });
    }
    Ok(())
}

fn check_facility(inst: &MetricInstance, facility: usize) -> Result<()> {
    if facility >= inst.m_facilities() {
        return Err(Error::FacilityOutOfRange { index: facility, m: inst.m_facilities() });
    }
    Ok(())
}

fn descending(a: &f64, b: &f64) -> std::cmp::Ordering {
    b.total_cmp(a)
}

/// Sum of the `k` largest values, using partial selection. Reorders `values`.
fn top_k_sum(values: &mut [f64], k: usize) -> f64 {
    if k < values.len() {
        values.select_nth_unstable_by(k - 1, descending);
    }
    let top = &mut values[..k];
    top.sort_unstable_by(descending);
    top.iter().sum()
}

/// `c_k(A)`: the sum of the `k` largest client-to-`facility` distances.
pub fn centrum_cost(inst: &MetricInstance, facility: usize, k: usize) -> Result<f64> {
    check_k(inst, k)?;
    check_facility(inst, facility)?;
    if inst.has_unit_multiplicity() {
        let mut d: Vec<f64> = inst.site_distances(facility).map(|(d, _)| d).collect();
        return Ok(top_k_sum(&mut d, k));
    }
    Ok(SortedDistances::new(inst, facility).top_sum(k))
}

/// Distances from one facility grouped by site, sorted descending, with prefix
/// sums so that any `c_k` is a binary search away.
#[derive(Debug, Clone)]
struct SortedDistances {
    dist: Vec<f64>,
    /// `count_before[i]` clients lie strictly before group `i`.
    count_before: Vec<usize>,
    sum_before: Vec<f64>,
}

impl SortedDistances {
    fn new(inst: &MetricInstance, facility: usize) -> Self {
        let mut groups: Vec<(f64, usize)> = inst.site_distances(facility).collect();
        groups.sort_by(|a, b| descending(&a.0, &b.0));
        let mut count_before = Vec::with_capacity(groups.len());
        let mut sum_before = Vec::with_capacity(groups.len());
        let (mut count, mut sum) = (0usize, 0.0f64);
        for &(d, c) in &groups {
            count_before.push(count);
            sum_before.push(sum);
            count += c;
            sum += d * c as f64;
        }
        Self { dist: groups.into_iter().map(|g| g.0).collect(), count_before, sum_before }
    }

    fn top_sum(&self, k: usize) -> f64 {
        // last group whose first client has rank <= k
        let g = self.count_before.partition_point(|&c| c < k) - 1;
        self.sum_before[g] + self.dist[g] * (k - self.count_before[g]) as f64
    }
}

/// `O_k` and its cost. Ties go to the lowest facility index.
pub fn optimal_facility(inst: &MetricInstance, k: usize) -> Result<(usize, f64)> {
    check_k(inst, k)?;
    let mut best = (0, f64::INFINITY);
    for f in 0..inst.m_facilities() {
        let c = centrum_cost(inst, f, k)?;
        if c < best.1 {
            best = (f, c);
        }
    }
    Ok(best)
}

/// `c / c_opt`, where a zero optimum means every client sits on the optimum.
/// Returns 1 for `0 / 0` and `+inf` for a positive cost against a zero optimum.
pub fn ratio_of(cost: f64, optimum: f64) -> f64 {
    if optimum > 0.0 {
        cost / optimum
    } else if cost == 0.0 {
        1.0
    } else {
        f64::INFINITY
    }
}

/// `alpha_k(A) = c_k(A) / c_k(O_k)`. `+inf` flags a degenerate optimum.
pub fn approx_ratio(inst: &MetricInstance, facility: usize, k: usize) -> Result<f64> {
    let cost = centrum_cost(inst, facility, k)?;
    let (_, opt) = optimal_facility(inst, k)?;
    Ok(ratio_of(cost, opt))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Optimum {
    pub k: usize,
    pub facility: usize,
    pub cost: f64,
}

/// `c_k(A)` for every facility and every `k` in an objective set, plus optima.
#[derive(Debug, Clone, Serialize)]
pub struct CostProfile {
    objectives: ObjectiveSet,
    facilities: Vec<String>,
    /// `costs[facility][j]` is the cost for the `j`-th objective.
    costs: Vec<Vec<f64>>,
    optima: Vec<Optimum>,
}

impl CostProfile {
    pub fn new(inst: &MetricInstance, objectives: &ObjectiveSet) -> Result<Self> {
        for &k in objectives.ks() {
            check_k(inst, k)?;
        }
        let ks = objectives.ks();
        let costs: Vec<Vec<f64>> = (0..inst.m_facilities())
            .into_par_iter()
            .map(|f| {
                let sorted = SortedDistances::new(inst, f);
                ks.iter().map(|&k| sorted.top_sum(k)).collect()
            })
            .collect();
        let optima = ks
            .iter()
            .enumerate()
            .map(|(j, &k)| {
                let mut best = Optimum { k, facility: 0, cost: f64::INFINITY };
                for (f, row) in costs.iter().enumerate() {
                    if row[j] < best.cost {
                        best = Optimum { k, facility: f, cost: row[j] };
                    }
                }
                best
            })
            .collect();
        Ok(Self { objectives: objectives.clone(), facilities: inst.facility_labels().to_vec(), costs, optima })
    }

    pub fn objectives(&self) -> &ObjectiveSet {
        &self.objectives
    }

    pub fn m_facilities(&self) -> usize {
        self.costs.len()
    }

    pub fn cost(&self, facility: usize, j: usize) -> f64 {
        self.costs[facility][j]
    }

    pub fn optimum(&self, j: usize) -> &Optimum {
        &self.optima[j]
    }

    pub fn optima(&self) -> &[Optimum] {
        &self.optima
    }

    pub fn ratio(&self, facility: usize, j: usize) -> f64 {
        ratio_of(self.costs[facility][j], self.optima[j].cost)
    }

    /// Ratio vector of `facility` across all objectives.
    pub fn ratios(&self, facility: usize) -> Vec<f64> {
        (0..self.objectives.len()).map(|j| self.ratio(facility, j)).collect()
    }

    /// True when some optimum has zero cost, i.e. every client sits on one facility.
    pub fn is_degenerate(&self) -> bool {
        self.optima.iter().any(|o| o.cost == 0.0)
    }

    pub fn facility_label(&self, f: usize) -> &str {
        &self.facilities[f]
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct GraphNode {
    pub k: usize,
    pub facility: usize,
    pub label: String,
}

/// Complete digraph over `{O_k : k in K}`; `weights[i][j] = alpha_{k_j}(O_{k_i})`.
#[derive(Debug, Clone, Serialize)]
pub struct RatioGraph {
    objectives: ObjectiveSet,
    nodes: Vec<GraphNode>,
    weights: Vec<Vec<f64>>,
}

impl RatioGraph {
    pub fn from_profile(profile: &CostProfile) -> Self {
        let q = profile.objectives.len();
        let nodes: Vec<GraphNode> = profile
            .optima
            .iter()
            .map(|o| GraphNode { k: o.k, facility: o.facility, label: profile.facilities[o.facility].clone() })
            .collect();
        let weights = (0..q)
            .map(|i| (0..q).map(|j| if i == j { 1.0 } else { profile.ratio(nodes[i].facility, j) }).collect())
            .collect();
        Self { objectives: profile.objectives.clone(), nodes, weights }
    }

    pub fn objectives(&self) -> &ObjectiveSet {
        &self.objectives
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn nodes(&self) -> &[GraphNode] {
        &self.nodes
    }

    pub fn weight(&self, from: usize, to: usize) -> f64 {
        self.weights[from][to]
    }

    pub fn weights(&self) -> &[Vec<f64>] {
        &self.weights
    }

    /// Largest weight leaving node `i`, i.e. the worst ratio of choosing `O_{k_i}`.
    pub fn max_outgoing(&self, i: usize) -> f64 {
        self.weights[i].iter().copied().fold(1.0, f64::max)
    }
}

/// Builds the ratio graph for objective set `objectives`.
pub fn ratio_graph(inst: &MetricInstance, objectives: &ObjectiveSet) -> Result<RatioGraph> {
    Ok(RatioGraph::from_profile(&CostProfile::new(inst, objectives)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::metric::build_from_matrix;

    fn column(d: &[f64]) -> MetricInstance {
        build_from_matrix(d.iter().map(|&v| vec![v]).collect(), None).unwrap()
    }

    #[test]
    fn top_k_of_three() {
        let inst = column(&[3.0, 1.0, 2.0]);
        assert_eq!(centrum_cost(&inst, 0, 2).unwrap(), 5.0);
        assert_eq!(centrum_cost(&inst, 0, 1).unwrap(), 3.0);
        assert_eq!(centrum_cost(&inst, 0, 3).unwrap(), 6.0);
        assert!(matches!(centrum_cost(&inst, 0, 0), Err(Error::KOutOfRange { .. })));
        assert!(matches!(centrum_cost(&inst, 0, 4), Err(Error::KOutOfRange { .. })));
        assert!(matches!(centrum_cost(&inst, 1, 1), Err(Error::FacilityOutOfRange { .. })));
    }

    #[test]
    fn multiplicity_matches_expanded_clients() {
        let grouped = column(&[2.0, 5.0, 1.0]).with_multiplicity(vec![3, 1, 2]).unwrap();
        let expanded = column(&[2.0, 2.0, 2.0, 5.0, 1.0, 1.0]);
        for k in 1..=6 {
            assert_eq!(centrum_cost(&grouped, 0, k).unwrap(), centrum_cost(&expanded, 0, k).unwrap(), "k = {k}");
        }
    }

    #[test]
    fn optimum_ties_go_to_lowest_index() {
        let inst = build_from_matrix(vec![vec![2.0, 1.0, 1.0], vec![2.0, 3.0, 3.0]], None).unwrap();
        assert_eq!(optimal_facility(&inst, 1).unwrap(), (0, 2.0));
        // c_2: f0 = 4, f1 = 4, f2 = 4 -> f0
        assert_eq!(optimal_facility(&inst, 2).unwrap(), (0, 4.0));
        let inst = build_from_matrix(vec![vec![5.0, 1.0, 1.0]], None).unwrap();
        assert_eq!(optimal_facility(&inst, 1).unwrap(), (1, 1.0));
    }

    #[test]
    fn single_facility_is_optimal() {
        let inst = column(&[4.0, 2.0]);
        assert_eq!(optimal_facility(&inst, 2).unwrap(), (0, 6.0));
        assert_eq!(approx_ratio(&inst, 0, 1).unwrap(), 1.0);
    }

    #[test]
    fn degenerate_optimum() {
        // every client sits on facility 0
        let inst = build_from_matrix(vec![vec![0.0, 1.0], vec![0.0, 2.0]], None).unwrap();
        assert_eq!(approx_ratio(&inst, 0, 2).unwrap(), 1.0);
        assert_eq!(approx_ratio(&inst, 1, 2).unwrap(), f64::INFINITY);
        let ks = ObjectiveSet::new(vec![1, 2], 2).unwrap();
        let profile = CostProfile::new(&inst, &ks).unwrap();
        assert!(profile.is_degenerate());
        let g = RatioGraph::from_profile(&profile);
        assert_eq!(g.weights(), &[vec![1.0, 1.0], vec![1.0, 1.0]]);
    }

    #[test]
    fn profile_matches_single_queries() {
        let inst = build_from_matrix(
            vec![vec![1.0, 4.0, 2.5], vec![3.0, 0.5, 2.5], vec![2.0, 2.0, 1.0], vec![0.2, 3.3, 2.0]],
            None,
        )
        .unwrap();
        let ks = ObjectiveSet::new(vec![1, 2, 3, 4], 4).unwrap();
        let profile = CostProfile::new(&inst, &ks).unwrap();
        for f in 0..3 {
            for (j, &k) in ks.ks().iter().enumerate() {
                assert_eq!(profile.cost(f, j), centrum_cost(&inst, f, k).unwrap());
            }
        }
        for (j, &k) in ks.ks().iter().enumerate() {
            let (f, c) = optimal_facility(&inst, k).unwrap();
            assert_eq!((profile.optimum(j).facility, profile.optimum(j).cost), (f, c));
        }
    }

    #[test]
    fn single_objective_graph() {
        let inst = column(&[1.0, 2.0]);
        let g = ratio_graph(&inst, &ObjectiveSet::new(vec![2], 2).unwrap()).unwrap();
        assert_eq!(g.len(), 1);
        assert_eq!(g.weight(0, 0), 1.0);
        assert_eq!(g.max_outgoing(0), 1.0);
    }
}
