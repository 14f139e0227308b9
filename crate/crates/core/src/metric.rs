//! Metric instances: clients, candidate facilities and the distances between them.
//!
//! Clients are stored as *sites*: a site is a client location together with
//! the number of clients placed there. Every operation that talks about "the
//! `k` farthest clients" expands multiplicities, so an instance with one site of
//! multiplicity 3 behaves exactly like three colocated clients.
//!
//! The optional cross matrix covers every point of the instance, sites first and
//! facilities after them. It is only needed to check the metric axioms; centrum
//! costs use client-facility distances alone.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Default relative tolerance for metric validation.
pub const DEFAULT_METRIC_TOL: f64 = 1e-9;

/// A dense square matrix of distances over all points of an instance.
#[derive(Debug, Clone, PartialEq)]
pub struct CrossMatrix {
    size: usize,
    data: Vec<f64>,
}

impl CrossMatrix {
    pub fn from_rows(rows: Vec<Vec<f64>>) -> Result<Self> {
        let size = rows.len();
        let mut data = Vec::with_capacity(size * size);
        for (i, row) in rows.into_iter().enumerate() {
            if row.len() != size {
                return Err(Error::NotRectangular { row: i, len: row.len(), expected: size });
            }
            for (j, &v) in row.iter().enumerate() {
                check_entry(i, j, v)?;
            }
            data.extend(row);
        }
        Ok(Self { size, data })
    }

    fn from_fn(size: usize, f: impl Fn(usize, usize) -> f64) -> Self {
        let mut data = vec![0.0; size * size];
        for i in 0..size {
            for j in 0..size {
                data[i * size + j] = f(i, j);
            }
        }
        Self { size, data }
    }

    pub fn size(&self) -> usize {
        self.size
    }

    #[inline]
    pub fn get(&self, x: usize, y: usize) -> f64 {
        self.data[x * self.size + y]
    }

    pub fn rows(&self) -> Vec<Vec<f64>> {
        self.data.chunks(self.size.max(1)).map(|r| r.to_vec()).collect()
    }
}

fn check_entry(row: usize, col: usize, v: f64) -> Result<()> {
    if !v.is_finite() {
        return Err(Error::NonFinite { row, col });
    }
    if v < 0.0 {
        return Err(Error::NegativeDistance { row, col, value: v });
    }
    Ok(())
}

/// Clients, candidate facilities and validated distances between them.
///
/// Immutable once built.
#[derive(Debug, Clone)]
pub struct MetricInstance {
    client_labels: Vec<String>,
    multiplicity: Vec<usize>,
    facility_labels: Vec<String>,
    /// Site-major `sites x facilities` matrix.
    dist: Vec<f64>,
    cross: Option<CrossMatrix>,
    n_clients: usize,
    provenance: Option<serde_json::Value>,
}

impl MetricInstance {
    /// Total number of clients, counting multiplicities.
    pub fn n_clients(&self) -> usize {
        self.n_clients
    }

    pub fn n_sites(&self) -> usize {
        self.multiplicity.len()
    }

    pub fn m_facilities(&self) -> usize {
        self.facility_labels.len()
    }

    #[inline]
    pub fn distance(&self, site: usize, facility: usize) -> f64 {
        self.dist[site * self.m_facilities() + facility]
    }

    pub fn multiplicity(&self, site: usize) -> usize {
        self.multiplicity[site]
    }

    pub fn multiplicities(&self) -> &[usize] {
        &self.multiplicity
    }

    pub fn has_unit_multiplicity(&self) -> bool {
        self.multiplicity.iter().all(|&c| c == 1)
    }

    /// `(distance, multiplicity)` of every site to `facility`, in site order.
    pub fn site_distances(&self, facility: usize) -> impl Iterator<Item = (f64, usize)> + '_ {
        (0..self.n_sites()).map(move |s| (self.distance(s, facility), self.multiplicity[s]))
    }

    /// Distances from every individual client to `facility`, multiplicities expanded.
    pub fn client_distances(&self, facility: usize) -> Vec<f64> {
        let mut out = Vec::with_capacity(self.n_clients);
        for (d, c) in self.site_distances(facility) {
            out.extend(std::iter::repeat_n(d, c));
        }
        out
    }

    pub fn cross(&self) -> Option<&CrossMatrix> {
        self.cross.as_ref()
    }

    /// True when facility-facility and client-client distances were supplied and
    /// passed validation. Without them the instance is "metric-unverified".
    pub fn is_metric_verified(&self) -> bool {
        self.cross.is_some()
    }

    /// Index of facility `f` in the cross matrix.
    pub fn facility_point(&self, f: usize) -> usize {
        self.n_sites() + f
    }

    pub fn client_labels(&self) -> &[String] {
        &self.client_labels
    }

    pub fn facility_labels(&self) -> &[String] {
        &self.facility_labels
    }

    pub fn facility_label(&self, f: usize) -> &str {
        &self.facility_labels[f]
    }

    pub fn provenance(&self) -> Option<&serde_json::Value> {
        self.provenance.as_ref()
    }

    pub fn dist_rows(&self) -> Vec<Vec<f64>> {
        self.dist.chunks(self.m_facilities()).map(|r| r.to_vec()).collect()
    }

    /// Assigns client multiplicities per site. Every count must be positive.
    pub fn with_multiplicity(mut self, multiplicity: Vec<usize>) -> Result<Self> {
        if multiplicity.len() != self.n_sites() || multiplicity.contains(&0) {
            return Err(Error::BadMultiplicity { len: multiplicity.len(), sites: self.n_sites() });
        }
        self.n_clients = multiplicity.iter().sum();
        self.multiplicity = multiplicity;
        Ok(self)
    }

    pub fn with_labels(mut self, clients: Vec<String>, facilities: Vec<String>) -> Result<Self> {
        if clients.len() != self.n_sites() {
            return Err(Error::BadLabels { len: clients.len(), expected: self.n_sites() });
        }
        if facilities.len() != self.m_facilities() {
            return Err(Error::BadLabels { len: facilities.len(), expected: self.m_facilities() });
        }
        self.client_labels = clients;
        self.facility_labels = facilities;
        Ok(self)
    }

    pub fn with_provenance(mut self, provenance: serde_json::Value) -> Self {
        self.provenance = Some(provenance);
        self
    }

    fn assemble(dist_rows: Vec<Vec<f64>>, cross: Option<CrossMatrix>) -> Result<Self> {
        let sites = dist_rows.len();
        let m = dist_rows.first().map_or(0, Vec::len);
        if sites == 0 || m == 0 {
            return Err(Error::EmptyInstance);
        }
        let mut dist = Vec::with_capacity(sites * m);
        for (i, row) in dist_rows.into_iter().enumerate() {
            if row.len() != m {
                return Err(Error::NotRectangular { row: i, len: row.len(), expected: m });
            }
            for (j, &v) in row.iter().enumerate() {
                check_entry(i, j, v)?;
            }
            dist.extend(row);
        }
        Ok(Self {
            client_labels: (0..sites).map(|i| format!("c{i}")).collect(),
            multiplicity: vec![1; sites],
            facility_labels: (0..m).map(|j| format!("f{j}")).collect(),
            dist,
            cross,
            n_clients: sites,
            provenance: None,
        })
    }
}

/// Builds an instance from a client-by-facility matrix and, optionally, the full
/// distance matrix over clients followed by facilities.
///
/// When `cross` is given it must agree with `dist`, be symmetric with a zero
/// diagonal and satisfy the triangle inequality within [`DEFAULT_METRIC_TOL`].
pub fn build_from_matrix(dist: Vec<Vec<f64>>, cross: Option<Vec<Vec<f64>>>) -> Result<MetricInstance> {
    let cross = cross.map(CrossMatrix::from_rows).transpose()?;
    let inst = MetricInstance::assemble(dist, cross)?;
    if let Some(cross) = &inst.cross {
        let expected = inst.n_sites() + inst.m_facilities();
        if cross.size() != expected {
            return Err(Error::NotRectangular { row: 0, len: cross.size(), expected });
        }
        for s in 0..inst.n_sites() {
            for f in 0..inst.m_facilities() {
                let c = cross.get(s, inst.facility_point(f));
                let d = inst.distance(s, f);
                if (c - d).abs() > DEFAULT_METRIC_TOL * d.max(1.0) {
                    return Err(Error::CrossMismatch { client: s, facility: f });
                }
            }
        }
        if let Some(v) = validate_cross(cross, DEFAULT_METRIC_TOL).into_iter().next() {
            return Err(v.into_error());
        }
    }
    Ok(inst)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Norm {
    #[serde(rename = "1")]
    L1,
    #[serde(rename = "2")]
    L2,
    #[serde(rename = "inf")]
    Inf,
}

impl Norm {
    pub fn distance(self, a: &[f64], b: &[f64]) -> f64 {
        let diffs = a.iter().zip(b).map(|(x, y)| (x - y).abs());
        match self {
            Norm::L1 => diffs.sum(),
            Norm::L2 => diffs.map(|d| d * d).sum::<f64>().sqrt(),
            Norm::Inf => diffs.fold(0.0, f64::max),
        }
    }
}

impl std::str::FromStr for Norm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "1" | "l1" => Ok(Norm::L1),
            "2" | "l2" => Ok(Norm::L2),
            "inf" | "infinity" | "linf" => Ok(Norm::Inf),
            other => Err(Error::UnsupportedNorm(other.to_string())),
        }
    }
}

/// Builds an instance from coordinates. The cross matrix is always populated.
pub fn build_from_points(
    client_points: &[Vec<f64>],
    facility_points: &[Vec<f64>],
    norm: Norm,
) -> Result<MetricInstance> {
    let dim = client_points.first().or(facility_points.first()).map(Vec::len).ok_or(Error::EmptyInstance)?;
    let all: Vec<&Vec<f64>> = client_points.iter().chain(facility_points).collect();
    for p in &all {
        if p.len() != dim {
            return Err(Error::DimensionMismatch { expected: dim, found: p.len() });
        }
        if let Some(i) = p.iter().position(|v| !v.is_finite()) {
            return Err(Error::NonFinite { row: 0, col: i });
        }
    }
    let n = client_points.len();
    let dist = client_points.iter().map(|c| facility_points.iter().map(|f| norm.distance(c, f)).collect()).collect();
    let cross = CrossMatrix::from_fn(all.len(), |i, j| if i == j { 0.0 } else { norm.distance(all[i], all[j]) });
    debug_assert_eq!(cross.size(), n + facility_points.len());
    MetricInstance::assemble(dist, Some(cross))
}

/// In-place Floyd-Warshall closure of a row-major `size x size` matrix.
/// Missing edges are `f64::INFINITY`.
pub fn shortest_path_closure(size: usize, d: &mut [f64]) {
    assert_eq!(d.len(), size * size);
    for via in 0..size {
        for i in 0..size {
            let d_iv = d[i * size + via];
            if d_iv == f64::INFINITY {
                continue;
            }
            for j in 0..size {
                let alt = d_iv + d[via * size + j];
                if alt < d[i * size + j] {
                    d[i * size + j] = alt;
                }
            }
        }
    }
}

/// An undirected weighted edge between two named vertices.
pub type WeightedEdge = (String, String, f64);

/// Builds an instance from the shortest-path metric of an undirected graph.
///
/// Repeated client ids collapse into one site with a higher multiplicity;
/// repeated facility ids stay distinct facilities.
pub fn build_from_graph(
    vertices: &[String],
    edges: &[WeightedEdge],
    client_ids: &[String],
    facility_ids: &[String],
) -> Result<MetricInstance> {
    let index: HashMap<&str, usize> = vertices.iter().enumerate().map(|(i, v)| (v.as_str(), i)).collect();
    let lookup = |v: &str| index.get(v).copied().ok_or_else(|| Error::UnknownVertex(v.to_string()));

    let size = vertices.len();
    let mut d = vec![f64::INFINITY; size * size];
    for i in 0..size {
        d[i * size + i] = 0.0;
    }
    for (a, b, w) in edges {
        if !(w.is_finite() && *w > 0.0) {
            return Err(Error::NonPositiveWeight { from: a.clone(), to: b.clone(), weight: *w });
        }
        let (i, j) = (lookup(a)?, lookup(b)?);
        if *w < d[i * size + j] {
            d[i * size + j] = *w;
            d[j * size + i] = *w;
        }
    }
    shortest_path_closure(size, &mut d);

    let mut site_vertex: Vec<usize> = Vec::new();
    let mut multiplicity: Vec<usize> = Vec::new();
    for id in client_ids {
        let v = lookup(id)?;
        match site_vertex.iter().position(|&s| s == v) {
            Some(pos) => multiplicity[pos] += 1,
            None => {
                site_vertex.push(v);
                multiplicity.push(1);
            }
        }
    }
    let facility_vertex = facility_ids.iter().map(|id| lookup(id)).collect::<Result<Vec<_>>>()?;
    let points: Vec<usize> = site_vertex.iter().chain(&facility_vertex).copied().collect();
    for (a, &pa) in points.iter().enumerate() {
        for &pb in &points[a + 1..] {
            if d[pa * size + pb] == f64::INFINITY {
                return Err(Error::DisconnectedGraph { from: vertices[pa].clone(), to: vertices[pb].clone() });
            }
        }
    }

    let dist = site_vertex.iter().map(|&s| facility_vertex.iter().map(|&f| d[s * size + f]).collect()).collect();
    let cross = CrossMatrix::from_fn(points.len(), |i, j| d[points[i] * size + points[j]]);
    let clients = site_vertex.iter().map(|&v| vertices[v].clone()).collect();
    let facilities = facility_vertex.iter().map(|&v| vertices[v].clone()).collect();
    MetricInstance::assemble(dist, Some(cross))?.with_multiplicity(multiplicity)?.with_labels(clients, facilities)
}

/// A single failure of the metric axioms, in cross-matrix point indices.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Violation {
    NonZeroDiagonal {
        x: usize,
        value: f64,
    },
    Asymmetric {
        x: usize,
        y: usize,
        forward: f64,
        backward: f64,
    },
    /// `d(x, z) > d(x, y) + d(y, z)`; `slack` is the excess.
    Triangle {
        x: usize,
        y: usize,
        z: usize,
        slack: f64,
    },
}

impl Violation {
    fn into_error(self) -> Error {
        match self {
            Violation::NonZeroDiagonal { x, value } => Error::NonZeroDiagonal { x, value },
            Violation::Asymmetric { x, y, forward, backward } => Error::AsymmetricCross { x, y, forward, backward },
            Violation::Triangle { x, y, z, slack } => Error::TriangleViolation { x, y, z, slack },
        }
    }
}

/// Lists every metric violation of the instance's cross matrix.
///
/// A deviation counts only when it exceeds `tol * max(1, s)` where `s` is the
/// largest distance involved.
pub fn validate_metric(instance: &MetricInstance, tol: f64) -> Result<Vec<Violation>> {
    let cross = instance.cross().ok_or(Error::MissingCrossDistances)?;
    Ok(validate_cross(cross, tol))
}

fn validate_cross(cross: &CrossMatrix, tol: f64) -> Vec<Violation> {
    let n = cross.size();
    let allowed = |scale: f64| tol * scale.max(1.0);
    let mut out = Vec::new();
    for x in 0..n {
        let value = cross.get(x, x);
        if value > allowed(0.0) {
            out.push(Violation::NonZeroDiagonal { x, value });
        }
        for y in x + 1..n {
            let (forward, backward) = (cross.get(x, y), cross.get(y, x));
            if (forward - backward).abs() > allowed(forward.max(backward)) {
                out.push(Violation::Asymmetric { x, y, forward, backward });
            }
        }
    }
    // With asymmetry reported above, triangles are checked on the upper triangle.
    let sym = |a: usize, b: usize| if a < b { cross.get(a, b) } else { cross.get(b, a) };
    for x in 0..n {
        for z in x + 1..n {
            let dxz = sym(x, z);
            for y in 0..n {
                if y == x || y == z {
                    continue;
                }
                let (dxy, dyz) = (sym(x, y), sym(y, z));
                let slack = dxz - (dxy + dyz);
                if slack > allowed(dxz.max(dxy).max(dyz)) {
                    out.push(Violation::Triangle { x, y, z, slack });
                }
            }
        }
    }
    out
}

/// Sorted, distinct centrum indices `k_1 < ... < k_q`, each in `[1, n]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
#[serde(transparent)]
pub struct ObjectiveSet(Vec<usize>);

impl ObjectiveSet {
    /// Validates `ks` against an instance with `n_clients` clients. The input
    /// must already be strictly increasing.
    pub fn new(ks: Vec<usize>, n_clients: usize) -> Result<Self> {
        if ks.is_empty() || ks.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::BadObjectiveSet);
        }
        if let Some(&k) = ks.iter().find(|&&k| k == 0 || k > n_clients) {
            return Err(Error::KOutOfRange { k, n: n_clients });
        }
        Ok(Self(ks))
    }

    /// Like [`ObjectiveSet::new`] but sorts and deduplicates first.
    pub fn from_unsorted(mut ks: Vec<usize>, n_clients: usize) -> Result<Self> {
        ks.sort_unstable();
        ks.dedup();
        Self::new(ks, n_clients)
    }

    pub fn ks(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn largest(&self) -> usize {
        *self.0.last().expect("objective sets are nonempty")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(v: &str) -> String {
        v.to_string()
    }

    #[test]
    fn single_entry_matrix() {
        let inst = build_from_matrix(vec![vec![0.0]], None).unwrap();
        assert_eq!((inst.n_clients(), inst.m_facilities()), (1, 1));
        assert!(!inst.is_metric_verified());
    }

    #[test]
    fn rejects_bad_entries() {
        assert!(matches!(build_from_matrix(vec![vec![-1.0]], None), Err(Error::NegativeDistance { .. })));
        assert!(matches!(build_from_matrix(vec![vec![f64::NAN]], None), Err(Error::NonFinite { .. })));
        assert!(matches!(
            build_from_matrix(vec![vec![1.0, 2.0], vec![1.0]], None),
            Err(Error::NotRectangular { row: 1, .. })
        ));
        assert!(matches!(build_from_matrix(vec![], None), Err(Error::EmptyInstance)));
    }

    #[test]
    fn triangle_violation_in_cross() {
        // points x (client), y, z (facilities): d(x,z) = 5 > d(x,y) + d(y,z) = 2
        let cross = vec![vec![0.0, 1.0, 5.0], vec![1.0, 0.0, 1.0], vec![5.0, 1.0, 0.0]];
        let err = build_from_matrix(vec![vec![1.0, 5.0]], Some(cross)).unwrap_err();
        match err {
            Error::TriangleViolation { x: 0, y: 1, z: 2, slack } => assert!((slack - 3.0).abs() < 1e-12),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn asymmetric_and_mismatched_cross() {
        let cross = vec![vec![0.0, 1.0], vec![2.0, 0.0]];
        assert!(matches!(build_from_matrix(vec![vec![1.0]], Some(cross)), Err(Error::AsymmetricCross { .. })));
        let cross = vec![vec![0.0, 1.0], vec![1.0, 0.0]];
        assert!(matches!(build_from_matrix(vec![vec![3.0]], Some(cross)), Err(Error::CrossMismatch { .. })));
    }

    #[test]
    fn points_euclidean_and_manhattan() {
        let inst = build_from_points(&[vec![0.0]], &[vec![3.0]], Norm::L2).unwrap();
        assert_eq!(inst.distance(0, 0), 3.0);

        let inst = build_from_points(&[vec![0.0, 0.0], vec![1.0, 0.0]], &[vec![0.0, 1.0]], Norm::L2).unwrap();
        assert_eq!(inst.distance(0, 0), 1.0);
        assert!((inst.distance(1, 0) - 2f64.sqrt()).abs() < 1e-15);

        let inst = build_from_points(&[vec![0.0, 0.0]], &[vec![1.0, 1.0]], Norm::L1).unwrap();
        assert_eq!(inst.distance(0, 0), 2.0);
        let inst = build_from_points(&[vec![0.0, 0.0]], &[vec![1.0, -3.0]], Norm::Inf).unwrap();
        assert_eq!(inst.distance(0, 0), 3.0);

        assert!(matches!(
            build_from_points(&[vec![0.0, 0.0]], &[vec![1.0]], Norm::L2),
            Err(Error::DimensionMismatch { expected: 2, found: 1 })
        ));
    }

    #[test]
    fn graph_path_closure() {
        let v = vec![s("A"), s("B"), s("C")];
        let e = vec![(s("A"), s("B"), 1.0), (s("B"), s("C"), 1.0)];
        let inst = build_from_graph(&v, &e, &[s("A")], &[s("C")]).unwrap();
        assert_eq!(inst.distance(0, 0), 2.0);
        assert!(validate_metric(&inst, 1e-9).unwrap().is_empty());
    }

    #[test]
    fn graph_single_vertex() {
        let inst = build_from_graph(&[s("X")], &[], &[s("X")], &[s("X")]).unwrap();
        assert_eq!(inst.dist_rows(), vec![vec![0.0]]);
    }

    #[test]
    fn graph_errors() {
        let v = vec![s("A"), s("B"), s("C")];
        let e = vec![(s("A"), s("B"), 1.0)];
        assert!(matches!(build_from_graph(&v, &e, &[s("A")], &[s("C")]), Err(Error::DisconnectedGraph { .. })));
        let e = vec![(s("A"), s("B"), 0.0)];
        assert!(matches!(build_from_graph(&v, &e, &[s("A")], &[s("B")]), Err(Error::NonPositiveWeight { .. })));
        assert!(matches!(build_from_graph(&v, &[], &[s("Q")], &[s("A")]), Err(Error::UnknownVertex(_))));
    }

    #[test]
    fn graph_merges_repeated_clients() {
        let v = vec![s("A"), s("B")];
        let e = vec![(s("A"), s("B"), 2.0)];
        let inst = build_from_graph(&v, &e, &[s("A"), s("B"), s("A")], &[s("B")]).unwrap();
        assert_eq!(inst.n_sites(), 2);
        assert_eq!(inst.n_clients(), 3);
        assert_eq!(inst.multiplicities(), &[2, 1]);
        assert_eq!(inst.client_distances(0), vec![2.0, 2.0, 0.0]);
    }

    #[test]
    fn validate_reports_slack() {
        let inst = build_from_points(&[vec![0.0]], &[vec![1.0]], Norm::L2).unwrap();
        assert!(validate_metric(&inst, 1e-9).unwrap().is_empty());

        // equilateral
        let eq = CrossMatrix::from_rows(vec![vec![0.0, 1.0, 1.0], vec![1.0, 0.0, 1.0], vec![1.0, 1.0, 0.0]]).unwrap();
        assert!(validate_cross(&eq, 1e-9).is_empty());

        // (1, 1, 2.001): one violating triangle, slack 1e-3
        let bad =
            CrossMatrix::from_rows(vec![vec![0.0, 1.0, 2.001], vec![1.0, 0.0, 1.0], vec![2.001, 1.0, 0.0]]).unwrap();
        let v = validate_cross(&bad, 1e-9);
        assert_eq!(v.len(), 1);
        match v[0] {
            Violation::Triangle { x: 0, y: 1, z: 2, slack } => assert!((slack - 1e-3).abs() < 1e-12),
            ref other => panic!("unexpected {other:?}"),
        }

        let unverified = build_from_matrix(vec![vec![1.0]], None).unwrap();
        assert!(matches!(validate_metric(&unverified, 1e-9), Err(Error::MissingCrossDistances)));
    }

    #[test]
    fn closure_is_idempotent_on_a_metric() {
        let inst = build_from_points(
            &[vec![0.0, 0.0], vec![2.0, 1.0], vec![0.5, 3.0]],
            &[vec![1.0, 1.0], vec![4.0, 0.0]],
            Norm::L2,
        )
        .unwrap();
        let cross = inst.cross().unwrap();
        let mut d = cross.data.clone();
        shortest_path_closure(cross.size(), &mut d);
        for (a, b) in d.iter().zip(&cross.data) {
            assert!((a - b).abs() <= 1e-12 * b.max(1.0));
        }
    }

    #[test]
    fn multiplicity_and_labels_checked() {
        let inst = build_from_matrix(vec![vec![1.0], vec![2.0]], None).unwrap();
        assert!(inst.clone().with_multiplicity(vec![1]).is_err());
        assert!(inst.clone().with_multiplicity(vec![1, 0]).is_err());
        let inst = inst.with_multiplicity(vec![3, 2]).unwrap();
        assert_eq!(inst.n_clients(), 5);
        assert!(inst.clone().with_labels(vec![s("a")], vec![s("f")]).is_err());
        let inst = inst.with_labels(vec![s("a"), s("b")], vec![s("f")]).unwrap();
        assert_eq!(inst.facility_label(0), "f");
    }

    #[test]
    fn objective_set_rules() {
        assert_eq!(ObjectiveSet::new(vec![1, 5, 20], 20).unwrap().ks(), &[1, 5, 20]);
        assert!(matches!(ObjectiveSet::new(vec![], 3), Err(Error::BadObjectiveSet)));
        assert!(matches!(ObjectiveSet::new(vec![2, 2], 3), Err(Error::BadObjectiveSet)));
        assert!(matches!(ObjectiveSet::new(vec![3, 1], 3), Err(Error::BadObjectiveSet)));
        assert!(matches!(ObjectiveSet::new(vec![1, 4], 3), Err(Error::KOutOfRange { k: 4, n: 3 })));
        assert!(matches!(ObjectiveSet::new(vec![0], 3), Err(Error::KOutOfRange { k: 0, .. })));
        assert_eq!(ObjectiveSet::from_unsorted(vec![3, 1, 3], 3).unwrap().ks(), &[1, 3]);
    }

    #[test]
    fn norm_parsing() {
        assert_eq!("2".parse::<Norm>().unwrap(), Norm::L2);
        assert_eq!("inf".parse::<Norm>().unwrap(), Norm::Inf);
        assert!("3".parse::<Norm>().is_err());
    }
}
