//! Worst-case constructions for the pair and triple bounds, and seeded random
//! instances for sweeps.
//!
//! Random generators draw from ChaCha8 seeded with `seed_from_u64`, so a seed and
//! parameter set reproduce the same instance on every platform. Each generated
//! instance carries a `provenance` block naming the family, parameters, seed,
//! generator and derived constants.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use crate::bounds::pair_bound_f;
use crate::error::{Error, Result};
use crate::metric::{build_from_graph, build_from_matrix, build_from_points, MetricInstance, Norm, WeightedEdge};

/// Name recorded in provenance for the random generators.
pub const RNG_NAME: &str = "chacha8 (rand_chacha 0.3, seed_from_u64)";

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn sqrt5() -> f64 {
    5f64.sqrt()
}

/// Points on a line: `k` clients at `A`, `p - k` at `B`, facilities `O_k`, `O_p`.
///
/// ```text
///  A ---1--- O_k ---1--- B --delta-- O_p
/// ```
///
/// with `delta = f(p/k) - 2`, so both optima are a `f(p/k)` approximation for the
/// other objective. Requires `p > 4k`.
pub fn gen_tight_pair_line(k: usize, p: usize) -> Result<MetricInstance> {
    if k == 0 || p <= k {
        return Err(Error::BadObjectivePair { k, p, n: p });
    }
    if p <= 4 * k {
        return Err(Error::RatioTooSmall { k, p });
    }
    let beta = pair_bound_f(p as f64 / k as f64)?;
    let delta = beta - 2.0;
    // coordinates: A, B, O_k, O_p
    let coords = [0.0, 2.0, 1.0, 2.0 + delta];
    let points: Vec<Vec<f64>> = coords.iter().map(|&c| vec![c]).collect();
    let inst = build_from_points(&points[..2], &points[2..], Norm::L2)?;
    inst.with_multiplicity(vec![k, p - k])?
        .with_labels(vec!["A".into(), "B".into()], vec!["O_k".into(), "O_p".into()])
        .map(|i| {
            i.with_provenance(json!({
                "family": "pair_line",
                "params": { "k": k, "p": p },
                "constants": { "beta": beta, "delta": delta, "beta_definition": "f(p/k)", "delta_definition": "beta - 2" },
            }))
        })
}

/// Three points: `k` clients at `A`, `p - k` clients on facility `O_p`, with
/// `d(O_p, O_k) = d(O_k, A) = 1` and `d(O_p, A) = sqrt(p/k)`. Requires
/// `k < p <= 4k`, which keeps the triangle inequality intact.
pub fn gen_tight_pair_triangle(k: usize, p: usize) -> Result<MetricInstance> {
    if k == 0 || p <= k {
        return Err(Error::BadObjectivePair { k, p, n: p });
    }
    if p > 4 * k {
        return Err(Error::RatioTooLarge { k, p });
    }
    let root = (p as f64 / k as f64).sqrt();
    // points: A, S (clients colocated with O_p), O_k, O_p
    let cross = vec![
        vec![0.0, root, 1.0, root],
        vec![root, 0.0, 1.0, 0.0],
        vec![1.0, 1.0, 0.0, 1.0],
        vec![root, 0.0, 1.0, 0.0],
    ];
    let dist = vec![vec![1.0, root], vec![1.0, 0.0]];
    build_from_matrix(dist, Some(cross))?
        .with_multiplicity(vec![k, p - k])?
        .with_labels(vec!["A".into(), "O_p".into()], vec!["O_k".into(), "O_p".into()])
        .map(|i| {
            i.with_provenance(json!({
                "family": "pair_triangle",
                "params": { "k": k, "p": p },
                "constants": { "beta": root, "beta_definition": "sqrt(p/k)" },
            }))
        })
}

/// Edge list of the three-objective construction over vertices
/// `A, B, C, O_1, O_k, O_n`.
pub fn triple_edges() -> Vec<WeightedEdge> {
    let golden_minus = 0.5 * (sqrt5() - 1.0);
    let e = |a: &str, b: &str, w: f64| (a.to_string(), b.to_string(), w);
    vec![
        e("O_k", "C", golden_minus),
        e("O_k", "B", golden_minus),
        e("C", "O_n", 0.5 * (3.0 - sqrt5())),
        e("O_n", "O_1", golden_minus),
        e("A", "O_1", 1.0),
        e("O_1", "B", 1.0),
        e("B", "O_n", 0.5 * (1.0 + sqrt5())),
        e("B", "C", sqrt5() - 1.0),
        e("B", "A", 2.0),
    ]
}

/// Graph metric with one client at `A`, `k - 1` at `B`, `n - k` at `C` and
/// facilities `O_1, O_k, O_n`, for objectives `{1, k, n}`.
///
/// Every facility is worse than `(3 + sqrt 5) / 2` for some objective only in
/// the limit `k -> inf`, `n / k -> inf`; finite sizes stay strictly below it.
pub fn gen_tight_triple(k: usize, n: usize) -> Result<MetricInstance> {
    if !(1 < k && k < n) {
        return Err(Error::BadKN { k, n });
    }
    let vertices: Vec<String> = ["A", "B", "C", "O_1", "O_k", "O_n"].iter().map(|s| s.to_string()).collect();
    let clients: Vec<String> = vertices[..3].to_vec();
    let facilities: Vec<String> = vertices[3..].to_vec();
    let inst = build_from_graph(&vertices, &triple_edges(), &clients, &facilities)?;
    Ok(inst.with_multiplicity(vec![1, k - 1, n - k])?.with_provenance(json!({
        "family": "triple",
        "params": { "k": k, "n": n },
        "constants": {
            "beta_3": 0.5 * (3.0 + sqrt5()),
            "beta_3_definition": "(3 + sqrt 5) / 2",
            "multiplicity": { "A": 1, "B": "k - 1", "C": "n - k" },
        },
    })))
}

/// Uniform points in the unit cube, Euclidean distances. With `shared`, the
/// facilities are exactly the client points and `m_facilities` is ignored.
pub fn gen_random_euclidean(
    n_clients: usize,
    m_facilities: usize,
    dim: usize,
    seed: u64,
    shared: bool,
) -> Result<MetricInstance> {
    if n_clients == 0 || dim == 0 || (!shared && m_facilities == 0) {
        return Err(Error::BadParams(format!(
            "need n_clients, m_facilities, dim >= 1 (got {n_clients}, {m_facilities}, {dim})"
        )));
    }
    let mut rng = rng(seed);
    let mut draw =
        |count: usize| -> Vec<Vec<f64>> { (0..count).map(|_| (0..dim).map(|_| rng.gen::<f64>()).collect()).collect() };
    let clients = draw(n_clients);
    let facilities = if shared { clients.clone() } else { draw(m_facilities) };
    let inst = build_from_points(&clients, &facilities, Norm::L2)?;
    Ok(inst.with_provenance(json!({
        "family": "euclid",
        "params": { "n_clients": n_clients, "m_facilities": facilities.len(), "dim": dim, "shared": shared },
        "seed": seed,
        "generator": RNG_NAME,
    })))
}

/// Shortest-path metric of a random graph on `n_vertices` vertices named `v0..`.
///
/// Each vertex pair becomes an edge with probability `edge_density`, weight
/// uniform in `(0, 1]`. Disconnected samples are redrawn from the same stream.
pub fn gen_random_graph_metric(
    n_vertices: usize,
    edge_density: f64,
    seed: u64,
    client_ids: &[usize],
    facility_ids: &[usize],
) -> Result<MetricInstance> {
    if n_vertices == 0 || !(edge_density > 0.0 && edge_density <= 1.0) {
        return Err(Error::BadParams(format!("n_vertices = {n_vertices}, edge_density = {edge_density}")));
    }
    if client_ids.is_empty() || facility_ids.is_empty() {
        return Err(Error::BadParams("need at least one client and one facility".into()));
    }
    if let Some(v) = client_ids.iter().chain(facility_ids).find(|&&v| v >= n_vertices) {
        return Err(Error::BadParams(format!("vertex {v} out of range")));
    }
    const MAX_ATTEMPTS: usize = 10_000;
    let names: Vec<String> = (0..n_vertices).map(|i| format!("v{i}")).collect();
    let mut rng = rng(seed);
    for attempt in 0..MAX_ATTEMPTS {
        let mut edges = Vec::new();
        for i in 0..n_vertices {
            for j in i + 1..n_vertices {
                if edge_density >= 1.0 || rng.gen::<f64>() < edge_density {
                    let w = 1.0 - rng.gen::<f64>();
                    edges.push((names[i].clone(), names[j].clone(), w));
                }
            }
        }
        if !is_connected(n_vertices, &edges, &names) {
            continue;
        }
        let clients: Vec<String> = client_ids.iter().map(|&i| names[i].clone()).collect();
        let facilities: Vec<String> = facility_ids.iter().map(|&i| names[i].clone()).collect();
        let inst = build_from_graph(&names, &edges, &clients, &facilities)?;
        return Ok(inst.with_provenance(json!({
            "family": "graph",
            "params": {
                "n_vertices": n_vertices,
                "edge_density": edge_density,
                "clients": client_ids,
                "facilities": facility_ids,
            },
            "seed": seed,
            "attempts": attempt + 1,
            "generator": RNG_NAME,
        })));
    }
    Err(Error::BadParams(format!("no connected sample after {MAX_ATTEMPTS} attempts")))
}

fn is_connected(n: usize, edges: &[WeightedEdge], names: &[String]) -> bool {
    let index = |s: &str| names.iter().position(|x| x == s).expect("known vertex");
    let mut adj = vec![Vec::new(); n];
    for (a, b, _) in edges {
        let (i, j) = (index(a), index(b));
        adj[i].push(j);
        adj[j].push(i);
    }
    let mut seen = vec![false; n];
    let mut stack = vec![0];
    seen[0] = true;
    while let Some(v) = stack.pop() {
        for &w in &adj[v] {
            if !seen[w] {
                seen[w] = true;
                stack.push(w);
            }
        }
    }
    seen.into_iter().all(|s| s)
}

/// Picks `count` distinct vertices out of `0..n` with `rng`, sorted.
pub fn sample_vertices(rng: &mut impl Rng, n: usize, count: usize) -> Vec<usize> {
    let mut all: Vec<usize> = (0..n).collect();
    all.shuffle(rng);
    let mut out: Vec<usize> = all.into_iter().take(count).collect();
    out.sort_unstable();
    out
}
