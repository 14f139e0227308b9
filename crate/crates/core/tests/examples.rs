use centrum::generate::{gen_random_euclidean, gen_tight_pair_line, gen_tight_pair_triangle, gen_tight_triple};
use centrum::selection::{select_exhaustive, select_largest_objective, select_multi_graph, select_pair};
use centrum::verify::{check_inequalities, sweep_multi, sweep_pair, triple_tally, MultiConfig, SweepConfig};
use centrum::{beta_q, pair_bound_f, ratio_graph, ObjectiveSet, DEFAULT_BETA_TOL};

const PHI: f64 = 1.618_033_988_749_895;

/// Closed-form ratios on the three-objective construction. Shortest-path
/// distances from the facilities to A, B and C:
/// O_1: 1, 1, 1; O_k: phi^2, 1/phi, 1/phi; O_n: phi, phi, 1/phi^2.
/// Returns the maximum outgoing ratio of O_1, O_k and O_n.
fn triple_oracle(k: f64, n: f64) -> [f64; 3] {
    let (inv, inv2, sq) = (PHI - 1.0, 2.0 - PHI, PHI + 1.0);
    let c = |d: [f64; 3], j: f64| {
        // clients: 1 at A, k-1 at B, n-k at C; take the j farthest
        let mut groups = [(d[0], 1.0), (d[1], k - 1.0), (d[2], n - k)];
        groups.sort_by(|a, b| b.0.total_cmp(&a.0));
        let mut left = j;
        let mut sum = 0.0;
        for (dist, count) in groups {
            let take = count.min(left);
            sum += dist * take;
            left -= take;
        }
        sum
    };
    let facilities = [[1.0, 1.0, 1.0], [sq, inv, inv], [PHI, PHI, inv2]];
    let js = [1.0, k, n];
    let opt: Vec<f64> = js.iter().map(|&j| facilities.iter().map(|&f| c(f, j)).fold(f64::INFINITY, f64::min)).collect();
    let mut out = [0.0; 3];
    for (i, f) in facilities.iter().enumerate() {
        out[i] = (0..3).map(|j| c(*f, js[j]) / opt[j]).fold(0.0, f64::max);
    }
    out
}

#[test]
fn triple_matches_closed_form() {
    for &(k, n) in &[(10usize, 1000usize), (100, 10_000), (10_000, 1_000_000)] {
        let inst = gen_tight_triple(k, n).unwrap();
        let g = ratio_graph(&inst, &ObjectiveSet::new(vec![1, k, n], n).unwrap()).unwrap();
        let oracle = triple_oracle(k as f64, n as f64);
        for (i, o) in oracle.iter().enumerate() {
            assert!((g.max_outgoing(i) - o).abs() < 1e-9, "k={k} n={n} node {i}");
        }
    }
}

#[test]
fn triple_approaches_beta3_only_as_n_over_k_grows() {
    let b3 = beta_q(3, DEFAULT_BETA_TOL).unwrap();
    let deviation = |k: usize, n: usize| {
        let t = triple_tally(k, n, 1e-9).unwrap();
        assert_eq!(t.violations(), 0);
        let inst = gen_tight_triple(k, n).unwrap();
        let g = ratio_graph(&inst, &ObjectiveSet::new(vec![1, k, n], n).unwrap()).unwrap();
        (0..3).map(|i| b3 - g.max_outgoing(i)).fold(0.0, f64::max)
    };
    let at_1e6 = deviation(10_000, 1_000_000);
    let at_1e8 = deviation(10_000, 100_000_000);
    let at_1e10 = deviation(100_000, 10_000_000_000);
    // every node stays at or below beta_3
    assert!(at_1e6 >= -1e-12 && at_1e8 >= -1e-12 && at_1e10 >= -1e-12);
    assert!(at_1e6 > 0.08 && at_1e6 < 0.09);
    assert!(at_1e8 < 1e-3);
    assert!(at_1e10 < 1e-4);
}

#[test]
fn triple_selection_rules() {
    let (k, n) = (10_000, 1_000_000);
    let inst = gen_tight_triple(k, n).unwrap();
    let ks = ObjectiveSet::new(vec![1, k, n], n).unwrap();
    let largest = select_largest_objective(&inst, &ks).unwrap();
    assert_eq!(largest.label, "O_n");
    assert!((largest.ratios[0] - PHI).abs() < 1e-12);
    let graph = select_multi_graph(&inst, &ks).unwrap();
    let oracle = triple_oracle(k as f64, n as f64);
    assert_eq!(graph.label, "O_1");
    assert!((graph.worst_ratio - oracle[0]).abs() < 1e-9);
    assert!(select_exhaustive(&inst, &ks).unwrap().worst_ratio <= graph.worst_ratio);
}

#[test]
fn pair_constructions_are_tight() {
    for &(k, p) in &[(1, 5), (3, 20), (1, 1000), (2, 3), (5, 17), (1, 4)] {
        let inst = if p > 4 * k { gen_tight_pair_line(k, p) } else { gen_tight_pair_triangle(k, p) }.unwrap();
        let r = select_pair(&inst, k, p).unwrap();
        let f = pair_bound_f(p as f64 / k as f64).unwrap();
        assert!((r.worst_ratio - f).abs() < 1e-9, "k={k} p={p}");
        let t = check_inequalities(&inst, &ObjectiveSet::new(vec![k, p], p).unwrap(), 1e-9, "tight").unwrap();
        assert_eq!(t.violations(), 0);
        if 2 * k <= p {
            assert_eq!(t.check("cross_ratio_refined").unwrap().evaluations, 1);
        }
    }
}

#[test]
fn random_euclidean_within_beta3() {
    let inst = gen_random_euclidean(20, 20, 2, 2024, false).unwrap();
    let ks = ObjectiveSet::new(vec![1, 5, 20], 20).unwrap();
    let r = select_multi_graph(&inst, &ks).unwrap();
    assert!(r.worst_ratio <= beta_q(3, DEFAULT_BETA_TOL).unwrap() + 1e-9);
    assert_eq!(r.guarantee.value(), Some(beta_q(3, DEFAULT_BETA_TOL).unwrap()));
}

#[test]
fn shared_locations_stay_below_two() {
    for seed in 0..20 {
        let inst = gen_random_euclidean(30, 0, 2, seed, true).unwrap();
        for (k, p) in [(1, 10), (2, 30), (1, 30), (5, 21)] {
            let r = select_exhaustive(&inst, &ObjectiveSet::new(vec![k, p], 30).unwrap()).unwrap();
            assert!(r.worst_ratio <= 2.0 + 1e-9);
        }
    }
}

#[test]
fn pair_sweep_witnesses_tightness() {
    let config = SweepConfig { instances: 40, max_clients: 60, max_facilities: 15, ..SweepConfig::default() };
    let report = sweep_pair(&config).unwrap();
    assert!(report.passed);
    assert_eq!(report.check("pair_tight_witness").unwrap().violations, 0);
    // the tight instances reach the bound in their buckets
    let reached = report.bounds_with_prefix("pair_f/").filter(|b| b.min_gap.unwrap() <= 1e-9).count();
    assert!(reached >= 6, "{reached}");
    let near_one = report.bound("pair_f/0 [1,1.5)").unwrap();
    assert!(near_one.max_observed.unwrap() <= 1.5f64.sqrt() + 1e-9);
}

#[test]
fn shared_sweep_above_four_stays_at_two() {
    let config =
        SweepConfig { instances: 30, max_clients: 60, shared: true, include_tight: false, ..SweepConfig::default() };
    let report = sweep_pair(&config).unwrap();
    assert!(report.passed);
    for b in report.bounds_with_prefix("pair_shared/").filter(|b| b.name.as_bytes()[12] >= b'4') {
        assert!(b.max_observed.unwrap() <= 2.0 + 1e-9, "{}", b.name);
    }
}

#[test]
fn multi_sweeps_respect_beta() {
    for q in [2, 3, 5] {
        let mut config = MultiConfig::new(SweepConfig { instances: 30, max_clients: 60, ..SweepConfig::default() }, q);
        config.triple_sizes = vec![(100, 10_000)];
        let report = sweep_multi(&config).unwrap();
        assert!(report.passed, "q={q}");
        let b = report.bound(&format!("multi_graph_beta_{q}")).unwrap();
        assert!(b.max_observed.unwrap() <= beta_q(q, DEFAULT_BETA_TOL).unwrap() + 1e-9);
        assert!(report.bound("oracle_gap").unwrap().max_observed.unwrap() >= 0.0);
        assert_eq!(report.check("oracle_dominance").unwrap().violations, 0);
    }
}

#[test]
fn reports_do_not_depend_on_thread_count() {
    let config = SweepConfig { instances: 12, max_clients: 40, ..SweepConfig::default() };
    let a = serde_json::to_string(&sweep_pair(&config).unwrap()).unwrap();
    let pool = rayon::ThreadPoolBuilder::new().num_threads(1).build().unwrap();
    let b = pool.install(|| serde_json::to_string(&sweep_pair(&config).unwrap()).unwrap());
    assert_eq!(a, b);
}
