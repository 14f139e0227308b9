//! Simultaneous approximation of l-centrum objectives for single-facility location.
//!
//! An instance is a finite metric with clients and candidate facilities. For an
//! objective `k`, the cost of a facility is the sum of its `k` largest client
//! distances. The crate computes these costs, the ratio of every facility to
//! every objective's optimum, proved bounds on what one facility can guarantee
//! for several objectives at once, and selection rules that achieve them.

pub mod bounds;
pub mod centrum;
pub mod error;
pub mod generate;
pub mod io;
pub mod metric;
pub mod selection;
pub mod verify;

pub use bounds::{beta_q, pair_bound_f, pair_bound_shared, BoundKind, BoundValue, DEFAULT_BETA_TOL};
pub use centrum::{approx_ratio, centrum_cost, optimal_facility, ratio_graph, CostProfile, Optimum, RatioGraph};
pub use error::{Error, Result};
pub use io::{instance_to_json, load_instance, parse_instance_csv, parse_instance_json};
pub use metric::{
    build_from_graph, build_from_matrix, build_from_points, validate_metric, MetricInstance, Norm, ObjectiveSet,
    Violation, DEFAULT_METRIC_TOL,
};
pub use selection::{select, Guarantee, Method, SelectionResult};
pub use verify::{check_inequalities, emit_bound_curves, sweep_multi, sweep_pair, VerificationReport};
