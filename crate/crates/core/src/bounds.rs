//! Closed-form and numerically solved simultaneous-approximation bounds.

use serde::Serialize;

use crate::error::{Error, Result};

/// `1 + sqrt(2)`: the two-objective bound as `p/k` grows without limit.
pub const ONE_PLUS_SQRT2: f64 = 1.0 + std::f64::consts::SQRT_2;

/// Default absolute residual tolerance for [`beta_q`].
pub const DEFAULT_BETA_TOL: f64 = 1e-12;

/// Bound delivered by picking the optimum of the largest objective.
pub const LARGEST_OBJECTIVE_BOUND: f64 = 3.0;

fn check_x(x: f64) -> Result<()> {
    if x.is_nan() || x < 1.0 {
        return Err(Error::XOutOfRange(x));
    }
    Ok(())
}

/// The `x > 4` formula `1 - 1/x + sqrt(1/x^2 - 2/x + 2)`, defined for any `x > 0`.
/// Written in powers of `1/x` so large `x` loses no precision.
pub fn pair_bound_f_tail(x: f64) -> f64 {
    let y = x.recip();
    1.0 - y + (y * y - 2.0 * y + 2.0).sqrt()
}

/// Tight bound on `min(alpha_k(O_p), alpha_p(O_k))` as a function of `x = p/k`:
/// `sqrt(x)` up to 4, then [`pair_bound_f_tail`].
pub fn pair_bound_f(x: f64) -> Result<f64> {
    check_x(x)?;
    Ok(if x <= 4.0 { x.sqrt() } else { pair_bound_f_tail(x) })
}

/// Two-objective bound when every client location is also a candidate facility.
pub fn pair_bound_shared(x: f64) -> Result<f64> {
    check_x(x)?;
    Ok(if x <= 4.0 { x.sqrt() } else { 2.0 })
}

/// `(beta - 2)^(q-1) * beta - 1`, increasing on `[1 + sqrt 2, 3)`.
pub fn beta_residual(q: usize, beta: f64) -> f64 {
    let base = beta - 2.0;
    let pow = match i32::try_from(q - 1) {
        Ok(e) => base.powi(e),
        Err(_) => base.powf((q - 1) as f64),
    };
    pow * beta - 1.0
}

/// The unique root of `(beta - 2)^(q-1) * beta = 1` in `[1 + sqrt 2, 3)`, by bisection.
///
/// Returns once `|residual| <= tol`; fails with [`Error::ToleranceUnreachable`]
/// if the bracket collapses to adjacent floats first.
pub fn beta_q(q: usize, tol: f64) -> Result<f64> {
    if q < 2 {
        return Err(Error::InvalidQ(q));
    }
    if !(tol.is_finite() && tol > 0.0) {
        return Err(Error::InvalidTol(tol));
    }
    let (mut lo, mut hi) = (ONE_PLUS_SQRT2, 3.0);
    let r_lo = beta_residual(q, lo);
    if r_lo.abs() <= tol {
        return Ok(lo);
    }
    let mut best = (lo, r_lo.abs());
    loop {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            return Err(Error::ToleranceUnreachable { residual: best.1, tol });
        }
        let r = beta_residual(q, mid);
        if r.abs() < best.1 {
            best = (mid, r.abs());
        }
        if r.abs() <= tol {
            return Ok(mid);
        }
        if r < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum BoundKind {
    /// `f(x)` for two objectives with `x = p/k`.
    PairF { x: f64 },
    /// `beta_q` for `q` objectives.
    BetaQ { q: usize },
    /// Shared client/facility locations, two objectives.
    PairShared { x: f64 },
    /// The constant 3 from choosing the largest objective's optimum.
    LargestObjective,
    /// A single objective: its own optimum is exact.
    SingleObjective,
}

/// A proved upper bound on a worst approximation ratio.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BoundValue {
    pub value: f64,
    #[serde(flatten)]
    pub kind: BoundKind,
    /// Whether a matching worst-case instance is known for every parameter value.
    /// `beta_q` is only ever reported as a guarantee.
    pub tight: bool,
}

impl BoundValue {
    pub fn pair_f(x: f64) -> Result<Self> {
        Ok(Self { value: pair_bound_f(x)?, kind: BoundKind::PairF { x }, tight: true })
    }

    pub fn pair_shared(x: f64) -> Result<Self> {
        Ok(Self { value: pair_bound_shared(x)?, kind: BoundKind::PairShared { x }, tight: true })
    }

    pub fn beta(q: usize) -> Result<Self> {
        Ok(Self { value: beta_q(q, DEFAULT_BETA_TOL)?, kind: BoundKind::BetaQ { q }, tight: false })
    }

    pub fn largest_objective() -> Self {
        Self { value: LARGEST_OBJECTIVE_BOUND, kind: BoundKind::LargestObjective, tight: false }
    }

    pub fn single_objective() -> Self {
        Self { value: 1.0, kind: BoundKind::SingleObjective, tight: true }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Independent oracle: scan a dense grid for the sign change of the residual,
    /// then refine with a finer grid inside the bracketing cell.
    fn beta_by_grid(q: usize) -> f64 {
        let (mut lo, mut hi) = (ONE_PLUS_SQRT2, 3.0);
        for _ in 0..6 {
            let steps = 1000;
            let h = (hi - lo) / steps as f64;
            let cell =
                (0..steps).find(|&i| beta_residual(q, lo + (i + 1) as f64 * h) >= 0.0).expect("sign change in bracket");
            let new_lo = lo + cell as f64 * h;
            hi = new_lo + h;
            lo = new_lo;
        }
        0.5 * (lo + hi)
    }

    #[test]
    fn f_anchor_values() {
        assert_eq!(pair_bound_f(1.0).unwrap(), 1.0);
        assert_eq!(pair_bound_f(4.0).unwrap(), 2.0);
        assert!((pair_bound_f_tail(4.0) - 2.0).abs() < 1e-12);
        assert!((pair_bound_f(2.0).unwrap() - std::f64::consts::SQRT_2).abs() < 1e-15);
        // y = 1/100: 0.99 + sqrt(1.9801)
        let f100 = pair_bound_f(100.0).unwrap();
        assert!((f100 - (0.99 + 1.9801f64.sqrt())).abs() < 1e-15);
        assert!((f100 - 2.397_160).abs() < 1e-6);
        assert!(matches!(pair_bound_f(0.5), Err(Error::XOutOfRange(_))));
        assert!(pair_bound_f(f64::NAN).is_err());
    }

    #[test]
    fn f_is_continuous_monotone_and_bounded() {
        assert!((pair_bound_f_tail(4.0) - 4f64.sqrt()).abs() < 1e-12);
        let mut prev = 1.0;
        for i in 0..20_000 {
            let x = 1.0 + i as f64 * 0.01;
            let v = pair_bound_f(x).unwrap();
            assert!(v >= prev - 1e-15, "f not monotone at {x}");
            assert!(v < ONE_PLUS_SQRT2);
            prev = v;
        }
        assert!((pair_bound_f(1e12).unwrap() - ONE_PLUS_SQRT2).abs() < 1e-9);
    }

    #[test]
    fn shared_bound() {
        assert_eq!(pair_bound_shared(1.0).unwrap(), 1.0);
        assert_eq!(pair_bound_shared(4.0).unwrap(), 2.0);
        assert_eq!(pair_bound_shared(100.0).unwrap(), 2.0);
        assert_eq!(pair_bound_shared(2.5).unwrap(), pair_bound_f(2.5).unwrap());
        assert!(pair_bound_shared(0.99).is_err());
    }

    #[test]
    fn beta_closed_forms() {
        let b2 = beta_q(2, DEFAULT_BETA_TOL).unwrap();
        assert!((b2 - ONE_PLUS_SQRT2).abs() < 1e-12);
        let b3 = beta_q(3, DEFAULT_BETA_TOL).unwrap();
        assert!((b3 - 0.5 * (3.0 + 5f64.sqrt())).abs() < 1e-12);
    }

    #[test]
    fn beta_matches_grid_oracle() {
        for q in 2..=12 {
            let b = beta_q(q, DEFAULT_BETA_TOL).unwrap();
            assert!((b - beta_by_grid(q)).abs() < 1e-9, "q = {q}");
        }
        let b4 = beta_q(4, DEFAULT_BETA_TOL).unwrap();
        assert!((b4 - 2.7166).abs() < 1e-3);
        // frozen from the grid oracle
        assert!((b4 - beta_by_grid(4)).abs() < 1e-12);
        let b5 = beta_q(5, DEFAULT_BETA_TOL).unwrap();
        assert!((b5 - 2.775).abs() < 1e-2);
    }

    #[test]
    fn beta_residual_ordering_and_limit() {
        let mut prev = 0.0;
        for q in 2..=64 {
            let b = beta_q(q, DEFAULT_BETA_TOL).unwrap();
            assert!(beta_residual(q, b).abs() <= DEFAULT_BETA_TOL);
            assert!((ONE_PLUS_SQRT2..3.0).contains(&b));
            assert!(b >= prev);
            prev = b;
        }
        assert!(3.0 - beta_q(50, DEFAULT_BETA_TOL).unwrap() < 0.1);
    }

    #[test]
    fn beta_errors() {
        assert!(matches!(beta_q(1, 1e-12), Err(Error::InvalidQ(1))));
        assert!(matches!(beta_q(3, 0.0), Err(Error::InvalidTol(_))));
        assert!(matches!(beta_q(3, f64::NAN), Err(Error::InvalidTol(_))));
        assert!(matches!(beta_q(3, 1e-300), Err(Error::ToleranceUnreachable { .. })));
    }

    #[test]
    fn bound_values_are_labelled() {
        let b = BoundValue::beta(3).unwrap();
        assert!(!b.tight);
        assert!(BoundValue::pair_f(5.0).unwrap().tight);
        let json = serde_json::to_value(b).unwrap();
        assert_eq!(json["kind"], "beta_q");
        assert_eq!(json["q"], 3);
    }
}
