//! Entanglement and squeezing figures of merit for PS/PA states, plus the
//! inverse problems (which `r` gives a prescribed value).

use serde::Serialize;

use crate::error::{Error, Result};
use crate::moments::{resource_expectations, ExpectationSet, OpKind, ResourceSpec, MAX_SQUEEZING};
use crate::states::entropy;

/// Lower end of the `r` bracket used by the inverse solvers.
pub const SOLVE_R_MIN: f64 = 1e-6;
/// Upper end of the `r` bracket; the envelope stops at `r = 5`.
pub const SOLVE_R_MAX: f64 = MAX_SQUEEZING;

/// Every figure of merit of one resource state.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MetricsReport {
    pub kind: OpKind,
    pub k: u32,
    pub l: u32,
    pub r: f64,
    /// `Var(X_A - X_B) + Var(P_A + P_B)`
    pub epr: f64,
    /// `Var((x_A + x_B)/√2)` with `x = (a + a†)/√2`
    pub var_x: f64,
    /// `Var((p_A + p_B)/√2)`
    pub var_p: f64,
    /// Minimum sum-squeezing parameter over the phase.
    pub sum_squeeze_opt: f64,
    pub phi_opt: f64,
    pub entropy_bits: f64,
}

/// EPR correlation from the expectation values.
pub fn epr_from(e: &ExpectationSet) -> f64 {
    // Grouped exactly like the p-variance below so the two agree to rounding.
    2.0 * ((e.n_a + e.n_b + 1.0) - (e.ab + e.a_dag_b_dag)) - 2.0 * (e.a - e.b_dag) * (e.a_dag - e.b)
}

/// `Var(X_A - X_B) + Var(P_A + P_B)`; below 2 certifies entanglement.
pub fn epr_correlation(spec: &ResourceSpec) -> Result<f64> {
    Ok(epr_from(&resource_expectations(spec)?))
}

/// `((ΔX)², (ΔP)²)` for `X = (a + a† + b + b†)/2`, `P = (a - a† + b - b†)/(2i)`.
///
/// Single-mode second moments `<a²>`, `<a b†>` vanish on band states, so only
/// the two-mode correlator survives.
pub fn quadrature_variances_from(e: &ExpectationSet) -> (f64, f64) {
    let common = e.n_a + e.n_b + 1.0;
    let cross = e.ab + e.a_dag_b_dag;
    let mean_x = 0.5 * (e.a + e.a_dag + e.b + e.b_dag);
    let mean_p_sq = -0.25 * (e.a - e.a_dag + e.b - e.b_dag).powi(2);
    (0.5 * (common + cross) - mean_x * mean_x, 0.5 * (common - cross) - mean_p_sq)
}

pub fn quadrature_variances(spec: &ResourceSpec) -> Result<(f64, f64)> {
    Ok(quadrature_variances_from(&resource_expectations(spec)?))
}

/// Sum-squeezing parameter at phase `φ`; negative values mean squeezing.
pub fn sum_squeezing_from(e: &ExpectationSet, phi: f64) -> f64 {
    let num = 2.0 * e.n_a_n_b + 2.0 * (2.0 * phi).cos() * e.a2b2
        - 4.0 * phi.cos().powi(2) * e.ab * e.a_dag_b_dag;
    num / (e.n_a + e.n_b + 1.0)
}

/// Quadrature angle of the sum-squeezing operator, restricted to `[0, π)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SumSqueezeQuery {
    phi: f64,
}

impl SumSqueezeQuery {
    pub fn new(phi: f64) -> Result<Self> {
        if (0.0..std::f64::consts::PI).contains(&phi) {
            Ok(SumSqueezeQuery { phi })
        } else {
            Err(Error::Domain(format!("angle {phi} outside [0, pi)")))
        }
    }

    pub fn phi(&self) -> f64 {
        self.phi
    }
}

pub fn sum_squeezing(spec: &ResourceSpec, q: SumSqueezeQuery) -> Result<f64> {
    Ok(sum_squeezing_from(&resource_expectations(spec)?, q.phi))
}

/// Minimizes the sum-squeezing parameter over `φ ∈ [0, π]`: a 64-point scan
/// followed by golden-section refinement around the best sample.
pub fn sum_squeezing_optimal_from(e: &ExpectationSet) -> (f64, f64) {
    use std::f64::consts::PI;
    let f = |phi: f64| sum_squeezing_from(e, phi);
    let n = 64;
    let step = PI / n as f64;
    let best = (0..=n)
        .map(|i| i as f64 * step)
        .min_by(|a, b| f(*a).total_cmp(&f(*b)))
        .unwrap_or(0.0);
    let (mut lo, mut hi) = (best - step, best + step);
    let g = 0.5 * (5f64.sqrt() - 1.0);
    let mut x1 = hi - g * (hi - lo);
    let mut x2 = lo + g * (hi - lo);
    let (mut f1, mut f2) = (f(x1), f(x2));
    for _ in 0..80 {
        if f1 <= f2 {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - g * (hi - lo);
            f1 = f(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + g * (hi - lo);
            f2 = f(x2);
        }
    }
    let phi = 0.5 * (lo + hi);
    let candidates = [(phi, f(phi)), (best, f(best))];
    let (phi, val) = candidates.into_iter().min_by(|a, b| a.1.total_cmp(&b.1)).unwrap();
    (phi.rem_euclid(PI), val)
}

/// `(φ_opt, S(φ_opt))`.
pub fn sum_squeezing_optimal(spec: &ResourceSpec) -> Result<(f64, f64)> {
    Ok(sum_squeezing_optimal_from(&resource_expectations(spec)?))
}

/// Full metrics report for one state.
pub fn metrics(spec: &ResourceSpec) -> Result<MetricsReport> {
    let e = resource_expectations(spec)?;
    let (var_x, var_p) = quadrature_variances_from(&e);
    let (phi_opt, sum_squeeze_opt) = sum_squeezing_optimal_from(&e);
    Ok(MetricsReport {
        kind: spec.kind(),
        k: spec.k(),
        l: spec.l(),
        r: spec.r(),
        epr: epr_from(&e),
        var_x,
        var_p,
        sum_squeeze_opt,
        phi_opt,
        entropy_bits: entropy(spec)?,
    })
}

/// Bisection for `f(x) = target` on `[lo, hi]`, for monotone `f`.
pub(crate) fn bisect<F>(mut f: F, lo: f64, hi: f64, target: f64) -> Result<f64>
where
    F: FnMut(f64) -> Result<f64>,
{
    let (f_lo, f_hi) = (f(lo)?, f(hi)?);
    if (f_lo - target) * (f_hi - target) > 0.0 || !(f_lo.is_finite() && f_hi.is_finite()) {
        return Err(Error::NoBracket { lo, hi, f_lo, f_hi, target });
    }
    let increasing = f_hi > f_lo;
    let (mut a, mut b) = (lo, hi);
    for _ in 0..200 {
        let mid = 0.5 * (a + b);
        if mid <= a || mid >= b {
            break;
        }
        let fm = f(mid)?;
        if fm == target {
            return Ok(mid);
        }
        if (fm < target) == increasing {
            a = mid;
        } else {
            b = mid;
        }
    }
    Ok(0.5 * (a + b))
}

/// Squeezing `r` whose EPR correlation equals `target`.
pub fn solve_r_for_epr(kind: OpKind, k: u32, l: u32, target: f64) -> Result<f64> {
    bisect(
        |r| epr_correlation(&ResourceSpec::new(kind, k, l, r)?),
        SOLVE_R_MIN,
        SOLVE_R_MAX,
        target,
    )
}

/// Squeezing `r` whose entanglement entropy (bits) equals `target`.
pub fn solve_r_for_entropy(kind: OpKind, k: u32, l: u32, target: f64) -> Result<f64> {
    bisect(|r| entropy(&ResourceSpec::new(kind, k, l, r)?), SOLVE_R_MIN, SOLVE_R_MAX, target)
}

/// Checks that the EPR correlation decreases strictly along `samples`
/// equally spaced points of `[r_lo, r_hi]`.
pub fn epr_is_decreasing(kind: OpKind, k: u32, l: u32, r_lo: f64, r_hi: f64, samples: usize) -> Result<bool> {
    let mut prev = f64::INFINITY;
    for i in 0..samples {
        let r = r_lo + (r_hi - r_lo) * i as f64 / (samples - 1).max(1) as f64;
        let v = epr_correlation(&ResourceSpec::new(kind, k, l, r)?)?;
        if v >= prev {
            return Ok(false);
        }
        prev = v;
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::FRAC_PI_2;

    #[test]
    fn tmsv_closed_forms() {
        for r in [0.0, 0.3, 1.0, 2.0] {
            let s = ResourceSpec::tmsv(r).unwrap();
            let epr = epr_correlation(&s).unwrap();
            assert!((epr - 2.0 * (-2.0 * r).exp()).abs() < 1e-13);
            let (vx, vp) = quadrature_variances(&s).unwrap();
            assert!((vx - 0.5 * (2.0 * r).exp()).abs() < 1e-12 * vx);
            assert!((vp - 0.5 * (-2.0 * r).exp()).abs() < 1e-13);
            let ss = sum_squeezing(&s, SumSqueezeQuery::new(FRAC_PI_2).unwrap()).unwrap();
            let exact = -((2.0 * r).exp() - 1.0).powi(2) / ((4.0 * r).exp() + 1.0);
            assert!((ss - exact).abs() < 1e-13);
        }
    }

    #[test]
    fn single_added_photon_epr() {
        for k in 0..5u32 {
            for r in [0.2, 0.7, 1.4] {
                for kind in [OpKind::Add, OpKind::Subtract] {
                    let epr = epr_correlation(&ResourceSpec::new(kind, k, 0, r).unwrap()).unwrap();
                    let exact = (2 * k + 2) as f64 * (-2.0 * r).exp();
                    assert!((epr - exact).abs() < 1e-11 * exact, "{kind:?} k={k} r={r}");
                }
            }
        }
    }

    #[test]
    fn epr_is_four_p_variance() {
        let s = ResourceSpec::subtract(2, 1, 0.6).unwrap();
        let (_, vp) = quadrature_variances(&s).unwrap();
        assert!((epr_correlation(&s).unwrap() - 4.0 * vp).abs() < 1e-12);
    }

    #[test]
    fn optimum_matches_sinusoid_minimum() {
        for (kind, k, l, r) in
            [(OpKind::Add, 1, 1, 0.5), (OpKind::Subtract, 2, 2, 0.3), (OpKind::Subtract, 1, 0, 1.1)]
        {
            let e = resource_expectations(&ResourceSpec::new(kind, k, l, r).unwrap()).unwrap();
            let (_, s) = sum_squeezing_optimal_from(&e);
            let exact = sum_squeezing_from(&e, 0.0).min(sum_squeezing_from(&e, FRAC_PI_2));
            assert!((s - exact).abs() < 1e-12);
        }
    }

    #[test]
    fn inverse_solvers_round_trip() {
        let r = solve_r_for_epr(OpKind::Subtract, 1, 1, 1.0).unwrap();
        let v = epr_correlation(&ResourceSpec::subtract(1, 1, r).unwrap()).unwrap();
        assert!((v - 1.0).abs() < 1e-12);
        let r = solve_r_for_entropy(OpKind::Add, 2, 1, 2.5).unwrap();
        let v = entropy(&ResourceSpec::add(2, 1, r).unwrap()).unwrap();
        assert!((v - 2.5).abs() < 1e-10);
        let tmsv = solve_r_for_epr(OpKind::Subtract, 0, 0, 1.0).unwrap();
        assert!((tmsv - 0.5 * 2f64.ln()).abs() < 1e-12);
    }

    #[test]
    fn unreachable_target_reports_bracket() {
        let err = solve_r_for_epr(OpKind::Add, 1, 0, 50.0).unwrap_err();
        assert!(matches!(err, Error::NoBracket { .. }));
    }

    #[test]
    fn epr_monotone_on_test_grid() {
        for kind in [OpKind::Add, OpKind::Subtract] {
            for (k, l) in [(0, 0), (1, 0), (1, 1), (2, 1), (3, 3)] {
                assert!(epr_is_decreasing(kind, k, l, 0.01, 4.0, 200).unwrap(), "{kind:?} {k} {l}");
            }
        }
    }
}
