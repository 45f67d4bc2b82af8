//! The identity and oracle-equivalence suite behind the `verify` command.

use num_complex::Complex64;

use crate::error::Result;
use crate::gfn::{extract_coefficient, ExponentForm};
use crate::metrics::{epr_correlation, metrics, quadrature_variances};
use crate::moments::{
    moment_antinormal, moment_normal, normalization, MomentQuery, OpKind, ResourceSpec,
};
use crate::oracle::{self, oracle_moment, prepare_state, state_metrics, Ordering, QuadratureConfig};
use crate::states::{build_state, entropy, schmidt};
use crate::teleport::{
    fidelity, fidelity_coherent, fidelity_one_mode, fidelity_one_mode_series, fidelity_squeezed,
    InputState,
};

use super::{Cell, RunConfig, Table};

#[derive(Debug, Clone, PartialEq)]
pub struct CheckResult {
    pub name: String,
    /// Largest deviation seen over the check's grid.
    pub deviation: f64,
    pub tolerance: f64,
}

impl CheckResult {
    pub fn passed(&self) -> bool {
        self.deviation <= self.tolerance
    }
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct VerifyReport {
    pub checks: Vec<CheckResult>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(CheckResult::passed)
    }

    pub fn to_table(&self) -> Table {
        let mut t = Table::new("verification suite", &["check", "deviation", "tolerance", "passed"]);
        for c in &self.checks {
            t.push(vec![c.name.clone().into(), Cell::Num(c.deviation), Cell::Num(c.tolerance), c.passed().into()]);
        }
        t
    }
}

fn rel(a: f64, b: f64) -> f64 {
    let d = (a - b).abs();
    if a == b {
        0.0
    } else {
        d / b.abs().max(f64::MIN_POSITIVE)
    }
}

const KINDS: [OpKind; 2] = [OpKind::Subtract, OpKind::Add];

struct Suite {
    override_tol: Option<f64>,
    report: VerifyReport,
}

impl Suite {
    fn check<F>(&mut self, name: &str, tol: f64, compute: F) -> Result<()>
    where
        F: FnOnce() -> Result<f64>,
    {
        let deviation = compute()?;
        let tolerance = self.override_tol.unwrap_or(tol);
        // NaN deviations must fail, never pass silently.
        let deviation = if deviation.is_nan() { f64::INFINITY } else { deviation };
        self.report.checks.push(CheckResult { name: name.to_string(), deviation, tolerance });
        Ok(())
    }
}

fn small_grid() -> Vec<(OpKind, u32, u32)> {
    let mut v = Vec::new();
    for kind in KINDS {
        for k in 0..=3 {
            for l in 0..=3 {
                v.push((kind, k, l));
            }
        }
    }
    v
}

fn max_over<I, F>(items: I, mut f: F) -> Result<f64>
where
    I: IntoIterator,
    F: FnMut(I::Item) -> Result<f64>,
{
    let mut worst = 0.0f64;
    for it in items {
        let d = f(it)?;
        worst = if d.is_nan() { f64::INFINITY } else { worst.max(d) };
    }
    Ok(worst)
}

/// Runs every identity and equivalence check; `cfg.quick` trims the
/// quadrature grid, `cfg.tolerance` overrides all tolerances.
pub fn run_verify(cfg: &RunConfig) -> Result<VerifyReport> {
    let mut s = Suite { override_tol: cfg.tolerance, report: VerifyReport::default() };
    let rs = [0.2, 0.8, 1.5];
    let grid = small_grid();

    s.check("symmetric subtraction/addition normalization ratio", 1e-10, || {
        max_over((0..=6u32).flat_map(|k| rs.map(|r| (k, r))), |(k, r)| {
            let n = normalization(&ResourceSpec::subtract(k, k, r)?)?;
            let c = normalization(&ResourceSpec::add(k, k, r)?)?;
            Ok(rel(n * r.tanh().powi(-2 * k as i32), c))
        })
    })?;

    let rs_fine: Vec<f64> = (1..=20).map(|i| 0.1 * i as f64).collect();
    s.check("epr equals four p-variances", 1e-12, || {
        max_over(grid.iter().flat_map(|&g| rs_fine.iter().map(move |&r| (g, r))), |((kind, k, l), r)| {
            let spec = ResourceSpec::new(kind, k, l, r)?;
            Ok(rel(epr_correlation(&spec)?, 4.0 * quadrature_variances(&spec)?.1))
        })
    })?;

    s.check("single-sided epr closed form", 1e-10, || {
        max_over(KINDS.iter().flat_map(|&kd| (0..=5u32).flat_map(move |k| rs.map(|r| (kd, k, r)))), |(kind, k, r)| {
            let v = epr_correlation(&ResourceSpec::new(kind, k, 0, r)?)?;
            Ok(rel(v, (2 * k + 2) as f64 * (-2.0 * r).exp()))
        })
    })?;

    s.check("uncertainty product var_x var_p >= 1/4", 1e-12, || {
        max_over(grid.iter().flat_map(|&g| rs.map(|r| (g, r))), |((kind, k, l), r)| {
            let (vx, vp) = quadrature_variances(&ResourceSpec::new(kind, k, l, r)?)?;
            Ok((0.25 - vx * vp).max(0.0))
        })
    })?;

    s.check("symmetric entropy: addition equals subtraction", 1e-9, || {
        max_over((0..=4u32).flat_map(|k| rs.map(|r| (k, r))), |(k, r)| {
            Ok((entropy(&ResourceSpec::add(k, k, r)?)? - entropy(&ResourceSpec::subtract(k, k, r)?)?).abs())
        })
    })?;

    s.check("one-mode addition/subtraction Schmidt spectra", 1e-12, || {
        max_over((0..=4u32).flat_map(|k| rs.map(|r| (k, r))), |(k, r)| {
            let a = schmidt(&build_state(&ResourceSpec::add(k, 0, r)?, cfg.tail_tol)?);
            let b = schmidt(&build_state(&ResourceSpec::subtract(0, k, r)?, cfg.tail_tol)?);
            let n = a.weights.len().min(b.weights.len());
            let worst = (0..n).map(|i| (a.weights[i] - b.weights[i]).abs()).fold(0.0, f64::max);
            Ok(worst)
        })
    })?;

    s.check("entropy series vs Schmidt spectrum", 1e-9, || {
        max_over(grid.iter().flat_map(|&g| rs.map(|r| (g, r))), |((kind, k, l), r)| {
            let spec = ResourceSpec::new(kind, k, l, r)?;
            let via_state = schmidt(&build_state(&spec, 1e-14)?).entropy_bits();
            Ok((entropy(&spec)? - via_state).abs())
        })
    })?;

    s.check("built states keep 1 - tail_tol of the norm", cfg.tail_tol, || {
        max_over(grid.iter().flat_map(|&g| [0.2, 1.0, 2.0].map(|r| (g, r))), |((kind, k, l), r)| {
            let st = build_state(&ResourceSpec::new(kind, k, l, r)?, cfg.tail_tol)?;
            Ok((1.0 - st.norm_sq()).max(0.0))
        })
    })?;

    let queries = |k: u32, l: u32| {
        [
            MomentQuery::diagonal(k, l),
            MomentQuery { p: k + 1, q: k, h: l + 1, j: l },
            MomentQuery { p: k + 2, q: k, h: l + 2, j: l },
            MomentQuery { p: k + 1, q: k + 1, h: l, j: l },
        ]
    };
    s.check("moments: resummation vs generating function", 1e-8, || {
        max_over((0..=3u32).flat_map(|k| (0..=3u32).flat_map(move |l| rs.map(|r| (k, l, r)))), |(k, l, r)| {
            let mut worst = 0.0f64;
            for q in queries(k, l) {
                let orders = [q.p, q.q, q.h, q.j];
                worst = worst
                    .max(rel(extract_coefficient(&ExponentForm::antinormal_moments(r), orders)?, moment_antinormal(q, r)))
                    .max(rel(extract_coefficient(&ExponentForm::normal_moments(r), orders)?, moment_normal(q, r)));
            }
            Ok(worst)
        })
    })?;

    s.check("moments: resummation vs ladder operators", 1e-8, || {
        max_over(rs, |r| {
            let tmsv = prepare_state(&ResourceSpec::tmsv(r)?, oracle::ORACLE_TAIL_TOL)?;
            let mut worst = 0.0f64;
            for k in 0..=3 {
                for l in 0..=3 {
                    for q in queries(k, l) {
                        let n = oracle_moment(&tmsv, q, Ordering::Normal)?.value;
                        let c = oracle_moment(&tmsv, q, Ordering::Antinormal)?.value;
                        worst = worst.max(rel(n, moment_normal(q, r))).max(rel(c, moment_antinormal(q, r)));
                    }
                }
            }
            Ok(worst)
        })
    })?;

    s.check("metrics: closed forms vs ladder operators", 1e-8, || {
        max_over(grid.iter().flat_map(|&g| rs.map(|r| (g, r))), |((kind, k, l), r)| {
            let spec = ResourceSpec::new(kind, k, l, r)?;
            let m = metrics(&spec)?;
            let o = state_metrics(&prepare_state(&spec, oracle::ORACLE_TAIL_TOL)?)?;
            Ok([
                rel(o.epr, m.epr),
                rel(o.var_x, m.var_x),
                rel(o.var_p, m.var_p),
                rel(o.sum_squeeze_opt, m.sum_squeeze_opt),
                rel(o.entropy_bits, m.entropy_bits),
            ]
            .into_iter()
            .fold(0.0, f64::max))
        })
    })?;

    s.check("squeezed-input fidelity at zero input squeezing", 1e-10, || {
        max_over(grid.iter().flat_map(|&g| [0.2, 0.8].map(|r| (g, r))), |((kind, k, l), r)| {
            let spec = ResourceSpec::new(kind, k, l, r)?;
            Ok(rel(fidelity_squeezed(&spec, 0.0)?.value, fidelity_coherent(&spec)?.value))
        })
    })?;

    let re_grid = [(0.3, 0.2), (0.8, 0.6), (1.5, 1.0)];
    s.check("one-mode fidelity: Legendre vs series vs generating function", 1e-9, || {
        max_over((0..=3u32).flat_map(|k| re_grid.map(|(r, e)| (k, r, e))), |(k, r, e)| {
            let a = fidelity_one_mode(k, r, e)?.value;
            let b = fidelity_one_mode_series(k, r, e)?.value;
            let c = fidelity_squeezed(&ResourceSpec::add(k, 0, r)?, e)?.value;
            Ok((a - b).abs().max((a - c).abs()))
        })
    })?;

    let quad = QuadratureConfig::default();
    let (fid_grid, eps): (Vec<(OpKind, u32, u32)>, Vec<f64>) = if cfg.quick {
        (vec![(OpKind::Subtract, 1, 1), (OpKind::Add, 2, 1)], vec![0.0, 0.6])
    } else {
        (grid.clone(), vec![0.0, 0.3, 0.6])
    };
    let fid_rs: Vec<f64> = if cfg.quick { vec![0.8] } else { rs.to_vec() };
    s.check("fidelity: analytic vs quadrature", 1e-6, || {
        let mut worst = 0.0f64;
        for &(kind, k, l) in &fid_grid {
            for &r in &fid_rs {
                let spec = ResourceSpec::new(kind, k, l, r)?;
                let state = prepare_state(&spec, oracle::ORACLE_TAIL_TOL)?;
                for &e in &eps {
                    let input = InputState::squeezed(e)?;
                    let q = oracle::quadrature_fidelity(&state, &input, &quad)?.value;
                    worst = worst.max((q - fidelity(&spec, &input)?.value).abs());
                }
            }
        }
        Ok(worst)
    })?;

    s.check("fidelity independent of coherent amplitude", 1e-6, || {
        let spec = ResourceSpec::subtract(1, 1, 0.5)?;
        let state = prepare_state(&spec, oracle::ORACLE_TAIL_TOL)?;
        let a = oracle::quadrature_fidelity(&state, &InputState::coherent(Complex64::new(0.0, 0.0)), &quad)?;
        let b = oracle::quadrature_fidelity(&state, &InputState::coherent(Complex64::new(1.0, 2.0)), &quad)?;
        Ok((a.value - b.value).abs())
    })?;

    s.check("classical bound with the vacuum resource", 1e-12, || {
        Ok((fidelity_coherent(&ResourceSpec::tmsv(0.0)?)?.value - 0.5).abs())
    })?;

    if let Some(g) = cfg.r {
        for r in g.points()? {
            let spec = ResourceSpec::new(cfg.kind, cfg.k, cfg.l, r)?;
            let tag = format!("{} r={r}", spec.label());
            s.check(&format!("{tag}: epr equals four p-variances"), 1e-12, || {
                Ok(rel(epr_correlation(&spec)?, 4.0 * quadrature_variances(&spec)?.1))
            })?;
            s.check(&format!("{tag}: zero input squeezing reduction"), 1e-10, || {
                Ok(rel(fidelity_squeezed(&spec, 0.0)?.value, fidelity_coherent(&spec)?.value))
            })?;
        }
    }

    Ok(s.report)
}
