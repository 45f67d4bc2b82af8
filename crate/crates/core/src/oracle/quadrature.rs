//! Brute-force teleportation fidelity: the phase-space overlap integral
//! `F = ∫ d²α/π χ_in(-α) χ_in(α) χ_E(α*, α)`, with the resource
//! characteristic function assembled from displacement matrix elements.

use num_complex::Complex64;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::special::{gauss_legendre, log_factorial};
use crate::states::TruncatedTwoModeState;
use crate::teleport::InputState;

/// Knobs of the polar quadrature.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureConfig {
    /// Gauss–Legendre nodes in `|α|` for the coarse pass (the check pass doubles it).
    pub radial_nodes: usize,
    /// Trapezoid nodes in `arg α` for the coarse pass.
    pub angular_nodes: usize,
    /// Largest accepted difference between coarse and fine passes.
    pub tol: f64,
    /// Fixed outer radius; chosen from the integrand decay when `None`.
    pub radius: Option<f64>,
}

impl Default for QuadratureConfig {
    fn default() -> Self {
        QuadratureConfig { radial_nodes: 128, angular_nodes: 256, tol: 1e-6, radius: None }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureOutcome {
    pub value: f64,
    /// `|fine - coarse|`
    pub refinement_diff: f64,
    pub radius: f64,
}

/// `f_n^{(d)}(x) = sqrt(n!/(n+d)!) x^{d/2} e^{-x/2} L_n^{(d)}(x)` for `n = 0..=n_top`.
///
/// Runs the three-term recurrence upward with a floating log scale so neither
/// the `e^{-x/2}` prefactor nor intermediate growth leaves the f64 range.
pub fn laguerre_functions(x: f64, d: usize, n_top: usize) -> Vec<f64> {
    let mut out = vec![0.0; n_top + 1];
    if x == 0.0 {
        if d == 0 {
            out.fill(1.0);
        }
        return out;
    }
    let df = d as f64;
    let mut shift = 0.5 * df * x.ln() - 0.5 * x - 0.5 * log_factorial(d);
    let (mut prev, mut cur) = (0.0f64, 1.0f64);
    let mut scale = shift.exp();
    out[0] = scale;
    for n in 0..n_top {
        let nf = n as f64;
        let next = ((2.0 * nf + 1.0 + df - x) * cur - (nf * (nf + df)).sqrt() * prev)
            / ((nf + 1.0) * (nf + 1.0 + df)).sqrt();
        prev = cur;
        cur = next;
        let mag = cur.abs();
        if mag > 1e100 || (mag < 1e-100 && mag > 0.0) {
            shift += mag.ln();
            prev /= mag;
            cur /= mag;
            scale = shift.exp();
        }
        // |f| <= 1, so a vanishing `scale` only loses values below ~1e-200.
        out[n + 1] = cur * scale;
    }
    out
}

/// `<ψ| D_A(γ_a) ⊗ D_B(γ_b) |ψ>` for a band state.
pub fn two_mode_characteristic(state: &TruncatedTwoModeState, ga: Complex64, gb: Complex64) -> f64 {
    let c = state.band_amplitudes();
    let len = c.len();
    if len == 0 {
        return 0.0;
    }
    let (sa, sb) = state.start();
    let (xa, xb) = (ga.norm_sqr(), gb.norm_sqr());
    let phase = ga.arg() + gb.arg();
    let mut total = 0.0;
    for d in 0..len {
        let row_a = laguerre_functions(xa, d, sa + len - 1 - d);
        let row_b = laguerre_functions(xb, d, sb + len - 1 - d);
        let s: f64 = (0..len - d).map(|i| c[i] * c[i + d] * row_a[sa + i] * row_b[sb + i]).sum();
        total += if d == 0 { s } else { 2.0 * (d as f64 * phase).cos() * s };
    }
    total
}

/// `χ_E(α*, α)`, the resource function entering the fidelity integral.
pub fn resource_characteristic(state: &TruncatedTwoModeState, alpha: Complex64) -> f64 {
    two_mode_characteristic(state, alpha.conj(), alpha)
}

fn angular_average(input: &InputState, rho: f64, m: usize) -> f64 {
    let step = std::f64::consts::TAU / m as f64;
    let sum: Complex64 = (0..m)
        .map(|j| {
            let alpha = Complex64::from_polar(rho, j as f64 * step);
            input.characteristic(-alpha) * input.characteristic(alpha)
        })
        .sum();
    sum.re / m as f64
}

fn pick_radius(state: &TruncatedTwoModeState, input: &InputState, angular: usize) -> f64 {
    let g = |rho: f64| {
        (rho * resource_characteristic(state, Complex64::new(rho, 0.0)) * angular_average(input, rho, angular)).abs()
    };
    let step = 0.25;
    let mut peak = 0.0f64;
    let mut quiet = 0;
    let mut rho = step;
    while rho < 400.0 {
        let v = g(rho);
        peak = peak.max(v);
        if peak > 0.0 && v < 1e-18 * peak {
            quiet += 1;
            if quiet >= 4 {
                return rho;
            }
        } else {
            quiet = 0;
        }
        rho += step;
    }
    rho
}

fn polar_pass(
    state: &TruncatedTwoModeState,
    input: &InputState,
    radius: f64,
    radial: usize,
    angular: usize,
) -> f64 {
    let (x, w) = gauss_legendre(radial);
    let terms: Vec<f64> = x
        .par_iter()
        .zip(w.par_iter())
        .map(|(&xi, &wi)| {
            let rho = 0.5 * radius * (xi + 1.0);
            let chi = resource_characteristic(state, Complex64::new(rho, 0.0));
            0.5 * radius * wi * rho * chi * angular_average(input, rho, angular)
        })
        .collect();
    // ∫ dθ contributes 2π, the measure d²α/π a further 1/π.
    2.0 * terms.iter().sum::<f64>()
}

/// Fidelity of teleporting `input` through `state`, by direct quadrature.
pub fn quadrature_fidelity(
    state: &TruncatedTwoModeState,
    input: &InputState,
    cfg: &QuadratureConfig,
) -> Result<QuadratureOutcome> {
    if cfg.radial_nodes < 8 || cfg.angular_nodes < 8 {
        return Err(Error::Config("quadrature needs at least 8 nodes per axis".into()));
    }
    let radius = cfg.radius.unwrap_or_else(|| pick_radius(state, input, cfg.angular_nodes));
    let coarse = polar_pass(state, input, radius, cfg.radial_nodes, cfg.angular_nodes);
    let fine = polar_pass(state, input, radius, 2 * cfg.radial_nodes, 2 * cfg.angular_nodes);
    let diff = (fine - coarse).abs();
    if diff.is_nan() || diff > cfg.tol {
        return Err(Error::Convergence { diff });
    }
    Ok(QuadratureOutcome { value: fine, refinement_diff: diff, radius })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::moments::ResourceSpec;
    use crate::states::build_state;

    #[test]
    fn laguerre_functions_low_order() {
        let x = 1.3f64;
        let f = laguerre_functions(x, 0, 3);
        let e = (-0.5 * x).exp();
        assert!((f[0] - e).abs() < 1e-15);
        assert!((f[1] - e * (1.0 - x)).abs() < 1e-15);
        assert!((f[2] - e * (1.0 - 2.0 * x + 0.5 * x * x)).abs() < 1e-15);
        let g = laguerre_functions(x, 2, 1);
        // sqrt(1/3!) x e^{-x/2} (3 - x)
        let exact = (1.0f64 / 6.0).sqrt() * x * e * (3.0 - x);
        assert!((g[1] - exact).abs() < 1e-15);
    }

    #[test]
    fn displacement_rows_are_unit_vectors() {
        // Σ_m |<m|D(γ)|n>|² = 1 for every n.
        let x = 7.5f64;
        let dmax = 300usize;
        let rows: Vec<Vec<f64>> = (0..=dmax).map(|d| laguerre_functions(x, d, 20)).collect();
        for n in 0..=20usize {
            let mut s = 0.0;
            for d in 0..=dmax {
                s += rows[d][n].powi(2);
                if d >= 1 && d <= n {
                    s += rows[d][n - d].powi(2);
                }
            }
            assert!((s - 1.0).abs() < 1e-12, "n={n} s={s}");
        }
    }

    #[test]
    fn tmsv_characteristic_closed_form() {
        let r = 0.7f64;
        let st = build_state(&ResourceSpec::tmsv(r).unwrap(), 1e-15).unwrap();
        for (ga, gb) in [
            (Complex64::new(0.3, 0.1), Complex64::new(0.2, -0.4)),
            (Complex64::new(1.1, 0.0), Complex64::new(1.1, 0.0)),
        ] {
            let v = two_mode_characteristic(&st, ga, gb);
            let exact = (-0.5 * (2.0 * r).cosh() * (ga.norm_sqr() + gb.norm_sqr())
                + (2.0 * r).sinh() * (ga * gb).re)
                .exp();
            assert!((v - exact).abs() < 1e-12, "{v} vs {exact}");
        }
    }
}
