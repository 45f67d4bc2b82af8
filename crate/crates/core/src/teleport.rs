//! Fidelity of continuous-variable teleportation through PS/PA resources.

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::gfn::{extract_coefficient_log, ExponentForm, Var};
use crate::metrics::{solve_r_for_entropy, solve_r_for_epr};
use crate::moments::{log_normalization, OpKind, ResourceSpec};
use crate::oracle::{oracle_fidelity, QuadratureConfig};
use crate::special::{jacobi_log, legendre, log_factorial, LogReal};

/// Largest input squeezing accepted.
pub const MAX_INPUT_SQUEEZING: f64 = 3.0;

/// State to be teleported.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum InputState {
    Coherent { beta: Complex64 },
    /// Squeezed vacuum `S(ε)|0>` displaced by `beta`.
    Squeezed { epsilon: f64, beta: Complex64 },
}

impl InputState {
    pub fn coherent(beta: Complex64) -> Self {
        InputState::Coherent { beta }
    }

    pub fn squeezed(epsilon: f64) -> Result<Self> {
        Self::displaced_squeezed(epsilon, Complex64::new(0.0, 0.0))
    }

    pub fn displaced_squeezed(epsilon: f64, beta: Complex64) -> Result<Self> {
        if !epsilon.is_finite() || !(0.0..=MAX_INPUT_SQUEEZING).contains(&epsilon) {
            return Err(Error::Envelope(format!(
                "input squeezing ε = {epsilon} outside [0, {MAX_INPUT_SQUEEZING}]"
            )));
        }
        Ok(InputState::Squeezed { epsilon, beta })
    }

    pub fn epsilon(&self) -> f64 {
        match *self {
            InputState::Coherent { .. } => 0.0,
            InputState::Squeezed { epsilon, .. } => epsilon,
        }
    }

    /// `χ(α) = <ψ|D(α)|ψ>`.
    pub fn characteristic(&self, alpha: Complex64) -> Complex64 {
        let (beta, gauss) = match *self {
            InputState::Coherent { beta } => (beta, -0.5 * alpha.norm_sqr()),
            InputState::Squeezed { epsilon, beta } => {
                let (x, y) = (alpha.re, alpha.im);
                (beta, -0.5 * ((-2.0 * epsilon).exp() * x * x + (2.0 * epsilon).exp() * y * y))
            }
        };
        // displacement phase exp(αβ* - α*β) = exp(2i Im(αβ*))
        let phase = 2.0 * (alpha * beta.conj()).im;
        Complex64::from_polar(gauss.exp(), phase)
    }
}

/// How a fidelity value was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    ClosedForm,
    GfnEngine,
    Series,
    Quadrature,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FidelityResult {
    pub value: f64,
    pub method: Method,
}

fn checked(value: f64, method: Method) -> Result<FidelityResult> {
    if !value.is_finite() || value <= 0.0 || value > 1.0 + 1e-9 {
        return Err(Error::Domain(format!("fidelity {value} outside (0, 1]")));
    }
    Ok(FidelityResult { value, method })
}

/// Coherent-input fidelity from the Jacobi closed forms.
pub fn fidelity_coherent(spec: &ResourceSpec) -> Result<FidelityResult> {
    let (k, l, r) = (spec.k(), spec.l(), spec.r());
    let e2 = (2.0 * r).exp();
    let ln_gate = -((-2.0 * r).exp()).ln_1p();
    let ln_norm = log_normalization(spec)?;
    let value = match spec.kind() {
        OpKind::Subtract => {
            let x = (e2 * e2 + 2.0 * e2 + 5.0) / (4.0 * e2 + 4.0);
            let ln_y = if l == 0 { 0.0 } else { f64::from(l) * (2.0 * (e2 - 1.0).ln() - (4.0 * e2 + 4.0).ln()) };
            let pre = f64::from(k) * std::f64::consts::LN_2
                + log_factorial(k as usize)
                + log_factorial(l as usize)
                + ln_gate
                + ln_y;
            let jac = jacobi_log(k, l as i32 - k as i32, 0, x)?;
            (LogReal::from_ln(pre) * jac / ln_norm).to_f64()
        }
        OpKind::Add => {
            let kl = k + l;
            let pre = log_factorial(kl as usize) - f64::from(kl) * 4f64.ln()
                + f64::from(kl) * e2.ln_1p()
                + ln_gate;
            (LogReal::from_ln(pre) / ln_norm).to_f64()
        }
    };
    checked(value, Method::ClosedForm)
}

/// Exponent of the generating function behind the squeezed-input fidelity,
/// together with the Gaussian prefactor `F₀`.
pub fn squeezed_exponent_form(kind: OpKind, r: f64, epsilon: f64) -> (ExponentForm, f64) {
    let em = (-2.0 * r).exp();
    let (c2e, s2e) = ((2.0 * epsilon).cosh(), (2.0 * epsilon).sinh());
    let den = 2.0 * em * c2e + em * em + 1.0;
    let (gap, c) = match kind {
        OpKind::Subtract => ((em - 1.0).powi(2), r.sinh().powi(2)),
        OpKind::Add => ((em + 1.0).powi(2), r.cosh().powi(2)),
    };
    let a = gap * (em + c2e) / (4.0 * den);
    let b = gap * s2e / (8.0 * den);
    let d = 0.5 * (2.0 * r).sinh();
    let form = ExponentForm::zero()
        .with_quad(Var::F, Var::S, c - a)
        .with_quad(Var::T, Var::Tau, c - a)
        .with_quad(Var::F, Var::T, d + a)
        .with_quad(Var::S, Var::Tau, d + a)
        .with_quad(Var::F, Var::F, b)
        .with_quad(Var::S, Var::S, b)
        .with_quad(Var::T, Var::T, b)
        .with_quad(Var::Tau, Var::Tau, b)
        .with_quad(Var::F, Var::Tau, -2.0 * b)
        .with_quad(Var::S, Var::T, -2.0 * b);
    (form, den.powf(-0.5))
}

/// Squeezed-input fidelity from coefficient extraction.
pub fn fidelity_squeezed(spec: &ResourceSpec, epsilon: f64) -> Result<FidelityResult> {
    InputState::squeezed(epsilon)?;
    let (form, f0) = squeezed_exponent_form(spec.kind(), spec.r(), epsilon);
    let (k, l) = (spec.k(), spec.l());
    let coef = extract_coefficient_log(&form, [k, k, l, l])?;
    let value = (LogReal::from_f64(f0) * coef / log_normalization(spec)?).to_f64();
    checked(value, Method::GfnEngine)
}

fn one_mode_check(k: u32, r: f64, epsilon: f64) -> Result<()> {
    ResourceSpec::add(k, 0, r)?;
    InputState::squeezed(epsilon)?;
    Ok(())
}

/// Squeezed-input fidelity through `a†^k |r>` (equivalently `a^k |r>`),
/// via a Legendre polynomial.
pub fn fidelity_one_mode(k: u32, r: f64, epsilon: f64) -> Result<FidelityResult> {
    one_mode_check(k, r, epsilon)?;
    let u = (-2.0 * r).exp() * (2.0 * epsilon).cosh();
    let den = 2.0 * u + (-4.0 * r).exp() + 1.0;
    let f0 = den.powf(-0.5);
    let x = (u + 1.0) / den.sqrt();
    let value = f0.powi(k as i32 + 1) * legendre(k, x);
    checked(value, Method::ClosedForm)
}

/// Same quantity as [`fidelity_one_mode`], summed as a finite series.
pub fn fidelity_one_mode_series(k: u32, r: f64, epsilon: f64) -> Result<FidelityResult> {
    one_mode_check(k, r, epsilon)?;
    let u = (-2.0 * r).exp() * (2.0 * epsilon).cosh();
    let f0 = (2.0 * u + (-4.0 * r).exp() + 1.0).powf(-0.5);
    let z = ((2.0 * epsilon).sinh() / ((2.0 * epsilon).cosh() + (2.0 * r).exp())).powi(2);
    let lk = log_factorial(k as usize);
    let sum: f64 = (0..=k / 2)
        .map(|m| {
            let ln = lk
                - f64::from(m) * 4f64.ln()
                - 2.0 * log_factorial(m as usize)
                - log_factorial((k - 2 * m) as usize);
            ln.exp() * z.powi(m as i32)
        })
        .sum();
    let value = f0.powi(2 * k as i32 + 1) * (u + 1.0).powi(k as i32) * sum;
    checked(value, Method::Series)
}

/// Quadrature fidelity on an independently prepared state.
pub fn fidelity_quadrature(spec: &ResourceSpec, input: &InputState) -> Result<FidelityResult> {
    let out = oracle_fidelity(spec, input, &QuadratureConfig::default())?;
    checked(out.value, Method::Quadrature)
}

/// Analytic fidelity for any supported input.
pub fn fidelity(spec: &ResourceSpec, input: &InputState) -> Result<FidelityResult> {
    match *input {
        InputState::Coherent { .. } => fidelity_coherent(spec),
        InputState::Squeezed { epsilon: 0.0, .. } => fidelity_coherent(spec),
        InputState::Squeezed { epsilon, .. } => fidelity_squeezed(spec, epsilon),
    }
}

/// What the horizontal coordinate of a fidelity curve measures.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum XAxis {
    Squeezing,
    Epr,
    Entropy,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CurvePoint {
    pub x: f64,
    pub r: f64,
    pub fidelity: f64,
}

/// Fidelity along `grid`, where each grid value is `r` itself or a target
/// EPR correlation / entropy converted to `r` by root finding.
pub fn parametric_curve(
    kind: OpKind,
    k: u32,
    l: u32,
    input: &InputState,
    axis: XAxis,
    grid: &[f64],
) -> Result<Vec<CurvePoint>> {
    grid.iter()
        .map(|&x| {
            let r = match axis {
                XAxis::Squeezing => x,
                XAxis::Epr => solve_r_for_epr(kind, k, l, x)?,
                XAxis::Entropy => solve_r_for_entropy(kind, k, l, x)?,
            };
            let f = fidelity(&ResourceSpec::new(kind, k, l, r)?, input)?;
            Ok(CurvePoint { x, r, fidelity: f.value })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn single_sided(k: u32, r: f64) -> f64 {
        (1.0 / ((-2.0 * r).exp() + 1.0)).powi(k as i32 + 1)
    }

    #[test]
    fn vacuum_resource_gives_classical_limit() {
        let f = fidelity_coherent(&ResourceSpec::tmsv(0.0).unwrap()).unwrap();
        assert!((f.value - 0.5).abs() < 1e-15);
        let f = fidelity_coherent(&ResourceSpec::tmsv(0.5 * 2f64.ln()).unwrap()).unwrap();
        assert!((f.value - 2.0 / 3.0).abs() < 1e-14);
    }

    #[test]
    fn single_sided_reductions() {
        for k in 0..6 {
            for r in [0.1, 0.6, 1.5, 3.0] {
                let exact = single_sided(k, r);
                for kind in [OpKind::Add, OpKind::Subtract] {
                    let f = fidelity_coherent(&ResourceSpec::new(kind, k, 0, r).unwrap()).unwrap();
                    assert!((f.value - exact).abs() < 1e-12 * exact, "{kind:?} k={k} r={r}");
                    let g = fidelity_squeezed(&ResourceSpec::new(kind, k, 0, r).unwrap(), 0.0).unwrap();
                    assert!((g.value - exact).abs() < 1e-12 * exact);
                }
                let one = fidelity_one_mode(k, r, 0.0).unwrap();
                assert!((one.value - exact).abs() < 1e-12 * exact);
            }
        }
    }

    #[test]
    fn one_mode_forms_agree() {
        for k in 0..8 {
            for (r, eps) in [(0.3, 0.2), (1.0, 1.0), (2.0, 2.5)] {
                let a = fidelity_one_mode(k, r, eps).unwrap().value;
                let b = fidelity_one_mode_series(k, r, eps).unwrap().value;
                assert!((a - b).abs() < 1e-12, "k={k}");
                let g = fidelity_squeezed(&ResourceSpec::add(k, 0, r).unwrap(), eps).unwrap().value;
                assert!((a - g).abs() < 1e-10 * a, "gf k={k} r={r} eps={eps}: {a} vs {g}");
            }
        }
    }

    #[test]
    fn squeezed_input_at_zero_equals_coherent() {
        for (kind, k, l, r) in [(OpKind::Add, 2, 1, 0.4), (OpKind::Subtract, 2, 2, 0.9), (OpKind::Add, 3, 3, 1.3)] {
            let spec = ResourceSpec::new(kind, k, l, r).unwrap();
            let a = fidelity_coherent(&spec).unwrap().value;
            let b = fidelity_squeezed(&spec, 0.0).unwrap().value;
            assert!((a - b).abs() < 1e-11 * a, "{kind:?} ({k},{l}) {a} vs {b}");
        }
    }

    #[test]
    fn input_characteristic_normalized() {
        let inp = InputState::displaced_squeezed(0.7, Complex64::new(0.3, -1.0)).unwrap();
        assert!((inp.characteristic(Complex64::new(0.0, 0.0)) - 1.0).norm() < 1e-15);
        assert!(InputState::squeezed(3.5).is_err());
    }
}
