//! Datasets for the thirteen figure panels.
//!
//! Default grid: `r ∈ [0, 2]` in steps of 0.02. Photon-subtracted series skip
//! `r = 0`, where the state does not exist. The fixed-EPR panel scans
//! `Υ ∈ [0.1, 1.9]`, the fixed-entropy panel `E ∈ [0.1, 3.0]`, and the
//! input-squeezing panel scans `ε ∈ [0, 2]` at `r = 0.3`; all with step 0.02.

use num_complex::Complex64;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::metrics::{epr_correlation, sum_squeezing_optimal};
use crate::moments::{OpKind, ResourceSpec};
use crate::states::entropy;
use crate::teleport::{fidelity, parametric_curve, InputState, XAxis};

use super::Grid;

pub const FIGURE_IDS: [&str; 13] =
    ["1a", "1b", "2", "3a", "3b", "4", "5a", "5b", "6a", "6b", "7", "8a", "8b"];

const SYMMETRIC: [(u32, u32); 3] = [(1, 1), (2, 2), (3, 3)];
const ASYMMETRIC: [(u32, u32); 6] = [(1, 0), (2, 0), (2, 1), (3, 0), (3, 1), (3, 2)];

/// One `(series, x, y)` triple.
#[derive(Debug, Clone, PartialEq)]
pub struct FigurePoint {
    pub series: String,
    pub x: f64,
    pub y: f64,
}

#[derive(Clone, Copy)]
enum Quantity {
    Entropy,
    Epr,
    SumSqueeze,
    Fidelity(f64),
}

fn label(kind: OpKind, k: u32, l: u32) -> String {
    if k == 0 && l == 0 {
        "tmsv".into()
    } else {
        format!("{}({k},{l})", kind.short())
    }
}

fn grid(start: f64, end: f64) -> Vec<f64> {
    Grid::Range { start, end, step: 0.02 }.points().expect("static grid")
}

fn input_for(eps: f64) -> Result<InputState> {
    if eps == 0.0 {
        Ok(InputState::coherent(Complex64::new(0.0, 0.0)))
    } else {
        InputState::squeezed(eps)
    }
}

fn evaluate(q: Quantity, spec: &ResourceSpec) -> Result<f64> {
    match q {
        Quantity::Entropy => entropy(spec),
        Quantity::Epr => epr_correlation(spec),
        Quantity::SumSqueeze => sum_squeezing_optimal(spec).map(|(_, s)| s),
        Quantity::Fidelity(eps) => Ok(fidelity(spec, &input_for(eps)?)?.value),
    }
}

fn r_series(q: Quantity, series: &[(OpKind, u32, u32)]) -> Result<Vec<FigurePoint>> {
    let rs = grid(0.0, 2.0);
    let jobs: Vec<(OpKind, u32, u32, f64)> = series
        .iter()
        .flat_map(|&(kind, k, l)| rs.iter().map(move |&r| (kind, k, l, r)))
        .filter(|&(kind, k, l, r)| !(kind == OpKind::Subtract && k + l > 0 && r == 0.0))
        .collect();
    jobs.into_par_iter()
        .map(|(kind, k, l, r)| {
            let spec = ResourceSpec::new(kind, k, l, r)?;
            Ok(FigurePoint { series: label(kind, k, l), x: r, y: evaluate(q, &spec)? })
        })
        .collect()
}

fn with_tmsv(kinds: &[OpKind], shapes: &[(u32, u32)]) -> Vec<(OpKind, u32, u32)> {
    let mut v = vec![(OpKind::Subtract, 0, 0)];
    for &kind in kinds {
        v.extend(shapes.iter().map(|&(k, l)| (kind, k, l)));
    }
    v
}

fn eps_series(r: f64) -> Result<Vec<FigurePoint>> {
    let mut out = Vec::new();
    for (kind, k, l) in with_tmsv(&[OpKind::Subtract, OpKind::Add], &SYMMETRIC) {
        let spec = ResourceSpec::new(kind, k, l, r)?;
        for eps in grid(0.0, 2.0) {
            out.push(FigurePoint { series: label(kind, k, l), x: eps, y: fidelity(&spec, &input_for(eps)?)?.value });
        }
    }
    Ok(out)
}

fn fixed_axis(axis: XAxis, xs: &[f64]) -> Result<Vec<FigurePoint>> {
    let coherent = InputState::coherent(Complex64::new(0.0, 0.0));
    let mut out = Vec::new();
    for (kind, k, l) in with_tmsv(&[OpKind::Subtract], &SYMMETRIC) {
        for p in parametric_curve(kind, k, l, &coherent, axis, xs)? {
            out.push(FigurePoint { series: label(kind, k, l), x: p.x, y: p.fidelity });
        }
    }
    Ok(out)
}

/// The `(series, x, y)` data of figure panel `id`.
pub fn figure_points(id: &str) -> Result<Vec<FigurePoint>> {
    use OpKind::{Add, Subtract};
    match id {
        "1a" => r_series(Quantity::Entropy, &with_tmsv(&[Subtract], &SYMMETRIC)),
        "1b" => r_series(Quantity::Entropy, &with_tmsv(&[Subtract], &[(3, 3), (3, 2), (3, 1), (3, 0)])),
        "2" => r_series(Quantity::Epr, &with_tmsv(&[Add, Subtract], &SYMMETRIC)),
        "3a" => r_series(Quantity::Epr, &with_tmsv(&[Subtract], &ASYMMETRIC)),
        "3b" => r_series(Quantity::Epr, &with_tmsv(&[Add], &ASYMMETRIC)),
        "4" => r_series(Quantity::SumSqueeze, &with_tmsv(&[Add, Subtract], &[(1, 1), (2, 2), (5, 5)])),
        "5a" => r_series(Quantity::Fidelity(0.0), &with_tmsv(&[Subtract, Add], &SYMMETRIC)),
        "5b" => r_series(Quantity::Fidelity(0.6), &with_tmsv(&[Subtract, Add], &SYMMETRIC)),
        "6a" => r_series(Quantity::Fidelity(0.0), &with_tmsv(&[Subtract], &ASYMMETRIC)),
        "6b" => r_series(Quantity::Fidelity(0.0), &with_tmsv(&[Add], &ASYMMETRIC)),
        "7" => eps_series(0.3),
        "8a" => fixed_axis(XAxis::Epr, &grid(0.1, 1.9)),
        "8b" => fixed_axis(XAxis::Entropy, &grid(0.1, 3.0)),
        other => Err(Error::UnknownFigure(other.to_string())),
    }
}
