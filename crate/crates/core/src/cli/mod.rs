//! Batch front end shared by the binary and the examples: run configuration,
//! the individual commands, and CSV/JSON emission.

mod figures;
mod table;
mod verify;

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::PathBuf;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::metrics::{metrics, solve_r_for_epr};
use crate::moments::{OpKind, ResourceSpec};
use crate::reference::{FIXED_EPR_TABLE, REFERENCE_EPR, TOL_ENTROPY, TOL_FIDELITY, TOL_R};
use crate::states::{build_state, entropy};
use crate::teleport::{fidelity, parametric_curve, InputState, XAxis};

pub use figures::{figure_points, FigurePoint, FIGURE_IDS};
pub use table::{Cell, Table};
pub use verify::{run_verify, CheckResult, VerifyReport};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Command {
    Metrics,
    Fidelity,
    Sweep,
    Table1,
    Figure,
    Verify,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum InputKind {
    Coherent,
    Squeezed,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
}

/// A single value or an inclusive arithmetic range `start:end:step`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Grid {
    Single(f64),
    Range { start: f64, end: f64, step: f64 },
}

impl Grid {
    /// Parses `A:B:STEP`.
    pub fn parse_range(s: &str) -> Result<Grid> {
        let parts: Vec<&str> = s.split(':').collect();
        let [a, b, c] = parts.as_slice() else {
            return Err(Error::Config(format!("range `{s}` is not of the form A:B:STEP")));
        };
        let num = |t: &str| {
            t.trim().parse::<f64>().map_err(|_| Error::Config(format!("`{t}` in range `{s}` is not a number")))
        };
        let g = Grid::Range { start: num(a)?, end: num(b)?, step: num(c)? };
        g.points()?;
        Ok(g)
    }

    /// The grid values; each point is `start + i·step`, never accumulated.
    pub fn points(&self) -> Result<Vec<f64>> {
        match *self {
            Grid::Single(v) => Ok(vec![v]),
            Grid::Range { start, end, step } => {
                if !(step > 0.0 && step.is_finite() && start.is_finite() && end.is_finite()) {
                    return Err(Error::Config(format!("range step {step} must be positive and finite")));
                }
                if end < start {
                    return Err(Error::Config(format!("empty range {start}:{end}:{step}")));
                }
                let n = ((end - start) / step + 1e-9).floor() as usize;
                Ok((0..=n).map(|i| start + i as f64 * step).collect())
            }
        }
    }
}

/// Everything a command needs; serialized verbatim into output metadata.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunConfig {
    pub command: Command,
    pub kind: OpKind,
    pub k: u32,
    pub l: u32,
    pub r: Option<Grid>,
    pub input: InputKind,
    pub epsilon: f64,
    pub beta: [f64; 2],
    pub x_axis: XAxis,
    pub figure: Option<String>,
    pub format: Format,
    pub out: Option<PathBuf>,
    pub tail_tol: f64,
    /// Overrides every tolerance of the verify suite.
    pub tolerance: Option<f64>,
    /// Verify on a reduced quadrature grid.
    pub quick: bool,
    /// Optional Fock-amplitude dump for the first grid point (metrics only).
    pub state_out: Option<PathBuf>,
}

impl RunConfig {
    pub fn new(command: Command) -> Self {
        RunConfig {
            command,
            kind: OpKind::Subtract,
            k: 0,
            l: 0,
            r: None,
            input: InputKind::Coherent,
            epsilon: 0.0,
            beta: [0.0, 0.0],
            x_axis: XAxis::Squeezing,
            figure: None,
            format: Format::Csv,
            out: None,
            tail_tol: crate::states::DEFAULT_TAIL_TOL,
            tolerance: None,
            quick: false,
            state_out: None,
        }
    }

    pub fn config_line(&self) -> String {
        serde_json::to_string(self).unwrap_or_default()
    }

    pub fn input_state(&self) -> Result<InputState> {
        let beta = Complex64::new(self.beta[0], self.beta[1]);
        match self.input {
            InputKind::Coherent => Ok(InputState::coherent(beta)),
            InputKind::Squeezed => InputState::displaced_squeezed(self.epsilon, beta),
        }
    }

    fn grid(&self) -> Result<Vec<f64>> {
        self.r
            .ok_or_else(|| Error::Config("this command needs --r or --r-range".into()))?
            .points()
    }

    fn spec_at(&self, r: f64) -> Result<ResourceSpec> {
        ResourceSpec::new(self.kind, self.k, self.l, r)
    }

    /// Checks cross-field consistency before anything is computed.
    pub fn validate(&self) -> Result<()> {
        if let Some(g) = &self.r {
            g.points()?;
        }
        if !(self.tail_tol > 0.0 && self.tail_tol <= 1e-6) {
            return Err(Error::Config(format!("--tail-tol {} outside (0, 1e-6]", self.tail_tol)));
        }
        if let Some(t) = self.tolerance {
            if !(t > 0.0 && t.is_finite()) {
                return Err(Error::Config(format!("--tolerance {t} must be positive")));
            }
        }
        if self.command == Command::Figure && self.figure.is_none() {
            return Err(Error::Config("figure command needs --figure ID".into()));
        }
        if self.command == Command::Sweep && !matches!(self.r, Some(Grid::Range { .. })) {
            return Err(Error::Config("sweep needs --r-range A:B:STEP".into()));
        }
        // envelope of the requested shape, independent of r
        ResourceSpec::new(self.kind, self.k, self.l, 0.5)?;
        self.input_state()?;
        Ok(())
    }
}

/// Result of running a command: its table, and whether it counts as a pass.
#[derive(Debug, Clone, PartialEq)]
pub struct RunOutput {
    pub table: Table,
    pub passed: bool,
}

/// Dispatches on `cfg.command`.
pub fn run(cfg: &RunConfig) -> Result<RunOutput> {
    cfg.validate()?;
    let ok = |table| Ok(RunOutput { table, passed: true });
    match cfg.command {
        Command::Metrics => ok(run_metrics(cfg)?),
        Command::Fidelity => ok(run_fidelity(cfg)?),
        Command::Sweep => ok(run_sweep(cfg)?),
        Command::Table1 => ok(run_table1(cfg)?),
        Command::Figure => ok(run_figure(cfg)?),
        Command::Verify => {
            let report = run_verify(cfg)?;
            Ok(RunOutput { passed: report.passed(), table: report.to_table() })
        }
    }
}

/// Writes the table to `cfg.out` (or stdout) in the configured format.
pub fn emit(cfg: &RunConfig, table: &Table) -> Result<()> {
    let sink: Box<dyn Write> = match &cfg.out {
        Some(path) => Box::new(BufWriter::new(File::create(path)?)),
        None => Box::new(BufWriter::new(std::io::stdout().lock())),
    };
    match cfg.format {
        Format::Csv => table.write_csv(sink, &cfg.config_line()),
        Format::Json => table.write_json(sink),
    }
}

pub fn run_metrics(cfg: &RunConfig) -> Result<Table> {
    let mut t = Table::new(
        "figures of merit",
        &["kind", "k", "l", "r", "epr", "var_x", "var_p", "sum_squeeze_opt", "phi_opt", "entropy_bits"],
    );
    let grid = cfg.grid()?;
    if let (Some(path), Some(&r0)) = (&cfg.state_out, grid.first()) {
        let spec = cfg.spec_at(r0)?;
        let state = build_state(&spec, cfg.tail_tol)?;
        state.write_csv(BufWriter::new(File::create(path)?), &format!("{} r={r0}", spec.label()))?;
    }
    for r in grid {
        let m = metrics(&cfg.spec_at(r)?)?;
        t.push(vec![
            m.kind.short().into(),
            m.k.into(),
            m.l.into(),
            m.r.into(),
            m.epr.into(),
            m.var_x.into(),
            m.var_p.into(),
            m.sum_squeeze_opt.into(),
            m.phi_opt.into(),
            m.entropy_bits.into(),
        ]);
    }
    Ok(t)
}

fn axis_name(a: XAxis) -> &'static str {
    match a {
        XAxis::Squeezing => "r",
        XAxis::Epr => "epr",
        XAxis::Entropy => "entropy",
    }
}

pub fn run_fidelity(cfg: &RunConfig) -> Result<Table> {
    let input = cfg.input_state()?;
    let mut t = Table::new("teleportation fidelity", &["kind", "k", "l", "x_axis", "x", "r", "epsilon", "fidelity"]);
    let pts = parametric_curve(cfg.kind, cfg.k, cfg.l, &input, cfg.x_axis, &cfg.grid()?)?;
    for p in pts {
        t.push(vec![
            cfg.kind.short().into(),
            cfg.k.into(),
            cfg.l.into(),
            axis_name(cfg.x_axis).into(),
            p.x.into(),
            p.r.into(),
            input.epsilon().into(),
            p.fidelity.into(),
        ]);
    }
    Ok(t)
}

pub fn run_sweep(cfg: &RunConfig) -> Result<Table> {
    let input = cfg.input_state()?;
    let mut t = Table::new(
        "squeezing sweep",
        &["kind", "k", "l", "r", "epr", "var_p", "sum_squeeze_opt", "entropy_bits", "fidelity_coherent", "fidelity_input"],
    );
    // Grid points are independent; collect keeps them in grid order.
    let rows: Vec<Vec<Cell>> = cfg
        .grid()?
        .into_par_iter()
        .map(|r| {
            let spec = cfg.spec_at(r)?;
            let m = metrics(&spec)?;
            let fc = fidelity(&spec, &InputState::coherent(Complex64::new(0.0, 0.0)))?;
            let fi = fidelity(&spec, &input)?;
            Ok(vec![
                spec.kind().short().into(),
                spec.k().into(),
                spec.l().into(),
                r.into(),
                m.epr.into(),
                m.var_p.into(),
                m.sum_squeeze_opt.into(),
                m.entropy_bits.into(),
                fc.value.into(),
                fi.value.into(),
            ])
        })
        .collect::<Result<_>>()?;
    rows.into_iter().for_each(|row| t.push(row));
    Ok(t)
}

/// One solved column of the fixed-EPR comparison.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Table1Row {
    pub k: u32,
    pub l: u32,
    pub r: f64,
    pub fidelity: f64,
    pub entropy: f64,
    pub ref_r: f64,
    pub ref_fidelity: f64,
    pub ref_entropy: f64,
}

impl Table1Row {
    pub fn within_tolerance(&self) -> (bool, bool, bool) {
        (
            (self.r - self.ref_r).abs() <= TOL_R,
            (self.fidelity - self.ref_fidelity).abs() <= TOL_FIDELITY,
            (self.entropy - self.ref_entropy).abs() <= TOL_ENTROPY,
        )
    }
}

/// Solves `Υ(r) = 1` for each printed photon-subtracted resource and
/// evaluates fidelity and entropy there.
pub fn table1_rows() -> Result<Vec<Table1Row>> {
    FIXED_EPR_TABLE
        .iter()
        .map(|p| {
            let r = solve_r_for_epr(OpKind::Subtract, p.k, p.l, REFERENCE_EPR)?;
            let spec = ResourceSpec::subtract(p.k, p.l, r)?;
            Ok(Table1Row {
                k: p.k,
                l: p.l,
                r,
                fidelity: fidelity(&spec, &InputState::coherent(Complex64::new(0.0, 0.0)))?.value,
                entropy: entropy(&spec)?,
                ref_r: p.r,
                ref_fidelity: p.fidelity,
                ref_entropy: p.entropy,
            })
        })
        .collect()
}

pub fn run_table1(_cfg: &RunConfig) -> Result<Table> {
    let mut t = Table::new(
        "fixed EPR correlation = 1: solved squeezing, coherent fidelity, entropy",
        &[
            "k", "l", "r", "fidelity", "entropy", "ref_r", "ref_fidelity", "ref_entropy", "diff_r",
            "diff_fidelity", "diff_entropy", "within_tol",
        ],
    );
    for row in table1_rows()? {
        let (a, b, c) = row.within_tolerance();
        t.push(vec![
            row.k.into(),
            row.l.into(),
            row.r.into(),
            row.fidelity.into(),
            row.entropy.into(),
            row.ref_r.into(),
            row.ref_fidelity.into(),
            row.ref_entropy.into(),
            (row.r - row.ref_r).into(),
            (row.fidelity - row.ref_fidelity).into(),
            (row.entropy - row.ref_entropy).into(),
            (a && b && c).into(),
        ]);
    }
    Ok(t)
}

pub fn run_figure(cfg: &RunConfig) -> Result<Table> {
    let id = cfg.figure.as_deref().ok_or_else(|| Error::Config("missing --figure".into()))?;
    let pts = figure_points(id)?;
    let mut t = Table::new(&format!("figure {id} dataset"), &["figure", "series", "x", "y"]);
    for p in pts {
        t.push(vec![id.into(), p.series.into(), p.x.into(), p.y.into()]);
    }
    Ok(t)
}
