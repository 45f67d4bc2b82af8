//! Closed-form moments of the two-mode squeezed vacuum and the expectation
//! values of its photon-subtracted and photon-added descendants.
//!
//! Two moment families are exposed:
//!
//! * antinormal `C[p,q,h,j] = <a^p a†^q b^h b†^j>`
//! * normal     `N[p,q,h,j] = <a†^q a^p b†^j b^h>`
//!
//! both evaluated from the finite resummation
//! `sum_m p!q!h!j! c^(p+h-2m) d^(j-h+2m) / (m!(p-m)!(h-m)!(j-h+m)!)`
//! with `d = sinh(2r)/2` and `c = cosh²r` (antinormal) or `c = sinh²r` (normal).
//! Both vanish unless `p + j == q + h`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::special::{jacobi_log, log_factorial, LogReal};

/// Largest photon number per mode inside the supported envelope.
pub const MAX_PHOTONS: u32 = 30;
/// Largest two-mode squeezing parameter inside the supported envelope.
pub const MAX_SQUEEZING: f64 = 5.0;
/// Largest operator exponent accepted by [`MomentQuery`].
pub const MAX_EXPONENT: u32 = 64;

/// Which non-Gaussian operation was applied to the squeezed vacuum.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OpKind {
    /// `a^k b^l |r>` (photon subtraction).
    Subtract,
    /// `a†^k b†^l |r>` (photon addition).
    Add,
}

impl OpKind {
    pub fn short(self) -> &'static str {
        match self {
            OpKind::Subtract => "ps",
            OpKind::Add => "pa",
        }
    }
}

impl std::str::FromStr for OpKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "ps" | "subtract" => Ok(OpKind::Subtract),
            "pa" | "add" => Ok(OpKind::Add),
            other => Err(Error::Config(format!("unknown operation kind `{other}`"))),
        }
    }
}

/// A fully specified resource state: operation, photon counts, squeezing.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ResourceSpec {
    kind: OpKind,
    k: u32,
    l: u32,
    r: f64,
}

impl ResourceSpec {
    pub fn new(kind: OpKind, k: u32, l: u32, r: f64) -> Result<Self> {
        if k > MAX_PHOTONS || l > MAX_PHOTONS {
            return Err(Error::Envelope(format!(
                "photon counts (k, l) = ({k}, {l}) exceed {MAX_PHOTONS}"
            )));
        }
        if !r.is_finite() || !(0.0..=MAX_SQUEEZING).contains(&r) {
            return Err(Error::Envelope(format!("squeezing r = {r} outside [0, {MAX_SQUEEZING}]")));
        }
        if kind == OpKind::Subtract && k + l > 0 && r == 0.0 {
            return Err(Error::Degenerate(format!(
                "subtracting ({k}, {l}) photons from the vacuum (r = 0) annihilates the state"
            )));
        }
        Ok(ResourceSpec { kind, k, l, r })
    }

    /// The untouched two-mode squeezed vacuum.
    pub fn tmsv(r: f64) -> Result<Self> {
        Self::new(OpKind::Subtract, 0, 0, r)
    }

    pub fn subtract(k: u32, l: u32, r: f64) -> Result<Self> {
        Self::new(OpKind::Subtract, k, l, r)
    }

    pub fn add(k: u32, l: u32, r: f64) -> Result<Self> {
        Self::new(OpKind::Add, k, l, r)
    }

    pub fn with_r(&self, r: f64) -> Result<Self> {
        Self::new(self.kind, self.k, self.l, r)
    }

    pub fn kind(&self) -> OpKind {
        self.kind
    }
    pub fn k(&self) -> u32 {
        self.k
    }
    pub fn l(&self) -> u32 {
        self.l
    }
    pub fn r(&self) -> f64 {
        self.r
    }

    /// Mode-exchanged twin `(l, k)`.
    pub fn swapped(&self) -> Self {
        ResourceSpec { k: self.l, l: self.k, ..*self }
    }

    pub fn label(&self) -> String {
        if self.k == 0 && self.l == 0 {
            "tmsv".to_string()
        } else {
            format!("{}({},{})", self.kind.short(), self.k, self.l)
        }
    }
}

/// Operator exponents `(p, q, h, j)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct MomentQuery {
    pub p: u32,
    pub q: u32,
    pub h: u32,
    pub j: u32,
}

impl MomentQuery {
    pub fn new(p: u32, q: u32, h: u32, j: u32) -> Result<Self> {
        if [p, q, h, j].iter().any(|&e| e > MAX_EXPONENT) {
            return Err(Error::Envelope(format!(
                "moment exponents ({p},{q},{h},{j}) exceed {MAX_EXPONENT}"
            )));
        }
        Ok(MomentQuery { p, q, h, j })
    }

    /// `(k, k, l, l)`: the query whose moment is the normalization.
    pub fn diagonal(k: u32, l: u32) -> Self {
        MomentQuery { p: k, q: k, h: l, j: l }
    }

    /// True when the photon-number balance allows a nonzero value.
    pub fn is_balanced(&self) -> bool {
        self.p + self.j == self.q + self.h
    }
}

// e * ln(base) with 0 * ln(0) = 0, so that 0^0 = 1.
fn ln_pow(ln_base: f64, e: u32) -> f64 {
    if e == 0 {
        0.0
    } else {
        f64::from(e) * ln_base
    }
}

fn ln_sinh(r: f64) -> f64 {
    if r == 0.0 {
        f64::NEG_INFINITY
    } else if r > 20.0 {
        r - std::f64::consts::LN_2 + (-(2.0 * r)).exp().mul_add(-1.0, 1.0).ln()
    } else {
        r.sinh().ln()
    }
}

fn ln_cosh(r: f64) -> f64 {
    r.abs() - std::f64::consts::LN_2 + (-2.0 * r.abs()).exp().ln_1p()
}

fn resummed_moment(q: MomentQuery, ln_c: f64, r: f64) -> LogReal {
    if !q.is_balanced() {
        return LogReal::ZERO;
    }
    let MomentQuery { p, q: qq, h, j } = q;
    let ln_d = ln_sinh(2.0 * r) - std::f64::consts::LN_2;
    let ln_num = log_factorial(p as usize)
        + log_factorial(qq as usize)
        + log_factorial(h as usize)
        + log_factorial(j as usize);
    let m_lo = h.saturating_sub(j);
    let m_hi = p.min(h);
    (m_lo..=m_hi)
        .map(|m| {
            let e_c = p + h - 2 * m;
            let e_d = j + 2 * m - h;
            let ln_term = ln_num + ln_pow(ln_c, e_c) + ln_pow(ln_d, e_d)
                - log_factorial(m as usize)
                - log_factorial((p - m) as usize)
                - log_factorial((h - m) as usize)
                - log_factorial((j + m - h) as usize);
            LogReal::from_ln(ln_term)
        })
        .sum()
}

/// `ln`-domain antinormal moment `<a^p a†^q b^h b†^j>` of the squeezed vacuum.
pub fn moment_antinormal_log(q: MomentQuery, r: f64) -> LogReal {
    resummed_moment(q, 2.0 * ln_cosh(r), r)
}

/// `ln`-domain normal moment `<a†^q a^p b†^j b^h>` of the squeezed vacuum.
pub fn moment_normal_log(q: MomentQuery, r: f64) -> LogReal {
    resummed_moment(q, 2.0 * ln_sinh(r), r)
}

/// `C[p,q,h,j] = <a^p a†^q b^h b†^j>` in the squeezed vacuum `|r>`.
pub fn moment_antinormal(q: MomentQuery, r: f64) -> f64 {
    moment_antinormal_log(q, r).to_f64()
}

/// `N[p,q,h,j] = <a†^q a^p b†^j b^h>` in the squeezed vacuum `|r>`.
pub fn moment_normal(q: MomentQuery, r: f64) -> f64 {
    moment_normal_log(q, r).to_f64()
}

/// Jacobi closed form of `C[k,l]` / `N[k,l]` without envelope checks.
///
/// Assumes `k >= l` after an internal swap (the squeezed vacuum is symmetric
/// under mode exchange).
pub(crate) fn log_normalization_raw(kind: OpKind, k: u32, l: u32, r: f64) -> LogReal {
    let (k, l) = if k >= l { (k, l) } else { (l, k) };
    let x = (2.0 * r).cosh();
    let ln_fact = log_factorial(k as usize) + log_factorial(l as usize);
    let diff = (k - l) as i32;
    let (ln_h, jac) = match kind {
        OpKind::Add => (2.0 * ln_cosh(r), jacobi_log(l, 0, diff, x)),
        OpKind::Subtract => (2.0 * ln_sinh(r), jacobi_log(l, diff, 0, x)),
    };
    // x = cosh 2r >= 1 always, parameters are nonnegative: cannot fail.
    let jac = jac.expect("Jacobi parameters valid for x >= 1");
    LogReal::from_ln(ln_fact + ln_pow(ln_h, k)) * jac
}

/// Log-domain normalization factor (`C[k,l]` for addition, `N[k,l]` for subtraction).
pub fn log_normalization(spec: &ResourceSpec) -> Result<LogReal> {
    if spec.kind == OpKind::Subtract && spec.k + spec.l > 0 && spec.r == 0.0 {
        return Err(Error::Degenerate("N[k,l] vanishes at r = 0".into()));
    }
    Ok(log_normalization_raw(spec.kind, spec.k, spec.l, spec.r))
}

/// Normalization factor of the resource state as a float.
///
/// May overflow to `inf` at the far edge of the envelope; use
/// [`log_normalization`] when forming ratios.
pub fn normalization(spec: &ResourceSpec) -> Result<f64> {
    log_normalization(spec).map(|v| v.to_f64())
}

/// Low-order expectation values of a resource state.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ExpectationSet {
    pub a: f64,
    pub a_dag: f64,
    pub b: f64,
    pub b_dag: f64,
    /// `<a†a>`
    pub n_a: f64,
    /// `<b†b>`
    pub n_b: f64,
    /// `<ab>`
    pub ab: f64,
    /// `<a†b†>`
    pub a_dag_b_dag: f64,
    /// `<a²b²>`
    pub a2b2: f64,
    /// `<a†a b†b>`
    pub n_a_n_b: f64,
}

/// Expectation values of the PS / PA state built from `spec`, as ratios of
/// squeezed-vacuum moments.
pub fn resource_expectations(spec: &ResourceSpec) -> Result<ExpectationSet> {
    let den = log_normalization(spec)?;
    let (k, l, r) = (spec.k, spec.l, spec.r);
    let q = |p, qq, h, j| MomentQuery { p, q: qq, h, j };
    Ok(match spec.kind {
        OpKind::Subtract => {
            let n4 = |m: MomentQuery| moment_normal_log(m, r).ratio(den);
            let norm = |kk, ll| log_normalization_raw(OpKind::Subtract, kk, ll, r).ratio(den);
            ExpectationSet {
                a: n4(q(k + 1, k, l, l)),
                a_dag: n4(q(k, k + 1, l, l)),
                b: n4(q(k, k, l + 1, l)),
                b_dag: n4(q(k, k, l, l + 1)),
                n_a: norm(k + 1, l),
                n_b: norm(k, l + 1),
                ab: n4(q(k + 1, k, l + 1, l)),
                a_dag_b_dag: n4(q(k, k + 1, l, l + 1)),
                a2b2: n4(q(k + 2, k, l + 2, l)),
                n_a_n_b: norm(k + 1, l + 1),
            }
        }
        OpKind::Add => {
            let c4 = |m: MomentQuery| moment_antinormal_log(m, r).ratio(den);
            let norm = |kk, ll| log_normalization_raw(OpKind::Add, kk, ll, r).ratio(den);
            let (c_k1, c_l1) = (norm(k + 1, l), norm(k, l + 1));
            ExpectationSet {
                a: c4(q(k + 1, k, l, l)),
                a_dag: c4(q(k, k + 1, l, l)),
                b: c4(q(k, k, l + 1, l)),
                b_dag: c4(q(k, k, l, l + 1)),
                n_a: c_k1 - 1.0,
                n_b: c_l1 - 1.0,
                ab: c4(q(k + 1, k, l + 1, l)),
                a_dag_b_dag: c4(q(k, k + 1, l, l + 1)),
                a2b2: c4(q(k + 2, k, l + 2, l)),
                n_a_n_b: norm(k + 1, l + 1) - c_k1 - c_l1 + 1.0,
            }
        }
    })
}
