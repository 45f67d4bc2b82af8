//! Coefficient extraction from exponential generating functions in four
//! formal variables `(f, s, t, τ)`.
//!
//! A generating function here is always `exp(Q)` with `Q` a polynomial of
//! degree at most two. The coefficient of `f^p s^q t^h τ^j`, multiplied by
//! `p! q! h! j!`, is what [`extract_coefficient`] returns. The computation runs
//! a truncated Horner scheme `P ← 1 + Q·P/m` on a dense grid of
//! coefficients, after rescaling the variables so no intermediate overflows.

use crate::error::{Error, Result};
use crate::special::{log_factorial, LogReal};

/// The four formal variables, in storage order.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Var {
    F = 0,
    S = 1,
    T = 2,
    Tau = 3,
}

impl Var {
    pub const ALL: [Var; 4] = [Var::F, Var::S, Var::T, Var::Tau];
}

// Index of the unordered pair (i, j), i <= j, in the 10-slot quadratic table.
fn pair_index(i: usize, j: usize) -> usize {
    let (i, j) = if i <= j { (i, j) } else { (j, i) };
    // rows: (0,0..3) (1,1..3) (2,2..3) (3,3)
    [0, 4, 7, 9][i] + (j - i)
}

/// `Q = Σ_{i<=j} q_ij x_i x_j + Σ_i λ_i x_i` over the variables `(f, s, t, τ)`.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct ExponentForm {
    quad: [f64; 10],
    lin: [f64; 4],
}

impl ExponentForm {
    pub fn zero() -> Self {
        Self::default()
    }

    /// Sets the coefficient of `x_i x_j` (of `x_i²` when `i == j`).
    pub fn with_quad(mut self, i: Var, j: Var, c: f64) -> Self {
        self.quad[pair_index(i as usize, j as usize)] = c;
        self
    }

    pub fn with_lin(mut self, i: Var, c: f64) -> Self {
        self.lin[i as usize] = c;
        self
    }

    pub fn quad(&self, i: Var, j: Var) -> f64 {
        self.quad[pair_index(i as usize, j as usize)]
    }

    pub fn lin(&self, i: Var) -> f64 {
        self.lin[i as usize]
    }

    /// `(fs + tτ) cosh²r + (ft + sτ) sinh(2r)/2`: generates the antinormal
    /// moments of the squeezed vacuum.
    pub fn antinormal_moments(r: f64) -> Self {
        Self::vacuum_like(r.cosh().powi(2), r)
    }

    /// Same as [`ExponentForm::antinormal_moments`] with `sinh²r`: generates
    /// the normal-ordered moments.
    pub fn normal_moments(r: f64) -> Self {
        Self::vacuum_like(r.sinh().powi(2), r)
    }

    fn vacuum_like(c: f64, r: f64) -> Self {
        let d = 0.5 * (2.0 * r).sinh();
        Self::zero()
            .with_quad(Var::F, Var::S, c)
            .with_quad(Var::T, Var::Tau, c)
            .with_quad(Var::F, Var::T, d)
            .with_quad(Var::S, Var::Tau, d)
    }

    fn terms(&self) -> Vec<([usize; 4], f64)> {
        let mut out = Vec::with_capacity(14);
        for i in 0..4 {
            for j in i..4 {
                let c = self.quad[pair_index(i, j)];
                if c != 0.0 {
                    let mut e = [0; 4];
                    e[i] += 1;
                    e[j] += 1;
                    out.push((e, c));
                }
            }
        }
        for i in 0..4 {
            if self.lin[i] != 0.0 {
                let mut e = [0; 4];
                e[i] = 1;
                out.push((e, self.lin[i]));
            }
        }
        out
    }

    fn scaled(&self, mu: f64) -> Self {
        let mut out = *self;
        out.quad.iter_mut().for_each(|c| *c *= mu * mu);
        out.lin.iter_mut().for_each(|c| *c *= mu);
        out
    }
}

/// Dense polynomial in four variables truncated at per-variable caps.
#[derive(Debug, Clone, PartialEq)]
pub struct Poly4 {
    caps: [usize; 4],
    strides: [usize; 4],
    coeffs: Vec<f64>,
}

impl Poly4 {
    pub fn zeros(caps: [usize; 4]) -> Self {
        let dims = caps.map(|c| c + 1);
        let strides = [dims[1] * dims[2] * dims[3], dims[2] * dims[3], dims[3], 1];
        Poly4 { caps, strides, coeffs: vec![0.0; dims.iter().product()] }
    }

    pub fn one(caps: [usize; 4]) -> Self {
        let mut p = Self::zeros(caps);
        p.coeffs[0] = 1.0;
        p
    }

    pub fn caps(&self) -> [usize; 4] {
        self.caps
    }

    fn offset(&self, e: [usize; 4]) -> usize {
        e.iter().zip(&self.strides).map(|(a, b)| a * b).sum()
    }

    pub fn get(&self, e: [usize; 4]) -> f64 {
        if e.iter().zip(&self.caps).any(|(a, c)| a > c) {
            0.0
        } else {
            self.coeffs[self.offset(e)]
        }
    }

    pub fn set(&mut self, e: [usize; 4], v: f64) {
        let o = self.offset(e);
        self.coeffs[o] = v;
    }

    /// `out += c · x^e · self`, dropping monomials beyond the caps.
    fn add_shifted(&self, e: [usize; 4], c: f64, out: &mut Poly4) {
        let [c0, c1, c2, c3] = self.caps;
        if e.iter().zip(&self.caps).any(|(a, cap)| a > cap) {
            return;
        }
        let shift = self.offset(e);
        let st = self.strides;
        for i0 in 0..=(c0 - e[0]) {
            for i1 in 0..=(c1 - e[1]) {
                for i2 in 0..=(c2 - e[2]) {
                    let base = i0 * st[0] + i1 * st[1] + i2 * st[2];
                    let n3 = c3 - e[3] + 1;
                    let src = &self.coeffs[base..base + n3];
                    let dst = &mut out.coeffs[base + shift..base + shift + n3];
                    for (d, s) in dst.iter_mut().zip(src) {
                        *d += c * s;
                    }
                }
            }
        }
    }

    /// Product with the sparse quadratic form, truncated to the same caps.
    pub fn mul_form(&self, form: &ExponentForm) -> Poly4 {
        let mut out = Poly4::zeros(self.caps);
        for (e, c) in form.terms() {
            self.add_shifted(e, c, &mut out);
        }
        out
    }
}

fn check_orders(orders: [u32; 4]) -> Result<()> {
    if orders.iter().any(|&o| o > 64) {
        return Err(Error::Envelope(format!("extraction orders {orders:?} exceed 64")));
    }
    let cells: f64 = orders.iter().map(|&o| f64::from(o) + 1.0).product();
    if cells > 6.0e7 {
        return Err(Error::Blowup(format!("dense grid for orders {orders:?} has {cells} cells")));
    }
    Ok(())
}

/// Raw coefficient of `x^orders` in `exp(form)` (without factorials).
fn raw_coefficient(form: &ExponentForm, orders: [u32; 4]) -> f64 {
    let caps = orders.map(|o| o as usize);
    let degree: usize = caps.iter().sum();
    let mut p = Poly4::one(caps);
    for m in (1..=degree).rev() {
        let mut next = p.mul_form(form);
        let inv = 1.0 / m as f64;
        next.coeffs.iter_mut().for_each(|c| *c *= inv);
        next.coeffs[0] += 1.0;
        p = next;
    }
    p.get(caps)
}

/// `p!q!h!j! × [f^p s^q t^h τ^j] exp(form)` in the log domain.
pub fn extract_coefficient_log(form: &ExponentForm, orders: [u32; 4]) -> Result<LogReal> {
    check_orders(orders)?;
    let degree: u32 = orders.iter().sum();
    let qmax = form.quad.iter().fold(0.0f64, |a, c| a.max(c.abs()));
    let lmax = form.lin.iter().fold(0.0f64, |a, c| a.max(c.abs()));
    if !(qmax.is_finite() && lmax.is_finite()) {
        return Err(Error::Domain("non-finite generating-function coefficient".into()));
    }
    // Choose μ so the largest rescaled coefficient is about one.
    let mu = if qmax > 0.0 {
        1.0 / qmax.sqrt().max(lmax)
    } else if lmax > 0.0 {
        1.0 / lmax
    } else {
        1.0
    };
    let raw = raw_coefficient(&form.scaled(mu), orders);
    let ln_fact: f64 = orders.iter().map(|&o| log_factorial(o as usize)).sum();
    Ok(LogReal::from_f64(raw) * LogReal::from_ln(ln_fact - f64::from(degree) * mu.ln()))
}

/// `p!q!h!j! × [f^p s^q t^h τ^j] exp(form)`.
pub fn extract_coefficient(form: &ExponentForm, orders: [u32; 4]) -> Result<f64> {
    extract_coefficient_log(form, orders).map(|v| v.to_f64())
}

/// Largest total degree accepted by [`wick_extract`].
pub const WICK_MAX_DEGREE: u32 = 16;

/// The same quantity as [`extract_coefficient`], evaluated by summing over
/// every partition of the derivative slots into pairs and singletons.
///
/// A pair of slots `(u, v)` contributes `q_uv`, or `2 q_uu` for a repeated
/// variable; a singleton contributes `λ_u`. The cost grows like the telephone
/// numbers, so the total degree is capped at [`WICK_MAX_DEGREE`].
pub fn wick_extract(form: &ExponentForm, orders: [u32; 4]) -> Result<f64> {
    let degree: u32 = orders.iter().sum();
    if degree > WICK_MAX_DEGREE {
        return Err(Error::Blowup(format!(
            "Wick expansion of degree {degree} exceeds {WICK_MAX_DEGREE}"
        )));
    }
    let slots: Vec<usize> =
        (0..4).flat_map(|v| std::iter::repeat_n(v, orders[v] as usize)).collect();
    let mut used = vec![false; slots.len()];
    Ok(wick_rec(form, &slots, &mut used))
}

fn wick_rec(form: &ExponentForm, slots: &[usize], used: &mut [bool]) -> f64 {
    let Some(first) = used.iter().position(|u| !u) else {
        return 1.0;
    };
    used[first] = true;
    let u = slots[first];
    let mut total = 0.0;
    let single = form.lin[u];
    if single != 0.0 {
        total += single * wick_rec(form, slots, used);
    }
    for other in first + 1..slots.len() {
        if used[other] {
            continue;
        }
        let v = slots[other];
        let w = form.quad[pair_index(u, v)] * if u == v { 2.0 } else { 1.0 };
        if w == 0.0 {
            continue;
        }
        used[other] = true;
        total += w * wick_rec(form, slots, used);
        used[other] = false;
    }
    used[first] = false;
    total
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::moments::{moment_antinormal, moment_normal, MomentQuery};
    use proptest::prelude::*;

    fn rel(a: f64, b: f64) -> f64 {
        ((a - b) / b).abs()
    }

    #[test]
    fn pair_indices_are_a_bijection() {
        let mut seen = [false; 10];
        for i in 0..4 {
            for j in i..4 {
                let p = pair_index(i, j);
                assert!(!seen[p]);
                seen[p] = true;
                assert_eq!(p, pair_index(j, i));
            }
        }
    }

    #[test]
    fn single_variable_exponentials() {
        // exp(a f): coefficient of f^n times n! is a^n.
        let form = ExponentForm::zero().with_lin(Var::F, 1.7);
        let v = extract_coefficient(&form, [5, 0, 0, 0]).unwrap();
        assert!(rel(v, 1.7f64.powi(5)) < 1e-14);
        // exp(c f^2): coefficient of f^4 times 4! is c^2 * 4!/2! = 12 c^2.
        let form = ExponentForm::zero().with_quad(Var::F, Var::F, 0.3);
        let v = extract_coefficient(&form, [4, 0, 0, 0]).unwrap();
        assert!(rel(v, 12.0 * 0.09) < 1e-14);
        assert!(rel(wick_extract(&form, [4, 0, 0, 0]).unwrap(), 12.0 * 0.09) < 1e-14);
        // Odd order of a purely quadratic form vanishes.
        assert_eq!(extract_coefficient(&form, [3, 0, 0, 0]).unwrap(), 0.0);
    }

    #[test]
    fn generating_functions_reproduce_resummed_moments() {
        for r in [0.2, 0.8, 1.5] {
            let fa = ExponentForm::antinormal_moments(r);
            let fn_ = ExponentForm::normal_moments(r);
            for (p, q, h, j) in [(1, 1, 0, 0), (2, 2, 1, 1), (3, 2, 1, 0), (2, 3, 4, 5), (4, 4, 4, 4), (2, 0, 2, 0)] {
                let mq = MomentQuery::new(p, q, h, j).unwrap();
                let c = extract_coefficient(&fa, [p, q, h, j]).unwrap();
                let n = extract_coefficient(&fn_, [p, q, h, j]).unwrap();
                assert!(rel(c, moment_antinormal(mq, r)) < 1e-12, "C {p}{q}{h}{j} r={r}");
                assert!(rel(n, moment_normal(mq, r)) < 1e-12, "N {p}{q}{h}{j} r={r}");
            }
        }
    }

    #[test]
    fn large_orders_do_not_overflow() {
        let form = ExponentForm::antinormal_moments(4.0);
        let v = extract_coefficient_log(&form, [20, 20, 20, 20]).unwrap();
        let direct = crate::moments::moment_antinormal_log(MomentQuery::diagonal(20, 20), 4.0);
        assert!((v.ln_abs() - direct.ln_abs()).abs() < 1e-10 * direct.ln_abs());
    }

    #[test]
    fn wick_guard() {
        let form = ExponentForm::antinormal_moments(0.5);
        assert!(matches!(wick_extract(&form, [5, 5, 4, 3]), Err(Error::Blowup(_))));
        assert!(matches!(extract_coefficient(&form, [65, 0, 0, 0]), Err(Error::Envelope(_))));
    }

    fn arb_form() -> impl Strategy<Value = ExponentForm> {
        (prop::array::uniform10(-1.5f64..1.5), prop::array::uniform4(-1.5f64..1.5)).prop_map(
            |(quad, lin)| ExponentForm { quad, lin },
        )
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]
        #[test]
        fn horner_agrees_with_wick(form in arb_form(), p in 0u32..3, q in 0u32..3, h in 0u32..3, j in 0u32..3) {
            let a = extract_coefficient(&form, [p, q, h, j]).unwrap();
            let b = wick_extract(&form, [p, q, h, j]).unwrap();
            // Terms may cancel; compare against the size of the absolute sum.
            let abs_form = ExponentForm { quad: form.quad.map(f64::abs), lin: form.lin.map(f64::abs) };
            let scale = wick_extract(&abs_form, [p, q, h, j]).unwrap().max(1e-300);
            prop_assert!((a - b).abs() <= 1e-12 * scale, "{a} vs {b}");
        }
    }
}
