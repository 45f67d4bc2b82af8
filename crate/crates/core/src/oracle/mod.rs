//! Independent numerical cross-checks.
//!
//! Nothing here uses the Jacobi closed forms or the generating-function
//! engine. States are prepared by literally applying ladder operators to a
//! truncated squeezed vacuum and renormalizing; observables are matrix
//! elements of operator strings; fidelities come from a phase-space
//! quadrature.

pub mod ladder;
pub mod quadrature;

use crate::error::{Error, Result};
use crate::metrics::MetricsReport;
use crate::moments::{MomentQuery, OpKind, ResourceSpec};
use crate::states::TruncatedTwoModeState;
use crate::teleport::InputState;

pub use ladder::{Ladder, LadderRep, SparseTwoMode};
pub use quadrature::{quadrature_fidelity, QuadratureConfig, QuadratureOutcome};

/// Tail tolerance used when the oracle prepares states for its own checks.
pub const ORACLE_TAIL_TOL: f64 = 1e-13;

const MAX_ORACLE_CUTOFF: usize = 200_000;

/// Order of the operator string in [`oracle_moment`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Ordering {
    /// `a†^q a^p b†^j b^h`
    Normal,
    /// `a^p a†^q b^h b†^j`
    Antinormal,
}

/// A numerically evaluated expectation value with a rough truncation bound.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OracleValue {
    pub value: f64,
    pub error_bound: f64,
}

fn tmsv_vector(r: f64, cutoff: usize) -> SparseTwoMode {
    let (t, sech) = (r.tanh(), 1.0 / r.cosh());
    let mut amp = sech;
    SparseTwoMode::from_entries((0..=cutoff).map(|n| {
        let c = amp;
        amp *= t;
        ((n, n), c)
    }))
}

fn operation_string(spec: &ResourceSpec) -> Vec<Ladder> {
    let (ka, kb) = (spec.k() as usize, spec.l() as usize);
    let (a, b) = match spec.kind() {
        OpKind::Subtract => (Ladder::A, Ladder::B),
        OpKind::Add => (Ladder::ADag, Ladder::BDag),
    };
    std::iter::repeat_n(b, kb).chain(std::iter::repeat_n(a, ka)).collect()
}

fn band_from_sparse(v: &SparseTwoMode, tail_mass: f64) -> Result<TruncatedTwoModeState> {
    let entries: Vec<((usize, usize), f64)> = v.iter().filter(|(_, c)| *c != 0.0).collect();
    let Some(&((m0, n0), _)) = entries.first() else {
        return Err(Error::Degenerate("operator string annihilated the state".into()));
    };
    let mut amps = Vec::with_capacity(entries.len());
    for (i, ((m, n), c)) in entries.iter().enumerate() {
        if *m != m0 + i || *n != n0 + i {
            return Err(Error::Domain(format!("state leaves its band at ({m}, {n})")));
        }
        amps.push(*c);
    }
    Ok(TruncatedTwoModeState::from_band((m0, n0), amps, tail_mass))
}

/// Prepares `a^k b^l |r>` or `a†^k b†^l |r>` by operator application on a
/// truncated squeezed vacuum, normalized numerically.
///
/// The Fock cutoff doubles until the trailing weights, extrapolated
/// geometrically, account for less than `tail_tol` of the total.
pub fn prepare_state(spec: &ResourceSpec, tail_tol: f64) -> Result<TruncatedTwoModeState> {
    let ops = operation_string(spec);
    let extra = (spec.k() + spec.l()) as usize;
    let mut cutoff = 64usize;
    loop {
        let psi0 = tmsv_vector(spec.r(), cutoff);
        let rep = LadderRep::new(cutoff + extra, cutoff + extra);
        let psi = rep.apply_seq(&ops, &psi0);
        let total = psi.norm_sq();
        if total == 0.0 {
            return Err(Error::Degenerate(format!("{} has zero norm", spec.label())));
        }
        let weights: Vec<f64> = psi.iter().map(|(_, c)| c * c).collect();
        let n = weights.len();
        let last = weights[n - 1];
        let tail = if last == 0.0 || n < 2 {
            0.0
        } else {
            let rho = last / weights[n - 2];
            if rho < 1.0 {
                last * rho / (1.0 - rho)
            } else {
                f64::INFINITY
            }
        };
        let rel_tail = tail / total;
        if rel_tail < tail_tol {
            return band_from_sparse(&psi.scaled(1.0 / total.sqrt()), rel_tail);
        }
        if cutoff >= MAX_ORACLE_CUTOFF {
            return Err(Error::CutoffExplosion { required: 2 * cutoff, limit: MAX_ORACLE_CUTOFF });
        }
        cutoff *= 2;
    }
}

fn as_sparse(state: &TruncatedTwoModeState) -> SparseTwoMode {
    SparseTwoMode::from_entries(state.entries().map(|(m, n, c)| ((m, n), c)))
}

fn moment_string(q: MomentQuery, ordering: Ordering) -> Vec<Ladder> {
    let rep = |op, n: u32| std::iter::repeat_n(op, n as usize);
    match ordering {
        // rightmost factor first
        Ordering::Normal => rep(Ladder::B, q.h)
            .chain(rep(Ladder::BDag, q.j))
            .chain(rep(Ladder::A, q.p))
            .chain(rep(Ladder::ADag, q.q))
            .collect(),
        Ordering::Antinormal => rep(Ladder::BDag, q.j)
            .chain(rep(Ladder::B, q.h))
            .chain(rep(Ladder::ADag, q.q))
            .chain(rep(Ladder::A, q.p))
            .collect(),
    }
}

/// `<ψ|O|ψ>` in an explicit ladder representation; errors when raising
/// operators could be pushed past the caps.
pub fn oracle_moment_in(
    rep: &LadderRep,
    state: &TruncatedTwoModeState,
    q: MomentQuery,
    ordering: Ordering,
) -> Result<OracleValue> {
    let (ma, mb) = state.max_labels();
    rep.require_headroom(ma + q.q as usize, mb + q.j as usize)?;
    let psi = as_sparse(state);
    let out = rep.apply_seq(&moment_string(q, ordering), &psi);
    let value = psi.dot(&out);
    let degree_a = f64::from(q.p + q.q);
    let degree_b = f64::from(q.h + q.j);
    let scale = ((ma as f64 + degree_a + 1.0).powf(degree_a)
        * (mb as f64 + degree_b + 1.0).powf(degree_b))
    .sqrt();
    Ok(OracleValue { value, error_bound: state.tail_mass() * scale })
}

/// [`oracle_moment_in`] with caps sized automatically.
pub fn oracle_moment(state: &TruncatedTwoModeState, q: MomentQuery, ordering: Ordering) -> Result<OracleValue> {
    let (ma, mb) = state.max_labels();
    let rep = LadderRep::new(ma + q.q as usize + 1, mb + q.j as usize + 1);
    oracle_moment_in(&rep, state, q, ordering)
}

// Variance of the real linear combination `i^phase · Σ c op` on a real state:
// `scale_sq · (±<K²> - <K>²)` handled by the caller through `sign`.
fn combo_moments(rep: &LadderRep, psi: &SparseTwoMode, combo: &[(f64, Ladder)]) -> (f64, f64) {
    let k_psi = rep.apply_combo(combo, psi);
    let mean = psi.dot(&k_psi);
    // <K²> = <ψ|K K|ψ>
    let k2 = psi.dot(&rep.apply_combo(combo, &k_psi));
    (mean, k2)
}

/// Figures of merit of a band state, from operator algebra alone.
///
/// Amplitudes are real, so antisymmetric operator products have zero
/// expectation and every variance reduces to real arithmetic.
pub fn state_metrics(state: &TruncatedTwoModeState) -> Result<StateMetrics> {
    use Ladder::*;
    let (ma, mb) = state.max_labels();
    let rep = LadderRep::new(ma + 4, mb + 4);
    let psi = as_sparse(state);
    let h = std::f64::consts::FRAC_1_SQRT_2;

    // X_A - X_B with X = (a + a†)/√2
    let (m1, s1) = combo_moments(&rep, &psi, &[(h, A), (h, ADag), (-h, B), (-h, BDag)]);
    // P_A + P_B = -i K/√2 with K = a - a† + b - b†
    let (m2, s2) = combo_moments(&rep, &psi, &[(h, A), (-h, ADag), (h, B), (-h, BDag)]);
    let epr = (s1 - m1 * m1) + (-s2 + m2 * m2);

    let (mx, sx) = combo_moments(&rep, &psi, &[(0.5, A), (0.5, ADag), (0.5, B), (0.5, BDag)]);
    let (mp, sp) = combo_moments(&rep, &psi, &[(0.5, A), (-0.5, ADag), (0.5, B), (-0.5, BDag)]);
    let var_x = sx - mx * mx;
    let var_p = -sp + mp * mp;

    // V_φ = ½(e^{iφ} a†b† + e^{-iφ} ab) = ½(cos φ H + i sin φ G)
    // with H = a†b† + ab (symmetric) and G = a†b† - ab (antisymmetric).
    let ab = rep.apply_seq(&[B, A], &psi);
    let adbd = rep.apply_seq(&[BDag, ADag], &psi);
    let h_psi = adbd.plus_scaled(&ab, 1.0);
    let g_psi = adbd.plus_scaled(&ab, -1.0);
    let mean_h = psi.dot(&h_psi);
    let h2 = h_psi.norm_sq();
    let g2 = -g_psi.norm_sq();
    let na = rep.apply(A, &psi).norm_sq();
    let nb = rep.apply(B, &psi).norm_sq();
    let denom = na + nb + 1.0;
    let s_of = |phi: f64| {
        let (c, s) = (phi.cos(), phi.sin());
        let var_v = 0.25 * (c * c * h2 - s * s * g2 - c * c * mean_h * mean_h);
        (4.0 * var_v - denom) / denom
    };
    // S(φ) = α + β cos 2φ on real states: exact minimum from two samples.
    let (s0, s90) = (s_of(0.0), s_of(std::f64::consts::FRAC_PI_2));
    let (phi_opt, sum_squeeze_opt) =
        if s90 <= s0 { (std::f64::consts::FRAC_PI_2, s90) } else { (0.0, s0) };

    // Reduced state of mode A: ρ_A(m, m') = Σ_n c(m,n) c(m',n).
    let mut rho_a = std::collections::BTreeMap::<(usize, usize), f64>::new();
    let mut by_b = std::collections::BTreeMap::<usize, Vec<(usize, f64)>>::new();
    for ((m, n), c) in psi.iter() {
        by_b.entry(n).or_default().push((m, c));
    }
    for col in by_b.values() {
        for &(m, c) in col {
            for &(m2, c2) in col {
                *rho_a.entry((m, m2)).or_insert(0.0) += c * c2;
            }
        }
    }
    if rho_a.iter().any(|(&(m, m2), &v)| m != m2 && v.abs() > 1e-14) {
        return Err(Error::Domain("reduced state is not diagonal in the Fock basis".into()));
    }
    let entropy_bits = rho_a
        .iter()
        .filter(|(&(m, m2), &v)| m == m2 && v > 0.0)
        .map(|(_, &v)| -v * v.log2())
        .sum();

    Ok(StateMetrics { epr, var_x, var_p, sum_squeeze_opt, phi_opt, entropy_bits, n_a: na, n_b: nb })
}

/// Output of [`state_metrics`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StateMetrics {
    pub epr: f64,
    pub var_x: f64,
    pub var_p: f64,
    pub sum_squeeze_opt: f64,
    pub phi_opt: f64,
    pub entropy_bits: f64,
    pub n_a: f64,
    pub n_b: f64,
}

/// Oracle counterpart of [`crate::metrics::metrics`].
pub fn oracle_metrics(spec: &ResourceSpec) -> Result<MetricsReport> {
    let state = prepare_state(spec, ORACLE_TAIL_TOL)?;
    let m = state_metrics(&state)?;
    Ok(MetricsReport {
        kind: spec.kind(),
        k: spec.k(),
        l: spec.l(),
        r: spec.r(),
        epr: m.epr,
        var_x: m.var_x,
        var_p: m.var_p,
        sum_squeeze_opt: m.sum_squeeze_opt,
        phi_opt: m.phi_opt,
        entropy_bits: m.entropy_bits,
    })
}

/// Teleportation fidelity by quadrature on an oracle-prepared state.
pub fn oracle_fidelity(spec: &ResourceSpec, input: &InputState, cfg: &QuadratureConfig) -> Result<QuadratureOutcome> {
    let state = prepare_state(spec, ORACLE_TAIL_TOL)?;
    quadrature_fidelity(&state, input, cfg)
}
