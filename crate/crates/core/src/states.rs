//! Fock-basis representation of resource states and their entanglement.
//!
//! Every state handled here lives on a single diagonal band of the two-mode
//! Fock lattice: all nonzero amplitudes sit at `|m, n>` with `m - n` fixed.
//! That makes the amplitude matrix its own Schmidt decomposition.

use std::io::Write;

use crate::error::{Error, Result};
use crate::moments::{log_normalization, OpKind, ResourceSpec};
use crate::special::log_factorial;

/// Default tail tolerance for [`build_state`].
pub const DEFAULT_TAIL_TOL: f64 = 1e-10;
/// Largest number of band entries [`build_state`] will allocate.
pub const MAX_CUTOFF: usize = 20_000;

const SCAN_LIMIT: usize = 100_000_000;

/// Squared Schmidt coefficients of a PS/PA state, indexed along the band.
///
/// For addition the `i`-th entry is `|i+k, i+l>`; for subtraction it is
/// `|i, i+k-l>` shifted so that both photon numbers stay nonnegative.
pub(crate) struct BandWeights {
    kind: OpKind,
    k: usize,
    l: usize,
    ln_t2: f64,
    ln_prefactor: f64,
    first: usize,
}

impl BandWeights {
    pub(crate) fn new(spec: &ResourceSpec) -> Result<Self> {
        let r = spec.r();
        let ln_t2 = if r == 0.0 { f64::NEG_INFINITY } else { 2.0 * r.tanh().ln() };
        let ln_cosh2 = 2.0 * r.cosh().ln();
        let ln_norm = log_normalization(spec)?.ln_abs();
        let (k, l) = (spec.k() as usize, spec.l() as usize);
        let first = match spec.kind() {
            OpKind::Add => 0,
            OpKind::Subtract => k.max(l),
        };
        Ok(BandWeights { kind: spec.kind(), k, l, ln_t2, ln_prefactor: -ln_norm - ln_cosh2, first })
    }

    /// Index of the squeezed-vacuum term `|n, n>` feeding the first band entry.
    pub(crate) fn first(&self) -> usize {
        self.first
    }

    /// Fock labels `(m, n)` of the entry fed by squeezed-vacuum index `n`.
    pub(crate) fn labels(&self, n: usize) -> (usize, usize) {
        match self.kind {
            OpKind::Add => (n + self.k, n + self.l),
            OpKind::Subtract => (n - self.k, n - self.l),
        }
    }

    pub(crate) fn ln_weight(&self, n: usize) -> f64 {
        let ln_comb = match self.kind {
            OpKind::Add => {
                log_factorial(n + self.k) + log_factorial(n + self.l) - 2.0 * log_factorial(n)
            }
            OpKind::Subtract => {
                2.0 * log_factorial(n) - log_factorial(n - self.k) - log_factorial(n - self.l)
            }
        };
        let ln_geo = if n == 0 { 0.0 } else { n as f64 * self.ln_t2 };
        ln_comb + ln_geo + self.ln_prefactor
    }

    /// `w(n+1) / w(n)`; non-increasing in `n`, so it bounds every later ratio.
    pub(crate) fn ratio(&self, n: usize) -> f64 {
        let t2 = self.ln_t2.exp();
        let n1 = (n + 1) as f64;
        let poly = match self.kind {
            OpKind::Add => (n1 + self.k as f64) * (n1 + self.l as f64) / (n1 * n1),
            OpKind::Subtract => n1 * n1 / ((n1 - self.k as f64) * (n1 - self.l as f64)),
        };
        poly * t2
    }
}

/// Geometric bound on `Σ_{m>n} w(m)` given `w(n)` and the ratio at `n`.
fn geometric_tail(w: f64, rho: f64) -> Option<f64> {
    (rho < 1.0).then(|| w * rho / (1.0 - rho))
}

/// A two-mode state stored along one diagonal band of the Fock lattice.
#[derive(Debug, Clone, PartialEq)]
pub struct TruncatedTwoModeState {
    start: (usize, usize),
    amplitudes: Vec<f64>,
    tail_mass: f64,
}

impl TruncatedTwoModeState {
    /// Builds a band state from its first Fock labels and amplitudes.
    pub fn from_band(start: (usize, usize), amplitudes: Vec<f64>, tail_mass: f64) -> Self {
        TruncatedTwoModeState { start, amplitudes, tail_mass }
    }

    /// `<m, n | ψ>`; zero off the band or beyond the cutoff.
    pub fn amplitude(&self, m: usize, n: usize) -> f64 {
        let (m0, n0) = self.start;
        if m < m0 || n < n0 || m - m0 != n - n0 {
            return 0.0;
        }
        self.amplitudes.get(m - m0).copied().unwrap_or(0.0)
    }

    /// Nonzero entries `(m, n, amplitude)` in increasing photon number.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, f64)> + '_ {
        let (m0, n0) = self.start;
        self.amplitudes.iter().enumerate().map(move |(i, &c)| (m0 + i, n0 + i, c))
    }

    pub fn band_amplitudes(&self) -> &[f64] {
        &self.amplitudes
    }

    pub fn start(&self) -> (usize, usize) {
        self.start
    }

    /// `m - n` along the band.
    pub fn band_offset(&self) -> i64 {
        self.start.0 as i64 - self.start.1 as i64
    }

    pub fn len(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.amplitudes.is_empty()
    }

    /// Probability left outside the stored entries.
    pub fn tail_mass(&self) -> f64 {
        self.tail_mass
    }

    pub fn norm_sq(&self) -> f64 {
        self.amplitudes.iter().map(|c| c * c).sum()
    }

    /// Largest photon numbers `(m_max, n_max)` carried by the stored entries.
    pub fn max_labels(&self) -> (usize, usize) {
        let last = self.amplitudes.len().saturating_sub(1);
        (self.start.0 + last, self.start.1 + last)
    }

    /// Writes `m,n,amplitude` rows, preceded by `#` comment lines.
    pub fn write_csv<W: Write>(&self, mut out: W, comment: &str) -> Result<()> {
        for line in comment.lines() {
            writeln!(out, "# {line}")?;
        }
        writeln!(out, "# tail_mass = {:.16e}", self.tail_mass)?;
        writeln!(out, "m,n,amplitude")?;
        for (m, n, c) in self.entries() {
            writeln!(out, "{m},{n},{c:.16e}")?;
        }
        Ok(())
    }
}

/// Fock-basis amplitudes of the PS/PA state, truncated once the geometric
/// tail bound drops below `tail_tol`.
pub fn build_state(spec: &ResourceSpec, tail_tol: f64) -> Result<TruncatedTwoModeState> {
    if !(tail_tol > 0.0 && tail_tol <= 1e-6) {
        return Err(Error::Config(format!("tail tolerance {tail_tol} outside (0, 1e-6]")));
    }
    let bw = BandWeights::new(spec)?;
    let mut amps = Vec::new();
    let mut n = bw.first();
    loop {
        let w = bw.ln_weight(n).exp();
        if amps.len() < MAX_CUTOFF {
            amps.push(w.sqrt());
        }
        let done = geometric_tail(w, bw.ratio(n)).is_some_and(|t| t < tail_tol);
        let count = n - bw.first() + 1;
        if done {
            if count > MAX_CUTOFF {
                return Err(Error::CutoffExplosion { required: count, limit: MAX_CUTOFF });
            }
            break;
        }
        if count >= SCAN_LIMIT {
            return Err(Error::CutoffExplosion { required: count, limit: MAX_CUTOFF });
        }
        n += 1;
    }
    let kept: f64 = amps.iter().map(|c| c * c).sum();
    let start = bw.labels(bw.first());
    Ok(TruncatedTwoModeState { start, amplitudes: amps, tail_mass: (1.0 - kept).max(0.0) })
}

/// Squared Schmidt coefficients sorted in decreasing order.
#[derive(Debug, Clone, PartialEq)]
pub struct SchmidtSpectrum {
    pub weights: Vec<f64>,
    /// Probability not represented in `weights`.
    pub tail_mass: f64,
}

impl SchmidtSpectrum {
    /// Von Neumann entropy `-Σ λ log₂ λ` of the stored weights.
    pub fn entropy_bits(&self) -> f64 {
        self.weights.iter().filter(|&&w| w > 0.0).map(|&w| -w * w.log2()).sum()
    }
}

/// Schmidt spectrum of a band state: the squared amplitudes themselves.
pub fn schmidt(state: &TruncatedTwoModeState) -> SchmidtSpectrum {
    let mut weights: Vec<f64> = state.amplitudes.iter().map(|c| c * c).collect();
    weights.sort_by(|a, b| b.total_cmp(a));
    SchmidtSpectrum { weights, tail_mass: state.tail_mass }
}

/// Bound on `Σ_{m>n} -w(m) log₂ w(m)` for a tail whose first omitted weight is
/// at most `w·ρ`, later ones shrinking at least geometrically with ratio `ρ`.
fn entropy_tail_bound(w: f64, rho: f64) -> Option<f64> {
    if rho == 0.0 || w == 0.0 {
        return Some(0.0);
    }
    if rho >= 1.0 || w >= (-1.0f64).exp() {
        return None;
    }
    let g = 1.0 - rho;
    Some(w * (-w.log2()) * rho / g + w * (-rho.log2()) * rho / (g * g))
}

const ENTROPY_TERM_LIMIT: usize = 10_000_000;

/// Entanglement entropy (bits) of the PS/PA state, summed directly from the
/// closed-form Schmidt weights.
pub fn entropy(spec: &ResourceSpec) -> Result<f64> {
    let bw = BandWeights::new(spec)?;
    let (mut sum, mut comp) = (0.0f64, 0.0f64);
    let mut n = bw.first();
    loop {
        let ln_w = bw.ln_weight(n);
        let w = ln_w.exp();
        let term = if w > 0.0 { -w * ln_w / std::f64::consts::LN_2 } else { 0.0 };
        // Neumaier summation
        let t = sum + term;
        comp += if sum.abs() >= term.abs() { (sum - t) + term } else { (term - t) + sum };
        sum = t;
        let total = sum + comp;
        let certified = entropy_tail_bound(w, bw.ratio(n)).is_some_and(|b| b < 1e-12);
        if certified && term <= 1e-16 * total.abs() {
            return Ok(total);
        }
        if n - bw.first() >= ENTROPY_TERM_LIMIT {
            return Err(Error::CutoffExplosion { required: n, limit: ENTROPY_TERM_LIMIT });
        }
        n += 1;
    }
}

/// Entropy of the plain squeezed vacuum,
/// `cosh²r log₂ cosh²r - sinh²r log₂ sinh²r`.
pub fn tmsv_entropy(r: f64) -> f64 {
    let c = r.cosh().powi(2);
    let s = r.sinh().powi(2);
    let s_term = if s > 0.0 { s * s.log2() } else { 0.0 };
    c * c.log2() - s_term
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn spec(kind: OpKind, k: u32, l: u32, r: f64) -> ResourceSpec {
        ResourceSpec::new(kind, k, l, r).unwrap()
    }

    #[test]
    fn tmsv_amplitudes() {
        let r = 0.6f64;
        let s = build_state(&ResourceSpec::tmsv(r).unwrap(), 1e-12).unwrap();
        for n in 0..10 {
            let exact = r.tanh().powi(n as i32) / r.cosh();
            assert!((s.amplitude(n, n) - exact).abs() < 1e-15);
        }
        assert_eq!(s.amplitude(1, 0), 0.0);
    }

    #[test]
    fn band_placement() {
        let s = build_state(&spec(OpKind::Add, 3, 1, 0.5), 1e-10).unwrap();
        assert_eq!(s.start(), (3, 1));
        assert_eq!(s.band_offset(), 2);
        let s = build_state(&spec(OpKind::Subtract, 3, 1, 0.5), 1e-10).unwrap();
        assert_eq!(s.start(), (0, 2));
        assert_eq!(s.band_offset(), -2);
        assert!(s.amplitude(0, 0).abs() == 0.0 && s.amplitude(0, 2) > 0.0);
    }

    #[test]
    fn added_photon_amplitudes_by_hand() {
        // a†|r> has amplitudes sqrt(n+1) tanh^n / cosh / cosh on |n+1, n>.
        let r = 0.4f64;
        let s = build_state(&spec(OpKind::Add, 1, 0, r), 1e-12).unwrap();
        for n in 0..8 {
            let exact = ((n + 1) as f64).sqrt() * r.tanh().powi(n as i32) / r.cosh().powi(2);
            assert!((s.amplitude(n + 1, n) - exact).abs() < 1e-14, "n={n}");
        }
    }

    #[test]
    fn vacuum_limit_of_addition() {
        let s = build_state(&spec(OpKind::Add, 2, 1, 0.0), 1e-10).unwrap();
        assert_eq!(s.len(), 1);
        assert!((s.amplitude(2, 1) - 1.0).abs() < 1e-15);
        assert!(entropy(&spec(OpKind::Add, 2, 1, 0.0)).unwrap().abs() < 1e-15);
    }

    #[test]
    fn tmsv_entropy_closed_form() {
        for r in [0.0, 0.1, 0.5, 1.0, 2.5, 5.0] {
            let e = entropy(&ResourceSpec::tmsv(r).unwrap()).unwrap();
            assert!((e - tmsv_entropy(r)).abs() < 1e-10 * tmsv_entropy(r).max(1.0), "r={r}");
        }
    }

    #[test]
    fn cutoff_explosion_reported() {
        let err = build_state(&spec(OpKind::Add, 30, 30, 5.0), 1e-10).unwrap_err();
        assert!(matches!(err, Error::CutoffExplosion { .. }), "{err:?}");
    }

    #[test]
    fn csv_dump() {
        let s = build_state(&ResourceSpec::tmsv(0.2).unwrap(), 1e-8).unwrap();
        let mut buf = Vec::new();
        s.write_csv(&mut buf, "tmsv r=0.2").unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert!(text.starts_with("# tmsv r=0.2\n"));
        assert!(text.contains("m,n,amplitude\n0,0,"));
        assert_eq!(text.lines().filter(|l| !l.starts_with('#')).count(), s.len() + 1);
    }

    #[test]
    fn bad_tolerance() {
        assert!(matches!(
            build_state(&ResourceSpec::tmsv(0.2).unwrap(), 1e-3),
            Err(Error::Config(_))
        ));
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]
        #[test]
        fn normalized_truncation(k in 0u32..=6, l in 0u32..=6, r in 0.05f64..2.0, add in any::<bool>(), tol_exp in 6i32..=12) {
            let kind = if add { OpKind::Add } else { OpKind::Subtract };
            let tol = 10f64.powi(-tol_exp);
            let s = build_state(&spec(kind, k, l, r), tol).unwrap();
            let norm = s.norm_sq();
            prop_assert!(norm <= 1.0 + 1e-12);
            prop_assert!(norm >= 1.0 - tol - 1e-12);
            let offset = s.band_offset();
            let expected = match kind { OpKind::Add => k as i64 - l as i64, OpKind::Subtract => l as i64 - k as i64 };
            prop_assert_eq!(offset, expected);
        }

        #[test]
        fn entropy_paths_agree(k in 0u32..=5, l in 0u32..=5, r in 0.05f64..2.0, add in any::<bool>()) {
            let kind = if add { OpKind::Add } else { OpKind::Subtract };
            let sp = spec(kind, k, l, r);
            let direct = entropy(&sp).unwrap();
            let via = schmidt(&build_state(&sp, 1e-14).unwrap()).entropy_bits();
            prop_assert!((direct - via).abs() < 1e-9, "{direct} vs {via}");
            let sw = entropy(&sp.swapped()).unwrap();
            prop_assert!((direct - sw).abs() < 1e-12 * direct.max(1.0));
        }
    }
}
