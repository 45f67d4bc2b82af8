//! Printed reference values for the fixed-EPR comparison (`Υ = 1`), kept
//! as data so that tables, tests and the verify command share one copy.

use serde::Serialize;

/// One column of the printed fixed-EPR table, with its comparison tolerances.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ReferencePoint {
    pub k: u32,
    pub l: u32,
    pub r: f64,
    pub fidelity: f64,
    pub entropy: f64,
    /// Where the numbers come from.
    pub origin: &'static str,
}

/// EPR correlation at which the printed table was evaluated.
pub const REFERENCE_EPR: f64 = 1.0;
/// Allowed deviation in the solved squeezing.
pub const TOL_R: f64 = 1e-3;
/// Allowed deviation in the fidelity.
pub const TOL_FIDELITY: f64 = 1e-3;
/// Allowed deviation in the entropy (bits).
pub const TOL_ENTROPY: f64 = 2e-3;

const ORIGIN: &str = "printed fixed-EPR table, four significant digits";

/// Photon-subtracted resources in the printed column order.
// 0.6931 is a four-digit value as printed, not an approximation of ln 2 to correct.
#[allow(clippy::approx_constant)]
pub const FIXED_EPR_TABLE: [ReferencePoint; 6] = [
    ReferencePoint { k: 2, l: 2, r: 0.1226, fidelity: 0.6632, entropy: 0.5841, origin: ORIGIN },
    ReferencePoint { k: 1, l: 1, r: 0.1798, fidelity: 0.6637, entropy: 0.5755, origin: ORIGIN },
    ReferencePoint { k: 0, l: 0, r: 0.3462, fidelity: 0.6665, entropy: 0.5662, origin: ORIGIN },
    ReferencePoint { k: 1, l: 0, r: 0.6931, fidelity: 0.6400, entropy: 2.094, origin: ORIGIN },
    ReferencePoint { k: 2, l: 1, r: 0.5000, fidelity: 0.6379, entropy: 2.0925, origin: ORIGIN },
    ReferencePoint { k: 2, l: 0, r: 0.8959, fidelity: 0.6300, entropy: 3.1624, origin: ORIGIN },
];
