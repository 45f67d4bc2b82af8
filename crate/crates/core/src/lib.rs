//! Photon-subtracted and photon-added two-mode squeezed vacua.
//!
//! Moments, normalizations and figures of merit (EPR correlation, quadrature
//! and sum squeezing, entanglement entropy, continuous-variable teleportation
//! fidelity) come from closed forms in [`moments`], [`metrics`], [`states`] and
//! [`teleport`]. [`gfn`] re-derives the same moments and fidelities from
//! Gaussian generating functions, and [`oracle`] recomputes everything by
//! brute force on a truncated Fock basis. [`cli`] turns the library into
//! tables for the `nongauss` binary.
//!
//! ```
//! use nongauss::moments::ResourceSpec;
//! use nongauss::metrics::metrics;
//!
//! let m = metrics(&ResourceSpec::subtract(1, 1, 0.5)?)?;
//! assert!(m.epr < 2.0 * (-1.0f64).exp());
//! # Ok::<(), nongauss::Error>(())
//! ```

pub mod cli;
pub mod error;
pub mod gfn;
pub mod metrics;
pub mod moments;
pub mod oracle;
pub mod reference;
pub mod special;
pub mod states;
pub mod teleport;

pub use error::{Error, Result};
