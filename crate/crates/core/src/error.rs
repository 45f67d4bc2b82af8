use thiserror::Error;

/// Errors raised by the library.
///
/// Every variant carries enough context to tell which parameter was at fault.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("parameter outside supported envelope: {0}")]
    Envelope(String),

    #[error("degenerate state: {0}")]
    Degenerate(String),

    #[error("Fock cutoff {required} exceeds limit {limit} (r too large for tail tolerance)")]
    CutoffExplosion { required: usize, limit: usize },

    #[error("insufficient ladder headroom: {0}")]
    Headroom(String),

    #[error("root not bracketed: f({lo}) = {f_lo}, f({hi}) = {f_hi}, target = {target}")]
    NoBracket {
        lo: f64,
        hi: f64,
        f_lo: f64,
        f_hi: f64,
        target: f64,
    },

    #[error("quadrature did not converge: successive refinements differ by {diff:e}")]
    Convergence { diff: f64 },

    #[error("combinatorial expansion refused: {0}")]
    Blowup(String),

    #[error("unknown figure id `{0}`")]
    UnknownFigure(String),

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("io: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
