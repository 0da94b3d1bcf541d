use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("point lies on the focal circle (|zeta| = {0:e})")]
    SingularPoint(f64),
    #[error("point lies on the open branch disk; a side (above/below) is required")]
    AmbiguousBranch,
    #[error("point lies on the symmetry axis (rho = {0:e}); azimuthal direction undefined")]
    OnAxis(f64),
    #[error("domain error: {0}")]
    DomainError(String),
    #[error("analytic signal diverges at Im(tau) = {0}")]
    Divergent(f64),
    #[error("quadrature did not converge: {0}")]
    NoConvergence(String),
    #[error("invalid pulse specification: {0}")]
    InvalidPulse(String),
    #[error("pulse derivative vanishes at this point (|g'| = {0:e})")]
    PulseNode(f64),
    #[error("degenerate gauge: {0}")]
    DegenerateGauge(String),
    #[error("electromagnetic energy density vanishes; flow velocity undefined")]
    ZeroEnergy,
    #[error("finite-difference stencil clips a singular set ({0})")]
    StencilClipsSingularSet(String),
    #[error("unknown verification suite `{0}`")]
    UnknownSuite(String),
    #[error("configuration error: {0}")]
    ConfigError(String),
    #[error("i/o error: {0}")]
    IoError(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::IoError(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
