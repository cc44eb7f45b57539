use thiserror::Error;

/// Failures reported by the numerical routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("non-finite input to {0}")]
    NonFinite(&'static str),
    #[error("result of {0} exceeds the double range")]
    Overflow(&'static str),
    #[error("parameter a must be positive, got {0}")]
    NonPositiveA(f64),
    #[error("matrix is not unitary (defect {0:.3e})")]
    NotUnitary(f64),
    #[error("coupling constant must be nonzero")]
    ZeroStrength,
    #[error("{0}")]
    Domain(String),
    #[error("integrand has no Gaussian decay (rate {0})")]
    NoDecay(f64),
    #[error("quadrature tolerance not met: estimate {estimate:.3e} > target {target:.3e}")]
    ToleranceNotMet { estimate: f64, target: f64 },
    #[error("index {l} out of range 0..={n}")]
    IndexOutOfRange { l: i64, n: u32 },
}

pub type Result<T> = std::result::Result<T, Error>;
