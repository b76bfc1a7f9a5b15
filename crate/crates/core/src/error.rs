use thiserror::Error;

/// Errors raised by the calculators and the protocol simulator.
///
/// Protocol aborts are not errors; they are recorded as flags on the run.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("invalid state: {0}")]
    InvalidState(String),

    #[error("invalid channel: {0}")]
    InvalidChannel(String),

    #[error("state is not normalised (trace = {0})")]
    NotNormalised(f64),

    #[error("invalid distribution: {0}")]
    InvalidDistribution(String),

    #[error("invalid measurement family: {0}")]
    InvalidMeasurement(String),

    #[error("parameter `{name}` out of range: {value}")]
    OutOfRange { name: &'static str, value: f64 },

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("security budget violated: {0}")]
    Budget(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn check_unit_interval(name: &'static str, value: f64) -> Result<()> {
    if (0.0..=1.0).contains(&value) {
        Ok(())
    } else {
        Err(Error::OutOfRange { name, value })
    }
}
