use thiserror::Error;

/// Errors raised by the belief algebra and the simulation engine.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {actual}")]
    Dimension { expected: usize, actual: usize },

    #[error("proposition index {index} out of range for language of size {len}")]
    IndexOutOfRange { index: usize, len: usize },

    #[error("invalid belief pair ({lower}, {upper}): need 0 <= lower <= upper <= 1")]
    InvalidPair { lower: f64, upper: f64 },

    #[error("invalid mass function ({m_true}, {m_false}, {m_both}): masses must be in [0,1] and sum to 1")]
    InvalidMass { m_true: f64, m_false: f64, m_both: f64 },

    #[error("world valuation must be Boolean; proposition {0} is borderline")]
    BorderlineWorld(usize),

    #[error("invalid configuration: {0}")]
    Config(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn check_len(expected: usize, actual: usize) -> Result<()> {
    if expected == actual {
        Ok(())
    } else {
        Err(Error::Dimension { expected, actual })
    }
}
