use thiserror::Error;

/// Errors raised by code construction, enumeration and radius computation.
#[derive(Debug, Error)]
pub enum Error {
    #[error("modulus must be at least 2, got {0}")]
    InvalidModulus(u64),

    #[error("residue {value} is out of range for modulus {modulus}")]
    OutOfRange { value: u64, modulus: u32 },

    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("modulus mismatch: {left} vs {right}")]
    ModulusMismatch { left: u32, right: u32 },

    #[error("{0}")]
    Domain(String),

    #[error("requires an even modulus, got q = {0}")]
    OddModulus(u32),

    /// A state budget would be exceeded. Nothing partial is returned.
    #[error("{what} needs {needed} states but the budget is {limit}")]
    Budget {
        what: &'static str,
        needed: u128,
        limit: u64,
    },

    #[error("minimum distance is undefined for the zero code")]
    UndefinedDistance,

    #[error("line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub fn is_budget(&self) -> bool {
        matches!(self, Error::Budget { .. })
    }
}

pub type Result<T> = std::result::Result<T, Error>;

/// Checks `base^exp <= limit`, returning the power on success.
pub(crate) fn check_budget(what: &'static str, base: u64, exp: usize, limit: u64) -> Result<u64> {
    let needed = (base as u128).checked_pow(exp as u32).unwrap_or(u128::MAX);
    if exp > u32::MAX as usize || needed > limit as u128 {
        return Err(Error::Budget {
            what,
            needed,
            limit,
        });
    }
    Ok(needed as u64)
}
