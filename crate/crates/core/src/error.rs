use thiserror::Error;

/// Errors raised by the sampler, optimizer, models and oracles.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid annealing schedule: {0}")]
    InvalidSchedule(String),

    #[error("non-finite potential {value} at chain {chain}")]
    NonFinitePotential { chain: usize, value: f64 },

    #[error("non-finite potential for swap between chains {lo} and {hi}")]
    NonFiniteSwap { lo: usize, hi: usize },

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("model `{model}` cannot draw exact samples at beta = {beta}")]
    NoExactSampler { model: &'static str, beta: f64 },

    #[error("model `{model}` does not support {what}")]
    Unsupported { model: &'static str, what: &'static str },

    #[error(
        "slice sampler failed to bracket the slice around {x} after {doublings} doublings \
         (interval [{left}, {right}])"
    )]
    SliceBracket {
        x: f64,
        doublings: u32,
        left: f64,
        right: f64,
    },

    #[error("slice shrinkage collapsed around {x} after {iterations} iterations")]
    SliceShrinkage { x: f64, iterations: u32 },

    #[error("length mismatch: expected {expected}, found {found}")]
    LengthMismatch { expected: usize, found: usize },

    #[error("insufficient data: {0}")]
    InsufficientData(String),

    #[error("numerical failure: {0}")]
    Numerical(String),

    #[error("{0} is outside [0, 1]")]
    OutOfRange(f64),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// Whether this error is a numerical failure rather than a configuration problem.
    pub fn is_numerical(&self) -> bool {
        matches!(
            self,
            Error::NonFinitePotential { .. }
                | Error::NonFiniteSwap { .. }
                | Error::SliceBracket { .. }
                | Error::SliceShrinkage { .. }
                | Error::Numerical(_)
        )
    }
}
