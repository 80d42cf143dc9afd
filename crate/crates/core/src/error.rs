use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgError {
    #[error("division by zero")]
    DivisionByZero,

    #[error("{0} is not a prime below 2^31")]
    NotPrime(u64),

    #[error("variable count mismatch: {left} vs {right}")]
    VariableCountMismatch { left: usize, right: usize },

    #[error("too many variables: {0} (at most {max})", max = crate::exactalg::MAX_VARS)]
    TooManyVariables(usize),

    #[error("degree bound {bound} too small: needed degree {needed}{hint}")]
    DegreeBoundTooSmall {
        bound: i32,
        needed: i32,
        hint: String,
    },

    #[error("inhomogeneous polynomial: term {term} has degree {found}, expected {expected}")]
    Inhomogeneous {
        term: String,
        found: i32,
        expected: i32,
    },

    #[error("invalid ring: {0}")]
    InvalidRing(String),

    #[error("module mismatch: {0}")]
    ModuleMismatch(String),

    #[error("window too narrow: {0}")]
    WindowTooNarrow(String),

    #[error("ring is not Cohen-Macaulay: Ext^{index}_S(R,S) is nonzero for index {index} != codimension {codim}")]
    NotCohenMacaulay { codim: usize, index: usize },

    #[error("infeasible bound: {0}")]
    InfeasibleBound(String),

    #[error("characteristic {p} divides a coefficient denominator")]
    BadReduction { p: u64 },

    #[error("map is not well defined: {0}")]
    NotWellDefined(String),

    #[error("parse error at {line}:{col}: {msg}")]
    Parse {
        line: usize,
        col: usize,
        msg: String,
    },
}

pub type Result<T, E = AlgError> = std::result::Result<T, E>;

impl AlgError {
    pub fn bound(bound: i32, needed: i32) -> Self {
        AlgError::DegreeBoundTooSmall {
            bound,
            needed,
            hint: format!(" (retry with --degree-cap {})", needed.max(bound + 1)),
        }
    }
}
