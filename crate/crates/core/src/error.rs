use thiserror::Error;

/// Broad failure classes, used by front ends to pick exit codes.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ErrorKind {
    Config,
    Capacity,
    Computation,
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid system: {0}")]
    InvalidSpec(String),

    #[error("unknown label `{0}`")]
    UnknownLabel(String),

    #[error("capacity exceeded: {what} needs dimension {dimension}, cap is {cap}")]
    Capacity {
        what: String,
        dimension: u128,
        cap: usize,
    },

    #[error("state {state} does not fit the truncation: {detail}")]
    OccupationOutOfRange { state: String, detail: String },

    #[error("{to} is unreachable from {from} within {max_depth} interaction steps")]
    Unreachable {
        from: String,
        to: String,
        max_depth: usize,
    },

    #[error("intermediate state {state} is degenerate with the initial state (|E_i - E_j| = {gap:e})")]
    DegenerateIntermediate { state: String, gap: f64 },

    #[error("closed form `{form}` has a vanishing denominator: {denominator}")]
    Pole { form: String, denominator: String },

    #[error("no interior gap minimum: {0}")]
    Bracketing(String),

    #[error("trace is flat (peak-to-peak {0:e}), no oscillation to extract")]
    FlatTrace(f64),

    #[error("resonance condition gives nonpositive {symbol} = {value}")]
    Infeasible { symbol: String, value: f64 },

    #[error("resonance solve expects exactly one free frequency, got {free} free of {total}")]
    Arity { free: usize, total: usize },

    #[error("iterative eigensolver did not converge: {0}")]
    NoConvergence(String),
}

impl Error {
    pub fn kind(&self) -> ErrorKind {
        match self {
            Error::InvalidSpec(_) | Error::UnknownLabel(_) | Error::Arity { .. } => ErrorKind::Config,
            Error::Capacity { .. } | Error::OccupationOutOfRange { .. } => ErrorKind::Capacity,
            _ => ErrorKind::Computation,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
