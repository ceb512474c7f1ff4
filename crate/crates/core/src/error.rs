use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// An intermediate value or input does not fit the supported width.
    #[error("value out of range: {0}")]
    Width(String),

    #[error("domain error: {0}")]
    Domain(String),

    /// `m` is of the form 4^k(8l+7).
    #[error("{0} is not a sum of three squares")]
    NotRepresentable(u64),

    #[error("parity precondition violated: x = {x} and y = {y} differ mod 2")]
    Parity { x: i64, y: i64 },

    /// A congruence or exact division the construction depends on failed.
    #[error("construction step failed for n = {n}: {what}")]
    ProofStep { n: u64, what: String },

    #[error("parse error at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },
}
