use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("precision exhausted: {0} certified terms, {1} requested; re-run at higher precision")]
    PrecisionExhausted(usize, usize),
    #[error("continued fraction expansion too short: no convergent with q > threshold")]
    NotReached,
    #[error("index {0} outside configured range |n| <= {1}")]
    IndexOutOfRange(i64, i64),
    #[error("base {0} too small; need base >= 2")]
    BaseTooSmall(u32),
    #[error("reconstruction division by rho - 1 is not exact; pattern invariant violated")]
    NonExactDivision,
    #[error("invalid Matveev instance: {0}")]
    InvalidInstance(String),
    #[error("Lemma hypothesis H > (4r^2)^r violated: H = {h}, (4r^2)^r = {floor}")]
    HypothesisViolated { h: f64, floor: f64 },
    #[error("epsilon never certified positive for case {0} after {1} extra convergents")]
    EpsilonNeverPositive(String, usize),
}

pub type Result<T> = std::result::Result<T, Error>;
