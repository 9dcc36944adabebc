use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid parameters q={q}, k={k}: need q >= 1 and k >= 2")]
    InvalidParams { q: i64, k: i64 },

    #[error("index n={n} is below the domain of {op} (smallest allowed index is {min})")]
    IndexBelowDomain { op: &'static str, n: i64, min: i64 },

    #[error("{op} requires q >= 3, got q={q}")]
    Regime { op: &'static str, q: u32 },

    #[error("count must be at least 1")]
    EmptyCount,

    #[error("denominator changes sign or vanishes on [{lo}, {hi}]")]
    PoleInInterval { lo: String, hi: String },

    #[error("interval division by an interval containing zero")]
    DivisionByZero,

    #[error("square root of an interval with a negative part")]
    NegativeSqrt,

    #[error("sign bracket lost while isolating the dominant root of q={q}, k={k}")]
    BracketFailure { q: u32, k: u32 },

    #[error("root iteration did not converge after {iterations} iterations (worst residual 2^{worst_residual_log2})")]
    NonConvergence {
        iterations: usize,
        worst_residual_log2: i64,
    },

    #[error("roots {i} and {j} are closer than the separation tolerance 2^-{tolerance_bits}")]
    RootsNotSeparated {
        i: usize,
        j: usize,
        tolerance_bits: u32,
    },

    #[error("secondary root {index} has modulus {modulus} which is not inside the unit circle")]
    OutsideUnitCircle { index: usize, modulus: f64 },

    #[error("Binet reconstruction at n={n} is not near an integer (real residual {residual:e}, imaginary part {imag:e})")]
    ReconstructionResidual { n: i64, residual: f64, imag: f64 },
}
