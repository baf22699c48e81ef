use thiserror::Error;

/// Errors raised by the engine. Every variant names the violated
/// precondition together with the offending value.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("modulus must be at least 1, got {0}")]
    ZeroModulus(i64),

    #[error("{a} is not invertible modulo {r}")]
    NotInvertible { a: i64, r: i64 },

    #[error("residue moduli differ: {0} vs {1}")]
    ModulusMismatch(u64, u64),

    #[error("cannot parse rational {0:?}: expected \"p/q\" or an integer")]
    ParseRational(String),

    #[error("invalid basket point r={r}, b={b}: {reason}")]
    InvalidPoint { r: u32, b: u32, reason: &'static str },

    #[error("cannot parse basket {0:?}")]
    ParseBasket(String),

    #[error("kawamata sum {0} is not below 24; not a terminal Fano basket")]
    NotTerminalFano(String),

    #[error("{0} is not prime")]
    NotPrime(u32),

    #[error("Fano index {q} shares a factor with point index {r}; use equivariant counting")]
    TorsionAmbiguous { q: u32, r: u32 },

    #[error("chi({m}A) = {value} is not an integer")]
    NonIntegral { m: u32, value: String },

    #[error("chi({m}A) = {value} is negative")]
    NegativeChi { m: u32, value: i64 },

    #[error("torsion candidate needs an equivariant series to evaluate p_{0}")]
    InsufficientData(u32),

    #[error("degree {d} is not below the weight sum {sum}; not Fano")]
    NotFano { d: u32, sum: u32 },

    #[error("no degree-{d} monomial has character {cf} mod {n}")]
    InconsistentAction { d: u32, n: u32, cf: u32 },

    #[error("invalid hypersurface: {0}")]
    InvalidHypersurface(String),

    #[error("invalid polynomial: {0}")]
    InvalidPolynomial(String),

    #[error("unknown surface {0:?}")]
    UnknownSurface(String),

    #[error("ill-posed link scenario: {0}")]
    IllPosed(String),

    #[error("degenerate fibration: H^2 = {0} is not positive")]
    DegenerateFibration(String),

    #[error("unknown replay id {0:?}")]
    UnknownReplay(String),

    #[error("invalid Fano index {0}; expected one of 1..=9, 11, 13, 17, 19")]
    InvalidFanoIndex(u32),

    #[error("{0}")]
    Invalid(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
