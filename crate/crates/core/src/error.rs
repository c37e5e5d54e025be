use thiserror::Error;

use crate::correspondence::Violation;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("characteristic 2 is not supported: every construction assumes char k != 2")]
    Characteristic2,
    #[error("{0} is not an odd prime")]
    NotPrime(u64),
    #[error("field mismatch: {0} vs {1}")]
    FieldMismatch(String, String),
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("gcd of two zero polynomials is undefined")]
    GcdOfZeros,
    #[error("zero element where a nonzero one is required")]
    ZeroElement,
    #[error("element {0} is not in the field")]
    NotInField(String),
    #[error("cannot parse {what} from {input:?}: {reason}")]
    Parse {
        what: &'static str,
        input: String,
        reason: String,
    },
    #[error("matrix has shape {rows}x{cols}, expected {expected}")]
    Shape {
        rows: usize,
        cols: usize,
        expected: String,
    },
    #[error("gram matrix is not symmetric")]
    NotSymmetric,
    #[error("gram matrix is degenerate")]
    Degenerate,
    #[error("polynomial is not monic: {0}")]
    NotMonic(String),
    #[error("polynomial must have degree >= 1")]
    ConstantModulus,
    #[error("{0} is not a unit")]
    NotUnit(String),
    #[error("polynomial {0} is not separable")]
    NotSeparable(String),
    #[error("factors are not coprime")]
    NotCoprime,
    #[error("factors do not multiply to f")]
    BadFactorization,
    #[error("algebra mismatch: {0}")]
    ObjectMismatch(String),
    #[error("not a well-defined algebra map: f_Y({0}) != 0")]
    NotAlgebraMap(String),
    #[error("source algebra is not the point")]
    SourceNotPoint,
    #[error("invalid correspondence: {0}")]
    Invalid(#[from] Violation),
    #[error("pencil endpoints have different degrees {0} and {1}")]
    DegreeMismatch(usize, usize),
    #[error("{0}")]
    OutOfRange(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("verification failed: {0}")]
    Verification(String),
}

pub type Result<T> = std::result::Result<T, Error>;
