use core::fmt;

/// Errors raised by the algebra, coding and attack layers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// The supplied modulus is reducible or has the wrong degree.
    RejectedModulus,
    /// Base field order is not a prime, or `q^m` does not fit the element encoding.
    UnsupportedField,
    DivisionByZero,
    /// Basis elements handed to an expansion are linearly dependent over the base field.
    BadBasis,
    /// A linear system has no solution.
    Inconsistent,
    DimensionMismatch,
    /// Matrix is not invertible.
    Singular,
    /// A Gabidulin generator vector does not have full rank.
    DependentGenerator,
    BadDims,
    /// No codeword lies within the decoding radius.
    DecodeFailure,
    /// The observed generator does not span a (scrambled) Gabidulin code.
    NotGabidulin,
    /// An identity that holds in exact arithmetic was violated.
    InternalInconsistency,
    /// Rejection sampling exceeded its iteration cap.
    SamplingFailure,
    BadParams(&'static str),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::RejectedModulus => f.write_str("modulus is reducible or has the wrong degree"),
            Error::UnsupportedField => f.write_str("unsupported field parameters"),
            Error::DivisionByZero => f.write_str("division by zero"),
            Error::BadBasis => f.write_str("basis elements are dependent"),
            Error::Inconsistent => f.write_str("linear system is inconsistent"),
            Error::DimensionMismatch => f.write_str("dimension mismatch"),
            Error::Singular => f.write_str("matrix is singular"),
            Error::DependentGenerator => f.write_str("generator vector does not have full rank"),
            Error::BadDims => f.write_str("invalid code dimensions"),
            Error::DecodeFailure => f.write_str("no codeword within the decoding radius"),
            Error::NotGabidulin => f.write_str("generator does not span a Gabidulin code"),
            Error::InternalInconsistency => f.write_str("internal arithmetic inconsistency"),
            Error::SamplingFailure => f.write_str("rejection sampling did not terminate"),
            Error::BadParams(why) => write!(f, "bad parameters: {why}"),
        }
    }
}

impl core::error::Error for Error {}

pub type Result<T> = core::result::Result<T, Error>;
