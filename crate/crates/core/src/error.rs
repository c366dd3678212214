use alloc::string::String;
use core::fmt;

/// Failure modes shared by every module.
///
/// The variants are grouped by who is at fault: the caller passed data that
/// violates a stated hypothesis, a required external datum is missing, or an
/// arithmetic impossibility was reached.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Error {
    /// Input violates a documented precondition of the operation.
    Hypothesis(String),
    /// A real quadratic L-value was needed but absent from the supplied table.
    MissingLValue { d: i64, label: String, k: u32 },
    /// Inversion of zero in a field.
    DivisionByZero,
    /// Promotion of a cyclotomic number to a field that does not contain it.
    Promotion { from: u32, to: u32 },
    /// A U_p recurrence was requested for a label that is not a U_p-eigenvector
    /// with non-zero eigenvalue.
    NotEigenvector(String),
    /// The operation exists but is not implemented for this base field.
    Unsupported(String),
    /// Malformed textual input.
    Parse(String),
}

pub type Result<T> = core::result::Result<T, Error>;

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Hypothesis(s) => write!(f, "hypothesis violated: {s}"),
            Error::MissingLValue { d, label, k } => {
                write!(f, "missing L-value for D={d}, character {label}, k={k}")
            }
            Error::DivisionByZero => write!(f, "division by zero"),
            Error::Promotion { from, to } => {
                write!(f, "cannot promote from Q(zeta_{from}) to Q(zeta_{to})")
            }
            Error::NotEigenvector(s) => write!(f, "not a U_p-eigenvector with non-zero eigenvalue: {s}"),
            Error::Unsupported(s) => write!(f, "unsupported: {s}"),
            Error::Parse(s) => write!(f, "parse error: {s}"),
        }
    }
}

impl core::error::Error for Error {}

pub(crate) fn hyp<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Hypothesis(msg.into()))
}
