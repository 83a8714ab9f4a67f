use thiserror::Error;

/// Errors raised by the exact kernel.
///
/// The variant names double as the stable error identifiers printed by the
/// command-line tool.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("FieldMismatch: operands live over {0} and {1}")]
    FieldMismatch(String, String),
    #[error("NotPrime: {0} is not a prime")]
    NotPrime(u64),
    #[error("DivisionByZero")]
    DivisionByZero,
    #[error("SingularMatrix")]
    SingularMatrix,
    #[error("ZeroVector")]
    ZeroVector,
    #[error("NotAnAutomorphism: {0}")]
    NotAnAutomorphism(String),
    #[error("NotInAut1: {0}")]
    NotInAut1(String),
    #[error("NotInAutS: {0}")]
    NotInAutS(String),
    #[error("NotInGL1")]
    NotInGL1,
    #[error("NotInB0")]
    NotInB0,
    #[error("IsIdentity")]
    IsIdentity,
    #[error("BadShape: {0}")]
    BadShape(String),
    #[error("SpecViolation: {0}")]
    SpecViolation(String),
    #[error("NeedsHWitness")]
    NeedsHWitness,
    #[error("TrivialAmalgam: {0}")]
    TrivialAmalgam(String),
    #[error("LawViolation: {0}")]
    LawViolation(String),
    #[error("SectionInconsistency: {0}")]
    SectionInconsistency(String),
    #[error("ImageCapExceeded: image has more than {0} elements")]
    ImageCapExceeded(usize),
    #[error("CosetError: {0}")]
    CosetError(String),
    #[error("UnsupportedField: {0}")]
    UnsupportedField(String),
    #[error("InternalAssertion: {0}")]
    InternalAssertion(String),
    #[error("ParseError at byte {offset}: {message}")]
    Parse { offset: usize, message: String },
}

impl Error {
    /// Stable identifier, the part of the message before the colon.
    pub fn name(&self) -> &'static str {
        match self {
            Error::FieldMismatch(..) => "FieldMismatch",
            Error::NotPrime(_) => "NotPrime",
            Error::DivisionByZero => "DivisionByZero",
            Error::SingularMatrix => "SingularMatrix",
            Error::ZeroVector => "ZeroVector",
            Error::NotAnAutomorphism(_) => "NotAnAutomorphism",
            Error::NotInAut1(_) => "NotInAut1",
            Error::NotInAutS(_) => "NotInAutS",
            Error::NotInGL1 => "NotInGL1",
            Error::NotInB0 => "NotInB0",
            Error::IsIdentity => "IsIdentity",
            Error::BadShape(_) => "BadShape",
            Error::SpecViolation(_) => "SpecViolation",
            Error::NeedsHWitness => "NeedsHWitness",
            Error::TrivialAmalgam(_) => "TrivialAmalgam",
            Error::LawViolation(_) => "LawViolation",
            Error::SectionInconsistency(_) => "SectionInconsistency",
            Error::ImageCapExceeded(_) => "ImageCapExceeded",
            Error::CosetError(_) => "CosetError",
            Error::UnsupportedField(_) => "UnsupportedField",
            Error::InternalAssertion(_) => "InternalAssertion",
            Error::Parse { .. } => "ParseError",
        }
    }

    pub fn is_parse(&self) -> bool {
        matches!(self, Error::Parse { .. })
    }

    pub(crate) fn parse(offset: usize, message: impl Into<String>) -> Self {
        Error::Parse { offset, message: message.into() }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
