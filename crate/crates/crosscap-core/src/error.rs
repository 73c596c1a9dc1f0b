use thiserror::Error;

/// Kernel error type. The kebab-case prefixes are part of the CLI contract:
/// precondition failures are reported under these stable names.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid-curve: {0}")]
    InvalidCurve(String),
    #[error("unsupported-genus: {0}")]
    UnsupportedGenus(String),
    #[error("unsupported-boundary: {0}")]
    UnsupportedBoundary(String),
    #[error("unsupported-spec: {0}")]
    UnsupportedSpec(String),
    #[error("unsupported-letter: {0}")]
    UnsupportedLetter(String),
    #[error("invalid-twist: {0}")]
    InvalidTwist(String),
    #[error("unknown-symbol: {0}")]
    UnknownSymbol(String),
    #[error("no-occurrence-at-position: {0}")]
    NoOccurrence(String),
    #[error("untransportable: {0}")]
    Untransportable(String),
    #[error("not-conjugate: {0}")]
    NotConjugate(String),
    #[error("invalid-fixture: {0}")]
    InvalidFixture(String),
    #[error("invalid-certificate: {0}")]
    InvalidCertificate(String),
    #[error("parse-error: {0}")]
    Parse(String),
}

impl Error {
    /// Stable kebab-case name of the error kind, used in CLI output.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::InvalidCurve(_) => "invalid-curve",
            Error::UnsupportedGenus(_) => "unsupported-genus",
            Error::UnsupportedBoundary(_) => "unsupported-boundary",
            Error::UnsupportedSpec(_) => "unsupported-spec",
            Error::UnsupportedLetter(_) => "unsupported-letter",
            Error::InvalidTwist(_) => "invalid-twist",
            Error::UnknownSymbol(_) => "unknown-symbol",
            Error::NoOccurrence(_) => "no-occurrence-at-position",
            Error::Untransportable(_) => "untransportable",
            Error::NotConjugate(_) => "not-conjugate",
            Error::InvalidFixture(_) => "invalid-fixture",
            Error::InvalidCertificate(_) => "invalid-certificate",
            Error::Parse(_) => "parse-error",
        }
    }
}
