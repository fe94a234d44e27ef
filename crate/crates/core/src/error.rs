//! Error type shared by every module.

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("DivisionByZero")]
    DivisionByZero,
    #[error("DenominatorOverflow: {0}")]
    DenominatorOverflow(String),
    #[error("UnluckySpecialization")]
    UnluckySpecialization,
    #[error("PoleAtInfinity")]
    PoleAtInfinity,
    #[error("LimitUndefined: {0}")]
    LimitUndefined(String),
    #[error("UnsupportedType: {0}")]
    UnsupportedType(String),
    #[error("NotInFundamentalAlcove: {0}")]
    NotInFundamentalAlcove(String),
    #[error("NotInTJ: {0}")]
    NotInTJ(String),
    #[error("NotInOrbit: {0}")]
    NotInOrbit(String),
    #[error("SpectralCollision: {0}")]
    SpectralCollision(String),
    #[error("IntertwinerDegenerate: {0}")]
    IntertwinerDegenerate(String),
    #[error("NormalizationZero: {0}")]
    NormalizationZero(String),
    #[error("FaceNotInClosure: {0}")]
    FaceNotInClosure(String),
    #[error("DomainRestriction: {0}")]
    DomainRestriction(String),
    #[error("InvalidQuadraticForm: {0}")]
    InvalidQuadraticForm(String),
    #[error("InvalidHTable: {0}")]
    InvalidHTable(String),
    #[error("LatticeTooSmall: {0}")]
    LatticeTooSmall(String),
    #[error("Parse: {0}")]
    Parse(String),
}

impl Error {
    /// The bare variant name, used on the command line.
    pub fn name(&self) -> &'static str {
        match self {
            Error::DivisionByZero => "DivisionByZero",
            Error::DenominatorOverflow(_) => "DenominatorOverflow",
            Error::UnluckySpecialization => "UnluckySpecialization",
            Error::PoleAtInfinity => "PoleAtInfinity",
            Error::LimitUndefined(_) => "LimitUndefined",
            Error::UnsupportedType(_) => "UnsupportedType",
            Error::NotInFundamentalAlcove(_) => "NotInFundamentalAlcove",
            Error::NotInTJ(_) => "NotInTJ",
            Error::NotInOrbit(_) => "NotInOrbit",
            Error::SpectralCollision(_) => "SpectralCollision",
            Error::IntertwinerDegenerate(_) => "IntertwinerDegenerate",
            Error::NormalizationZero(_) => "NormalizationZero",
            Error::FaceNotInClosure(_) => "FaceNotInClosure",
            Error::DomainRestriction(_) => "DomainRestriction",
            Error::InvalidQuadraticForm(_) => "InvalidQuadraticForm",
            Error::InvalidHTable(_) => "InvalidHTable",
            Error::LatticeTooSmall(_) => "LatticeTooSmall",
            Error::Parse(_) => "Parse",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
