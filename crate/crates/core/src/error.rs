use std::fmt;

use crate::Rational;

/// A location that may not be exactly rational: either a rational point or
/// an isolating interval known to contain exactly one irrational root.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Location {
    Exact(Rational),
    Bracket(Rational, Rational),
}

impl fmt::Display for Location {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Location::Exact(p) => write!(f, "{p}"),
            Location::Bracket(lo, hi) => write!(f, "({lo},{hi})"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("ZeroDenominator: denominator is identically zero")]
    ZeroDenominator,
    #[error("ZeroReciprocal: reciprocal of the zero function")]
    ZeroReciprocal,
    #[error("IdenticallyZero: function is identically zero")]
    IdenticallyZero,
    #[error("InteriorPole: pole at {at} inside ({from},{to})")]
    InteriorPole {
        at: Location,
        from: Rational,
        to: Rational,
    },
    #[error("SegmentOrderViolation: lo > hi on ({from},{to})")]
    SegmentOrderViolation { from: Rational, to: Rational },
    #[error("UnsortedBreakpoints: {0}")]
    UnsortedBreakpoints(String),
    #[error("OutOfDomain: {point} not in [{from},{to}]")]
    OutOfDomain {
        point: Rational,
        from: Rational,
        to: Rational,
    },
    #[error("DomainMismatch: [{0},{1}] vs [{2},{3}]")]
    DomainMismatch(Rational, Rational, Rational, Rational),
    #[error("NotSContinuous: semicontinuity fails at {0}")]
    NotSContinuous(Rational),
    #[error("NotQuasiMinimal: proper values on ({0},{1})")]
    NotQuasiMinimal(Rational, Rational),
    #[error("NotHContinuous: function is not Hausdorff continuous")]
    NotHContinuous,
    #[error("ZeroDivisor: Z(f) contains ({0},{1})")]
    ZeroDivisor(Rational, Rational),
    #[error("NonRepresentablePoint: irrational point in {0}")]
    NonRepresentablePoint(Location),
    #[error("ZeroFunction: argument is the zero function")]
    ZeroFunction,
    #[error("IncompatibleImages: q{0}*p{1} != p{0}*q{1}")]
    IncompatibleImages(usize, usize),
    #[error("IdealNotDense: every generator vanishes on ({0},{1})")]
    IdealNotDense(Rational, Rational),
    #[error("EpsOutOfRange: eps must lie in (0,1), got {0}")]
    EpsOutOfRange(Rational),
    #[error("ModulusViolated: {0}")]
    ModulusViolated(String),
    #[error("SandwichViolated: lower bound exceeds upper bound near {0}")]
    SandwichViolated(Location),
    #[error("BridgingFailed: no continuous bridge at {0}")]
    BridgingFailed(Rational),
    #[error("InvalidArgument: {0}")]
    InvalidArgument(String),
}

impl Error {
    /// Stable name of the error variant, as printed before the colon.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::ZeroDenominator => "ZeroDenominator",
            Error::ZeroReciprocal => "ZeroReciprocal",
            Error::IdenticallyZero => "IdenticallyZero",
            Error::InteriorPole { .. } => "InteriorPole",
            Error::SegmentOrderViolation { .. } => "SegmentOrderViolation",
            Error::UnsortedBreakpoints(_) => "UnsortedBreakpoints",
            Error::OutOfDomain { .. } => "OutOfDomain",
            Error::DomainMismatch(..) => "DomainMismatch",
            Error::NotSContinuous(_) => "NotSContinuous",
            Error::NotQuasiMinimal(..) => "NotQuasiMinimal",
            Error::NotHContinuous => "NotHContinuous",
            Error::ZeroDivisor(..) => "ZeroDivisor",
            Error::NonRepresentablePoint(_) => "NonRepresentablePoint",
            Error::ZeroFunction => "ZeroFunction",
            Error::IncompatibleImages(..) => "IncompatibleImages",
            Error::IdealNotDense(..) => "IdealNotDense",
            Error::EpsOutOfRange(_) => "EpsOutOfRange",
            Error::ModulusViolated(_) => "ModulusViolated",
            Error::SandwichViolated(_) => "SandwichViolated",
            Error::BridgingFailed(_) => "BridgingFailed",
            Error::InvalidArgument(_) => "InvalidArgument",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
