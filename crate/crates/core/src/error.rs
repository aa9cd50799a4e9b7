use thiserror::Error;

/// Every failure the library can report.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("conductor {from} does not divide {to}")]
    NotADivisor { from: u32, to: u32 },
    #[error("coordinate {0} is not fixed by complex conjugation")]
    NotRealCoordinate(String),
    #[error("unknown constant `{0}`")]
    UnknownConstant(String),
    #[error("matrix is not unitary")]
    NotUnitary,
    #[error("element order exceeds the bound {0}")]
    NotFiniteOrder(u32),
    #[error("closure exceeded the cap of {0} elements")]
    ClosureBound(usize),
    #[error("invalid automorphism: {0}")]
    InvalidAutomorphism(String),
    #[error("unrecognized quotient of order {0}")]
    UnrecognizedQuotient(usize),
    #[error("group has {found} elements, expected {expected}")]
    SizeMismatch { expected: usize, found: usize },
    #[error("quaternion is not complex (its j-part is nonzero)")]
    NotComplex,
    #[error("quaternion is not a unit")]
    NotUnit,
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("unknown family for `{0}`")]
    UnknownFamily(String),
    #[error("witness square is not a rational multiple of the identity")]
    NotInvolutiveWitness,
    #[error("invalid descriptor `{0}`")]
    InvalidDescriptor(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("{0} is not a normal subgroup")]
    NotNormal(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
