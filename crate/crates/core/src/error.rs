use alloc::string::String;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("polynomial degree {found} is below the required {required}")]
    Degree { required: usize, found: usize },
    #[error("zero polynomial not allowed here")]
    ZeroPolynomial,
    #[error("quadratic extension elements have different radicands")]
    FieldMismatch,
    #[error("division by zero")]
    DivisionByZero,
    #[error("radicand {0} is a rational square (or zero); work over Q instead")]
    SquareRadicand(String),
    #[error("point is not on the curve")]
    PointValidation,
    #[error("singular curve (discriminant 0)")]
    SingularCurve,
    #[error("kernel point has order {found:?}, expected {expected}")]
    KernelOrder { expected: u32, found: Option<u32> },
    #[error("torsion point has order {found:?}, declared {expected}")]
    TorsionOrder { expected: u32, found: Option<u32> },
    #[error("codomain of the inner map differs from the domain of the outer map")]
    DomainMismatch,
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),
    #[error("result is not rational: {0}")]
    Conjugation(String),
    #[error("operation undefined at the point at infinity")]
    Infinity,
    #[error("pole of the rational function")]
    Pole,
    #[error("unexpected polynomial shape: {0}")]
    Shape(String),
    #[error("no decomposition with coefficients bounded by {bound}; try a larger bound")]
    DecompositionNotFound { bound: u32 },
    #[error("the quotient group is trivial")]
    EmptyQuotient,
    #[error("the base point lies in the image of the dual isogeny")]
    BaseReducible,
}
