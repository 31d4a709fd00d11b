//! Exact computations on the Arnoux-Yoccoz translation surface and its
//! Teichmüller disc, over the cubic field ℚ(α) with α³ + α² + α = 1.

pub mod affine;
pub mod numfield;
pub mod periodic;
pub mod polyalg;
pub mod report;
pub mod splitting;
pub mod surface;

pub use numfield::{Fe, Q};
pub use polyalg::RationalPolynomial;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("parse error: {0}")]
    Parse(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("internal error: {0}")]
    Internal(String),
    #[error("element is zero")]
    ZeroElement,
    #[error("element is negative")]
    NegativeElement,
    #[error("element is not positive")]
    NonPositive,
    #[error("polynomial does not clear to integer coefficients")]
    NotIntegral,
    #[error("singular matrix")]
    SingularMatrix,
    #[error("matrix is not unimodular")]
    NonUnimodular,
    #[error("matrix is not hyperbolic")]
    NotHyperbolic,
    #[error("degenerate direction")]
    DegenerateDirection,
    #[error("direction not detected periodic: {traced} of {total} separatrices closed within the step bound")]
    NotDetectedPeriodic { traced: usize, total: usize },
    #[error("invalid marking: {0}")]
    InvalidMarking(String),
    #[error("inconsistent combinatorics: {0}")]
    InconsistentCombinatorics(String),
    #[error("non-positive parameter: {0}")]
    NonPositiveParameter(String),
    #[error("singular frame")]
    SingularFrame,
    #[error("not a 2T2C direction: {0}")]
    NotA2T2CDirection(String),
    #[error("lattice cannot be put in normal form")]
    NotNormalizable,
    #[error("degenerate instance: {0}")]
    DegenerateInstance(String),
    #[error("spin formula inapplicable: an order is 2 mod 4")]
    FormulaInapplicable,
    #[error("invalid signature: {0}")]
    InvalidSignature(String),
}

pub type Result<T> = std::result::Result<T, Error>;
