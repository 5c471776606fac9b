//! Exact polynomial and linear-algebra kernel.

pub mod bihom;
pub mod field;
pub mod linalg;
pub mod parse;
pub mod poly;
pub mod resultant;
pub mod univar;

pub use bihom::{
    bihom_vars, chart_to_bihom, chart_vars, monomial_basis, reduce_mod_incidence, BiHomPoly,
};
pub use field::{Field, FieldElem};
pub use linalg::Matrix;
pub use parse::parse_poly;
pub use poly::{vars, MPoly, Monomial};
pub use resultant::resultant;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum AlgebraError {
    #[error("modulus {0} is not an odd prime below 2^63")]
    BadModulus(u64),
    #[error("division by zero")]
    DivisionByZero,
    #[error("coefficient fields differ: {left} vs {right}")]
    FieldMismatch { left: Field, right: Field },
    #[error("variable lists differ")]
    VariableMismatch,
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("bad reduction at prime {prime}: denominator divisible by p")]
    BadReduction { prime: u64 },
    #[error("parse error at column {col}: {message}")]
    Parse { col: usize, message: String },
    #[error("polynomial is not bihomogeneous")]
    NotBihomogeneous,
    #[error("zero polynomial needs an explicit bidegree")]
    ZeroNeedsBidegree,
    #[error("bidegrees differ: {left:?} vs {right:?}")]
    BidegreeMismatch { left: (i64, i64), right: (i64, i64) },
    #[error("no section of bidegree ({m},{n}) has this chart restriction")]
    NoChartLift { m: i64, n: i64 },
    #[error("resultant of zero polynomial")]
    ZeroResultantInput,
    #[error("resultant inputs both constant in the elimination variable")]
    ConstantResultantInput,
    #[error("matrix rows have inconsistent lengths")]
    ShapeMismatch,
    #[error("degree {degree} too large for characteristic {prime}")]
    DegreeVsCharacteristic { degree: u32, prime: u64 },
}
