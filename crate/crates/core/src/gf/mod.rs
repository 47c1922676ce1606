//! `GF(25)` arithmetic, polynomials, Gröbner bases and linear algebra.

pub mod ext;
pub mod field;
pub mod groebner;
pub mod linalg;
pub mod poly;
pub mod text;
pub mod upoly;

use thiserror::Error;

pub use field::{Field, Fp, Gf25};
pub use groebner::{buchberger, ideal_power_plus_f, normal_form_f, surface_relation, IdealGb, QuotientDim};
pub use linalg::{kernel, rank, solve_particular, LinalgError, Matrix};
pub use poly::{Mono, Poly, W, X, Y, Z};
pub use text::parse_poly;
pub use upoly::{BinaryForm, UPoly};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GfError {
    #[error("{0} is not a square in GF(25)")]
    NonSquare(Gf25),
    #[error("cannot parse polynomial: {0}")]
    Parse(String),
}
