//! Polarizations of degree 2 on the supersingular K3 surface of Artin
//! invariant 1 in characteristic 5, and their sextic double plane models.
//!
//! The surface is the double cover `w² = x⁶ + y⁶ + z⁶` of the projective
//! plane over `GF(25)`.

pub mod fermat;
pub mod gf;
pub mod models;
pub mod nsengine;

pub use gf::Gf25;
pub mod quadlat;

/// Exact rationals used by the generic quadratic-triple code.
pub type Rational = num_rational::BigRational;
pub type QuadTripleQ = quadlat::QuadTriple<Rational>;
