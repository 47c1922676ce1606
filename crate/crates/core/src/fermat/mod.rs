//! Geometry of the Fermat double plane: the branch curve's rational points,
//! the 252 lines over its tangent lines, the basis of the Néron–Severi
//! lattice, the automorphism group preserving the polarization and the
//! Frobenius action.

pub mod geometry;
pub mod group;
pub mod io;
pub mod lines;
pub mod points;

use thiserror::Error;

pub use geometry::{Geometry, Line, NUM_LINES};
pub use group::{Group, GROUP_ORDER};

pub use lines::{intersection_direct, intersection_number, split_line, HLine, Sign};
pub use points::{classify_tangent, hermitian_points, Point, TangentCase};

/// Rank of the Néron–Severi lattice.
pub const RANK: usize = 22;

/// Integer row vector in the basis of the first 22 lines.
pub type NsVector = [i64; RANK];

#[derive(Debug, Error)]
pub enum FermatError {
    #[error("line is not tangent to the branch curve")]
    NotTangent,
    #[error("point {0:?} is not on the branch curve")]
    NotOnCurve(Point),
    #[error("restricted sextic over the tangent line at {0:?} is not a square")]
    NotSquare(Point),
    #[error("bad line description: {0}")]
    BadLine(String),
    #[error("intersection of a line with itself has infinite length")]
    InfiniteIntersection,
    #[error("consistency check failed: {0}")]
    Check(String),
    #[error("i/o: {0}")]
    Io(#[from] std::io::Error),
}
