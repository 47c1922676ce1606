//! Sextic double plane models of polarizations: section spaces, the branch
//! sextic, its singular points, canonical forms, isomorphisms, descent to
//! `GF(5)` and a non-projective involution of the Fermat model.

pub mod build;
pub mod divisor;
pub mod involution;
pub mod io;
pub mod plane;
pub mod sections;
pub mod sextic;

use thiserror::Error;

use crate::fermat::FermatError;
use crate::nsengine::NsError;

pub use divisor::{express_divisor, DivisorExpression};
pub use sections::{section_space, SectionBasis, SectionSolver, DEFAULT_MAX_D};

#[derive(Debug, Error)]
pub enum ModelError {
    #[error("d = {d} exceeds the tractability bound {max}")]
    Guard { d: u32, max: u32 },
    #[error("precondition: {0}")]
    Precondition(String),
    #[error("consistency check failed: {0}")]
    Check(String),
    #[error(transparent)]
    Ns(#[from] NsError),
    #[error(transparent)]
    Fermat(#[from] FermatError),
    #[error("i/o: {0}")]
    Io(#[from] std::io::Error),
}
