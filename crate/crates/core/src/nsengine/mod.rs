//! Lattice-level services on the Néron–Severi lattice: polarization tests,
//! exceptional curves and lines, ADE types, the total order and orbits.

pub mod ade;
pub mod orbits;
pub mod order;
pub mod pipeline;
pub mod polar;
pub mod shell;
pub mod spill;

use thiserror::Error;

use crate::fermat::FermatError;
use crate::quadlat::QuadError;

pub use ade::{ade_type, AdeType};
pub use orbits::{galois_partner, galois_partners, orbit_decompose, Action, OrbitRecord, RawOrbit};
pub use order::total_cmp;
pub use pipeline::{analyze, classify_shell, finish_orbits, shell_vectors, PolarizationData};
pub use polar::{exc_set, is_nef, is_polarization, lin_set, polarization_test, spans_ns, Nef, Polarization};
pub use shell::{shell, shell_count};

#[derive(Debug, Error)]
pub enum NsError {
    #[error(transparent)]
    Quad(#[from] QuadError),
    #[error(transparent)]
    Fermat(#[from] FermatError),
    #[error("precondition: {0}")]
    Precondition(String),
    #[error("consistency check failed: {0}")]
    Check(String),
    #[error("i/o: {0}")]
    Io(#[from] std::io::Error),
}
