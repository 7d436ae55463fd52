//! File formats, reports, meshes, figures and random inputs for the
//! `altitudes` command line tool.
//!
//! Everything here works in `f64`; the geometry lives in `altitude-core`.

pub mod io;
pub mod mesh;
pub mod random;
pub mod report;
pub mod svg;

use altitude_core::{AltQuadricError, PorismError, TetraError};
use thiserror::Error;

pub use io::{parse_tetrahedron, serialize_tetrahedron};
pub use mesh::{quadric_mesh, write_obj, Mesh};
pub use random::random_tetra;
pub use report::{analyze, AnalysisReport, ClassReport};
pub use svg::emit_svg_porism;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("malformed input: {0}")]
    Parse(String),
    #[error("vertices are coplanar")]
    DegenerateTetrahedron,
    #[error("quadric is not a hyperboloid")]
    NotHyperboloid,
    #[error("mesh resolution must be at least {min}, got {got}")]
    BadResolution { min: usize, got: usize },
    #[error("mesh extent must be positive and finite")]
    BadExtent,
    #[error("porism family is empty")]
    EmptyFamily,
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Tetra(TetraError),
    #[error(transparent)]
    Quadric(AltQuadricError),
    #[error(transparent)]
    Porism(#[from] PorismError),
}

impl From<TetraError> for CliError {
    fn from(e: TetraError) -> Self {
        match e {
            TetraError::DegenerateTetrahedron => CliError::DegenerateTetrahedron,
            other => CliError::Tetra(other),
        }
    }
}

impl From<AltQuadricError> for CliError {
    fn from(e: AltQuadricError) -> Self {
        match e {
            AltQuadricError::NotHyperboloid => CliError::NotHyperboloid,
            AltQuadricError::Tetra(t) => t.into(),
            other => CliError::Quadric(other),
        }
    }
}
