use thiserror::Error;

use crate::fem::FemError;
use crate::mesh::MeshError;
use crate::polyring::PolyError;
use crate::postprocess::PostError;
use crate::solver::SolverError;
use crate::stability::StabilityError;

/// Any failure raised by the library.
#[derive(Debug, Error)]
pub enum Error {
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Stability(#[from] StabilityError),
    #[error(transparent)]
    Mesh(#[from] MeshError),
    #[error(transparent)]
    Fem(#[from] FemError),
    #[error(transparent)]
    Solver(#[from] SolverError),
    #[error(transparent)]
    Post(#[from] PostError),
    #[error("configuration: {0}")]
    Config(String),
    #[error("i/o: {0}")]
    Io(#[from] std::io::Error),
}
