//! Structured 1D and 2D grids with node and edge enumeration.
//!
//! The 2D grid is a tensor product of z and y coordinate lists. Nodes are
//! indexed `(iz, iy)`; y-edges join `(iz, iy)` to `(iz, iy+1)` and point +y;
//! z-edges join `(iz, iy)` to `(iz+1, iy)` and point +z.

mod dofs;
mod one_d;
mod two_d;

use thiserror::Error;

pub use dofs::{DofKind, DofMap};
pub use one_d::{build_mesh_1d, Mesh1D};
pub use two_d::{build_mesh_2d, node_equivalent, Element, Mesh2D};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum MeshError {
    #[error("need at least {min} elements along {axis}, got {got}")]
    TooFewElements { axis: &'static str, min: usize, got: usize },
    #[error("element size along {axis} must be positive and finite, got {got}")]
    BadSize { axis: &'static str, got: f64 },
    #[error("coordinates along {0} must be strictly increasing")]
    NotIncreasing(&'static str),
    #[error("expected {expected} values, got {got}")]
    LengthMismatch { expected: usize, got: usize },
}
