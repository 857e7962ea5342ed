//! Shape functions, element matrices, source representations and global
//! assembly of the moving-conductor equations.
//!
//! Unknowns are the scalar potential φ at nodes and the tangential value of
//! the vector potential on each edge (constant along the edge). In 2D the
//! equations are
//!
//! ```text
//! ∫∇N·∇φ + u∫∂yN ∂zAy − u∫∂yN ∂yAz                         = u∫∂yN Bx
//! μσ∫My∂yφ + ∫∇My·∇Ay + μσu∫My∂zAy − μσu∫My∂yAz             = μσu∫My Bx
//! μσ∫Mz∂zφ + ∫∇Mz·∇Az                                      = 0
//! ```
//!
//! The φ rows are assembled with the opposite sign so the interior Laplacian
//! reads `(Σ neighbours − 8 centre)/3`, which is the usual difference form.

mod assemble;
mod average;
mod element;
mod shape;
mod sparse;

use thiserror::Error;

pub use assemble::{assemble_1d, assemble_2d};
pub use average::{
    elemental_average_2d, elemental_average_3d, gauss_point_source, Hexahedron,
};
pub use element::{element_matrices, local_system, ElementMatrices};
pub use shape::{shape_functions, RefShape, GAUSS_2};
pub use sparse::{CsrMatrix, RowAccumulator, SparseSystem};

use crate::stability::Scheme;

/// Vacuum permeability in H/m.
pub const MU0: f64 = 4.0e-7 * std::f64::consts::PI;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum FemError {
    #[error("expected {expected} source samples, got {got}")]
    SourceLength { expected: usize, got: usize },
    #[error("invalid material parameter: {0}")]
    BadMaterial(String),
    #[error("expected {expected} edges, got {got}")]
    EdgeCount { expected: usize, got: usize },
}

/// Conductor properties and velocity along z.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MaterialParams {
    /// Conductivity in S/m.
    pub sigma: f64,
    /// Permeability in H/m.
    pub mu: f64,
    /// Velocity along z in m/s.
    pub u_z: f64,
}

impl MaterialParams {
    pub fn new(sigma: f64, mu: f64, u_z: f64) -> Result<Self, FemError> {
        if !(sigma.is_finite() && sigma > 0.0) {
            return Err(FemError::BadMaterial(format!("sigma = {sigma}")));
        }
        if !(mu.is_finite() && mu > 0.0) {
            return Err(FemError::BadMaterial(format!("mu = {mu}")));
        }
        if !u_z.is_finite() {
            return Err(FemError::BadMaterial(format!("u_z = {u_z}")));
        }
        Ok(Self { sigma, mu, u_z })
    }

    /// `μσu_z`, the inverse convection length.
    pub fn k(&self) -> f64 {
        self.mu * self.sigma * self.u_z
    }

    /// Grid Peclet number `μσ|u|Δz/2`.
    pub fn peclet(&self, dz: f64) -> f64 {
        self.k().abs() * dz / 2.0
    }

    /// Element length giving the requested Peclet number.
    pub fn dz_for_peclet(&self, pe: f64) -> f64 {
        2.0 * pe / self.k().abs()
    }
}

/// How the applied field enters the element integrals.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SourceMode {
    /// Nodal samples interpolated at the quadrature points.
    GaussPoint,
    /// One constant per element: the mean of its corner samples.
    ElementalAverage,
}

impl From<Scheme> for SourceMode {
    fn from(s: Scheme) -> Self {
        match s {
            Scheme::Galerkin => SourceMode::GaussPoint,
            Scheme::SourceStabilized => SourceMode::ElementalAverage,
        }
    }
}

/// Applied field `B_x` sampled at the mesh nodes.
#[derive(Clone, Debug, PartialEq)]
pub struct SourceField {
    pub samples: Vec<f64>,
    pub mode: SourceMode,
}

impl SourceField {
    pub fn new(samples: Vec<f64>, mode: SourceMode) -> Self {
        Self { samples, mode }
    }

    fn check_len(&self, expected: usize) -> Result<(), FemError> {
        if self.samples.len() != expected {
            return Err(FemError::SourceLength { expected, got: self.samples.len() });
        }
        Ok(())
    }
}
