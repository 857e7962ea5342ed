//! Z-transform stability analysis of the 1D and 2D difference equations.
//!
//! The difference stencils are turned into exact rational transfer functions
//! from the applied field `B_x` to the vector potential `A_y`. Pole and zero
//! locations, and in particular whether the oscillatory pole at `Z = -1`
//! survives, are decided by exact divisibility tests.

mod one_d;
mod peak;
mod report;
mod two_d;

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::polyring::PolyError;

pub use one_d::{analyze_1d, build_stencil_1d, tf_1d, tf_1d_high_pe, Stencil1D};
pub use peak::peak_error_analytic;
pub use report::PoleZeroReport;
pub use two_d::{build_system_2d, combination_2d, eliminate_2d, Elimination2D, System2DZ};

/// Discretization of the applied-field source term.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Scheme {
    /// Point samples interpolated inside each element.
    Galerkin,
    /// Elemental average of the corner samples.
    SourceStabilized,
}

impl Scheme {
    pub const ALL: [Scheme; 2] = [Scheme::Galerkin, Scheme::SourceStabilized];

    pub fn name(self) -> &'static str {
        match self {
            Scheme::Galerkin => "galerkin",
            Scheme::SourceStabilized => "stabilized",
        }
    }
}

impl fmt::Display for Scheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Scheme {
    type Err = StabilityError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim().to_ascii_lowercase().as_str() {
            "galerkin" => Ok(Scheme::Galerkin),
            "stabilized" | "source-stabilized" | "sourcestabilized" => {
                Ok(Scheme::SourceStabilized)
            }
            other => Err(StabilityError::UnknownScheme(other.to_string())),
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum StabilityError {
    #[error("degenerate pole: Pe = 1 makes the leading coefficient vanish")]
    DegeneratePole,
    #[error("Peclet number must be positive and finite, got {0}")]
    InvalidPeclet(f64),
    #[error("numerator and denominator grow at different rates in Pe")]
    NoFiniteLimit,
    #[error("polynomial does not separate into Z_n and Z_m factors")]
    NotSeparable,
    #[error("unknown scheme '{0}'")]
    UnknownScheme(String),
    #[error(transparent)]
    Poly(#[from] PolyError),
}
