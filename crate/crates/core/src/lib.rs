//! Edge-element analysis of moving-conductor problems.
//!
//! The crate couples an exact Z-transform stability analyzer for the
//! discrete difference equations with a finite-element solver that assembles
//! the same equations on structured grids, in both the standard Galerkin form
//! and the source-stabilized form that replaces point samples of the applied
//! field by elemental averages.

pub mod cli;
pub mod error;
pub mod fem;
pub mod mesh;
pub mod polyring;
pub mod postprocess;
pub mod solver;
pub mod stability;

pub use error::Error;
