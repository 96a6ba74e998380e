//! Numerical toolkit for Bochner-Kähler geometry.

pub mod cell_metric;
pub mod classification;
pub mod config;
pub mod curvature_verifier;
pub mod error;
pub mod explicit_metrics;
pub mod geodesic_ode;
pub mod poly;
pub mod quad;
pub mod solve;
pub mod structure_space;

pub use config::Tolerances;
pub use error::{Error, Result};
pub use poly::RealPolynomial;
pub use structure_space::StructurePoint;
