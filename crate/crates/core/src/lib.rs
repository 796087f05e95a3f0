//! Exact time-domain scattering of a plane wave by a wedge with Neumann
//! faces: incident, reflected and edge-diffracted fields, their
//! frequency-domain counterparts, limiting amplitudes and convergence rates.

pub mod amplitude;
pub mod cli;
pub mod error;
pub mod fields;
pub mod geometry;
pub mod kernels;
pub mod profiles;
pub mod quadrature;
pub mod validation;

pub use error::{Error, Result};
pub use geometry::{ac, classify, PolarPoint, Sector, WedgeScene};
pub use profiles::{Profile, ProfileKind};
pub use quadrature::{ContourPath, Estimate, QuadratureSpec, Ray};
