//! Time-dependent Green's functions of the one-dimensional Schrödinger
//! equation with a self-adjoint point interaction at the origin, and the
//! evolution of holomorphic and superoscillating initial data.

pub mod contour_quadrature;
pub mod error;
pub mod evolution;
pub mod green;
pub mod interaction;
pub mod matrix;
pub mod sampling;
pub mod spectral;
pub mod special_functions;
pub mod superoscillation;
pub mod verify;

pub use contour_quadrature::{HolomorphicDatum, QuadResult, QuadratureConfig};
pub use error::{Error, Result};
pub use evolution::{DatumSpec, Estimate, Method, WaveField};
pub use interaction::{Branch, GreenCoefficients, InteractionCase, Sign, SignPair, UnitaryInteraction};
pub use matrix::Mat2;
pub use num_complex::Complex64;
pub use spectral::BoundState;
pub use superoscillation::SuperoscillatingSequence;
