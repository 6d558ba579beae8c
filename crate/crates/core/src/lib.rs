//! Gaussian Brunn-Minkowski geometry for planar convex bodies.
//!
//! Bodies are truncated Fourier support functions; boundary integrals use the
//! periodic trapezoid rule in the normal angle.

// `!(x > 0.0)` is used on purpose so that NaN is rejected.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod body2d;
pub mod ehrhard;
pub mod error;
pub mod gaussfn;
pub mod inequalities;
pub mod neumann;
pub mod quad;
pub mod sampling;
pub mod variations;

pub use body2d::{Body, BodySpec, BoundaryGrid, HalfPlane, SupportBody};
pub use ehrhard::{ConcavityProfile, CounterexampleReport};
pub use error::{Error, Result};
pub use gaussfn::ProfileTransform;
pub use inequalities::PoincareReport;
pub use neumann::{NeumannSolution, Poly2, WeightedDomain};
pub use variations::{BoundaryFunction, VariationReport, WeightMode};
