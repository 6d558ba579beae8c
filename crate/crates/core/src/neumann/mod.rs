//! Weighted Neumann problems on planar convex bodies and the Bochner-type
//! identities built on them.

mod domain;
mod identities;
mod poly;
mod solve;

pub use domain::{interior_point, WeightedDomain, DEFAULT_ANGULAR_NODES, DEFAULT_RADIAL_NODES};
pub use identities::{
    concave_chain_check, conjectured_coefficient, cs_pointwise, d2n_probe, gamma2_identity,
    halfline_d2n, reilly_residual, ChainCheck, CsSlack, D2nProbe, Gamma2Identity, HalflineProbe,
    ReillyTerms,
};
pub use poly::{chebyshev_jets, ChebBasis, ChebExpansion, Field2, Jet2, Monomial, Poly2};
pub use solve::{boundary_traces, solve_neumann, BoundaryTraces, NeumannSolution, DEFAULT_DEGREE, RANK_TOL};
