//! Exact orbifold Chern numbers and degeneracy criteria for orbifold
//! surfaces.
//!
//! - [`model`]: rationals-backed data model for surfaces with weighted
//!   boundary curves.
//! - [`chern`]: log and stack Chern numbers, orbifold Gauss-Bonnet, and the
//!   plane-curve and nodal-surface families.
//! - [`criteria`]: every positivity criterion as an exact left-hand side with a
//!   strict verdict.
//! - [`oracle`]: an independent Riemann-Roch computation for Green-Griffiths
//!   jet bundles that re-derives the asymptotic coefficients.
//! - [`scan`]: linear parameter sweeps over the criteria.
//! - [`config`] and [`cli`]: the command-line front end.

pub mod chern;
pub mod cli;
pub mod config;
pub mod criteria;
pub mod model;
pub mod oracle;
pub mod rational;
pub mod scan;

pub use model::{
    validate_surface, AmbientSurfaceData, ChernNumbers, CriterionVerdict, CurveComponent, IntersectionMatrix,
    ModelError, SmoothOrbifoldSurface, TheoremTag,
};
pub use rational::{reciprocal_mult, Multiplicity, Rational};
