//! Analysis toolkit for the Arneodo-Coullet-Tresser (ACT) family of
//! three-dimensional polynomial maps
//!
//! `F(x, y, z) = (a x - b (y - z), b x + a (y - z), c x - d x^k + e z)`.
//!
//! The crate provides:
//!
//! - [`map`]: evaluation, inverse, Jacobian data, orbit iteration with
//!   escape detection, and the explicit nonwandering bounding box;
//! - [`schur`]: a coefficient criterion for all roots of a monic cubic to
//!   lie inside the unit circle, stable intervals of one-parameter
//!   families, and an independent companion-matrix root oracle;
//! - [`equilibria`]: closed-form fixed points and symmetric period-2
//!   points, the stability-region curves in the (e, c) parameter plane,
//!   region membership/nonemptiness, boundary classification, corner
//!   points and resonance parameters;
//! - [`horseshoe`]: verification of the full-shift conditions, the strip
//!   and slab geometry, hyperbolicity margins, itineraries, and periodic
//!   orbit enumeration by multiple-shooting Newton;
//! - [`anti_integrable`]: the scalar difference equation equivalent to ACT
//!   orbits, lifting between x-sequences and phase-space orbits, and
//!   Newton continuation of symbolic orbits from the decoupled limit;
//! - [`scan`]: bifurcation diagrams, Lyapunov exponents, Poincare
//!   sections, period detection and attractor sampling.
//!
//! All numerics are generic over the scalar type via [`num::Real`]
//! (f32 or f64); the `*64` aliases at the crate root fix f64.

pub mod anti_integrable;
pub mod error;
pub mod equilibria;
pub mod horseshoe;
pub mod map;
pub mod num;
pub mod scan;
pub mod schur;

pub use error::{Error, Result};
pub use num::Real;

/// f64 parameter set.
pub type MapParams64 = map::MapParams<f64>;
/// f64 phase-space point.
pub type State64 = map::State3<f64>;
/// f64 bounding box.
pub type Box64 = map::Box3<f64>;
/// f64 monic cubic.
pub type MonicCubic64 = schur::MonicCubic<f64>;
