//! Exact-arithmetic amoeba computations for BIBO stability analysis of
//! discrete n-dimensional rational filters.
//!
//! The crate decides where the origin of log-modulus space sits relative to
//! the amoeba of the transfer-function denominator: strong stability via
//! iterated cyclic-resultant doubling and lopsidedness tests, weak stability
//! (n = 2) via an exact origin-in-contour decision, plus independent oracles
//! (Schur-Cohn style disk tests, fiber sampling) and Ronkin-function
//! estimators.

pub mod interval;
pub mod laurent;
pub mod simplex;
pub mod geometry;
pub mod sturm;
pub mod univariate;
pub mod roots;
pub mod resultant;
pub mod doubling;
pub mod lopsided;
pub mod oracle;
pub mod contour;
pub mod ronkin;
pub mod stability;

pub use num_bigint::BigInt;
pub use num_rational::BigRational;

pub use interval::{ComplexBox, Dyadic, DyInterval};
pub use laurent::{LaurentError, LaurentPoly};
pub use geometry::{Cone, GeometryError, NewtonPolytope, PolytopeStats};
pub use doubling::{DoublingError, DoublingLimits, DoublingSequence};
pub use lopsided::{ComponentId, LopsidednessOutcome};
pub use univariate::{GaussianRational, UnivariatePoly};
pub use roots::RootBox;
pub use contour::{ContourError, ContourSample, GaussValue, ResultantPair};
pub use oracle::{FiberMembership, MembershipWitness};
pub use ronkin::{RonkinEstimate, TropicalProxy};
pub use stability::{
    AssertionReport, StabilityOptions, StabilityVerdict, VerdictKind,
};
