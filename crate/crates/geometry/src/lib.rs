//! Exact rational polyhedral geometry.
//!
//! Half-space and generator representations, Fourier-Motzkin elimination,
//! an exact simplex solver, and the constructions of the closure of a convex
//! hull under coordinatewise minima.

pub mod constraint;
pub mod dd;
pub mod error;
pub mod fm;
pub mod fmin;
pub mod gamma;
pub mod hull;
pub mod lp;
pub mod oracle;
pub mod polyhedron;
pub mod rational;
pub mod region;

pub use constraint::{LinearConstraint, Relation};
pub use error::{GeometryError, Result};
pub use fm::{eliminate, eliminate_polyhedron};
pub use fmin::{f_min, face_difference, fmin_finite, fmin_region};
pub use gamma::gamma_closure;
pub use hull::{enumerate_vertices, hull_constraints};
pub use lp::{Direction, Optimum};
pub use polyhedron::Polyhedron;
pub use rational::{parse_rational, Rational};
pub use region::Region;
