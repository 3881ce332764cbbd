//! Reflection points on a circular mirror.
//!
//! The mirror is the unit circle. Finite source/observer pairs reduce to a
//! complex quartic whose minimizing root on the circle gives the reflection
//! point and the triangular ratio metric of the unit disk. A source at
//! infinity (plane wave along the real axis) gives a second quartic whose
//! roots all lie on the circle. The `geometry` module covers the parabola
//! directrices tangent to the mirror and their limaçon envelope, and
//! `oracle` holds brute-force reference solvers used to check the rest.

pub mod error;
pub mod geometry;
pub mod infinity;
pub mod interior;
pub mod numeric;
pub mod oracle;
pub mod quartic;

pub use error::{CatoptricError, Result};
pub use numeric::{on_unit_circle, unit_from_angle, ComplexPoint, Tolerances};
