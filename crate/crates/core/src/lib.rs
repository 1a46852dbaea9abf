//! Legendrian knots from front diagrams: classical invariants, normal
//! rulings and ruling polynomials of knots and satellites, path matrices of
//! annulus patterns, the Chekanov-Eliashberg DGA over Z/2 and its finite
//! dimensional representations.

pub mod atlas;
pub mod dga;
pub mod diagram;
pub mod error;
pub mod pathmatrix;
pub mod ruling;
pub mod reps;
pub mod satellite;
pub mod verify;

pub use diagram::text::{parse, parse_front, parse_pattern, Diagram};
pub use diagram::{AnnulusPattern, Basepoint, Event, EventKind, GradedFront, PlatFront};
pub use error::{Error, Result};
