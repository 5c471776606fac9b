//! Exact contact geometry on the projectivized tangent bundle of the plane.
//!
//! Implements the computational side of second-order differential equations
//! and k-webs on P^2: intersection arithmetic on M = P(TP^2), dimension
//! formulas for equation spaces, web/curve/foliation duality, exact
//! invariant-curve and solution checkers, and exhaustive finite-field
//! screening with machine-readable certificates.

pub mod algebra;
pub mod lines;
pub mod chow;
pub mod contact;
pub mod invariants;
pub mod sample;
pub mod webs;

pub use algebra::{BiHomPoly, Field, FieldElem, MPoly};
pub use chow::{Bidegree, ChowClass};
pub use contact::SecondOrderODE;
pub use invariants::Certificate;
pub use webs::PlaneWeb;
