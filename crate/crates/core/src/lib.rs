//! Meromorphic 1-forms on the Riemann sphere with simple poles.
//!
//! Forms are represented by their residues and poles, by the coefficients of
//! `P(z)/Q(z) dz`, or by zeros, poles and a scale. The crate converts between
//! these, computes isotropy groups under PSL(2, C), works in the quotient by
//! the action, and reads off flat-surface invariants of isochronous forms.

pub mod error;
pub mod flat;
pub mod forms;
pub mod group;
pub mod json;
pub mod mobius;
pub mod poly;
pub mod quotient;
pub mod sample;
pub mod sphere;

pub use error::{Error, ErrorClass, Result};
pub use mobius::MobiusMap;
pub use num_complex::Complex64;
pub use sphere::{chordal_distance, cross_ratio, SpherePoint, DEFAULT_TOL};
