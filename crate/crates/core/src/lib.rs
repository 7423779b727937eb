//! Genus, zeta-function numerators, and maximality certificates for plane
//! trinomial curves over finite fields.
//!
//! The pipeline: parse a trinomial, classify it into one of five normalized
//! shapes, read the genus off a 2x2 exponent matrix, enumerate character
//! orbits to assemble the numerator of the zeta function, and decide
//! maximality over the quadratic extension. Every analytic quantity has an
//! independent brute-force counterpart for cross-checking.

pub mod charsum;
pub mod curve;
pub mod error;
pub mod gf;
pub mod maximality;
pub mod polygon;
pub mod zeta;

pub use error::{Error, Result};
