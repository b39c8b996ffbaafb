//! Exact wall-and-chamber computations for Bridgeland stability conditions
//! on polarized K3 surfaces of degree 10 along the path
//! `sigma_t = sigma_{sqrt(t)/5 H, -2/5 H}`, together with the numerical
//! descent to the Kuznetsov component of the associated special
//! Gushel–Mukai threefold.
//!
//! Everything is exact: rationals are arbitrary precision, and every sign
//! claim about a polynomial in `t` is settled with Sturm sequences.

pub mod charge;
pub mod destab;
mod error;
pub mod exactq;
pub mod ku;
pub mod mukai;
pub mod paper;
pub mod parse;
pub mod walls;

pub use error::{Error, Result};
