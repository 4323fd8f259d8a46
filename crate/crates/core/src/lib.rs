//! Erasure-prone storage codes assisted by erasure-prone shared randomness.
//!
//! The crate builds linear schemes over prime-power fields, checks them
//! with exact rank criteria (and a brute-force entropy oracle), computes the
//! capacity region bounds, simulates the CSS translation on coset states and
//! runs byte-level storage trials.

pub mod error;
pub mod gf;
pub mod harness;
pub mod capacity;
pub mod codes;
pub mod linalg;
pub mod quantum;
pub mod verify;

pub use error::{Error, Result};
pub use gf::{Elem, Field};
