#![no_std]
extern crate alloc;

pub mod base_field;
pub mod characters;
pub mod constant_terms;
pub mod cusps;
pub mod eisenstein;
pub mod error;
pub mod exact_arith;
pub mod hecke_ordinary;
pub mod intmath;
pub mod linalg;

pub use error::{Error, Result};
pub use exact_arith::{CyclotomicNumber, Rational};
