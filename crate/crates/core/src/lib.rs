#![no_std]
//! Verma modules, their duals and integrable quotients for simply-laced
//! Kac-Moody algebras, realized through modules over the preprojective
//! algebra and Euler characteristics of submodule varieties.

extern crate alloc;

pub mod catalog;
pub mod embed;
pub mod error;
pub mod field;
pub mod grassmann;
pub mod hall;
pub mod lambda_mod;
pub mod matrix;
pub mod oracles;
pub mod pp_algebra;
pub mod root_datum;
pub mod verma;

pub use error::{Error, Result};
