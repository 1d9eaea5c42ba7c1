//! Exact lattice-theoretic toolkit for Kummer surfaces and K3 surfaces with
//! a symplectic action of `(Z/2Z)^4`.

pub mod arith;
pub mod divisor;
pub mod error;
pub mod finite_form;
pub mod gf2;
pub mod kummer;
pub mod lattice;
pub mod matrix;
pub mod models;
pub mod orbit;
pub mod parallel;
pub mod quotient;
pub mod report;
pub mod suite;
pub mod snf;

pub use error::{Error, Result};
