//! Bound states and thermodynamics of a charged particle in a screened
//! inverse-square/Coulomb-type potential under a uniform magnetic field and an
//! Aharonov–Bohm flux tube.

// `!(x > 0.0)` is used on purpose: it also rejects NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod config;
pub mod error;
pub mod fixtures;
pub mod model;
pub mod potential;
pub mod quadrature;
pub mod roots;
pub mod specfun;
pub mod spectrum;
pub mod thermo;
pub mod verify;
pub mod cli;

pub use error::{Error, Result};
pub use model::*;
