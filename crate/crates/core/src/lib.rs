//! Exact restricted-root classification for pseudo-Riemannian symmetric
//! spaces: root systems, Satake diagrams and their lattice involutions,
//! real/imaginary root tables, the austere-orbit criterion, the restriction
//! recipe and the Berger catalog.
//!
//! All arithmetic is exact; there is no floating point anywhere.

pub mod error;
pub mod lattice;
pub mod rational;
pub mod rootcore;
pub mod involutions;
pub mod classify;
pub mod austere;
pub mod catalog;
pub mod recipe;
pub mod verify;
pub mod cli;

pub use error::{Error, Result};
