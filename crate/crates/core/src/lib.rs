//! Symbolic engine for the homotopy category of complexes over the zigzag
//! walk category of a simply-laced Coxeter graph: braid twists, Grothendieck
//! group classes, stability conditions on linear hearts and the chamber
//! geometry of central charges.

pub mod braid;
pub mod chamber;
pub mod chart;
pub mod cli;
pub mod complex;
pub mod coxeter;
pub mod error;
pub mod gen;
pub mod heart;
pub mod hom;
pub mod json;
pub mod k0;
pub mod linalg;
pub mod stability;
pub mod walk;

pub use error::{Error, Result};
