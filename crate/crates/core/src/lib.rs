//! Finite generation of reflection centralizers in Coxeter groups.
//!
//! Given a Coxeter system `(W, S)` and a generator `x`, the subgroup
//! `W^{⊥x}` generated by the reflections whose roots are orthogonal to
//! `α_x` is decided finitely generated or not, and when it is, its
//! canonical generators and their Coxeter presentation are enumerated.
//! Everything is cross-checked against a brute-force root system.

pub mod cli;
pub mod coxeter;
pub mod decide;
pub mod error;
pub mod format;
pub mod graph;
pub mod oracle;
pub mod perp;
pub mod testing;

pub use coxeter::{CoxeterMatrix, Gen, GenSet, Label};
pub use error::{Error, Result};
pub use graph::{Graph, ReducedPath};
