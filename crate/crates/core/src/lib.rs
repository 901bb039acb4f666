//! Exact decision procedures for saturation and hereditary normality of
//! finite sets of lattice vectors, together with explicit realizations of the
//! exceptional root systems, their weight systems, and a corpus of checkable
//! certificates classifying which simple modules have only normal maximal
//! torus orbit closures.
//!
//! Everything is exact rational arithmetic end to end; there is no floating
//! point anywhere in the crate.

pub mod certs;
pub mod error;
pub mod linalg;
pub mod lp;
pub mod rat;
pub mod roots;
pub mod saturation;
pub mod weights;

pub use error::{Error, Result};

/// Version stamp embedded in every serialized report and dump.
pub const SCHEMA_VERSION: u32 = 1;
