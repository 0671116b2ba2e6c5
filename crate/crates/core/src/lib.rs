//! Second-order linear recurrences, their gap-constrained subset-sum
//! solution, and the continued fractions they generate.

pub mod applications;
pub mod coeffspec;
pub mod contfrac;
mod error;
pub mod expansion;
pub mod recurrence;
pub mod scalar;

pub use error::{Error, Result};
