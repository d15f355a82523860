//! Association schemes of quadratic and symmetric bilinear forms over finite
//! fields: eigenvalue tables, d-codes in the rank metric, their trace
//! constructions, and the classical codes they induce.

pub mod codesets;
pub mod construct;
pub mod error;
pub mod forms;
pub mod gf;
pub mod qnum;
pub mod rmcodes;
pub mod scheme;
pub mod suites;

pub use error::{Error, Result, DEFAULT_CAP};
