//! Finite fields F_{p^k}, the extension tower F_{q^m} / F_q, and dense linear
//! algebra over F_q.

mod field;
mod matrix;
pub mod poly;
mod tower;

pub use field::{prime_power, Field, FieldElem, FieldSpec, MAX_ORDER};
pub use matrix::MatrixFq;
pub use tower::Tower;
