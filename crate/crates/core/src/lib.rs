//! Exact computations in the ring of SL(2)-invariants of weighted points on
//! the projective line, presented by directed multigraphs.
//!
//! A graph on vertices `1..=n` stands for the product over its edges `a → b`
//! of `u_b v_a − u_a v_b`. Everything symbolic here (straightening, Kempe
//! decomposition, relations, chart coordinates) can be checked against
//! [`eval::evaluate`] at rational configurations.

pub mod chart;
pub mod combination;
pub mod degree;
pub mod error;
pub mod eval;
pub mod graph;
pub mod json;
pub mod kempe;
pub mod linalg;
pub mod rational;
pub mod relations;
pub mod sample;
pub mod straighten;
pub mod verify;

pub use error::{Error, Result};
