//! Exact generation and verification of algebraic transformations between
//! hypergeometric equations attached to CM elliptic curves.

pub mod acceptance;
pub mod arith;
pub mod batch;
pub mod error;
pub mod json;
pub mod poly;
pub mod ramification;
pub mod numeric;
pub mod oracle;
pub mod triple;

pub use error::{Error, Result};
