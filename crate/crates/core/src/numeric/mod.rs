//! High-precision evaluation: series, Gamma constants, transformation and
//! connection identities, exact monodromy, and quadrature of the elliptic
//! integrals.

pub mod connection;
pub mod gamma;
pub mod hp;
pub mod monodromy;
pub mod quadrature;
pub mod series;

pub use hp::{HpComplex, HpReal, Prec};
