//! Quasisymmetric and noncommutative symmetric functions of types A, B and D.

pub mod algebra;
pub mod characteristic;
pub mod element;
pub mod identities;
pub mod qpoly;
pub mod truncated;

pub use algebra::{antipode, coproduct, multiply, pairing, skew, Side};
pub use element::{Basis, SeriesElement, Space, Tensor};
pub use qpoly::QPoly;
