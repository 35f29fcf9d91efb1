//! Ribbon tableaux and 0-Hecke algebra modules in Coxeter types A, B and D.
//!
//! The crate builds the projective indecomposable modules `P_α`, the
//! permutation-like modules `M_α` and the simple modules `C_α` on explicit
//! tableau bases, together with the quasisymmetric and noncommutative
//! symmetric functions that serve as their characteristics. Every structural
//! claim is made checkable: module relations, filtrations, restrictions,
//! Hopf identities, q-analogues and the Demazure polynomial model all come
//! with certificate routines in [`verify`].

pub mod demazure;
pub mod error;
pub mod group;
pub mod hecke;
pub mod limits;
pub mod linalg;
pub mod series;
pub mod shape;
pub mod tableau;
pub mod verify;

pub use error::{Error, Result};
pub use group::{GroupElement, LengthStats};
pub use hecke::HeckeModule;
pub use shape::{Composition, DescentSet, GeneralizedShape, Kind};
pub use tableau::Tableau;

