//! Exact lozenge-tiling combinatorics on triangular regions `T_d(I)` cut out
//! of a side-`d` triangle by a monomial ideal `I` in three variables.
//!
//! The crate is `no_std` and only needs `alloc`.

#![no_std]

extern crate alloc;

pub mod cycles;
pub mod error;
pub mod geometry;
pub mod matching;
pub mod matrix;
pub mod monomial;
pub mod paths;
pub mod permutation;
pub mod region;
pub mod resolution;
pub mod sample;
pub mod tileability;
pub mod tiling;

pub use error::{Error, ParseMonomialError, Result};
pub use geometry::{Direction, Edge, Point, Triangle};
pub use matrix::IntMatrix;
pub use monomial::{Monomial, Var};
pub use region::{Ideal, Puncture, PunctureRelation, Relation, Subregion, TriangularRegion};
pub use tiling::{Lozenge, Tiling};
