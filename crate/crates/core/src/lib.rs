//! Exact computation of Hochschild, cyclic and periodic cyclic homology of
//! finite-dimensional algebras over the rationals, with crossed products by
//! finite groups, relative differential forms, homogeneous decompositions and
//! group hyperhomology.
//!
//! Sign and face conventions used throughout are collected in [`conventions`].

pub mod algebras;
pub mod conventions;
pub mod error;
pub mod exactlin;
pub mod forms;
pub mod groups;
pub mod homology;
pub mod theorems;

pub use error::{Error, Result};
pub use exactlin::{Rational, SparseMatrix, SparseVec};
