//! Exact two-sided bar constructions on commutative differential graded
//! algebras over the rationals.
//!
//! The crate builds truncated windows of the bar complex of a pair of
//! algebra maps, computes their cohomology with the shuffle product, and
//! certifies formality of pull-backs when the cohomology module is free.
//! See the guide in `book/` for a walk through the concepts.

// index loops mirror the degree bookkeeping of the formulas
#![allow(clippy::needless_range_loop)]

pub mod algebra;
pub mod bar;
pub mod error;
pub mod formality;
pub mod input;
pub mod linalg;
pub mod presentation;
pub mod shuffle;
pub mod tor;
