//! Exact invariants of regular systems of weights `(a1, a2, a3; h)`: regularity and
//! exponents, signatures, characteristic-polynomial decompositions, orbifoldized Poincaré
//! series, the dual-type families with their grading lattices, and checks that the
//! associated graded rings behave as expected.
//!
//! The crate is `no_std` and only needs `alloc`.
#![no_std]

extern crate alloc;

pub mod arith;
pub mod decomposition;
pub mod duality;
pub mod error;
pub mod family;
pub mod lattice;
pub mod orbifold;
pub mod rings;
pub mod weights;

pub use error::{ArithError, Error, Result};
pub use weights::{
    enumerate_regular, genus, is_regular, pair_count, signature, ExponentData, SignatureData,
    WeightOrder, WeightSystem,
};

/// The six permutations of three coordinates, in lexicographic order.
pub const PERMUTATIONS: [[usize; 3]; 6] = [
    [0, 1, 2],
    [0, 2, 1],
    [1, 0, 2],
    [1, 2, 0],
    [2, 0, 1],
    [2, 1, 0],
];
