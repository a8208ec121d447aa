//! Exact linear algebra over the two-element field.
//!
//! Vectors are sorted lists of indices (an index is present iff its
//! coordinate is 1). Matrices store one such list per row. Chain complexes
//! store, for every generator, the sorted list of generators in its
//! differential, and can be simplified by Gaussian cancellation.

mod complex;
mod matrix;
mod reducer;
pub mod vec;

pub use complex::{Bigrading, ChainComplex, RankTable};
pub use matrix::SparseMatF2;
pub use reducer::Reducer;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum F2Error {
    #[error("entry ({row}, {col}) outside a {rows}x{cols} matrix")]
    IndexOutOfRange {
        row: usize,
        col: usize,
        rows: usize,
        cols: usize,
    },
    #[error("generator {0} does not exist")]
    NoSuchGenerator(usize),
    #[error("cannot cancel {b} -> {a}: no unit differential entry")]
    InvalidCancellation { b: usize, a: usize },
    #[error("differential squares to a nonzero map at generator {0}")]
    NotSquareZero(usize),
    #[error("differential entry {from} -> {to} has bigrading change {dh:?}, expected (1, 0)")]
    BadDegree { from: usize, to: usize, dh: (i32, i32) },
}
