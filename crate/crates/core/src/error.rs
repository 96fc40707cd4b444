//! Error type shared by every module of the crate.

use thiserror::Error;

/// Failures reported by heap validation, inverse operations, game playback
/// and the oracle entry points.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// The array is not a permutation of `1..=N`.
    #[error("array is not a permutation of 1..=N")]
    NotAPermutation,

    /// The value at the given 1-based index exceeds the value of its parent.
    #[error("heap order violated at index {0}")]
    OrderViolation(usize),

    /// A pull down (or unRemoveMax index) does not satisfy the validity
    /// constraint. The payload is the 1-based index for `unremovemax` and the
    /// 1-based position within the pull sequence for game playback.
    #[error("invalid move at position {0}")]
    InvalidMove(usize),

    /// A 1-based index lies outside `1..=len`.
    #[error("index {index} out of range for {len} nodes")]
    IndexOutOfRange { index: usize, len: usize },

    /// `j` is not a proper descendant of `i`.
    #[error("index {j} is not a proper descendant of index {i}")]
    NotADescendant { i: usize, j: usize },

    /// An operation that needs at least one node received an empty heap.
    #[error("heap is empty")]
    EmptyHeap,

    /// A size argument is outside the domain of the operation.
    #[error("size {n} outside the supported range {min}..={max}")]
    SizeOutOfRange { n: usize, min: usize, max: usize },

    /// A size argument has the wrong arithmetic shape for the operation.
    #[error("size {n} is not of the required form: {form}")]
    WrongForm { n: usize, form: &'static str },

    /// A game log does not contain every move of the requested range.
    #[error("log does not cover moves {from}..={to}")]
    NotCovered { from: usize, to: usize },

    /// A numeric argument was zero where a positive value is required.
    #[error("argument must be positive")]
    Zero,
}

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;
