//! Worst-case inputs and exact comparison counts for Heapsort.
//!
//! The crate builds, for any size `N ≥ 2`, a heap that forces RemoveAll to
//! its maximum number of key comparisons and an input array that forces both
//! Heapsort phases to their maxima at once. Measured counts are checked
//! against closed forms, and against brute-force search at small sizes.
//!
//! Modules:
//! - [`bitmath`]: integer logarithms and implicit-tree index algebra.
//! - [`heap`]: the instrumented Heapsort and its phases.
//! - [`inverse`]: the phases run backwards and the worst-case array generator.
//! - [`game`]: the pull-down game with its credit accounting and strategies.
//! - [`formulas`]: closed-form counts and related quantities.
//! - [`oracle`]: exhaustive ground truth at desk scale.
//! - [`hereditary`]: enumeration of heaps whose every residue is worst-case.
//! - [`cli`]: command implementations behind the `heapworst` binary.

pub mod bitmath;
pub mod cli;
pub mod error;
pub mod formulas;
pub mod game;
pub mod heap;
pub mod hereditary;
pub mod inverse;
pub mod oracle;

pub use error::{Error, Result};
pub use heap::{Counted, Heap};
