//! Exact integer index algebra for implicit 1-based binary trees.
//!
//! Node `i` has parent `i / 2` and children `2i`, `2i + 1`. Everything here
//! is computed with bit scans and shifts; no floating point is involved.
//!
//! The logarithm helpers panic on zero, mirroring integer division by zero.
//! The `checked_*` variants return [`Error::Zero`] instead.

use crate::error::{Error, Result};

/// `⌊lg n⌋`, the unique `d` with `2^d ≤ n < 2^(d+1)`.
///
/// # Panics
/// Panics if `n == 0`.
#[inline]
pub fn floor_lg(n: usize) -> u32 {
    assert!(n > 0, "floor_lg of zero");
    usize::BITS - 1 - n.leading_zeros()
}

/// `⌈lg n⌉`, the least `d` with `2^d ≥ n`.
///
/// # Panics
/// Panics if `n == 0`.
#[inline]
pub fn ceil_lg(n: usize) -> u32 {
    assert!(n > 0, "ceil_lg of zero");
    if n == 1 {
        0
    } else {
        floor_lg(n - 1) + 1
    }
}

/// Number of 1-bits in the binary representation of `n`.
///
/// # Panics
/// Panics if `n == 0`.
#[inline]
pub fn s2(n: usize) -> u32 {
    assert!(n > 0, "s2 of zero");
    n.count_ones()
}

/// Largest `e` with `2^e` dividing `n`.
///
/// # Panics
/// Panics if `n == 0`.
#[inline]
pub fn e2(n: usize) -> u32 {
    assert!(n > 0, "e2 of zero");
    n.trailing_zeros()
}

/// Fallible [`floor_lg`].
pub fn checked_floor_lg(n: usize) -> Result<u32> {
    if n == 0 {
        Err(Error::Zero)
    } else {
        Ok(floor_lg(n))
    }
}

/// Fallible [`ceil_lg`].
pub fn checked_ceil_lg(n: usize) -> Result<u32> {
    if n == 0 {
        Err(Error::Zero)
    } else {
        Ok(ceil_lg(n))
    }
}

/// Fallible [`s2`].
pub fn checked_s2(n: usize) -> Result<u32> {
    if n == 0 {
        Err(Error::Zero)
    } else {
        Ok(s2(n))
    }
}

/// Fallible [`e2`].
pub fn checked_e2(n: usize) -> Result<u32> {
    if n == 0 {
        Err(Error::Zero)
    } else {
        Ok(e2(n))
    }
}

/// `true` iff `n` is a positive power of two (including `1`).
#[inline]
pub fn is_pow2(n: usize) -> bool {
    n.is_power_of_two()
}

/// Number of children of node `m` in a tree of `n` nodes, without range checks.
///
/// Index `0` is accepted and yields `0`; some cost expressions refer to the
/// parent of the root.
#[inline]
pub fn children(m: usize, n: usize) -> u32 {
    if m == 0 {
        return 0;
    }
    let left = 2 * m;
    if left > n {
        0
    } else if left == n {
        1
    } else {
        2
    }
}

/// Number of children of node `m` in a tree of `n` nodes: `0` if `2m > n`,
/// `1` if `2m = n`, `2` if `2m < n`.
pub fn num_children(m: usize, n: usize) -> Result<u32> {
    check_index(m, n)?;
    Ok(children(m, n))
}

/// Depth of the subtree rooted at `i` in a tree of `n` nodes: the unique `d`
/// with `i·2^d ≤ n < i·2^(d+1)`.
pub fn subtree_depth(i: usize, n: usize) -> Result<u32> {
    check_index(i, n)?;
    Ok(depth_below(i, n))
}

/// Leftmost leaf of the subtree rooted at `i`: `i · 2^subtree_depth(i, n)`.
pub fn leftmost_descendant(i: usize, n: usize) -> Result<usize> {
    check_index(i, n)?;
    Ok(i << depth_below(i, n))
}

/// Ancestors of `j` from the root down to `j` itself.
///
/// The result has `⌊lg j⌋ + 1` elements, each the floor-half of its
/// successor. `path_to(0)` is empty.
pub fn path_to(j: usize) -> Vec<usize> {
    if j == 0 {
        return Vec::new();
    }
    let len = floor_lg(j) as usize + 1;
    (0..len).rev().map(|shift| j >> shift).collect()
}

/// `true` iff `i` lies on the path from the root to `j` (including `j`).
#[inline]
pub fn is_ancestor_or_self(i: usize, j: usize) -> bool {
    if i == 0 || j == 0 || i > j {
        return false;
    }
    let shift = floor_lg(j) - floor_lg(i);
    j >> shift == i
}

/// Unchecked subtree depth; requires `1 ≤ i ≤ n`.
#[inline]
pub(crate) fn depth_below(i: usize, n: usize) -> u32 {
    // i·2^d ≤ n  ⟺  i ≤ ⌊n / 2^d⌋, so the largest such d is found by
    // comparing bit lengths and correcting by one where the prefix of n is
    // smaller than i.
    let d = floor_lg(n) - floor_lg(i);
    if (i << d) <= n {
        d
    } else {
        d - 1
    }
}

fn check_index(i: usize, n: usize) -> Result<()> {
    if i == 0 || i > n {
        Err(Error::IndexOutOfRange { index: i, len: n })
    } else {
        Ok(())
    }
}
