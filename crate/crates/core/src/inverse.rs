//! Heapsort run backwards: PullDown, unFixHeap, unRemoveMax, the worst-case
//! MakeHeap input generator and creative-sequence extraction.
//!
//! A move of the pull-down game is identified by the value it pulls down;
//! its index in the current heap is derived from the inverse permutation.

use serde::{Deserialize, Serialize};

use crate::bitmath::{depth_below, is_ancestor_or_self};
use crate::error::{Error, Result};
use crate::heap::{subtree_is_heap, Heap};

/// Outcome of [`pulldown`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PullDownResult {
    /// The value that sat at index `j` before the call.
    pub removed: usize,
    /// The array after shifting the path and placing `removed` at index `i`.
    pub nodes: Vec<usize>,
}

/// The sequence of pull-down values that builds a heap from `[1]`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CreativeSequence {
    /// Pull-down values, one per move, in playing order.
    pub pulls: Vec<usize>,
}

/// PullDown: on the path from `i` down to its proper descendant `j`, every
/// value moves one step deeper; the value formerly at `j` is returned and
/// written into the vacancy at `i`.
pub fn pulldown(a: &[usize], i: usize, j: usize) -> Result<PullDownResult> {
    let n = a.len();
    for index in [i, j] {
        if index == 0 || index > n {
            return Err(Error::IndexOutOfRange { index, len: n });
        }
    }
    if i == j || !is_ancestor_or_self(i, j) {
        return Err(Error::NotADescendant { i, j });
    }
    let mut nodes = a.to_vec();
    let removed = pulldown_in_place(&mut nodes, i, j);
    Ok(PullDownResult { removed, nodes })
}

/// Unchecked in-place [`pulldown`]; `i` must be an ancestor of `j` or `j` itself.
pub(crate) fn pulldown_in_place(a: &mut [usize], i: usize, j: usize) -> usize {
    let removed = a[j - 1];
    let mut m = j;
    while m != i {
        a[m - 1] = a[m / 2 - 1];
        m /= 2;
    }
    a[i - 1] = removed;
    removed
}

/// unFixHeap: pulls the leftmost leaf of the subtree at `i` up to `i`.
///
/// FixHeap at `i` on the result restores `a` and spends the maximum possible
/// number of comparisons, `⌊lg(N/i)⌋ + ⌊lg((N−1)/i)⌋`. Leaves are returned
/// unchanged.
pub fn unfixheap(a: &[usize], i: usize) -> Result<Vec<usize>> {
    let n = a.len();
    if i == 0 || i > n {
        return Err(Error::IndexOutOfRange { index: i, len: n });
    }
    if !subtree_is_heap(a, i) {
        return Err(first_violation_below(a, i));
    }
    let mut nodes = a.to_vec();
    unfixheap_in_place(&mut nodes, i);
    Ok(nodes)
}

fn unfixheap_in_place(a: &mut [usize], i: usize) {
    let n = a.len();
    if 2 * i > n {
        return;
    }
    let j = i << depth_below(i, n);
    pulldown_in_place(a, i, j);
}

fn first_violation_below(a: &[usize], i: usize) -> Error {
    let n = a.len();
    let mut stack = vec![i];
    let mut worst = usize::MAX;
    while let Some(m) = stack.pop() {
        for c in [2 * m, 2 * m + 1] {
            if c <= n {
                if a[m - 1] < a[c - 1] {
                    worst = worst.min(c);
                }
                stack.push(c);
            }
        }
    }
    Error::OrderViolation(worst)
}

/// `true` iff pulling down the node at index `i` of `h` is a valid move:
/// `H[i] ≤ H[⌊(N+1)/2⌋]`.
pub fn is_valid_move(h: &[usize], i: usize) -> bool {
    let n = h.len();
    i >= 1 && i <= n && h[i - 1] <= h[n.div_ceil(2) - 1]
}

/// unRemoveMax: the unique heap `H′` on `N + 1` nodes with
/// `RemoveMax(H′) = H` whose new last node holds `H[i]`.
pub fn unremovemax(h: &Heap, i: usize) -> Result<Heap> {
    let n = h.len();
    if n == 0 {
        return Err(Error::EmptyHeap);
    }
    if i == 0 || i > n {
        return Err(Error::IndexOutOfRange { index: i, len: n });
    }
    if !is_valid_move(h.as_slice(), i) {
        return Err(Error::InvalidMove(i));
    }
    let mut nodes = h.as_slice().to_vec();
    unremovemax_in_place(&mut nodes, i);
    Ok(Heap::from_vec_unchecked(nodes))
}

/// Unchecked in-place [`unremovemax`]. Returns the pulled value.
pub(crate) fn unremovemax_in_place(a: &mut Vec<usize>, i: usize) -> usize {
    let n = a.len();
    let v = a[i - 1];
    a.push(v);
    pulldown_in_place(a, 1, i);
    a[0] = n + 1;
    v
}

/// Builds an input array `A` with `makeheap(A) = (h, 2N − 2s₂(N) − e₂(N))`.
///
/// Applies unFixHeap at `i = 1, 2, …, ⌊N/2⌋`, the exact reverse of the
/// MakeHeap loop.
pub fn gen_makeheap_worst(h: &Heap) -> Vec<usize> {
    let mut nodes = h.as_slice().to_vec();
    for i in 1..=nodes.len() / 2 {
        debug_assert!(subtree_is_heap(&nodes, i));
        unfixheap_in_place(&mut nodes, i);
    }
    nodes
}

/// Extracts the creative sequence of `h` by peeling it with RemoveMax and
/// recording each patch value before its removal.
pub fn creative_sequence(h: &Heap) -> CreativeSequence {
    let mut peeled = h.clone();
    let mut pulls = Vec::with_capacity(h.len().saturating_sub(1));
    while peeled.len() > 1 {
        pulls.push(peeled.get(peeled.len()));
        peeled
            .remove_max()
            .expect("heap with at least two nodes is not empty");
    }
    pulls.reverse();
    CreativeSequence { pulls }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::heap::{fixheap, makeheap, removemax, validate};

    const H12: [usize; 12] = [12, 11, 7, 9, 10, 2, 3, 6, 8, 4, 5, 1];
    const H7: [usize; 7] = [7, 6, 3, 4, 5, 2, 1];
    const WIN12: [usize; 12] = [12, 11, 7, 9, 10, 2, 3, 6, 8, 5, 4, 1];

    #[test]
    fn pulldown_examples() {
        let r = pulldown(&H7, 1, 7).unwrap();
        assert_eq!((r.removed, r.nodes), (1, vec![1, 6, 7, 4, 5, 2, 3]));
        let r = pulldown(&[5, 4, 3, 2, 1], 1, 4).unwrap();
        assert_eq!((r.removed, r.nodes), (2, vec![2, 5, 3, 4, 1]));
        let r = pulldown(&[2, 1], 1, 2).unwrap();
        assert_eq!((r.removed, r.nodes), (1, vec![1, 2]));
        assert_eq!(
            pulldown(&H7, 2, 7).unwrap_err(),
            Error::NotADescendant { i: 2, j: 7 }
        );
        assert_eq!(
            pulldown(&H7, 3, 3).unwrap_err(),
            Error::NotADescendant { i: 3, j: 3 }
        );
        assert!(pulldown(&H7, 1, 8).is_err());
    }

    #[test]
    fn unfixheap_examples() {
        assert_eq!(
            unfixheap(&H12, 1).unwrap(),
            vec![6, 12, 7, 11, 10, 2, 3, 9, 8, 4, 5, 1]
        );
        assert_eq!(unfixheap(&H7, 1).unwrap(), vec![4, 7, 3, 6, 5, 2, 1]);
        assert_eq!(unfixheap(&H7, 5).unwrap(), H7.to_vec());
        assert_eq!(
            unfixheap(&[1, 2, 3], 1).unwrap_err(),
            Error::OrderViolation(2)
        );
    }

    #[test]
    fn unfixheap_then_fixheap_on_h12() {
        let mut a = unfixheap(&H12, 1).unwrap();
        assert_eq!(fixheap(&mut a, 1), Ok(6));
        assert_eq!(a, H12.to_vec());
    }

    #[test]
    fn unremovemax_examples() {
        let h7 = validate(&H7).unwrap();
        assert_eq!(
            unremovemax(&h7, 7).unwrap().as_slice(),
            &[8, 6, 7, 4, 5, 2, 3, 1]
        );
        assert_eq!(
            unremovemax(&Heap::singleton(), 1).unwrap().as_slice(),
            &[2, 1]
        );
        assert_eq!(unremovemax(&h7, 1).unwrap_err(), Error::InvalidMove(1));
        assert!(unremovemax(&h7, 8).is_err());
    }

    #[test]
    fn unremovemax_is_undone_by_removemax() {
        let h7 = validate(&H7).unwrap();
        let up = unremovemax(&h7, 7).unwrap();
        let run = removemax(&up).unwrap();
        assert_eq!(run.result, (8, h7));
        assert_eq!(run.comparisons, 4);
    }

    #[test]
    fn generator_examples() {
        assert_eq!(gen_makeheap_worst(&validate(&[2, 1]).unwrap()), vec![1, 2]);
        assert_eq!(gen_makeheap_worst(&Heap::singleton()), vec![1]);
        let h12 = validate(&H12).unwrap();
        let a = gen_makeheap_worst(&h12);
        let run = makeheap(&a).unwrap();
        assert_eq!(run.result, h12);
        assert_eq!(run.comparisons, 18);

        let win12 = validate(&WIN12).unwrap();
        let a = gen_makeheap_worst(&win12);
        assert_eq!(a, vec![6, 9, 1, 11, 5, 2, 3, 12, 8, 10, 4, 7]);
        let run = makeheap(&a).unwrap();
        assert_eq!((run.result, run.comparisons), (win12, 18));
    }

    #[test]
    fn creative_sequence_examples() {
        let seq = creative_sequence(&validate(&WIN12).unwrap());
        assert_eq!(seq.pulls, vec![1, 1, 1, 1, 2, 1, 1, 4, 1, 4, 1]);
        let seq = creative_sequence(&validate(&H12).unwrap());
        assert_eq!(seq.pulls, vec![1, 1, 1, 1, 2, 1, 1, 1, 4, 1, 1]);
        let seq = creative_sequence(&validate(&H7).unwrap());
        assert_eq!(seq.pulls, vec![1, 1, 1, 1, 2, 1]);
        let seq = creative_sequence(&validate(&[2, 1]).unwrap());
        assert_eq!(seq.pulls, vec![1]);
        assert!(creative_sequence(&Heap::singleton()).pulls.is_empty());
    }
}
