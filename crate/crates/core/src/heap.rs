//! The instrumented Heapsort: heap validation, FixHeap (sift-down), MakeHeap,
//! RemoveMax, RemoveAll and Heapsort, each reporting an exact comparison count.
//!
//! Keys are the integers `1..=N` and indices are 1-based in every public
//! signature. Storage is a plain `Vec` where logical index `i` lives at
//! offset `i - 1`.
//!
//! Cost model of one sift-down step at node `m`: with two children, one
//! child-vs-child comparison followed by one child-vs-demotee comparison;
//! with one child, a single child-vs-demotee comparison; at a leaf, none.
//! The demotion stops as soon as the demotee is not smaller than its largest
//! child.

use serde::{Deserialize, Serialize};

use crate::bitmath::children;
use crate::error::{Error, Result};

/// A value paired with the exact number of key comparisons spent producing it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counted<T> {
    /// Operation-dependent payload.
    pub result: T,
    /// Number of key comparisons performed.
    pub comparisons: u64,
}

impl<T> Counted<T> {
    /// Pairs `result` with `comparisons`.
    pub fn new(result: T, comparisons: u64) -> Self {
        Self {
            result,
            comparisons,
        }
    }
}

/// A binary max-heap over a permutation of `1..=N`, stored in index order.
///
/// The empty heap is representable because RemoveMax on a single node
/// produces it.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Heap {
    nodes: Vec<usize>,
}

impl Heap {
    /// The single-node heap `[1]`.
    pub fn singleton() -> Self {
        Self { nodes: vec![1] }
    }

    /// Checks that `nodes` is a permutation of `1..=N` in heap order.
    pub fn new(nodes: Vec<usize>) -> Result<Self> {
        check_permutation(&nodes)?;
        if let Some(j) = first_order_violation(&nodes) {
            return Err(Error::OrderViolation(j));
        }
        Ok(Self { nodes })
    }

    /// Wraps `nodes` without validation. Callers must uphold the invariants.
    pub(crate) fn from_vec_unchecked(nodes: Vec<usize>) -> Self {
        debug_assert!(check_permutation(&nodes).is_ok());
        debug_assert_eq!(first_order_violation(&nodes), None);
        Self { nodes }
    }

    /// Number of nodes `N`.
    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    /// `true` for the empty heap.
    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// Value at 1-based index `i`.
    ///
    /// # Panics
    /// Panics if `i` is `0` or greater than `N`.
    pub fn get(&self, i: usize) -> usize {
        self.nodes[i - 1]
    }

    /// Values in index order `1..=N`.
    pub fn as_slice(&self) -> &[usize] {
        &self.nodes
    }

    /// Consumes the heap and returns its values in index order.
    pub fn into_vec(self) -> Vec<usize> {
        self.nodes
    }

    /// Inverse permutation: `positions()[v]` is the 1-based index holding
    /// value `v`. Slot `0` is unused.
    pub fn positions(&self) -> Vec<usize> {
        let mut pos = vec![0; self.nodes.len() + 1];
        for (offset, &v) in self.nodes.iter().enumerate() {
            pos[v] = offset + 1;
        }
        pos
    }

    /// RemoveMax in place; returns the removed maximum and the comparison count.
    pub fn remove_max(&mut self) -> Result<(usize, u64)> {
        let last = self.nodes.pop().ok_or(Error::EmptyHeap)?;
        if self.nodes.is_empty() {
            return Ok((last, 0));
        }
        let max = std::mem::replace(&mut self.nodes[0], last);
        let cost = sift_down(&mut self.nodes, 1);
        Ok((max, cost))
    }
}

impl TryFrom<Vec<usize>> for Heap {
    type Error = Error;

    fn try_from(nodes: Vec<usize>) -> Result<Self> {
        Heap::new(nodes)
    }
}

impl From<Heap> for Vec<usize> {
    fn from(h: Heap) -> Self {
        h.nodes
    }
}

/// A permutation of `1..=N` in heap order everywhere except possibly between
/// `patch_root` and its children.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlmostHeap {
    nodes: Vec<usize>,
    patch_root: usize,
}

impl AlmostHeap {
    /// Checks the permutation property and heap order at every edge whose
    /// parent is not `patch_root`.
    pub fn new(nodes: Vec<usize>, patch_root: usize) -> Result<Self> {
        check_permutation(&nodes)?;
        check_index(patch_root, nodes.len())?;
        for j in 2..=nodes.len() {
            if j / 2 != patch_root && nodes[j / 2 - 1] < nodes[j - 1] {
                return Err(Error::OrderViolation(j));
            }
        }
        Ok(Self { nodes, patch_root })
    }

    /// Index of the node that may violate heap order.
    pub fn patch_root(&self) -> usize {
        self.patch_root
    }

    /// Values in index order.
    pub fn as_slice(&self) -> &[usize] {
        &self.nodes
    }

    /// Runs FixHeap at the patch root, producing a heap.
    pub fn repair(mut self) -> Counted<Heap> {
        let cost = sift_down(&mut self.nodes, self.patch_root);
        Counted::new(Heap::from_vec_unchecked(self.nodes), cost)
    }
}

/// Validates `candidate` as a heap.
pub fn validate(candidate: &[usize]) -> Result<Heap> {
    Heap::new(candidate.to_vec())
}

/// Fails with [`Error::NotAPermutation`] unless `a` holds each of `1..=len` once.
pub fn check_permutation(a: &[usize]) -> Result<()> {
    let n = a.len();
    let mut seen = vec![false; n + 1];
    for &v in a {
        if v == 0 || v > n || seen[v] {
            return Err(Error::NotAPermutation);
        }
        seen[v] = true;
    }
    Ok(())
}

/// First 1-based index `j ≥ 2` whose value exceeds its parent's.
pub fn first_order_violation(a: &[usize]) -> Option<usize> {
    (2..=a.len()).find(|&j| a[j / 2 - 1] < a[j - 1])
}

/// `true` iff the subtree rooted at 1-based index `i` is in heap order.
pub fn subtree_is_heap(a: &[usize], i: usize) -> bool {
    let n = a.len();
    let mut stack = vec![i];
    while let Some(m) = stack.pop() {
        for c in [2 * m, 2 * m + 1] {
            if c <= n {
                if a[m - 1] < a[c - 1] {
                    return false;
                }
                stack.push(c);
            }
        }
    }
    true
}

/// Sift-down of the value at 1-based index `i` within `a`, in place.
///
/// Returns the number of key comparisons. The caller guarantees `1 ≤ i ≤ len`.
pub fn sift_down(a: &mut [usize], i: usize) -> u64 {
    let n = a.len();
    let demotee = a[i - 1];
    let mut m = i;
    let mut cost = 0u64;
    loop {
        let kids = children(m, n);
        if kids == 0 {
            break;
        }
        cost += u64::from(kids);
        let left = 2 * m;
        let larger = if kids == 2 && a[left] > a[left - 1] {
            left + 1
        } else {
            left
        };
        if demotee >= a[larger - 1] {
            break;
        }
        a[m - 1] = a[larger - 1];
        m = larger;
    }
    a[m - 1] = demotee;
    cost
}

/// FixHeap at 1-based index `i`, in place, returning the comparison count.
///
/// The subtrees below `i` are expected to be heaps already; the operation is
/// well defined on any array but only restores heap order under that premise.
pub fn fixheap(a: &mut [usize], i: usize) -> Result<u64> {
    check_index(i, a.len())?;
    Ok(sift_down(a, i))
}

/// MakeHeap: FixHeap at `i = ⌊N/2⌋, …, 1`.
pub fn makeheap(a: &[usize]) -> Result<Counted<Heap>> {
    check_permutation(a)?;
    let mut nodes = a.to_vec();
    let cost = makeheap_in_place(&mut nodes);
    Ok(Counted::new(Heap::from_vec_unchecked(nodes), cost))
}

/// MakeHeap on an arbitrary array, in place, returning the comparison count.
pub fn makeheap_in_place(a: &mut [usize]) -> u64 {
    (1..=a.len() / 2).rev().map(|i| sift_down(a, i)).sum()
}

/// RemoveMax: returns the maximum and the heap on the remaining `N - 1` nodes.
pub fn removemax(h: &Heap) -> Result<Counted<(usize, Heap)>> {
    let mut rest = h.clone();
    let (max, cost) = rest.remove_max()?;
    Ok(Counted::new((max, rest), cost))
}

/// RemoveAll: `N` successive RemoveMax calls. Returns the values in
/// ascending order.
pub fn removeall(h: Heap) -> Counted<Vec<usize>> {
    let mut nodes = h.into_vec();
    let cost = removeall_in_place(&mut nodes);
    Counted::new(nodes, cost)
}

/// RemoveAll on a heap-ordered array, leaving it sorted ascending.
///
/// Each removed maximum is parked in the slot vacated by the shrinking heap.
pub fn removeall_in_place(a: &mut [usize]) -> u64 {
    let mut cost = 0;
    for end in (1..a.len()).rev() {
        a.swap(0, end);
        cost += sift_down(&mut a[..end], 1);
    }
    cost
}

/// Comparison counts of the two Heapsort phases.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct PhaseCounts {
    /// Comparisons spent by MakeHeap.
    pub makeheap: u64,
    /// Comparisons spent by RemoveAll.
    pub removeall: u64,
}

impl PhaseCounts {
    /// Sum of both phases.
    pub fn total(&self) -> u64 {
        self.makeheap + self.removeall
    }
}

/// Heapsort: MakeHeap followed by RemoveAll.
pub fn heapsort(a: &[usize]) -> Result<Counted<Vec<usize>>> {
    let (sorted, phases) = heapsort_phases(a)?;
    Ok(Counted::new(sorted, phases.total()))
}

/// Heapsort returning the sorted array together with per-phase counts.
pub fn heapsort_phases(a: &[usize]) -> Result<(Vec<usize>, PhaseCounts)> {
    check_permutation(a)?;
    let mut nodes = a.to_vec();
    let makeheap = makeheap_in_place(&mut nodes);
    let removeall = removeall_in_place(&mut nodes);
    Ok((
        nodes,
        PhaseCounts {
            makeheap,
            removeall,
        },
    ))
}

fn check_index(i: usize, len: usize) -> Result<()> {
    if i == 0 || i > len {
        Err(Error::IndexOutOfRange { index: i, len })
    } else {
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn validate_examples() {
        assert!(validate(&[7, 6, 3, 4, 5, 2, 1]).is_ok());
        assert_eq!(validate(&[1, 2]), Err(Error::OrderViolation(2)));
        assert!(validate(&[1]).is_ok());
        assert_eq!(validate(&[1, 1]), Err(Error::NotAPermutation));
        assert_eq!(validate(&[3, 1]), Err(Error::NotAPermutation));
    }

    #[test]
    fn fixheap_examples() {
        let mut a = vec![1, 6, 7, 4, 5, 2, 3];
        assert_eq!(fixheap(&mut a, 1), Ok(4));
        assert_eq!(a, vec![7, 6, 3, 4, 5, 2, 1]);

        let mut single = vec![1];
        assert_eq!(fixheap(&mut single, 1), Ok(0));
        assert_eq!(single, vec![1]);

        assert!(fixheap(&mut a, 8).is_err());
        assert!(fixheap(&mut a, 0).is_err());
    }

    #[test]
    fn almost_heap_repair() {
        let ah = AlmostHeap::new(vec![1, 6, 7, 4, 5, 2, 3], 1).unwrap();
        let run = ah.repair();
        assert_eq!(run.result.as_slice(), &[7, 6, 3, 4, 5, 2, 1]);
        assert_eq!(run.comparisons, 4);
        assert_eq!(
            AlmostHeap::new(vec![1, 6, 7, 4, 5, 3, 2], 2).unwrap_err(),
            Error::OrderViolation(2)
        );
    }

    #[test]
    fn makeheap_examples() {
        let run = makeheap(&[2, 1]).unwrap();
        assert_eq!((run.result.as_slice(), run.comparisons), (&[2, 1][..], 1));
        let run = makeheap(&[1, 2]).unwrap();
        assert_eq!((run.result.as_slice(), run.comparisons), (&[2, 1][..], 1));
        assert_eq!(makeheap(&[1, 3]), Err(Error::NotAPermutation));
    }

    #[test]
    fn removemax_examples() {
        let h = validate(&[8, 6, 7, 4, 5, 2, 3, 1]).unwrap();
        let run = removemax(&h).unwrap();
        assert_eq!(run.result.0, 8);
        assert_eq!(run.result.1.as_slice(), &[7, 6, 3, 4, 5, 2, 1]);
        assert_eq!(run.comparisons, 4);

        let run = removemax(&Heap::singleton()).unwrap();
        assert_eq!(run.result, (1, validate(&[]).unwrap()));
        assert_eq!(run.comparisons, 0);

        let run = removemax(&validate(&[2, 1]).unwrap()).unwrap();
        assert_eq!(run.result, (2, Heap::singleton()));
        assert_eq!(run.comparisons, 0);

        assert_eq!(
            removemax(&validate(&[]).unwrap()).unwrap_err(),
            Error::EmptyHeap
        );
    }

    #[test]
    fn removeall_examples() {
        let run = removeall(validate(&[7, 6, 3, 4, 5, 2, 1]).unwrap());
        assert_eq!(run.result, (1..=7).collect::<Vec<_>>());
        assert_eq!(run.comparisons, 14);

        let run = removeall(Heap::singleton());
        assert_eq!((run.result, run.comparisons), (vec![1], 0));

        let h12 = validate(&[12, 11, 7, 9, 10, 2, 3, 6, 8, 4, 5, 1]).unwrap();
        assert_eq!(removeall(h12).comparisons, 41);
    }

    #[test]
    fn removeall_in_place_matches_repeated_removemax() {
        let h = validate(&[12, 11, 7, 9, 10, 2, 3, 6, 8, 4, 5, 1]).unwrap();
        let mut peeled = h.clone();
        let mut total = 0;
        let mut out = Vec::new();
        while !peeled.is_empty() {
            let (v, c) = peeled.remove_max().unwrap();
            out.push(v);
            total += c;
        }
        out.reverse();
        let run = removeall(h);
        assert_eq!(run.result, out);
        assert_eq!(run.comparisons, total);
    }

    #[test]
    fn heapsort_single() {
        let run = heapsort(&[1]).unwrap();
        assert_eq!((run.result, run.comparisons), (vec![1], 0));
        assert_eq!(heapsort(&[2, 2]), Err(Error::NotAPermutation));
    }

    #[test]
    fn serde_rejects_invalid_heaps() {
        let h: Heap = serde_json::from_str("[3,1,2]").unwrap();
        assert_eq!(h.as_slice(), &[3, 1, 2]);
        assert!(serde_json::from_str::<Heap>("[1,2]").is_err());
    }
}
