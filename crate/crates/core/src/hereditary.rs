//! Hereditary worst-case heaps: worst-case heaps whose every residue under
//! RemoveMax is also worst-case.
//!
//! A heap is hereditary exactly when each move of its creative sequence loses
//! `λ*(i)` credits, so the whole family is the tree of such sequences grown
//! from `[1]`. The tree is finite.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::formulas::lambda_star;
use crate::game::{loss_unchecked, play};
use crate::heap::Heap;
use crate::inverse::{creative_sequence, unremovemax_in_place};
use crate::oracle::valid_moves;

/// One hereditary heap together with the pulls that build it from `[1]`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CensusEntry {
    /// The heap.
    pub heap: Heap,
    /// Its creative sequence.
    pub pulls: Vec<usize>,
}

/// Every hereditary worst-case heap, in pre-order of the sequence tree.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HereditaryCensus {
    /// All heaps found, including the single-node heap.
    pub heaps: Vec<CensusEntry>,
    /// `heaps.len()`.
    pub count: usize,
    /// Size of the largest heap found.
    pub max_size: usize,
    /// Number of heaps found for each size.
    pub per_size_counts: BTreeMap<usize, usize>,
}

impl HereditaryCensus {
    /// Number of heaps whose size is at least `min_size`.
    pub fn count_from(&self, min_size: usize) -> usize {
        self.per_size_counts.range(min_size..).map(|(_, c)| c).sum()
    }
}

/// Walks the tree of creative sequences whose every move at size `i` loses
/// exactly `λ*(i)` and collects every heap reached.
pub fn enumerate_hereditary() -> HereditaryCensus {
    fn walk(a: &[usize], pulls: &mut Vec<usize>, out: &mut Vec<CensusEntry>) {
        out.push(CensusEntry {
            heap: Heap::from_vec_unchecked(a.to_vec()),
            pulls: pulls.clone(),
        });
        let i = a.len();
        let target = lambda_star(i);
        let moves: Vec<usize> = valid_moves(a)
            .filter(|&k| loss_unchecked(i, k) == target)
            .collect();
        for k in moves {
            let mut next = a.to_vec();
            let v = unremovemax_in_place(&mut next, k);
            pulls.push(v);
            walk(&next, pulls, out);
            pulls.pop();
        }
    }
    let mut heaps = Vec::new();
    walk(&[1], &mut Vec::new(), &mut heaps);
    let mut per_size_counts = BTreeMap::new();
    for e in &heaps {
        *per_size_counts.entry(e.heap.len()).or_insert(0) += 1;
    }
    HereditaryCensus {
        count: heaps.len(),
        max_size: heaps.iter().map(|e| e.heap.len()).max().unwrap_or(0),
        per_size_counts,
        heaps,
    }
}

/// `true` iff every move of the creative sequence of `h` loses exactly
/// `λ*` at its size.
pub fn is_hereditary(h: &Heap) -> bool {
    if h.is_empty() {
        return false;
    }
    let seq = creative_sequence(h);
    let log = play(&Heap::singleton(), &seq.pulls).expect("creative sequence replays");
    log.records
        .iter()
        .all(|r| r.loss == lambda_star(r.size_before))
}
