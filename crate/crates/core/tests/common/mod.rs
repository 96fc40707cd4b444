//! Helpers shared by the integration tests.

#![allow(dead_code)]

use heapworst::inverse::{is_valid_move, unremovemax};
use heapworst::Heap;

/// 1-based indices of the valid pull downs of `h`.
pub fn valid_moves(h: &Heap) -> Vec<usize> {
    (1..=h.len())
        .filter(|&i| is_valid_move(h.as_slice(), i))
        .collect()
}

/// Builds a heap on `n` nodes by taking, at every step, the valid move picked
/// by the next choice value modulo the number of valid moves.
pub fn heap_from_choices(n: usize, choices: &[usize]) -> Heap {
    let mut h = Heap::singleton();
    for step in 1..n {
        let moves = valid_moves(&h);
        let pick = choices.get(step - 1).copied().unwrap_or(0) % moves.len();
        h = unremovemax(&h, moves[pick]).expect("valid move");
    }
    h
}

/// Heap from a comma-separated list in the golden data directory.
pub fn data_values(name: &str) -> Vec<usize> {
    let path = format!("{}/tests/data/{name}.txt", env!("CARGO_MANIFEST_DIR"));
    let text = std::fs::read_to_string(path).expect("golden data file");
    heapworst::cli::values_from_text(&text).expect("comma-separated integers")
}

/// Number of comparisons one RemoveMax spends on `h`.
pub fn removemax_cost(h: &Heap) -> u64 {
    let mut work = h.clone();
    work.remove_max().expect("non-empty heap").1
}
