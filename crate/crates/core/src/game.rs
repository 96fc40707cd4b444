//! The solitaire game of pull downs.
//!
//! A game starts from a heap (usually `[1]`) and repeatedly applies
//! unRemoveMax. Each move made on a heap of `i` nodes at index `k` earns the
//! credit `cr(i, k)`: the number of comparisons the forward RemoveMax will
//! spend undoing it. The total credit of a game that starts at `[1]` is the
//! RemoveAll cost of the heap it builds.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::bitmath::{ceil_lg, children, floor_lg, is_pow2};
use crate::error::{Error, Result};
use crate::formulas;
use crate::heap::Heap;

/// Credit `cr(i, k)` of the move at index `k` on a heap of `i` nodes.
///
/// Equals `2(⌊lg k⌋ − 1) + #⌊k/2⌋ + #k` for `k ≥ 2`, where `#m` counts the
/// children of `m` among `i` nodes. For `k = 1` it is `#1`, which is `0` for
/// the single-node heap.
pub fn credit(i: usize, k: usize) -> Result<u32> {
    if k == 0 || k > i {
        return Err(Error::IndexOutOfRange { index: k, len: i });
    }
    Ok(credit_unchecked(i, k))
}

#[inline]
pub(crate) fn credit_unchecked(i: usize, k: usize) -> u32 {
    if k == 1 {
        children(1, i)
    } else {
        2 * (floor_lg(k) - 1) + children(k / 2, i) + children(k, i)
    }
}

/// Largest credit attainable on a heap of `i ≥ 2` nodes: `⌊lg i⌋ + ⌊lg(i−1)⌋`.
pub fn cr_max(i: usize) -> Result<u32> {
    if i < 2 {
        return Err(Error::SizeOutOfRange {
            n: i,
            min: 2,
            max: usize::MAX,
        });
    }
    Ok(cr_max_unchecked(i))
}

/// [`cr_max`] extended by `0` at `i = 1`.
#[inline]
pub(crate) fn cr_max_unchecked(i: usize) -> u32 {
    if i < 2 {
        0
    } else {
        floor_lg(i) + floor_lg(i - 1)
    }
}

/// Loss `λ(i, k) = cr_max(i) − cr(i, k)`; zero on the single-node heap.
pub fn loss(i: usize, k: usize) -> Result<u32> {
    let c = credit(i, k)?;
    Ok(cr_max_unchecked(i) - c)
}

#[inline]
pub(crate) fn loss_unchecked(i: usize, k: usize) -> u32 {
    cr_max_unchecked(i) - credit_unchecked(i, k)
}

/// Closed-form test for a zero-loss move at index `k` on a heap of `n` nodes.
///
/// True iff `k = 2^⌊lg n⌋`, or `k = 2^(⌊lg n⌋−1)`, or `k` is a last-level node
/// with a sibling (`2^⌊lg n⌋ ≤ k` and `2⌊k/2⌋ < n`), or `k` is the parent of
/// such a pair (`2^⌊lg n⌋ ≤ 2k < n`).
pub fn is_lossless(n: usize, k: usize) -> bool {
    if n == 0 || k == 0 {
        return false;
    }
    let top = 1usize << floor_lg(n);
    k == top || 2 * k == top || (top <= k && 2 * (k / 2) < n) || (top <= 2 * k && 2 * k < n)
}

/// One move of a game.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct MoveRecord {
    /// Heap size before the move.
    pub size_before: usize,
    /// 1-based index of the pulled node in the pre-move heap.
    pub move_index: usize,
    /// Value pulled down.
    pub pull_value: usize,
    /// `cr(size_before, move_index)`.
    pub credit: u32,
    /// `λ(size_before, move_index)`.
    pub loss: u32,
}

/// A played game with its final heap and running totals.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GameLog {
    /// Moves in playing order.
    pub records: Vec<MoveRecord>,
    /// Heap after the last move.
    pub final_heap: Heap,
    /// Sum of credits over moves made on heaps of at least two nodes.
    pub payoff: u64,
    /// Sum of losses over all moves.
    pub accumulated_loss: u64,
}

impl GameLog {
    /// Pull values in playing order.
    pub fn pulls(&self) -> Vec<usize> {
        self.records.iter().map(|r| r.pull_value).collect()
    }

    /// Move indices in playing order.
    pub fn move_indices(&self) -> Vec<usize> {
        self.records.iter().map(|r| r.move_index).collect()
    }
}

/// A heap under construction with an inverse permutation for O(1) lookup of
/// the index holding a value.
#[derive(Debug, Clone)]
pub struct Game {
    nodes: Vec<usize>,
    pos: Vec<usize>,
}

impl Game {
    /// Starts a game at `start`.
    pub fn new(start: &Heap) -> Self {
        Self {
            nodes: start.as_slice().to_vec(),
            pos: start.positions(),
        }
    }

    /// Current number of nodes.
    pub fn size(&self) -> usize {
        self.nodes.len()
    }

    /// Current values in index order.
    pub fn nodes(&self) -> &[usize] {
        &self.nodes
    }

    /// Snapshot of the current heap.
    pub fn heap(&self) -> Heap {
        Heap::from_vec_unchecked(self.nodes.clone())
    }

    /// Consumes the game and returns the current heap.
    pub fn into_heap(self) -> Heap {
        Heap::from_vec_unchecked(self.nodes)
    }

    /// Index currently holding value `v`, if present.
    pub fn index_of(&self, v: usize) -> Option<usize> {
        self.pos.get(v).copied().filter(|&k| k != 0)
    }

    /// Pulls down value `v`. Fails with [`Error::InvalidMove`] carrying the
    /// index of `v` (or `0` if `v` is absent) when the move is not allowed.
    pub fn pull(&mut self, v: usize) -> Result<MoveRecord> {
        let i = self.size();
        if i == 0 {
            return Err(Error::EmptyHeap);
        }
        let k = self.index_of(v).ok_or(Error::InvalidMove(0))?;
        if v > self.nodes[i.div_ceil(2) - 1] {
            return Err(Error::InvalidMove(k));
        }
        let record = MoveRecord {
            size_before: i,
            move_index: k,
            pull_value: v,
            credit: credit_unchecked(i, k),
            loss: loss_unchecked(i, k),
        };
        self.nodes.push(v);
        self.pos[v] = i + 1;
        let mut m = k;
        while m > 1 {
            let up = self.nodes[m / 2 - 1];
            self.nodes[m - 1] = up;
            self.pos[up] = m;
            m /= 2;
        }
        self.nodes[0] = i + 1;
        self.pos.push(1);
        Ok(record)
    }
}

/// Plays `pulls` from `start`. A failing pull is reported as
/// [`Error::InvalidMove`] with its 1-based position in `pulls`.
pub fn play(start: &Heap, pulls: &[usize]) -> Result<GameLog> {
    if start.is_empty() {
        return Err(Error::EmptyHeap);
    }
    let mut game = Game::new(start);
    let mut records = Vec::with_capacity(pulls.len());
    let mut payoff = 0u64;
    let mut accumulated_loss = 0u64;
    for (position, &v) in pulls.iter().enumerate() {
        let record = game.pull(v).map_err(|_| Error::InvalidMove(position + 1))?;
        if record.size_before >= 2 {
            payoff += u64::from(record.credit);
        }
        accumulated_loss += u64::from(record.loss);
        records.push(record);
    }
    Ok(GameLog {
        records,
        final_heap: game.into_heap(),
        payoff,
        accumulated_loss,
    })
}

/// Builds the heap produced by `pulls` from `[1]` without keeping a log.
pub fn build(pulls: &[usize]) -> Result<Heap> {
    let mut game = Game::new(&Heap::singleton());
    for (position, &v) in pulls.iter().enumerate() {
        game.pull(v).map_err(|_| Error::InvalidMove(position + 1))?;
    }
    Ok(game.into_heap())
}

/// Sum of losses over moves `2^K − 1 ..= 2^(K+1) − 2`, the moves that fill
/// level `K` of the tree.
///
/// A log that ends inside the level is accepted and summed over the moves it
/// contains, provided it holds the first move of the level and no gaps.
pub fn level_loss(log: &GameLog, level: u32) -> Result<u64> {
    let from = (1usize << level) - 1;
    let to = (1usize << (level + 1)) - 2;
    let mut expected = from;
    let mut total = 0u64;
    for r in log
        .records
        .iter()
        .filter(|r| (from..=to).contains(&r.size_before))
    {
        if r.size_before != expected {
            return Err(Error::NotCovered { from, to });
        }
        expected += 1;
        total += u64::from(r.loss);
    }
    if expected == from {
        return Err(Error::NotCovered { from, to });
    }
    Ok(total)
}

/// A deterministic strategy of the game.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Strategy {
    /// Level-by-level pulls of `1` and `2`.
    Par,
    /// Optimal strategy for a target size `N`.
    Win(usize),
}

impl fmt::Display for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Strategy::Par => write!(f, "par"),
            Strategy::Win(n) => write!(f, "win({n})"),
        }
    }
}

/// A finite prefix of a strategy.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PullSchedule {
    /// Which strategy produced the pulls.
    pub strategy: Strategy,
    /// Pull values in playing order.
    pub pulls: Vec<usize>,
}

/// The first `limit − 1` pulls of `par`.
///
/// After the opening `⟨1,1,1,1,2,1⟩`, each level `k ≥ 3` is filled by
/// `⟨1,2,1,2⟩` followed by `2^(k−1) − 2` copies of `⟨2,1⟩`.
pub fn strategy_par(limit: usize) -> PullSchedule {
    let count = limit.saturating_sub(1);
    let mut pulls = Vec::with_capacity(count);
    pulls.extend([1, 1, 1, 1, 2, 1].iter().take(count));
    let mut level = 3u32;
    while pulls.len() < count {
        let mut block = vec![1, 2, 1, 2];
        for _ in 0..(1usize << (level - 1)) - 2 {
            block.extend([2, 1]);
        }
        let room = count - pulls.len();
        pulls.extend(block.into_iter().take(room));
        level += 1;
    }
    PullSchedule {
        strategy: Strategy::Par,
        pulls,
    }
}

/// The `N − 1` pulls of `win(N)`.
///
/// Identical to `par` when `N ≤ 7` or the heap on `N` nodes is complete.
/// Otherwise `par` builds the largest complete heap on `I` nodes, then the
/// last level is filled by `⟨1,4,1,4,…⟩` through move `2I − 3`, a pull of `1`
/// at move `2I − 2` and a pull of `2` at move `2I − 1`.
pub fn strategy_win(n: usize) -> PullSchedule {
    if n <= 7 || n + 1 == 1usize << ceil_lg(n + 1) {
        return PullSchedule {
            strategy: Strategy::Win(n),
            pulls: strategy_par(n).pulls,
        };
    }
    let complete = (1usize << floor_lg(n + 1)) - 1;
    let mut pulls = strategy_par(complete).pulls;
    for mv in complete..n {
        let v = if mv <= 2 * complete - 3 {
            if (mv - complete).is_multiple_of(2) {
                1
            } else {
                4
            }
        } else if mv == 2 * complete - 2 {
            1
        } else {
            2
        };
        pulls.push(v);
    }
    PullSchedule {
        strategy: Strategy::Win(n),
        pulls,
    }
}

/// Loss of `par` at move `i`: `1` iff `8 ≤ i = 2^⌊lg i⌋`.
pub fn lambda_par(i: usize) -> u32 {
    u32::from(i >= 8 && is_pow2(i))
}

/// Loss of `win(N)` at move `i < N`.
pub fn lambda_win(n: usize, i: usize) -> u32 {
    let complete = (1usize << floor_lg(n + 1)) - 1;
    if n <= 7 || n + 1 == 1usize << ceil_lg(n + 1) || i < complete {
        lambda_par(i)
    } else {
        u32::from(n >= 8 && complete <= i && formulas::lambda_star(i) == 1)
    }
}
