//! Brute-force ground truth at small sizes.
//!
//! Heaps are enumerated through the game tree: every heap on `N` nodes is
//! produced by exactly one sequence of valid pull downs from `[1]`, so a
//! depth-first walk over valid moves visits each heap once. That is far
//! smaller than filtering all `N!` permutations.

use rayon::prelude::*;
use serde::Serialize;

use crate::bitmath::{ceil_lg, floor_lg, is_pow2};
use crate::error::{Error, Result};
use crate::formulas;
use crate::game::{credit_unchecked, loss_unchecked};
use crate::heap::{heapsort_phases, makeheap_in_place, removeall_in_place, Heap};
use crate::inverse::unremovemax_in_place;

/// Largest size accepted by [`perm_worst`].
pub const PERM_CEILING: usize = 9;
/// Largest size accepted by [`heap_worst_removeall`].
pub const HEAP_CEILING: usize = 11;
/// Largest size accepted by [`enumerate_worstcase_heaps`].
pub const WORSTSET_CEILING: usize = 13;
/// Largest size accepted by [`singularity_check`].
pub const SINGULARITY_CEILING: usize = 12;
/// Largest complete size accepted by [`lossless_run_check`].
pub const LOSSLESS_RUN_CEILING: usize = 15;

/// Which Heapsort phase a permutation search maximizes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Phase {
    /// The heap construction phase alone.
    MakeHeap,
    /// Both phases together.
    Heapsort,
}

/// Maximum found by exhaustive search next to the closed-form value.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OracleReport {
    /// Size searched.
    pub n: usize,
    /// Largest comparison count observed.
    pub max_count: u64,
    /// One input attaining `max_count`.
    pub witness: Vec<usize>,
    /// Closed-form worst case for the same size.
    pub formula_value: i64,
    /// `max_count == formula_value`.
    pub agrees: bool,
}

impl OracleReport {
    fn new(n: usize, max_count: u64, witness: Vec<usize>, formula_value: i64) -> Self {
        Self {
            n,
            max_count,
            witness,
            formula_value,
            agrees: i64::try_from(max_count).ok() == Some(formula_value),
        }
    }
}

fn check_range(n: usize, min: usize, max: usize) -> Result<()> {
    if n < min || n > max {
        Err(Error::SizeOutOfRange { n, min, max })
    } else {
        Ok(())
    }
}

/// Exhaustive maximum over all permutations of `1..=N` of the comparisons
/// spent by `phase`, for `1 ≤ N ≤ 9`.
pub fn perm_worst(n: usize, phase: Phase) -> Result<OracleReport> {
    check_range(n, 1, PERM_CEILING)?;
    let formula = match phase {
        Phase::MakeHeap => formulas::makeheap_max(n),
        Phase::Heapsort if n >= 2 => formulas::heapsort_max(n),
        Phase::Heapsort => 0,
    };
    let (max_count, witness) = (1..=n)
        .into_par_iter()
        .map(|first| {
            let mut rest: Vec<usize> = (1..=n).filter(|&v| v != first).collect();
            let mut best = (0u64, Vec::new());
            loop {
                let mut input = Vec::with_capacity(n);
                input.push(first);
                input.extend_from_slice(&rest);
                let count = phase_cost(&input, phase);
                if best.1.is_empty() || count > best.0 {
                    best = (count, input);
                }
                if !next_permutation(&mut rest) {
                    break;
                }
            }
            best
        })
        .reduce(
            || (0, Vec::new()),
            |a, b| if b.0 > a.0 || a.1.is_empty() { b } else { a },
        );
    Ok(OracleReport::new(n, max_count, witness, formula))
}

fn phase_cost(input: &[usize], phase: Phase) -> u64 {
    match phase {
        Phase::MakeHeap => makeheap_in_place(&mut input.to_vec()),
        Phase::Heapsort => heapsort_phases(input).expect("permutation").1.total(),
    }
}

/// Rearranges `a` into the next permutation in lexicographic order; returns
/// `false` (leaving `a` sorted ascending) after the last one.
pub fn next_permutation(a: &mut [usize]) -> bool {
    if a.len() < 2 {
        return false;
    }
    let Some(i) = (0..a.len() - 1).rev().find(|&i| a[i] < a[i + 1]) else {
        a.reverse();
        return false;
    };
    let j = (i + 1..a.len())
        .rev()
        .find(|&j| a[j] > a[i])
        .expect("successor exists");
    a.swap(i, j);
    a[i + 1..].reverse();
    true
}

/// Indices `k` that are valid moves on `a`: `a[k] ≤ a[⌊(i+1)/2⌋]`.
pub(crate) fn valid_moves(a: &[usize]) -> impl Iterator<Item = usize> + '_ {
    let i = a.len();
    let threshold = a[i.div_ceil(2) - 1];
    (1..=i).filter(move |&k| a[k - 1] <= threshold)
}

fn with_move(a: &[usize], k: usize) -> Vec<usize> {
    let mut next = Vec::with_capacity(a.len() + 1);
    next.extend_from_slice(a);
    unremovemax_in_place(&mut next, k);
    next
}

/// Calls `visit` on every heap with exactly `n` nodes, once each.
pub fn for_each_heap<F: FnMut(&[usize])>(n: usize, mut visit: F) {
    fn walk<F: FnMut(&[usize])>(a: &[usize], n: usize, visit: &mut F) {
        if a.len() == n {
            visit(a);
            return;
        }
        for k in valid_moves(a) {
            walk(&with_move(a, k), n, visit);
        }
    }
    if n >= 1 {
        walk(&[1], n, &mut visit);
    }
}

/// Every heap on `n` nodes, in game-tree order.
pub fn enumerate_heaps(n: usize) -> Vec<Heap> {
    let mut out = Vec::new();
    for_each_heap(n, |a| out.push(Heap::from_vec_unchecked(a.to_vec())));
    out
}

/// Number of heaps on `n` nodes, `n! / Π subtree sizes`, computed without
/// enumeration.
pub fn heap_count_formula(n: usize) -> u128 {
    let mut sizes = vec![0u128; n + 1];
    for i in (1..=n).rev() {
        sizes[i] = 1
            + if 2 * i <= n { sizes[2 * i] } else { 0 }
            + if 2 * i < n { sizes[2 * i + 1] } else { 0 };
    }
    // Each node's value is the largest of its subtree; the remaining values
    // split between the two child subtrees in C(left + right, left) ways.
    fn count(i: usize, n: usize, sizes: &[u128]) -> u128 {
        if i > n {
            return 1;
        }
        let left = if 2 * i <= n { sizes[2 * i] } else { 0 };
        let right = if 2 * i < n { sizes[2 * i + 1] } else { 0 };
        binomial(left + right, left) * count(2 * i, n, sizes) * count(2 * i + 1, n, sizes)
    }
    count(1, n, &sizes)
}

fn binomial(n: u128, k: u128) -> u128 {
    let k = k.min(n - k);
    (0..k).fold(1, |acc, j| acc * (n - j) / (j + 1))
}

/// Exhaustive maximum of RemoveAll comparisons over all heaps on `N` nodes,
/// for `1 ≤ N ≤ 11`.
pub fn heap_worst_removeall(n: usize) -> Result<OracleReport> {
    check_range(n, 1, HEAP_CEILING)?;
    let mut best = (0u64, Vec::new());
    for_each_heap(n, |a| {
        let mut work = a.to_vec();
        let count = removeall_in_place(&mut work);
        if best.1.is_empty() || count > best.0 {
            best = (count, a.to_vec());
        }
    });
    let formula = if n >= 2 {
        formulas::removeall_max(n)
    } else {
        0
    };
    Ok(OracleReport::new(n, best.0, best.1, formula))
}

/// All worst-case heaps for RemoveAll on `n` nodes, without a size ceiling.
///
/// The walk keeps only prefixes whose accumulated loss stays within the
/// least possible total `Σ_{i ≤ n−1} λ*(i)`.
pub fn worstcase_heaps_unbounded(n: usize) -> Vec<Heap> {
    fn walk(a: &[usize], n: usize, spent: i64, budget: i64, out: &mut Vec<Heap>) {
        let i = a.len();
        if i == n {
            if spent == budget {
                out.push(Heap::from_vec_unchecked(a.to_vec()));
            }
            return;
        }
        for k in valid_moves(a) {
            let total = spent + i64::from(loss_unchecked(i, k));
            if total <= budget {
                walk(&with_move(a, k), n, total, budget, out);
            }
        }
    }
    let mut out = Vec::new();
    if n >= 1 {
        let budget = if n >= 2 {
            formulas::sum_lambda_star(n - 1)
        } else {
            0
        };
        walk(&[1], n, 0, budget, &mut out);
    }
    out
}

/// All worst-case heaps for RemoveAll on `N` nodes, for `1 ≤ N ≤ 13`.
pub fn enumerate_worstcase_heaps(n: usize) -> Result<Vec<Heap>> {
    check_range(n, 1, WORSTSET_CEILING)?;
    Ok(worstcase_heaps_unbounded(n))
}

/// Result of [`singularity_check`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SingularityReport {
    /// Size examined.
    pub n: usize,
    /// Number of worst-case heaps on `n` nodes.
    pub worst_case_heaps: usize,
    /// Valid zero-loss moves found across those heaps.
    pub lossless_moves: usize,
    /// `lossless_moves == 0`.
    pub holds: bool,
}

/// Checks that no worst-case heap on `N = 2^⌈lg N⌉ − 4` nodes admits a valid
/// zero-loss move. Accepts `N` of that form with `12 ≤ N ≤ 12`.
pub fn singularity_check(n: usize) -> Result<SingularityReport> {
    let form = "2^k - 4 with k >= 4";
    if n < 12 || n + 4 != 1usize << ceil_lg(n) {
        return Err(Error::WrongForm { n, form });
    }
    check_range(n, 12, SINGULARITY_CEILING)?;
    let heaps = worstcase_heaps_unbounded(n);
    let lossless_moves = heaps
        .iter()
        .map(|h| {
            valid_moves(h.as_slice())
                .filter(|&k| loss_unchecked(n, k) == 0)
                .count()
        })
        .sum();
    Ok(SingularityReport {
        n,
        worst_case_heaps: heaps.len(),
        lossless_moves,
        holds: lossless_moves == 0,
    })
}

/// Length of the longest sequence of consecutive zero-loss pull downs that
/// can be played starting from `a`, capped at `cap`.
pub fn longest_lossless_run(a: &[usize], cap: usize) -> usize {
    if cap == 0 {
        return 0;
    }
    let i = a.len();
    let mut best = 0;
    for k in valid_moves(a) {
        if loss_unchecked(i, k) == 0 {
            let run = 1 + longest_lossless_run(&with_move(a, k), cap - 1);
            best = best.max(run);
            if best == cap {
                break;
            }
        }
    }
    best
}

/// Result of [`lossless_run_check`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LosslessRunReport {
    /// Complete size `M` examined.
    pub m: usize,
    /// Number of worst-case heaps on `M` nodes.
    pub worst_case_heaps: usize,
    /// Longest run of consecutive zero-loss pull downs from any of them.
    pub max_run: usize,
    /// `max_run ≤ M − 2`.
    pub holds: bool,
}

/// Checks that no worst-case heap on `M = 2^k − 1 ≥ 7` nodes admits more than
/// `M − 2` consecutive zero-loss pull downs. Accepts `M ∈ {7, 15}`.
pub fn lossless_run_check(m: usize) -> Result<LosslessRunReport> {
    if m < 7 || !is_pow2(m + 1) {
        return Err(Error::WrongForm {
            n: m,
            form: "2^k - 1 with k >= 3",
        });
    }
    check_range(m, 7, LOSSLESS_RUN_CEILING)?;
    let heaps = worstcase_heaps_unbounded(m);
    // Searching one step past the bound is enough to detect a violation.
    let cap = m - 1;
    let max_run = heaps
        .par_iter()
        .map(|h| longest_lossless_run(h.as_slice(), cap))
        .max()
        .unwrap_or(0);
    Ok(LosslessRunReport {
        m,
        worst_case_heaps: heaps.len(),
        max_run,
        holds: max_run <= m - 2,
    })
}

/// Result of [`removemax_max_check`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RemoveMaxReport {
    /// Size examined.
    pub n: usize,
    /// Largest RemoveMax comparison count over all heaps on `n` nodes.
    pub max_count: u64,
    /// `⌊lg(N−1)⌋ + ⌊lg(N−2)⌋`.
    pub formula_value: u64,
    /// `max_count == formula_value`.
    pub agrees: bool,
}

/// Exhaustive maximum of a single RemoveMax over all heaps on `N` nodes,
/// for `3 ≤ N ≤ 11`.
pub fn removemax_max_check(n: usize) -> Result<RemoveMaxReport> {
    check_range(n, 3, HEAP_CEILING)?;
    let mut max_count = 0;
    for_each_heap(n, |a| {
        let mut h = Heap::from_vec_unchecked(a.to_vec());
        let (_, cost) = h.remove_max().expect("non-empty");
        max_count = max_count.max(cost);
    });
    let formula_value = u64::from(floor_lg(n - 1) + floor_lg(n - 2));
    Ok(RemoveMaxReport {
        n,
        max_count,
        formula_value,
        agrees: max_count == formula_value,
    })
}

/// Result of [`full_lossless_level_check`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FullLevelReport {
    /// Size examined, a power of two.
    pub n: usize,
    /// Heaps on `n` nodes examined.
    pub heaps: usize,
    /// Heaps admitting `n − 1` consecutive zero-loss pull downs.
    pub admitting: usize,
    /// Heaps where admission disagrees with `H[N] = 1 ∧ H[N/2] = 2`.
    pub mismatches: usize,
}

/// For `N = 8`, checks over all heaps that `N − 1` consecutive zero-loss
/// pull downs are possible exactly when `H[N] = 1` and `H[N/2] = 2`.
pub fn full_lossless_level_check(n: usize) -> Result<FullLevelReport> {
    if !is_pow2(n) {
        return Err(Error::WrongForm {
            n,
            form: "power of two",
        });
    }
    check_range(n, 8, 8)?;
    let mut report = FullLevelReport {
        n,
        heaps: 0,
        admitting: 0,
        mismatches: 0,
    };
    for_each_heap(n, |a| {
        report.heaps += 1;
        let admits = longest_lossless_run(a, n - 1) == n - 1;
        let predicted = a[n - 1] == 1 && a[n / 2 - 1] == 2;
        report.admitting += usize::from(admits);
        report.mismatches += usize::from(admits != predicted);
    });
    Ok(report)
}

/// Measured RemoveMax cost after the move at index `k` on `a`, next to the
/// closed-form credit. Used by the exhaustive credit check.
pub fn measured_credit(a: &[usize], k: usize) -> (u64, u32) {
    let mut up = Heap::from_vec_unchecked(with_move(a, k));
    let (_, cost) = up.remove_max().expect("non-empty");
    (cost, credit_unchecked(a.len(), k))
}
