//! Closed-form worst-case comparison counts and their companion quantities.
//!
//! Integer formulas use exact shifts and bit scans and return `i64` so that
//! intermediate negative terms need no special care. Only the ε form of the
//! Heapsort count and the logarithmic bounds on `2s₂(N) + e₂(N)` are real
//! valued.

use crate::bitmath::{ceil_lg, e2, floor_lg, is_pow2, s2};

/// `1 − lg e + lg lg e`, the supremum of [`epsilon`].
pub const DELTA: f64 = 0.086_071_332_055_934_2;

/// Tolerance used when comparing real-valued quantities.
pub const REAL_TOLERANCE: f64 = 1e-9;

#[inline]
fn pow2(k: u32) -> i64 {
    1i64 << k
}

#[inline]
fn as_i64(n: usize) -> i64 {
    i64::try_from(n).expect("size fits in i64")
}

/// `1` iff `N ≤ 2^⌈lg N⌉ − 4`.
pub fn c_of(n: usize) -> i64 {
    i64::from(as_i64(n) <= pow2(ceil_lg(n)) - 4)
}

/// Worst-case MakeHeap comparisons: `2N − 2s₂(N) − e₂(N)`.
pub fn makeheap_max(n: usize) -> i64 {
    2 * as_i64(n) - 2 * i64::from(s2(n)) - i64::from(e2(n))
}

/// Worst-case RemoveAll comparisons for `N ≥ 2`:
/// `2(N−1)⌊lg(N−1)⌋ − 2^(⌊lg(N−1)⌋+2) + min(⌊lg(N−1)⌋, 2) + 4 + c`.
pub fn removeall_max(n: usize) -> i64 {
    p_par(n) + c_of(n)
}

/// Worst-case Heapsort comparisons, defined as the sum of the phase maxima.
pub fn heapsort_max(n: usize) -> i64 {
    makeheap_max(n) + removeall_max(n)
}

/// Single-expression form of [`heapsort_max`] in terms of `⌈lg N⌉`:
/// `2(N−1)⌈lg N⌉ − 2^(⌈lg N⌉+1) − 2s₂(N) − e₂(N) + min(⌈lg N⌉, 3) + 5 + c`.
pub fn heapsort_max_ceil_form(n: usize) -> i64 {
    let big = as_i64(n);
    let cl = ceil_lg(n);
    2 * (big - 1) * i64::from(cl) - pow2(cl + 1) - 2 * i64::from(s2(n)) - i64::from(e2(n))
        + i64::from(cl.min(3))
        + 5
        + c_of(n)
}

/// Power-of-two form of [`heapsort_max`]: `(2N − 3)·lg(N/2) + 3` for
/// `N ≥ 8` and `2(N − 1)·lg(N/2) + 1` for `N ∈ {2, 4}`. `None` unless `N` is a
/// power of two with `N ≥ 2`.
pub fn heapsort_max_pow2_form(n: usize) -> Option<i64> {
    if n < 2 || !is_pow2(n) {
        return None;
    }
    let big = as_i64(n);
    let half_lg = i64::from(floor_lg(n) - 1);
    Some(if n >= 8 {
        (2 * big - 3) * half_lg + 3
    } else {
        2 * (big - 1) * half_lg + 1
    })
}

/// `θ = ⌈lg(N−1)⌉ − lg(N−1)` for `N ≥ 2`.
pub fn theta(n: usize) -> f64 {
    let x = n - 1;
    let top = (1u64 << ceil_lg(x)) as f64;
    (top / x as f64).log2()
}

/// `ε = 1 + θ − 2^θ` for `N ≥ 2`.
pub fn epsilon(n: usize) -> f64 {
    let x = n - 1;
    let top = (1u64 << ceil_lg(x)) as f64;
    // 2^θ equals top / x exactly, so only θ itself carries rounding error.
    1.0 + theta(n) - top / x as f64
}

/// Real-valued form of [`heapsort_max`]:
/// `2(N−1)(lg((N−1)/2) + ε) − 2s₂(N) − e₂(N) + min(⌊lg(N−1)⌋, 2) + 6 + c`.
pub fn heapsort_max_epsilon(n: usize) -> f64 {
    let x = (n - 1) as f64;
    2.0 * x * ((x / 2.0).log2() + epsilon(n)) - 2.0 * f64::from(s2(n)) - f64::from(e2(n))
        + f64::from(floor_lg(n - 1).min(2))
        + 6.0
        + c_of(n) as f64
}

/// Exact integer value of `2(N−1)(lg((N−1)/2) + ε)`, which simplifies to
/// `2(N−1)⌈lg(N−1)⌉ − 2^(⌈lg(N−1)⌉+1)`.
pub fn epsilon_leading_term_exact(n: usize) -> i64 {
    let cl = ceil_lg(n - 1);
    2 * as_i64(n - 1) * i64::from(cl) - pow2(cl + 1)
}

/// Delayed loss `λ*(i)`: `1` iff `i = 2^⌈lg i⌉ − 4`.
pub fn lambda_star(i: usize) -> u32 {
    u32::from(i >= 1 && as_i64(i) == pow2(ceil_lg(i)) - 4)
}

/// `Σ_{i=2}^{n} λ*(i)` in closed form: `max(⌊lg(n+4)⌋, 3) − 3`.
pub fn sum_lambda_star(n: usize) -> i64 {
    i64::from(floor_lg(n + 4).max(3)) - 3
}

/// `Σ_{i=2}^{n} λ*(i)` by direct summation.
pub fn sum_lambda_star_literal(n: usize) -> i64 {
    (2..=n).map(|i| i64::from(lambda_star(i))).sum()
}

/// Total loss of `win(N)` over its `N − 1` moves: `max(⌊lg(N+3)⌋, 3) − 3`.
pub fn lambda_win_total(n: usize) -> i64 {
    i64::from(floor_lg(n + 3).max(3)) - 3
}

/// Payoff of the first `N − 1` moves of `par`:
/// `2(N−1)⌊lg(N−1)⌋ − 2^(⌊lg(N−1)⌋+2) + min(⌊lg(N−1)⌋, 2) + 4`.
pub fn p_par(n: usize) -> i64 {
    let x = as_i64(n - 1);
    let l = floor_lg(n - 1);
    2 * x * i64::from(l) - pow2(l + 2) + i64::from(l.min(2)) + 4
}

/// Payoff of the `N − 1` moves of `win(N)`: `P^UB(2, N−1) − Λ_win(N)`.
pub fn p_win(n: usize) -> i64 {
    p_ub_prefix(n - 1) - lambda_win_total(n)
}

/// `Σ_{i=2}^{m} (⌊lg i⌋ + ⌊lg(i−1)⌋)` in closed form:
/// `(2m+1)⌊lg m⌋ − 2^(⌊lg m⌋+2) + 4`, which is `0` at `m = 1`.
pub fn p_ub_prefix(m: usize) -> i64 {
    let l = floor_lg(m);
    (2 * as_i64(m) + 1) * i64::from(l) - pow2(l + 2) + 4
}

/// Upper-bound payoff `P^UB(n, m) = Σ_{i=n}^{m} (⌊lg i⌋ + ⌊lg(i−1)⌋)` for
/// `2 ≤ n ≤ m`. `None` outside that range.
pub fn p_ub(n: usize, m: usize) -> Option<i64> {
    if n < 2 || n > m {
        return None;
    }
    Some(p_ub_prefix(m) - p_ub_prefix(n - 1))
}

/// [`p_ub`] by direct summation.
pub fn p_ub_literal(n: usize, m: usize) -> Option<i64> {
    if n < 2 || n > m {
        return None;
    }
    Some(
        (n..=m)
            .map(|i| i64::from(floor_lg(i) + floor_lg(i - 1)))
            .sum(),
    )
}

/// `f(N) = 2s₂(N) + e₂(N)`.
pub fn f_s2e2(n: usize) -> i64 {
    2 * i64::from(s2(n)) + i64::from(e2(n))
}

/// `f(N)` through the recurrence that strips the leading binary digit:
/// `f(N) = 2 + lg N` for powers of two, otherwise `2 + f(N − 2^⌊lg(N−1)⌋)`.
pub fn f_recurrence(n: usize) -> i64 {
    let mut acc = 0;
    let mut m = n;
    loop {
        if is_pow2(m) {
            return acc + 2 + i64::from(floor_lg(m));
        }
        acc += 2;
        m -= 1 << floor_lg(m - 1);
    }
}

/// `2 lg(N − 2^⌊lg(N−1)⌋ + 1) + 2`, an upper bound on `f(N)` for `N ≥ 2`.
pub fn f_bound1(n: usize) -> f64 {
    let r = n - (1 << floor_lg(n - 1)) + 1;
    2.0 * (r as f64).log2() + 2.0
}

/// `true` iff `N` lies in `E = {2^k : k ≥ 3} ∪ {2^m(2^k+1) : k, m ≥ 1}`.
pub fn in_exception_set(n: usize) -> bool {
    if n == 0 {
        return false;
    }
    if is_pow2(n) {
        return n >= 8;
    }
    let odd = n >> e2(n);
    e2(n) >= 1 && odd >= 3 && is_pow2(odd - 1)
}

/// Refined bound `2 lg(N − 2^⌊lg(N−1)⌋ − 2^⌊lg(N−1−2^⌊lg(N−1)⌋)⌋ + 1) + 2`.
///
/// `None` where the expression is undefined: the inner logarithm needs
/// `N − 1 − 2^⌊lg(N−1)⌋ ≥ 1` and the outer one a positive argument. This
/// bound is not relied on anywhere; [`f_bound2_report`] measures where it
/// fails.
pub fn f_bound2(n: usize) -> Option<f64> {
    if n < 3 {
        return None;
    }
    let top = 1usize << floor_lg(n - 1);
    let inner = n - 1 - top;
    if inner < 1 {
        return None;
    }
    let arg = (n - top) as i64 - (1i64 << floor_lg(inner)) + 1;
    if arg <= 0 {
        return None;
    }
    Some(2.0 * (arg as f64).log2() + 2.0)
}

/// Outcome of checking [`f_bound2`] over `3..=limit` outside `E`.
#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize)]
pub struct Bound2Report {
    /// Largest `N` examined.
    pub limit: usize,
    /// Number of `N ∉ E` examined.
    pub checked: usize,
    /// `N` where the bound is defined but `f(N)` exceeds it.
    pub violations: Vec<usize>,
    /// `N` where the bound is undefined.
    pub undefined: Vec<usize>,
}

/// Evaluates [`f_bound2`] against `f(N)` for every `N ∉ E` in `3..=limit`.
pub fn f_bound2_report(limit: usize) -> Bound2Report {
    let mut report = Bound2Report {
        limit,
        checked: 0,
        violations: Vec::new(),
        undefined: Vec::new(),
    };
    for n in 3..=limit {
        if in_exception_set(n) {
            continue;
        }
        report.checked += 1;
        match f_bound2(n) {
            None => report.undefined.push(n),
            Some(b) if f_s2e2(n) as f64 > b + REAL_TOLERANCE => report.violations.push(n),
            Some(_) => {}
        }
    }
    report
}
