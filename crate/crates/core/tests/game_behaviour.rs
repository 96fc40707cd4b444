//! Behaviour of the pull-down game: strategy invariants, loss profiles and
//! the two-leaf pull pattern on complete heaps.

mod common;

use common::{heap_from_choices, removemax_cost, valid_moves};
use heapworst::bitmath::{ceil_lg, floor_lg, is_pow2};
use heapworst::formulas::{lambda_star, lambda_win_total};
use heapworst::game::{
    build, cr_max, credit, lambda_par, lambda_win, loss, play, strategy_par, strategy_win,
};
use heapworst::heap::validate;
use heapworst::inverse::unremovemax;
use heapworst::Heap;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

#[test]
fn par_complete_heaps_end_with_four_three_two_one() {
    for k in 3..=12u32 {
        let n = (1usize << k) - 1;
        let h = build(&strategy_par(n).pulls).unwrap();
        let first_leaf = n.div_ceil(2);
        assert_eq!(h.get(first_leaf), 4, "n = {n}");
        assert_eq!(h.get(n / 2), 3, "n = {n}");
        assert_eq!((h.get(n - 1), h.get(n)), (2, 1), "n = {n}");
    }
}

#[test]
fn par_loses_exactly_at_powers_of_two_from_eight() {
    let log = play(&Heap::singleton(), &strategy_par(4096).pulls).unwrap();
    for r in &log.records {
        let i = r.size_before;
        let expected = u32::from(i >= 8 && is_pow2(i));
        assert_eq!(r.loss, expected, "move {i}");
        assert_eq!(lambda_par(i), expected, "move {i}");
    }
}

#[test]
fn win_loss_profile_matches_its_closed_form() {
    for n in 2..=1100 {
        let log = play(&Heap::singleton(), &strategy_win(n).pulls).unwrap();
        assert_eq!(log.records.len(), n - 1);
        for r in &log.records {
            assert_eq!(
                r.loss,
                lambda_win(n, r.size_before),
                "n = {n}, move {}",
                r.size_before
            );
        }
        assert_eq!(log.accumulated_loss as i64, lambda_win_total(n), "n = {n}");
    }
}

#[test]
fn win_loses_once_past_the_last_complete_heap_when_needed() {
    for n in 8..=1100usize {
        let complete = (1usize << floor_lg(n + 1)) - 1;
        if n == complete {
            continue;
        }
        for i in complete..n {
            let expected = u32::from(i + 4 == 1usize << ceil_lg(i));
            assert_eq!(lambda_win(n, i), expected, "n = {n}, i = {i}");
            assert_eq!(lambda_star(i), expected, "i = {i}");
        }
    }
}

#[test]
fn cr_max_is_attained_on_every_size() {
    for i in 2..=256usize {
        let descending: Vec<usize> = (1..=i).rev().collect();
        let h = validate(&descending).unwrap();
        let hit = valid_moves(&h)
            .into_iter()
            .find(|&k| credit(i, k).unwrap() == cr_max(i).unwrap())
            .unwrap_or_else(|| panic!("no move attains cr_max at i = {i}"));
        let up = unremovemax(&h, hit).unwrap();
        assert_eq!(
            removemax_cost(&up),
            u64::from(cr_max(i).unwrap()),
            "i = {i}"
        );
    }
}

/// `⟨1,2,1,2,…⟩` (any interleaving of the pairs `12` and `21` after the
/// first `12`, optionally followed by one more pull) on a complete heap whose
/// nodes 1 and 2 are leaves with `2 ≤ H[(N+1)/2]`: only the second move may lose, and it loses one
/// credit exactly when `H[(N+1)/2] > 2`.
#[test]
fn one_two_pulls_on_complete_heaps() {
    let mut rng = StdRng::seed_from_u64(0x5eed_1212);
    let mut checked = [0usize; 2];
    for k in 3..=7u32 {
        let n = (1usize << k) - 1;
        for _ in 0..400 {
            let choices: Vec<usize> = (0..n).map(|_| rng.random_range(0..usize::MAX)).collect();
            let h = heap_from_choices(n, &choices);
            let first_leaf = n.div_ceil(2);
            let pos = h.positions();
            if pos[1] < first_leaf || pos[2] < first_leaf {
                continue;
            }
            let (p, q) = (1, 2);
            let mid = h.get(first_leaf);
            if mid < q {
                continue;
            }
            let pairs = rng.random_range(0..=n / 2 - 1);
            let mut pulls = vec![p, q];
            for _ in 0..pairs {
                if rng.random::<bool>() {
                    pulls.extend([p, q]);
                } else {
                    pulls.extend([q, p]);
                }
            }
            if pulls.len() < n + 1 && rng.random::<bool>() {
                pulls.push(if rng.random::<bool>() { p } else { q });
            }
            let log = play(&h, &pulls)
                .unwrap_or_else(|e| panic!("{e:?} heap {:?} pulls {pulls:?}", h.as_slice()));
            for (idx, r) in log.records.iter().enumerate() {
                let expected = if idx == 1 { u32::from(mid > q) } else { 0 };
                assert_eq!(
                    r.loss,
                    expected,
                    "heap {:?}, pulls {pulls:?}, move {}",
                    h.as_slice(),
                    idx + 1
                );
            }
            checked[usize::from(mid == q)] += 1;
        }
    }
    assert!(
        checked[0] > 100 && checked[1] > 20,
        "samples per case: {checked:?}"
    );
}

/// The general two-leaf pattern needs more than `q ≤ H[(N+1)/2]`: here the
/// leaf 4 becomes the midpoint before the second pull of 5.
#[test]
fn two_leaf_pattern_can_run_out_of_valid_moves() {
    let h = validate(&[7, 6, 3, 5, 4, 1, 2]).unwrap();
    assert_eq!(
        play(&h, &[1, 5, 1, 5]).unwrap_err(),
        heapworst::Error::InvalidMove(4)
    );
}

#[test]
fn loss_is_never_negative() {
    for i in 2..=1024 {
        for k in 1..=i {
            assert!(
                credit(i, k).unwrap() <= cr_max(i).unwrap(),
                "i = {i}, k = {k}"
            );
            assert_eq!(
                loss(i, k).unwrap() + credit(i, k).unwrap(),
                cr_max(i).unwrap()
            );
        }
    }
}
