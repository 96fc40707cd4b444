//! Property tests for heap operations and their inverses.

mod common;

use common::{heap_from_choices, removemax_cost, valid_moves};
use heapworst::bitmath::{floor_lg, leftmost_descendant, path_to, subtree_depth};
use heapworst::formulas::{makeheap_max, p_ub};
use heapworst::game::{credit, play};
use heapworst::heap::{
    fixheap, heapsort, heapsort_phases, makeheap, removeall, removemax, validate,
};
use heapworst::inverse::{creative_sequence, gen_makeheap_worst, unfixheap, unremovemax};
use heapworst::Heap;
use proptest::prelude::*;

fn heap_upto(max: usize) -> impl Strategy<Value = Heap> {
    (1..=max, prop::collection::vec(any::<usize>(), max))
        .prop_map(|(n, choices)| heap_from_choices(n, &choices))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(400))]

    #[test]
    fn unremovemax_then_removemax_is_identity(h in heap_upto(64), pick in any::<usize>()) {
        let moves = valid_moves(&h);
        let k = moves[pick % moves.len()];
        let up = unremovemax(&h, k).unwrap();
        prop_assert!(validate(up.as_slice()).is_ok());
        let run = removemax(&up).unwrap();
        let (max, rest) = run.result;
        prop_assert_eq!(max, h.len() + 1);
        prop_assert_eq!(rest, h.clone());
        prop_assert_eq!(run.comparisons, u64::from(credit(h.len(), k).unwrap()));
    }

    #[test]
    fn exactly_one_move_rebuilds_a_heap(h in heap_upto(64)) {
        prop_assume!(h.len() >= 2);
        let rest = removemax(&h).unwrap().result.1;
        let rebuilding: Vec<usize> = valid_moves(&rest)
            .into_iter()
            .filter(|&k| unremovemax(&rest, k).unwrap() == h)
            .collect();
        prop_assert_eq!(rebuilding.len(), 1);
        let seq = creative_sequence(&h);
        prop_assert_eq!(rest.get(rebuilding[0]), *seq.pulls.last().unwrap());
    }

    #[test]
    fn unfixheap_then_fixheap_costs_the_maximum(h in heap_upto(64), pick in any::<usize>()) {
        let n = h.len();
        prop_assume!(n >= 2);
        let i = 1 + pick % (n / 2);
        let mut a = unfixheap(h.as_slice(), i).unwrap();
        let cost = fixheap(&mut a, i).unwrap();
        prop_assert_eq!(a.as_slice(), h.as_slice());
        prop_assert_eq!(cost, u64::from(floor_lg(n / i) + floor_lg((n - 1) / i)));
    }

    #[test]
    fn generated_array_forces_makeheap_to_its_maximum(h in heap_upto(64)) {
        let a = gen_makeheap_worst(&h);
        let run = makeheap(&a).unwrap();
        prop_assert_eq!(run.result, h.clone());
        let expected = if h.len() >= 2 { makeheap_max(h.len()) } else { 0 };
        prop_assert_eq!(run.comparisons as i64, expected);
    }

    #[test]
    fn creative_sequence_replays_to_the_heap(h in heap_upto(64)) {
        let seq = creative_sequence(&h);
        prop_assert_eq!(seq.pulls.len(), h.len() - 1);
        let log = play(&Heap::singleton(), &seq.pulls).unwrap();
        prop_assert_eq!(log.final_heap, h);
    }

    #[test]
    fn removeall_cost_is_the_sum_of_credits(h in heap_upto(64)) {
        let seq = creative_sequence(&h);
        let log = play(&Heap::singleton(), &seq.pulls).unwrap();
        let run = removeall(h.clone());
        prop_assert_eq!(run.comparisons, log.payoff);
        let credits: u64 = log.records.iter().map(|r| u64::from(r.credit)).sum();
        prop_assert_eq!(credits, log.payoff);
        let ascending: Vec<usize> = (1..=h.len()).collect();
        prop_assert_eq!(run.result, ascending);
    }

    #[test]
    fn payoff_plus_loss_is_the_upper_bound(h in heap_upto(64)) {
        prop_assume!(h.len() >= 3);
        let log = play(&Heap::singleton(), &creative_sequence(&h).pulls).unwrap();
        let bound = p_ub(2, h.len() - 1).unwrap();
        prop_assert_eq!(log.payoff as i64 + log.accumulated_loss as i64, bound);
    }

    #[test]
    fn heapsort_is_the_sum_of_its_phases(perm in Just((1..=40usize).collect::<Vec<_>>()).prop_shuffle(), len in 1..=40usize) {
        let a: Vec<usize> = perm.into_iter().filter(|&v| v <= len).collect();
        let (sorted, phases) = heapsort_phases(&a).unwrap();
        let whole = heapsort(&a).unwrap();
        prop_assert_eq!(&sorted, &whole.result);
        prop_assert_eq!(phases.total(), whole.comparisons);
        let mut expected = a.clone();
        expected.sort_unstable();
        prop_assert_eq!(sorted, expected);
    }

    #[test]
    fn credit_matches_measured_removemax(h in heap_upto(64)) {
        let n = h.len();
        for k in valid_moves(&h) {
            let up = unremovemax(&h, k).unwrap();
            prop_assert_eq!(removemax_cost(&up), u64::from(credit(n, k).unwrap()));
        }
    }

    #[test]
    fn index_algebra(i in 1usize..=4096, extra in 0usize..4096) {
        let n = i + extra;
        let leaf = leftmost_descendant(i, n).unwrap();
        prop_assert!(leaf <= n && 2 * leaf > n);
        let d = subtree_depth(i, n).unwrap();
        prop_assert!(i << d <= n && n < i << (d + 1));
        let path = path_to(n);
        prop_assert_eq!(path.len() as u32, floor_lg(n) + 1);
        prop_assert!(path.windows(2).all(|w| w[0] == w[1] / 2));
    }
}
