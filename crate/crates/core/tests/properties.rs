//! Randomized invariant checks over arbitrary small graphs and plans.

use proptest::collection::vec;
use proptest::prelude::*;

use marcello_core::{
    apply_plan, canonical_form, counting_lower_bound, degree_sum_bound, emit_graph6, emit_schedule,
    marcello_upper, one_shot_completable, parse_graph6, parse_schedule, validate_plan,
    verify_sequence, GlobalPlan, LocalStep, OneShot, Graph, PlanCheck, SequenceCheck, Solver, Value,
};

/// Arbitrary labeled graph with order `2..=max_order`, edges drawn from the
/// whole pair set.
fn graph_strategy(max_order: usize) -> impl Strategy<Value = Graph> {
    (2..=max_order)
        .prop_flat_map(|n| {
            let pairs = n * (n - 1) / 2;
            (Just(n), 0u64..(1u64 << pairs))
        })
        .prop_map(|(n, bits)| {
            let mut edges = Vec::new();
            let mut i = 0;
            for u in 0..n {
                for v in u + 1..n {
                    if bits >> i & 1 == 1 {
                        edges.push((u, v));
                    }
                    i += 1;
                }
            }
            Graph::from_edges(n, &edges).expect("pairs are in range")
        })
}

/// Arbitrary plan over five vertices, valid or not.
fn plan_strategy() -> impl Strategy<Value = GlobalPlan> {
    vec((0..5usize, vec(0..5usize, 0..4)), 0..6).prop_map(|steps| {
        GlobalPlan::new(
            steps.into_iter().map(|(initiator, added)| LocalStep { initiator, added }).collect(),
        )
    })
}

fn permutation_from(seed: u64, n: usize) -> Vec<usize> {
    // Seeded Fisher–Yates, so the property stays reproducible.
    let mut state = seed | 1;
    let mut perm: Vec<usize> = (0..n).collect();
    for i in (1..n).rev() {
        state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
        let j = (state >> 33) as usize % (i + 1);
        perm.swap(i, j);
    }
    perm
}

proptest! {
    #[test]
    fn graph6_round_trips(g in graph_strategy(8)) {
        let text = emit_graph6(&g);
        prop_assert_eq!(parse_graph6(&text).expect("own output parses"), g);
    }

    #[test]
    fn canonical_form_ignores_labeling(g in graph_strategy(6), seed in any::<u64>()) {
        let perm = permutation_from(seed, g.order());
        prop_assert_eq!(canonical_form(&g.relabel(&perm)), canonical_form(&g));
    }

    #[test]
    fn exact_value_sits_between_the_bounds(g in graph_strategy(5)) {
        let mut solver = Solver::default();
        let exact = solver.marcello_number(&g).expect("within cap").value;
        prop_assert!(counting_lower_bound(&g) <= exact);
        match marcello_upper(&g, 2, 1) {
            Ok(bound) => prop_assert!(exact <= Value::Finite(bound.iterations)),
            // Only edgeless graphs have no greedy completion.
            Err(_) => prop_assert_eq!(exact, Value::Infinite),
        }
    }

    #[test]
    fn solver_witnesses_replay_to_their_value(g in graph_strategy(5)) {
        let mut solver = Solver::default();
        let result = solver.marcello_number(&g).expect("within cap");
        if let Value::Finite(k) = result.value {
            prop_assert_eq!(
                verify_sequence(&g, &result.witness),
                SequenceCheck::Completes { iterations: k as usize }
            );
        } else {
            prop_assert!(result.witness.is_empty());
        }
    }

    #[test]
    fn greedy_schedules_round_trip_as_text(g in graph_strategy(5), seed in any::<u64>()) {
        if let Ok(bound) = marcello_upper(&g, 1, seed) {
            let text = emit_schedule(&bound.witness);
            prop_assert_eq!(parse_schedule(&text).expect("own output parses"), bound.witness);
        }
    }

    #[test]
    fn validation_agrees_with_application(g in graph_strategy(5), plan in plan_strategy()) {
        match (validate_plan(&g, &plan), apply_plan(&g, &plan)) {
            (PlanCheck::Valid { completes, .. }, Ok((after, _))) => {
                prop_assert_eq!(completes, after.is_complete());
                prop_assert!(after.size() >= g.size());
            }
            (PlanCheck::Invalid(checked), Err(applied)) => {
                prop_assert_eq!(checked, applied);
            }
            (check, outcome) => {
                return Err(TestCaseError::fail(format!(
                    "validate said {check:?} but apply said {outcome:?}"
                )));
            }
        }
    }

    #[test]
    fn one_iteration_completion_needs_the_capacity(g in graph_strategy(6)) {
        if !g.is_complete() && !g.is_edgeless() {
            if let Ok(OneShot::Completable(assignment)) = one_shot_completable(&g) {
                prop_assert!(degree_sum_bound(&g).holds());
                prop_assert_eq!(
                    verify_sequence(&g, &[assignment.to_plan()]),
                    SequenceCheck::Completes { iterations: 1 }
                );
            }
        }
    }
}
