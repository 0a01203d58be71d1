//! Exact completion numbers, bounds, the completion index, and replayable
//! witnesses.
//!
//! The completion number of a graph is the minimum number of full iterations
//! (see [`crate::engine`]) needed to reach the complete graph; it is 0 for
//! complete graphs and infinite for edgeless graphs of order at least 2
//! (nothing is ever eligible to act).  The solver searches breadth-first
//! over isomorphism classes: layer 0 is the input's class, layer `i + 1`
//! holds every class one iteration can reach from layer `i`.  Rather than
//! expanding until the complete graph appears, each layer is screened with
//! the polynomial one-iteration decision from the engine; the first layer
//! containing a one-iteration-completable class at depth `k` gives the value
//! `k + 1`.  A witness — one concrete plan per iteration, replayable on the
//! input's own labels — is reconstructed afterwards by walking outcomes
//! whose memoized values descend by exactly one.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec::Vec;
use core::fmt;

use crate::canon::{canonical_form, CanonicalForm};
use crate::engine::{
    apply_plan, enumerate_outcomes, greedy_plan, one_shot_completable,
    outcome_plans, GlobalPlan, OneShot, PlanViolation, Policy, Restriction, MAX_ALL_VALID_ORDER,
    MAX_OUTCOME_ORDER,
};
use crate::graph::Graph;

/// Hard ceiling on exact solves, set by the engine's packed search states.
pub const MAX_EXACT_ORDER: usize = MAX_OUTCOME_ORDER;

// ============================================================================
// Values
// ============================================================================

/// A completion number: a non-negative count of iterations, or infinite for
/// graphs that can never complete.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Value {
    Finite(u32),
    Infinite,
}

impl Value {
    pub fn is_finite(&self) -> bool {
        matches!(self, Value::Finite(_))
    }

    pub fn as_finite(&self) -> Option<u32> {
        match self {
            Value::Finite(k) => Some(*k),
            Value::Infinite => None,
        }
    }

    /// The value one iteration later; infinity absorbs.
    pub fn succ(&self) -> Value {
        match self {
            Value::Finite(k) => Value::Finite(k + 1),
            Value::Infinite => Value::Infinite,
        }
    }
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Finite(k) => write!(f, "{k}"),
            Value::Infinite => write!(f, "inf"),
        }
    }
}

// ============================================================================
// Configuration, errors, stats
// ============================================================================

/// Tuning knobs for the exact search.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchConfig {
    /// Largest order accepted for exact solves (clamped to
    /// [`MAX_EXACT_ORDER`], and to [`MAX_ALL_VALID_ORDER`] under
    /// [`Restriction::AllValid`]).
    pub order_cap: usize,
    /// Hard cap on search depth; exceeding it is an explicit error, never a
    /// silent wrong answer.  Any graph with an edge completes within
    /// `n(n-1)/2` iterations, so the default is generous.
    pub max_iterations: u32,
    /// Which plans an iteration may use; values are expected to agree (a
    /// tested property, not an assumption), so this simply selects the
    /// branching rule.
    pub restriction: Restriction,
    /// When false, the top-level search runs over labeled graphs instead of
    /// isomorphism classes — far slower, but an independent cross-check of
    /// the canonical-form machinery.
    pub dedup: bool,
    /// Advisory parallelism hint.  The current implementation is
    /// sequential, which trivially satisfies the requirement that results
    /// not depend on thread count.
    pub threads: usize,
}

impl Default for SearchConfig {
    fn default() -> SearchConfig {
        SearchConfig {
            order_cap: 7,
            max_iterations: 32,
            restriction: Restriction::Saturated,
            dedup: true,
            threads: 1,
        }
    }
}

impl SearchConfig {
    /// The order the configuration can actually handle.
    fn effective_cap(&self) -> usize {
        let hard = match self.restriction {
            Restriction::Saturated => MAX_EXACT_ORDER,
            Restriction::AllValid => MAX_ALL_VALID_ORDER,
        };
        self.order_cap.min(hard)
    }
}

/// Failure modes of the exact solver.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SolverError {
    /// The input is larger than the configuration allows.
    OrderAboveCap { order: usize, cap: usize },
    /// The layered search hit `max_iterations` before resolving.
    IterationCapExceeded { cap: u32 },
    /// An ascending scan ran out of representable instances before finding
    /// its target.
    NotFoundWithinCap { cap: usize },
}

impl fmt::Display for SolverError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SolverError::OrderAboveCap { order, cap } => {
                write!(f, "graph order {order} exceeds the exact-search cap {cap}")
            }
            SolverError::IterationCapExceeded { cap } => {
                write!(f, "search exceeded the configured iteration cap {cap}")
            }
            SolverError::NotFoundWithinCap { cap } => {
                write!(f, "no instance within the order cap {cap} satisfies the scan target")
            }
        }
    }
}

impl core::error::Error for SolverError {}

/// Per-query search effort.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct QueryStats {
    /// Distinct states (classes, or labeled graphs without dedup) reached.
    pub explored: usize,
    /// Number of states first reached at each depth, starting at depth 0.
    pub frontier_sizes: Vec<usize>,
}

/// Cumulative effort across all queries answered by one solver.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct SolverStats {
    /// Outcome enumerations actually performed.
    pub expansions: u64,
    /// Value or children lookups answered from memory.
    pub cache_hits: u64,
}

// ============================================================================
// Results
// ============================================================================

/// An exact completion number with its replayable witness.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MarcelloResult {
    pub value: Value,
    /// One plan per iteration; replaying them in order on the input yields
    /// the complete graph in exactly `value` iterations.  Empty when the
    /// value is 0 or infinite.
    pub witness: Vec<GlobalPlan>,
    pub stats: QueryStats,
}

/// One intermediate class lying on some minimal completing sequence.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IndexEntry {
    pub class: CanonicalForm,
    /// The class's canonically labeled representative.
    pub representative: Graph,
    /// Position within minimal sequences (1 = after the first iteration).
    pub layer: usize,
    /// The class's own completion number, always `value - layer`.
    pub number: u32,
}

/// The completion index: how many distinct intermediate classes appear
/// across all minimal completing sequences, endpoints excluded.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IndexResult {
    /// The input's completion number.
    pub number: Value,
    /// `intermediates.len()`.
    pub index: usize,
    pub intermediates: Vec<IndexEntry>,
    /// Diagnostic for one-iteration-completable inputs: the non-complete
    /// classes a full iteration can also end at.  These show that a value
    /// of 1 does not make the outcome unique, but they are intermediates of
    /// no minimal sequence and are never counted in `index`.
    pub stalled_outcomes: Vec<(CanonicalForm, Graph)>,
}

/// Verdict of [`verify_sequence`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SequenceCheck {
    /// Every plan is lawful and the final graph is complete.
    Completes { iterations: usize },
    /// Every plan is lawful but edges are still missing at the end.
    FallsShort { missing: usize },
    /// Some plan breaks an iteration rule.
    Invalid { stage: usize, violation: PlanViolation },
}

/// Independently replays `plans` on `g`, checking each against the
/// iteration rules; succeeds iff the final graph is complete.  Used to
/// check every witness the solver emits.
pub fn verify_sequence(g: &Graph, plans: &[GlobalPlan]) -> SequenceCheck {
    let mut current = g.clone();
    for (stage, plan) in plans.iter().enumerate() {
        match apply_plan(&current, plan) {
            Ok((next, _)) => current = next,
            Err(violation) => return SequenceCheck::Invalid { stage, violation },
        }
    }
    if current.is_complete() {
        SequenceCheck::Completes { iterations: plans.len() }
    } else {
        let pairs = current.order() * (current.order() - 1) / 2;
        SequenceCheck::FallsShort { missing: pairs - current.size() }
    }
}

// ============================================================================
// Solver
// ============================================================================

/// Exact solver with memoization shared across queries.
///
/// Values and outcome-class sets are keyed by canonical form, so repeated
/// or overlapping queries (scans, index computations, witness walks) reuse
/// earlier work.  The caches are only valid for one configuration, which is
/// therefore fixed at construction.
pub struct Solver {
    config: SearchConfig,
    values: BTreeMap<CanonicalForm, Value>,
    children: BTreeMap<CanonicalForm, BTreeSet<CanonicalForm>>,
    stats: SolverStats,
}

/// Result of the layered search, kept for index computations.
struct Exploration {
    value: Value,
    /// Classes (canonical forms) by depth of first reach; meaningful only
    /// in deduplicating mode.
    layers: Vec<Vec<CanonicalForm>>,
    stats: QueryStats,
}

impl Default for Solver {
    fn default() -> Solver {
        Solver::new(SearchConfig::default())
    }
}

impl Solver {
    pub fn new(config: SearchConfig) -> Solver {
        Solver { config, values: BTreeMap::new(), children: BTreeMap::new(), stats: SolverStats::default() }
    }

    pub fn config(&self) -> &SearchConfig {
        &self.config
    }

    pub fn stats(&self) -> SolverStats {
        self.stats
    }

    /// Computes the exact completion number of `g` with a replayable
    /// witness.
    pub fn marcello_number(&mut self, g: &Graph) -> Result<MarcelloResult, SolverError> {
        let exploration = self.explore(g)?;
        let witness = match exploration.value {
            Value::Finite(k) if k > 0 => self.reconstruct_witness(g, k),
            _ => Vec::new(),
        };
        Ok(MarcelloResult { value: exploration.value, witness, stats: exploration.stats })
    }

    /// The completion number of the isomorphism class `form`, memoized.
    pub fn class_value(&mut self, form: &CanonicalForm) -> Result<Value, SolverError> {
        if let Some(&v) = self.values.get(form) {
            self.stats.cache_hits += 1;
            return Ok(v);
        }
        let rep = form.to_graph();
        let value = self.explore(&rep)?.value;
        Ok(value)
    }

    /// Computes the completion index of `g`: the number of distinct
    /// intermediate classes across all minimal completing sequences.
    ///
    /// A class `D` first reached at depth `i` is such an intermediate
    /// exactly when `0 < i < k` and `i + value(D) = k`, where `k` is the
    /// input's completion number: the shortest route to `D` concatenated
    /// with `D`'s own optimal completion is then a minimal sequence, and
    /// conversely any minimal sequence passing through `D` at position `i`
    /// forces both equalities.
    pub fn marcello_index(&mut self, g: &Graph) -> Result<IndexResult, SolverError> {
        let exploration = self.explore(g)?;
        let number = exploration.value;
        let mut intermediates = Vec::new();
        let mut stalled_outcomes = Vec::new();
        match number {
            Value::Finite(k) if k >= 2 => {
                for layer in 1..k as usize {
                    for class in &exploration.layers[layer] {
                        let own = self.class_value(class)?;
                        if own == Value::Finite(k - layer as u32) {
                            intermediates.push(IndexEntry {
                                class: class.clone(),
                                representative: class.to_graph(),
                                layer,
                                number: k - layer as u32,
                            });
                        }
                    }
                }
            }
            Value::Finite(1) => {
                // Nothing lies strictly between the input and the complete
                // graph, but a full iteration may still end elsewhere; list
                // those endpoints as a diagnostic.
                let outcomes = enumerate_outcomes(g, self.config.restriction)
                    .expect("order was checked by explore");
                for (class, rep) in outcomes {
                    if !rep.is_complete() {
                        stalled_outcomes.push((class, rep));
                    }
                }
            }
            _ => {}
        }
        intermediates.sort_by(|a, b| (a.layer, &a.class).cmp(&(b.layer, &b.class)));
        Ok(IndexResult { number, index: intermediates.len(), intermediates, stalled_outcomes })
    }

    /// Finds the smallest `n` (at least 2) for which the disjoint union of
    /// the complete graph on `n` vertices and `m` isolated vertices has
    /// completion number exactly 2.
    ///
    /// With `m ≥ 2` isolated vertices the number is always at least 2 — an
    /// isolated pair survives any single iteration — so the scan only has
    /// to find the first `n` whose exact value is 2.
    pub fn min_union_order(&mut self, m: usize) -> Result<usize, SolverError> {
        assert!(m >= 2, "the union scan is defined for m >= 2");
        let cap = self.config.effective_cap();
        for n in 2.. {
            if n + m > cap {
                return Err(SolverError::NotFoundWithinCap { cap });
            }
            let g = complete(n)
                .disjoint_union(&Graph::empty(m).expect("m within range"))
                .expect("order checked against cap");
            if self.marcello_number(&g)?.value == Value::Finite(2) {
                return Ok(n);
            }
        }
        unreachable!("loop exits via return")
    }

    // ------------------------------------------------------------------
    // Internal search
    // ------------------------------------------------------------------

    /// Layered search from `g`; see the module docs for the shape.
    fn explore(&mut self, g: &Graph) -> Result<Exploration, SolverError> {
        let cap = self.config.effective_cap();
        if g.order() > cap {
            return Err(SolverError::OrderAboveCap { order: g.order(), cap });
        }
        let root_form = canonical_form(g);
        if g.is_complete() {
            self.values.insert(root_form.clone(), Value::Finite(0));
            return Ok(Exploration {
                value: Value::Finite(0),
                layers: alloc::vec![alloc::vec![root_form]],
                stats: QueryStats { explored: 1, frontier_sizes: alloc::vec![1] },
            });
        }
        if g.is_edgeless() {
            self.values.insert(root_form.clone(), Value::Infinite);
            return Ok(Exploration {
                value: Value::Infinite,
                layers: alloc::vec![alloc::vec![root_form]],
                stats: QueryStats { explored: 1, frontier_sizes: alloc::vec![1] },
            });
        }
        if self.config.dedup {
            self.explore_classes(root_form)
        } else {
            self.explore_labeled(g, root_form)
        }
    }

    /// Deduplicating search over canonical forms, the normal mode.
    fn explore_classes(&mut self, root_form: CanonicalForm) -> Result<Exploration, SolverError> {
        let mut seen: BTreeSet<CanonicalForm> = BTreeSet::new();
        seen.insert(root_form.clone());
        let mut layers: Vec<Vec<CanonicalForm>> = alloc::vec![alloc::vec![root_form.clone()]];
        let mut depth = 0usize;
        loop {
            // Screen the current layer with the polynomial decision: a
            // completable class here means exactly depth + 1 iterations.
            for class in &layers[depth] {
                let rep = class.to_graph();
                let decision = one_shot_completable(&rep)
                    .expect("layer members are non-complete and have edges");
                if let OneShot::Completable(_) = decision {
                    let value = Value::Finite(depth as u32 + 1);
                    self.values.insert(class.clone(), Value::Finite(1));
                    self.values.insert(root_form, value);
                    return Ok(Exploration {
                        value,
                        stats: stats_of(&layers),
                        layers,
                    });
                }
            }
            if depth as u32 >= self.config.max_iterations {
                return Err(SolverError::IterationCapExceeded { cap: self.config.max_iterations });
            }
            let mut next: Vec<CanonicalForm> = Vec::new();
            for class in layers[depth].clone() {
                for child in self.class_children(&class) {
                    if seen.insert(child.clone()) {
                        next.push(child);
                    }
                }
            }
            if next.is_empty() {
                self.values.insert(root_form, Value::Infinite);
                return Ok(Exploration {
                    value: Value::Infinite,
                    stats: stats_of(&layers),
                    layers,
                });
            }
            next.sort();
            layers.push(next);
            depth += 1;
        }
    }

    /// Search over labeled graphs, no isomorphism collapsing: the slow
    /// cross-check mode.  Layers are not retained (index computations
    /// require dedup mode).
    fn explore_labeled(
        &mut self,
        g: &Graph,
        root_form: CanonicalForm,
    ) -> Result<Exploration, SolverError> {
        let mut seen: BTreeSet<Graph> = BTreeSet::new();
        seen.insert(g.clone());
        let mut frontier: Vec<Graph> = alloc::vec![g.clone()];
        let mut frontier_sizes = alloc::vec![1usize];
        let mut depth = 0usize;
        loop {
            for h in &frontier {
                let decision = one_shot_completable(h)
                    .expect("frontier members are non-complete and have edges");
                if let OneShot::Completable(_) = decision {
                    let value = Value::Finite(depth as u32 + 1);
                    self.values.insert(root_form, value);
                    return Ok(Exploration {
                        value,
                        layers: Vec::new(),
                        stats: QueryStats { explored: seen.len(), frontier_sizes },
                    });
                }
            }
            if depth as u32 >= self.config.max_iterations {
                return Err(SolverError::IterationCapExceeded { cap: self.config.max_iterations });
            }
            let mut next: Vec<Graph> = Vec::new();
            for h in &frontier {
                self.stats.expansions += 1;
                for (child, _) in
                    outcome_plans(h, self.config.restriction).expect("order within caps")
                {
                    if seen.insert(child.clone()) {
                        next.push(child);
                    }
                }
            }
            if next.is_empty() {
                self.values.insert(root_form, Value::Infinite);
                return Ok(Exploration {
                    value: Value::Infinite,
                    layers: Vec::new(),
                    stats: QueryStats { explored: seen.len(), frontier_sizes },
                });
            }
            frontier_sizes.push(next.len());
            frontier = next;
            depth += 1;
        }
    }

    /// The set of classes one iteration can reach from `class`, memoized.
    fn class_children(&mut self, class: &CanonicalForm) -> BTreeSet<CanonicalForm> {
        if let Some(children) = self.children.get(class) {
            self.stats.cache_hits += 1;
            return children.clone();
        }
        let rep = class.to_graph();
        self.stats.expansions += 1;
        let children: BTreeSet<CanonicalForm> = outcome_plans(&rep, self.config.restriction)
            .expect("order within caps")
            .into_iter()
            .map(|(child, _)| canonical_form(&child))
            .collect();
        self.children.insert(class.clone(), children.clone());
        children
    }

    /// Builds a minimal completing sequence on `g`'s own labels, given its
    /// known value `k ≥ 1`: at each stage pick any outcome whose class
    /// value is exactly one less, finishing with an assignment-derived
    /// completing plan.
    fn reconstruct_witness(&mut self, g: &Graph, k: u32) -> Vec<GlobalPlan> {
        let mut plans = Vec::with_capacity(k as usize);
        let mut current = g.clone();
        for remaining in (1..=k).rev() {
            if remaining == 1 {
                let decision = one_shot_completable(&current)
                    .expect("a graph one iteration from complete has edges");
                let assignment = match decision {
                    OneShot::Completable(a) => a,
                    OneShot::Blocked(b) => {
                        unreachable!("value-1 stage must be completable, got {b:?}")
                    }
                };
                let plan = assignment.to_plan();
                let (done, _) = apply_plan(&current, &plan).expect("assignment plans are valid");
                debug_assert!(done.is_complete());
                plans.push(plan);
                current = done;
                continue;
            }
            let outcomes = outcome_plans(&current, self.config.restriction)
                .expect("order within caps");
            let mut stepped = false;
            for (child, plan) in outcomes {
                let child_value = self
                    .class_value(&canonical_form(&child))
                    .expect("children stay within the order cap");
                if child_value == Value::Finite(remaining - 1) {
                    plans.push(plan);
                    current = child;
                    stepped = true;
                    break;
                }
            }
            debug_assert!(stepped, "an optimal child must exist below a finite value");
        }
        plans
    }
}

fn stats_of(layers: &[Vec<CanonicalForm>]) -> QueryStats {
    QueryStats {
        explored: layers.iter().map(Vec::len).sum(),
        frontier_sizes: layers.iter().map(Vec::len).collect(),
    }
}

// ============================================================================
// Bounds
// ============================================================================

/// A heuristic upper bound: the best greedy run found, with its schedule.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UpperBound {
    pub iterations: u32,
    /// The best run's plans; replaying them completes the graph in exactly
    /// `iterations` iterations.
    pub witness: Vec<GlobalPlan>,
}

/// Upper-bounds the completion number by running saturated greedy
/// iterations to completion under several orderings: ascending degree,
/// descending degree, and `restarts` seeded shuffles.  Any graph with an
/// edge completes under greedy play (every iteration adds at least one
/// edge), so this always terminates.  Deterministic for fixed arguments.
pub fn marcello_upper(
    g: &Graph,
    restarts: u32,
    seed: u64,
) -> Result<UpperBound, crate::engine::EngineError> {
    if g.is_complete() {
        return Ok(UpperBound { iterations: 0, witness: Vec::new() });
    }
    if g.is_edgeless() {
        return Err(crate::engine::EngineError::EdgelessInput);
    }
    let mut policies = alloc::vec![Policy::AscendingDegree, Policy::DescendingDegree];
    for i in 0..restarts {
        policies.push(Policy::Random(seed.wrapping_add(u64::from(i))));
    }
    let mut best: Option<UpperBound> = None;
    for policy in policies {
        let mut current = g.clone();
        let mut plans = Vec::new();
        while !current.is_complete() {
            let plan = greedy_plan(&current, &policy)?;
            let (next, _) = apply_plan(&current, &plan).expect("greedy plans are valid");
            debug_assert!(next.size() > current.size(), "greedy iterations make progress");
            current = next;
            plans.push(plan);
        }
        let run = UpperBound { iterations: plans.len() as u32, witness: plans };
        if best.as_ref().map_or(true, |b| run.iterations < b.iterations) {
            best = Some(run);
        }
    }
    Ok(best.expect("at least two policies ran"))
}

/// Counting lower bound on the completion number: one iteration at most
/// triples the size (each eligible vertex adds at most its degree many
/// edges, and degrees sum to twice the size), so the value is at least the
/// smallest `k` with `3^k * size >= n(n-1)/2`.  Edgeless graphs of order at
/// least 2 can never grow, giving the (exact) bound infinity.
pub fn counting_lower_bound(g: &Graph) -> Value {
    let required = (g.order() * (g.order() - 1) / 2) as u64;
    let mut reach = g.size() as u64;
    if reach >= required {
        return Value::Finite(0);
    }
    if reach == 0 {
        return Value::Infinite;
    }
    let mut k = 0u32;
    while reach < required {
        reach *= 3;
        k += 1;
    }
    Value::Finite(k)
}

/// Finds the smallest `n ≥ 1` for which joining the complete graph on `n`
/// vertices to `m ≥ 2` isolated vertices gives a one-iteration-completable
/// graph, by scanning the polynomial decision upward.
pub fn min_join_order(m: usize) -> usize {
    assert!(m >= 2, "the join scan is defined for m >= 2");
    for n in 1.. {
        assert!(n + m <= crate::graph::MAX_VERTICES, "scan escaped the representable range");
        let g = complete(n)
            .join(&Graph::empty(m).expect("m within range"))
            .expect("order checked by the assert");
        match one_shot_completable(&g) {
            Ok(OneShot::Completable(_)) => return n,
            Ok(OneShot::Blocked(_)) | Err(_) => continue,
        }
    }
    unreachable!("loop exits via return")
}

fn complete(n: usize) -> Graph {
    crate::graph::generate(&crate::graph::Family::Complete(n)).expect("small order")
}

// ============================================================================
// Tests
// ============================================================================

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{generate, Family};

    fn path(n: usize) -> Graph {
        generate(&Family::Path(n)).unwrap()
    }

    fn cycle(n: usize) -> Graph {
        generate(&Family::Cycle(n)).unwrap()
    }

    fn null(n: usize) -> Graph {
        generate(&Family::Null(n)).unwrap()
    }

    /// The running 5-vertex example: one edge plus three isolated vertices.
    fn edge_plus_three() -> Graph {
        Graph::from_edges(5, &[(0, 1)]).unwrap()
    }

    // ------------------------------------------------------------------
    // Exact values
    // ------------------------------------------------------------------

    #[test]
    fn path_values_match_known_results() {
        let mut solver = Solver::default();
        assert_eq!(solver.marcello_number(&path(2)).unwrap().value, Value::Finite(0));
        for i in 3..=6 {
            assert_eq!(solver.marcello_number(&path(i)).unwrap().value, Value::Finite(1), "P_{i}");
        }
        assert_eq!(solver.marcello_number(&path(7)).unwrap().value, Value::Finite(2));
    }

    #[test]
    fn cycle_values_match_known_results() {
        let mut solver = Solver::default();
        assert_eq!(solver.marcello_number(&cycle(3)).unwrap().value, Value::Finite(0));
        for i in 4..=7 {
            assert_eq!(solver.marcello_number(&cycle(i)).unwrap().value, Value::Finite(1), "C_{i}");
        }
    }

    #[test]
    fn complete_graphs_are_zero_and_edgeless_graphs_are_infinite() {
        let mut solver = Solver::default();
        for n in 1..=7 {
            assert_eq!(
                solver.marcello_number(&complete(n)).unwrap().value,
                Value::Finite(0)
            );
        }
        for n in 2..=7 {
            assert_eq!(solver.marcello_number(&null(n)).unwrap().value, Value::Infinite);
        }
    }

    #[test]
    fn edge_plus_three_isolated_needs_three_iterations() {
        let mut solver = Solver::default();
        let result = solver.marcello_number(&edge_plus_three()).unwrap();
        assert_eq!(result.value, Value::Finite(3));
        assert_eq!(result.witness.len(), 3);
        assert_eq!(
            verify_sequence(&edge_plus_three(), &result.witness),
            SequenceCheck::Completes { iterations: 3 }
        );
    }

    #[test]
    fn witnesses_replay_for_a_mixed_bag() {
        let mut solver = Solver::default();
        for g in [
            path(5),
            path(7),
            cycle(6),
            generate(&Family::Star(4)).unwrap(),
            Graph::from_edges(6, &[(0, 1), (2, 3)]).unwrap(),
            edge_plus_three(),
        ] {
            let result = solver.marcello_number(&g).unwrap();
            let k = result.value.as_finite().expect("all these complete") as usize;
            assert_eq!(result.witness.len(), k);
            assert_eq!(
                verify_sequence(&g, &result.witness),
                SequenceCheck::Completes { iterations: k },
                "graph {g:?}"
            );
        }
    }

    #[test]
    fn values_agree_without_isomorphism_dedup() {
        let mut plain = Solver::default();
        let mut labeled =
            Solver::new(SearchConfig { dedup: false, ..SearchConfig::default() });
        for g in [path(6), path(7), edge_plus_three(), generate(&Family::Star(4)).unwrap()] {
            assert_eq!(
                plain.marcello_number(&g).unwrap().value,
                labeled.marcello_number(&g).unwrap().value,
                "graph {g:?}"
            );
        }
    }

    #[test]
    fn restrictions_agree_on_small_orders() {
        let mut saturated = Solver::default();
        let mut permissive = Solver::new(SearchConfig {
            restriction: Restriction::AllValid,
            ..SearchConfig::default()
        });
        for g in crate::enumerate::enumerate_graph_classes(4).unwrap() {
            assert_eq!(
                saturated.marcello_number(&g).unwrap().value,
                permissive.marcello_number(&g).unwrap().value,
                "graph {g:?}"
            );
        }
    }

    // ------------------------------------------------------------------
    // Caps, stats, sequence checking
    // ------------------------------------------------------------------

    #[test]
    fn order_and_iteration_caps_are_explicit_errors() {
        let mut solver = Solver::default();
        assert_eq!(
            solver.marcello_number(&path(8)),
            Err(SolverError::OrderAboveCap { order: 8, cap: 7 })
        );
        let mut widened = Solver::new(SearchConfig { order_cap: 8, ..SearchConfig::default() });
        assert!(widened.marcello_number(&path(8)).is_ok());
        assert_eq!(
            widened.marcello_number(&path(9)),
            Err(SolverError::OrderAboveCap { order: 9, cap: 8 })
        );

        let mut shallow =
            Solver::new(SearchConfig { max_iterations: 1, ..SearchConfig::default() });
        assert_eq!(
            shallow.marcello_number(&edge_plus_three()),
            Err(SolverError::IterationCapExceeded { cap: 1 })
        );
        // Depth 2 suffices for a value of 3: the screen fires at depth 2.
        let mut deeper =
            Solver::new(SearchConfig { max_iterations: 2, ..SearchConfig::default() });
        assert_eq!(
            deeper.marcello_number(&edge_plus_three()).unwrap().value,
            Value::Finite(3)
        );
    }

    #[test]
    fn repeat_queries_hit_the_memo() {
        let mut solver = Solver::default();
        solver.marcello_number(&path(7)).unwrap();
        let after_first = solver.stats();
        assert!(after_first.expansions > 0);
        let value = solver.class_value(&crate::canon::canonical_form(&path(7))).unwrap();
        assert_eq!(value, Value::Finite(2));
        let after_second = solver.stats();
        assert_eq!(after_second.expansions, after_first.expansions);
        assert!(after_second.cache_hits > after_first.cache_hits);
    }

    #[test]
    fn frontier_stats_describe_the_search() {
        let mut solver = Solver::default();
        let result = solver.marcello_number(&path(7)).unwrap();
        assert_eq!(result.stats.frontier_sizes[0], 1);
        assert_eq!(result.stats.frontier_sizes.len(), 2, "value 2 resolves at depth 1");
        assert_eq!(
            result.stats.explored,
            result.stats.frontier_sizes.iter().sum::<usize>()
        );
    }

    #[test]
    fn sequence_checker_flags_shortfalls_and_violations() {
        // The empty schedule completes a complete graph and nothing else.
        assert_eq!(
            verify_sequence(&complete(4), &[]),
            SequenceCheck::Completes { iterations: 0 }
        );
        assert_eq!(verify_sequence(&path(4), &[]), SequenceCheck::FallsShort { missing: 3 });
        let bogus = GlobalPlan::new(alloc::vec![crate::engine::LocalStep {
            initiator: 0,
            added: alloc::vec![1],
        }]);
        assert_eq!(
            verify_sequence(&path(4), &[bogus]),
            SequenceCheck::Invalid {
                stage: 0,
                violation: PlanViolation::TargetAlreadyAdjacent { step: 0, initiator: 0, target: 1 },
            }
        );
    }

    // ------------------------------------------------------------------
    // Index
    // ------------------------------------------------------------------

    #[test]
    fn index_of_the_running_example_counts_five_classes() {
        // From one edge plus three isolated vertices (value 3), the minimal
        // sequences pass through exactly five classes: after one iteration a
        // triangle plus two isolated vertices or a 4-path plus one, and
        // after two iterations three nearly-complete classes of value 1.
        let mut solver = Solver::default();
        let result = solver.marcello_index(&edge_plus_three()).unwrap();
        assert_eq!(result.number, Value::Finite(3));
        assert_eq!(result.index, 5);
        assert_eq!(result.index, result.intermediates.len());

        let triangle_plus_two = complete(3).disjoint_union(&null(2)).unwrap();
        let path4_plus_one = path(4).disjoint_union(&null(1)).unwrap();
        let layer1: alloc::vec::Vec<_> =
            result.intermediates.iter().filter(|e| e.layer == 1).collect();
        let layer1_forms: alloc::collections::BTreeSet<_> =
            layer1.iter().map(|e| e.class.clone()).collect();
        assert_eq!(
            layer1_forms,
            [&triangle_plus_two, &path4_plus_one]
                .iter()
                .map(|g| crate::canon::canonical_form(g))
                .collect()
        );
        assert!(layer1.iter().all(|e| e.number == 2));

        let join_k3_n2 = complete(3).join(&null(2)).unwrap();
        let join_k2_n3 = complete(2).join(&null(3)).unwrap();
        let co_p3_plus_two = path(3).disjoint_union(&null(2)).unwrap().complement();
        let layer2: alloc::vec::Vec<_> =
            result.intermediates.iter().filter(|e| e.layer == 2).collect();
        let layer2_forms: alloc::collections::BTreeSet<_> =
            layer2.iter().map(|e| e.class.clone()).collect();
        assert_eq!(
            layer2_forms,
            [&join_k3_n2, &join_k2_n3, &co_p3_plus_two]
                .iter()
                .map(|g| crate::canon::canonical_form(g))
                .collect()
        );
        assert!(layer2.iter().all(|e| e.number == 1));
    }

    #[test]
    fn one_iteration_graphs_have_empty_index_but_may_stall() {
        // The 6-path completes in one iteration, yet imperfect schedules
        // exist; the diagnostic lists where they end, without counting them.
        let mut solver = Solver::default();
        let result = solver.marcello_index(&path(6)).unwrap();
        assert_eq!(result.number, Value::Finite(1));
        assert_eq!(result.index, 0);
        assert!(result.intermediates.is_empty());
        assert!(!result.stalled_outcomes.is_empty());
        assert!(result.stalled_outcomes.iter().all(|(_, g)| !g.is_complete()));
    }

    #[test]
    fn index_lower_bound_holds_on_order_four_classes() {
        let mut solver = Solver::default();
        for g in crate::enumerate::enumerate_graph_classes(4).unwrap() {
            let result = solver.marcello_index(&g).unwrap();
            if let Value::Finite(k) = result.number {
                assert!(
                    result.index + 1 >= k as usize,
                    "index {} too small for value {k} on {g:?}",
                    result.index
                );
            }
        }
    }

    // ------------------------------------------------------------------
    // Bounds and scans
    // ------------------------------------------------------------------

    #[test]
    fn upper_bound_brackets_the_exact_value() {
        let mut solver = Solver::default();
        for g in [path(5), path(7), cycle(6), edge_plus_three()] {
            let exact = solver.marcello_number(&g).unwrap().value.as_finite().unwrap();
            let upper = marcello_upper(&g, 4, 11).unwrap();
            assert!(upper.iterations >= exact, "graph {g:?}");
            assert_eq!(
                verify_sequence(&g, &upper.witness),
                SequenceCheck::Completes { iterations: upper.iterations as usize },
                "graph {g:?}"
            );
        }
    }

    #[test]
    fn upper_bound_handles_degenerate_inputs() {
        assert_eq!(marcello_upper(&complete(5), 2, 0).unwrap().iterations, 0);
        assert_eq!(
            marcello_upper(&null(3), 2, 0),
            Err(crate::engine::EngineError::EdgelessInput)
        );
        let twice_a = marcello_upper(&path(7), 3, 9).unwrap();
        let twice_b = marcello_upper(&path(7), 3, 9).unwrap();
        assert_eq!(twice_a, twice_b, "deterministic per seed");
    }

    #[test]
    fn counting_bound_values() {
        // 7-path: size 6 against 21 pairs; 6 then 18 fall short, 54 clears.
        assert_eq!(counting_lower_bound(&path(7)), Value::Finite(2));
        assert_eq!(counting_lower_bound(&complete(6)), Value::Finite(0));
        // 5-path plus 20 isolated vertices: 4·3^k ≥ 300 first at k = 4.
        let sparse = path(5).disjoint_union(&null(20)).unwrap();
        assert_eq!(counting_lower_bound(&sparse), Value::Finite(4));
        assert_eq!(counting_lower_bound(&null(4)), Value::Infinite);
    }

    #[test]
    fn counting_bound_never_exceeds_the_exact_value() {
        let mut solver = Solver::default();
        for g in crate::enumerate::enumerate_graph_classes(5).unwrap() {
            let exact = solver.marcello_number(&g).unwrap().value;
            assert!(counting_lower_bound(&g) <= exact, "graph {g:?}");
        }
    }

    #[test]
    fn join_scan_matches_hand_computed_minima() {
        // Joining K_n to m isolated vertices leaves only the isolated-side
        // pairs missing; each of the m vertices has budget n, so the first
        // feasible n is the hand value ceil((m-1)/2).
        assert_eq!(min_join_order(2), 1);
        assert_eq!(min_join_order(3), 1);
        assert_eq!(min_join_order(4), 2);
        assert_eq!(min_join_order(7), 3);
    }

    #[test]
    fn union_scan_matches_exact_solves() {
        let mut solver = Solver::default();
        assert_eq!(solver.min_union_order(2).unwrap(), 2);
        assert_eq!(solver.min_union_order(3).unwrap(), 3);
        // m = 6 cannot fit any K_n within the order cap of 7.
        assert_eq!(
            solver.min_union_order(6),
            Err(SolverError::NotFoundWithinCap { cap: 7 })
        );
    }

    #[test]
    fn value_ordering_and_display() {
        assert!(Value::Finite(3) < Value::Infinite);
        assert!(Value::Finite(2) < Value::Finite(3));
        assert_eq!(Value::Finite(5).succ(), Value::Finite(6));
        assert_eq!(Value::Infinite.succ(), Value::Infinite);
        assert_eq!(alloc::format!("{}", Value::Finite(2)), "2");
        assert_eq!(alloc::format!("{}", Value::Infinite), "inf");
    }
}
