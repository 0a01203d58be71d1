//! One iteration of budget-constrained completion.
//!
//! An iteration on a graph `G` of order `n` fixes the eligible set
//! `X = { v : 0 < deg(v) < n - 1 }` and gives every `v` in `X` a budget equal
//! to its degree, both frozen at the start.  Eligible vertices then act one
//! at a time in some order: the acting vertex adds edges to currently
//! non-adjacent vertices, at most its budget many.  Receiving an edge never
//! consumes the receiver's budget, and adjacency is always read live, so
//! earlier actors shrink the options of later ones.  The process stops as
//! soon as the graph is complete.
//!
//! This module provides the iteration machinery: plan representation,
//! validation and execution with a step-by-step trace, greedy plan
//! construction under several orderings, the exact one-iteration
//! completability decision (with an edge assignment or a blocking set as
//! witness), and exhaustive enumeration of the graphs one iteration can
//! reach.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec::Vec;
use core::fmt;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::canon::{canonical_form, CanonicalForm};
use crate::flow::{assign_items, Blocking};
use crate::graph::Graph;

/// Largest order accepted by the outcome enumerators.
///
/// Search states are packed into a single `u64` (adjacency triangle plus the
/// set of vertices still to act), which caps the order at 8; beyond that the
/// state space is out of desk range anyway.
pub const MAX_OUTCOME_ORDER: usize = 8;

/// Largest order accepted when enumerating under [`Restriction::AllValid`],
/// whose branching (every non-empty subset up to budget) grows much faster
/// than the saturated rule's.
pub const MAX_ALL_VALID_ORDER: usize = 6;

/// Returns the eligible set `X` of `g` as a bitmask: the vertices that are
/// neither isolated nor already adjacent to everything.
pub fn eligible_vertices(g: &Graph) -> u64 {
    let full = g.order() - 1;
    (0..g.order())
        .filter(|&v| {
            let d = g.degree(v);
            d > 0 && d < full
        })
        .fold(0, |m, v| m | 1 << v)
}

// ============================================================================
// Plans
// ============================================================================

/// One vertex's action within an iteration: the edges it initiates, in order.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct LocalStep {
    pub initiator: usize,
    /// Target vertices, added one at a time in the order listed.
    pub added: Vec<usize>,
}

/// A full iteration schedule: local steps executed in order.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord)]
pub struct GlobalPlan {
    pub steps: Vec<LocalStep>,
}

impl GlobalPlan {
    pub fn new(steps: Vec<LocalStep>) -> GlobalPlan {
        GlobalPlan { steps }
    }

    /// Total number of edges the plan intends to add.
    pub fn edge_count(&self) -> usize {
        self.steps.iter().map(|s| s.added.len()).sum()
    }
}

/// A rule broken by a plan, located by step index.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PlanViolation {
    /// The initiating vertex is not a vertex of the graph.
    InitiatorOutOfRange { step: usize, vertex: usize },
    /// A target vertex is not a vertex of the graph.
    TargetOutOfRange { step: usize, vertex: usize },
    /// The initiator is isolated or already adjacent to everything, so it is
    /// not in the eligible set fixed at the start of the iteration.
    InitiatorNotEligible { step: usize, vertex: usize },
    /// A vertex initiates twice in the same iteration.
    DuplicateInitiator { step: usize, vertex: usize },
    /// A step lists more additions than the initiator's frozen budget.
    BudgetExceeded { step: usize, initiator: usize, budget: usize, requested: usize },
    /// A step adds an edge to itself.
    TargetIsInitiator { step: usize, vertex: usize },
    /// The named edge already exists when its addition comes up.
    TargetAlreadyAdjacent { step: usize, initiator: usize, target: usize },
}

impl fmt::Display for PlanViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PlanViolation::InitiatorOutOfRange { step, vertex } => {
                write!(f, "step {step}: initiator {vertex} is not a vertex of the graph")
            }
            PlanViolation::TargetOutOfRange { step, vertex } => {
                write!(f, "step {step}: target {vertex} is not a vertex of the graph")
            }
            PlanViolation::InitiatorNotEligible { step, vertex } => {
                write!(f, "step {step}: vertex {vertex} is not eligible to initiate")
            }
            PlanViolation::DuplicateInitiator { step, vertex } => {
                write!(f, "step {step}: vertex {vertex} already initiated earlier in the iteration")
            }
            PlanViolation::BudgetExceeded { step, initiator, budget, requested } => {
                write!(
                    f,
                    "step {step}: vertex {initiator} adds {requested} edges but its budget is {budget}"
                )
            }
            PlanViolation::TargetIsInitiator { step, vertex } => {
                write!(f, "step {step}: vertex {vertex} cannot add an edge to itself")
            }
            PlanViolation::TargetAlreadyAdjacent { step, initiator, target } => {
                write!(f, "step {step}: edge {initiator}-{target} is already present")
            }
        }
    }
}

impl core::error::Error for PlanViolation {}

/// Verdict of [`validate_plan`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PlanCheck {
    /// Every addition that actually executes is lawful.
    Valid {
        /// The plan finishes with the complete graph.
        completes: bool,
        /// First step at or beyond the point of completion.  Such steps are
        /// never executed — the iteration stops once the graph is complete —
        /// so they are skipped rather than faulted.
        unreachable_from: Option<usize>,
    },
    Invalid(PlanViolation),
}

impl PlanCheck {
    pub fn is_valid(&self) -> bool {
        matches!(self, PlanCheck::Valid { .. })
    }
}

/// Record of a plan execution: the graph after each executed step.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlanTrace {
    /// Graph state after each step that ran (possibly cut short by
    /// completion).  `milestones.len()` is the number of steps that ran.
    pub milestones: Vec<Graph>,
    /// Index of the step during which the graph first became complete.
    pub completed_at: Option<usize>,
}

/// Runs `plan` against `g`, with exactly the iteration's execution
/// semantics: steps in order, adjacency live, execution stopping at the
/// first completion.  Rules are checked as far as execution reaches.
fn run_plan(g: &Graph, plan: &GlobalPlan) -> Result<(Graph, PlanTrace, Option<usize>), PlanViolation> {
    let n = g.order();
    let eligible = eligible_vertices(g);
    let budgets: Vec<usize> = g.degrees();
    let mut h = g.clone();
    let mut used = 0u64;
    let mut milestones = Vec::new();
    let mut completed_at = None;
    let mut unreachable_from = None;

    'steps: for (s, step) in plan.steps.iter().enumerate() {
        if h.is_complete() {
            unreachable_from = Some(s);
            break;
        }
        let v = step.initiator;
        if v >= n {
            return Err(PlanViolation::InitiatorOutOfRange { step: s, vertex: v });
        }
        if eligible >> v & 1 == 0 {
            return Err(PlanViolation::InitiatorNotEligible { step: s, vertex: v });
        }
        if used >> v & 1 == 1 {
            return Err(PlanViolation::DuplicateInitiator { step: s, vertex: v });
        }
        used |= 1 << v;
        if step.added.len() > budgets[v] {
            return Err(PlanViolation::BudgetExceeded {
                step: s,
                initiator: v,
                budget: budgets[v],
                requested: step.added.len(),
            });
        }
        for &t in &step.added {
            if h.is_complete() {
                // The tail of this step lies beyond completion.
                completed_at = Some(s);
                milestones.push(h.clone());
                unreachable_from = Some(s);
                break 'steps;
            }
            if t >= n {
                return Err(PlanViolation::TargetOutOfRange { step: s, vertex: t });
            }
            if t == v {
                return Err(PlanViolation::TargetIsInitiator { step: s, vertex: v });
            }
            if h.has_edge(v, t) {
                return Err(PlanViolation::TargetAlreadyAdjacent { step: s, initiator: v, target: t });
            }
            h.add_edge(v, t);
        }
        if completed_at.is_none() && h.is_complete() {
            completed_at = Some(s);
        }
        milestones.push(h.clone());
    }
    Ok((h, PlanTrace { milestones, completed_at }, unreachable_from))
}

/// Checks `plan` against the iteration rules on `g` without committing to
/// the result.  Steps beyond the point of completion are reported as
/// unreachable, not invalid.
pub fn validate_plan(g: &Graph, plan: &GlobalPlan) -> PlanCheck {
    match run_plan(g, plan) {
        Ok((h, _, unreachable_from)) => {
            PlanCheck::Valid { completes: h.is_complete(), unreachable_from }
        }
        Err(violation) => PlanCheck::Invalid(violation),
    }
}

/// Executes `plan` on `g`, returning the resulting graph and a trace of
/// every milestone, or the first rule violation encountered.
pub fn apply_plan(g: &Graph, plan: &GlobalPlan) -> Result<(Graph, PlanTrace), PlanViolation> {
    run_plan(g, plan).map(|(h, trace, _)| (h, trace))
}

// ============================================================================
// Greedy plans
// ============================================================================

/// Ordering rule for [`greedy_plan`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Policy {
    /// Eligible vertices act from smallest degree to largest, ties by label.
    AscendingDegree,
    /// Eligible vertices act from largest degree to smallest, ties by label.
    DescendingDegree,
    /// Eligible vertices act in a seeded pseudo-random order.
    Random(u64),
    /// Eligible vertices act exactly in the order given, which must list the
    /// eligible set without repeats or omissions.
    Explicit(Vec<usize>),
}

/// Failure modes of the engine entry points.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum EngineError {
    /// The graph's order exceeds what the requested operation supports.
    OrderAboveCap { order: usize, cap: usize },
    /// The graph has no edges, so no vertex can ever act.
    EdgelessInput,
    /// The graph is already complete; there is nothing to decide.
    CompleteInput,
    /// An explicit ordering does not match the eligible set.
    ExplicitOrderMismatch,
}

impl fmt::Display for EngineError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EngineError::OrderAboveCap { order, cap } => {
                write!(f, "graph order {order} exceeds the supported maximum {cap}")
            }
            EngineError::EdgelessInput => write!(f, "the graph has no edges"),
            EngineError::CompleteInput => write!(f, "the graph is already complete"),
            EngineError::ExplicitOrderMismatch => {
                write!(f, "explicit order must list each eligible vertex exactly once")
            }
        }
    }
}

impl core::error::Error for EngineError {}

/// Builds the saturated plan that processes eligible vertices in the order
/// chosen by `policy`: each actor adds as many edges as its budget and the
/// live adjacency allow, targets picked smallest-label first.  Vertices with
/// nothing left to add contribute no step, and the plan stops at completion.
pub fn greedy_plan(g: &Graph, policy: &Policy) -> Result<GlobalPlan, EngineError> {
    if g.is_complete() {
        return Err(EngineError::CompleteInput);
    }
    if g.is_edgeless() {
        return Err(EngineError::EdgelessInput);
    }
    let eligible = eligible_vertices(g);
    let mut order: Vec<usize> = (0..g.order()).filter(|&v| eligible >> v & 1 == 1).collect();
    match policy {
        Policy::AscendingDegree => order.sort_by_key(|&v| (g.degree(v), v)),
        Policy::DescendingDegree => {
            order.sort_by_key(|&v| (g.order() - g.degree(v), v));
        }
        Policy::Random(seed) => {
            let mut rng = ChaCha8Rng::seed_from_u64(*seed);
            order.shuffle(&mut rng);
        }
        Policy::Explicit(listed) => {
            let as_set: BTreeSet<usize> = listed.iter().copied().collect();
            let eligible_set: BTreeSet<usize> = order.iter().copied().collect();
            if listed.len() != as_set.len() || as_set != eligible_set {
                return Err(EngineError::ExplicitOrderMismatch);
            }
            order = listed.clone();
        }
    }

    let budgets = g.degrees();
    let mut h = g.clone();
    let mut steps = Vec::new();
    for v in order {
        if h.is_complete() {
            break;
        }
        let mut added = Vec::new();
        let mut avail = h.non_neighbors(v);
        while added.len() < budgets[v] && avail != 0 {
            let t = avail.trailing_zeros() as usize;
            avail &= avail - 1;
            h.add_edge(v, t);
            added.push(t);
        }
        if !added.is_empty() {
            steps.push(LocalStep { initiator: v, added });
        }
    }
    Ok(GlobalPlan { steps })
}

// ============================================================================
// One-iteration completability
// ============================================================================

/// A feasible distribution of all missing edges among their endpoints.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Assignment {
    /// Each missing edge `(u, v)` with `u < v`, paired with the endpoint
    /// that will add it.
    pub owners: Vec<((usize, usize), usize)>,
}

impl Assignment {
    /// Converts the assignment into a concrete completing plan: initiators
    /// ascending, each adding its owned edges smallest target first.
    ///
    /// The plan is always valid — the assignment adds every missing edge
    /// exactly once within each owner's budget — though the steps need not
    /// be saturated.
    pub fn to_plan(&self) -> GlobalPlan {
        let mut by_owner: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for &((u, v), owner) in &self.owners {
            let target = if owner == u { v } else { u };
            by_owner.entry(owner).or_default().push(target);
        }
        let steps = by_owner
            .into_iter()
            .map(|(initiator, mut added)| {
                added.sort_unstable();
                LocalStep { initiator, added }
            })
            .collect();
        GlobalPlan { steps }
    }
}

/// Answer to the one-iteration completability question, either way with a
/// checkable witness.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum OneShot {
    /// Some single iteration reaches the complete graph; the assignment
    /// shows which endpoint adds each missing edge.
    Completable(Assignment),
    /// No single iteration can finish: the blocking set has more missing
    /// edges inside it than its members' budgets can cover, and vertices
    /// outside the set cannot add those edges for them.
    Blocked(Blocking),
}

/// Decides whether one iteration can complete `g`.
///
/// One iteration suffices exactly when the missing edges can be distributed
/// among their endpoints without any vertex exceeding its budget (isolated
/// vertices have no budget: they are not eligible).  The reduction works
/// because a distribution, executed in any vertex order, never blocks: each
/// edge is added once by its owner.
pub fn one_shot_completable(g: &Graph) -> Result<OneShot, EngineError> {
    if g.is_complete() {
        return Err(EngineError::CompleteInput);
    }
    if g.is_edgeless() {
        return Err(EngineError::EdgelessInput);
    }
    let eligible = eligible_vertices(g);
    let capacity: Vec<usize> = (0..g.order())
        .map(|v| if eligible >> v & 1 == 1 { g.degree(v) } else { 0 })
        .collect();
    let missing: Vec<(usize, usize)> = g.complement().edges();
    match assign_items(&missing, &capacity) {
        Ok(owner_per_item) => {
            let owners = missing
                .iter()
                .zip(owner_per_item)
                .map(|(&edge, owner)| (edge, owner))
                .collect();
            Ok(OneShot::Completable(Assignment { owners }))
        }
        Err(blocking) => Ok(OneShot::Blocked(blocking)),
    }
}

// ============================================================================
// Degree-sum bound
// ============================================================================

/// The necessary counting condition for one-iteration completability:
/// existing edges plus the total eligible budget must reach the number of
/// vertex pairs.  The condition is not sufficient.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DegreeSumBound {
    /// Existing edges plus the summed budgets of eligible vertices.
    pub capacity: usize,
    /// Total number of vertex pairs, `n(n-1)/2`.
    pub required: usize,
}

impl DegreeSumBound {
    pub fn holds(&self) -> bool {
        self.capacity >= self.required
    }
}

/// Evaluates the counting condition on `g`.
pub fn degree_sum_bound(g: &Graph) -> DegreeSumBound {
    let eligible = eligible_vertices(g);
    let budgets: usize = (0..g.order())
        .filter(|&v| eligible >> v & 1 == 1)
        .map(|v| g.degree(v))
        .sum();
    DegreeSumBound {
        capacity: g.size() + budgets,
        required: g.order() * (g.order() - 1) / 2,
    }
}

// ============================================================================
// Outcome enumeration
// ============================================================================

/// Which plans the outcome enumeration ranges over.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Restriction {
    /// Every actor adds exactly `min(budget, available)` edges.
    Saturated,
    /// Every actor adds between 1 and `min(budget, available)` edges (an
    /// actor with no available target is forced to add nothing).
    AllValid,
}

/// All graphs reachable from `g` by one full iteration, keyed by isomorphism
/// class; the value is the first labeled representative found.
pub fn enumerate_outcomes(
    g: &Graph,
    restriction: Restriction,
) -> Result<BTreeMap<CanonicalForm, Graph>, EngineError> {
    let mut classes = BTreeMap::new();
    for (graph, _) in outcome_plans(g, restriction)? {
        classes.entry(canonical_form(&graph)).or_insert(graph);
    }
    Ok(classes)
}

/// All labeled graphs reachable from `g` by one full iteration.
pub fn enumerate_outcome_graphs(
    g: &Graph,
    restriction: Restriction,
) -> Result<BTreeSet<Graph>, EngineError> {
    Ok(outcome_plans(g, restriction)?.into_iter().map(|(graph, _)| graph).collect())
}

/// Outcome graphs paired with one witnessing plan each, ordered by packed
/// adjacency for determinism.
pub(crate) fn outcome_plans(
    g: &Graph,
    restriction: Restriction,
) -> Result<Vec<(Graph, GlobalPlan)>, EngineError> {
    let cap = match restriction {
        Restriction::Saturated => MAX_OUTCOME_ORDER,
        Restriction::AllValid => MAX_ALL_VALID_ORDER,
    };
    if g.order() > cap {
        return Err(EngineError::OrderAboveCap { order: g.order(), cap });
    }
    // With no eligible vertex (complete or edgeless graph) no iteration can
    // run at all, so nothing is reachable.
    if eligible_vertices(g) == 0 {
        return Ok(Vec::new());
    }
    let budgets = g.degrees();
    let mut search = OutcomeSearch {
        base: g,
        budgets: &budgets,
        restriction,
        current: g.clone(),
        plan: Vec::new(),
        seen: BTreeSet::new(),
        outcomes: BTreeMap::new(),
    };
    search.explore(eligible_vertices(g));
    Ok(search
        .outcomes
        .into_iter()
        .map(|(_, pair)| pair)
        .collect())
}

struct OutcomeSearch<'a> {
    base: &'a Graph,
    budgets: &'a [usize],
    restriction: Restriction,
    current: Graph,
    plan: Vec<LocalStep>,
    /// Packed (adjacency, remaining actors) states already expanded.
    seen: BTreeSet<u64>,
    /// Packed adjacency of each reached outcome, with graph and plan.
    outcomes: BTreeMap<u64, (Graph, GlobalPlan)>,
}

impl OutcomeSearch<'_> {
    fn explore(&mut self, mut remaining: u64) {
        // Vertices with nothing left to add act vacuously; drop them so that
        // equivalent states collapse.
        let mut t = remaining;
        while t != 0 {
            let v = t.trailing_zeros() as usize;
            t &= t - 1;
            if self.current.non_neighbors(v) == 0 {
                remaining &= !(1 << v);
            }
        }
        if remaining == 0 {
            let key = pack_adjacency(&self.current);
            self.outcomes
                .entry(key)
                .or_insert_with(|| (self.current.clone(), GlobalPlan { steps: self.plan.clone() }));
            return;
        }
        let triangle = self.base.order() * (self.base.order() - 1) / 2;
        let state = pack_adjacency(&self.current) | remaining << triangle;
        if !self.seen.insert(state) {
            return;
        }

        let mut actors = remaining;
        while actors != 0 {
            let v = actors.trailing_zeros() as usize;
            actors &= actors - 1;
            let avail = self.current.non_neighbors(v);
            let targets: Vec<usize> = bits(avail);
            let max = self.budgets[v].min(targets.len());
            let sizes = match self.restriction {
                Restriction::Saturated => max..=max,
                Restriction::AllValid => 1..=max,
            };
            for k in sizes {
                for_each_combination(&targets, k, &mut |chosen| {
                    for &t in chosen {
                        self.current.add_edge(v, t);
                    }
                    self.plan.push(LocalStep { initiator: v, added: chosen.to_vec() });
                    self.explore(remaining & !(1 << v));
                    self.plan.pop();
                    for &t in chosen {
                        self.current.remove_edge(v, t);
                    }
                });
            }
        }
    }
}

/// Adjacency of `g` packed into the low `n(n-1)/2` bits, pairs `(i, j)`
/// with `i < j` in lexicographic order.
fn pack_adjacency(g: &Graph) -> u64 {
    let mut bits = 0u64;
    let mut idx = 0;
    for i in 0..g.order() {
        for j in i + 1..g.order() {
            if g.has_edge(i, j) {
                bits |= 1 << idx;
            }
            idx += 1;
        }
    }
    bits
}

fn bits(mask: u64) -> Vec<usize> {
    let mut out = Vec::new();
    let mut t = mask;
    while t != 0 {
        out.push(t.trailing_zeros() as usize);
        t &= t - 1;
    }
    out
}

/// Calls `f` with every `k`-element subset of `items`, in lexicographic
/// order of positions.
fn for_each_combination(items: &[usize], k: usize, f: &mut impl FnMut(&[usize])) {
    fn rec(items: &[usize], k: usize, start: usize, chosen: &mut Vec<usize>, f: &mut impl FnMut(&[usize])) {
        if chosen.len() == k {
            f(chosen);
            return;
        }
        let needed = k - chosen.len();
        for i in start..=items.len().saturating_sub(needed) {
            chosen.push(items[i]);
            rec(items, k, i + 1, chosen, f);
            chosen.pop();
        }
    }
    if k > items.len() {
        return;
    }
    let mut chosen = Vec::with_capacity(k);
    rec(items, k, 0, &mut chosen, f);
}

// ============================================================================
// Tests
// ============================================================================
