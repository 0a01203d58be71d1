//! Core library for iterated, budget-constrained completion of graphs.
//!
//! A *completion iteration* on a graph works as follows: every vertex whose
//! degree is strictly between 0 and `n - 1` becomes an initiator; in some
//! order, each initiator adds edges to vertices it is not yet adjacent to,
//! spending at most its degree *as measured at the start of the iteration*.
//! Iterations repeat until the graph is complete.  The minimum number of
//! iterations needed is the graph's completion number; an edgeless graph on
//! two or more vertices can never complete and gets the value "infinite".
//!
//! The crate provides:
//! * [`graph`]: bitmask graphs on up to 64 vertices, standard families,
//!   complement / union / join / pearl composites, edge-list text format,
//! * [`graph6`]: the compact ASCII graph interchange format,
//! * [`canon`]: canonical forms for isomorphism-aware bookkeeping,
//! * [`enumerate`]: all graphs of a given small order up to isomorphism,
//! * [`dot`]: Graphviz output with added edges rendered dashed,
//! * [`engine`]: single-iteration machinery — plan validation and replay,
//!   greedy plans, one-iteration completability (an exact polynomial
//!   decision via edge-assignment feasibility), outcome enumeration,
//! * [`plan_text`]: a small text format for plans and multi-iteration
//!   schedules,
//! * [`solver`]: exact completion numbers with replayable witnesses, bounds,
//!   the completion index, and scans derived from them,
//! * [`experiments`]: report-producing checks over whole graph classes.
//!
//! The crate is `no_std` (with `alloc`) apart from the default `std` feature,
//! which only widens error types; all algorithms are identical either way.

#![cfg_attr(not(feature = "std"), no_std)]

extern crate alloc;

pub mod canon;
pub mod dot;
pub mod engine;
pub mod enumerate;
pub mod experiments;
mod flow;
pub mod graph;
pub mod graph6;
pub mod plan_text;
pub mod solver;

pub use canon::{are_isomorphic, canonical_form, canonical_graph, canonical_labeling, CanonicalForm};
pub use engine::{
    apply_plan, degree_sum_bound, eligible_vertices, enumerate_outcome_graphs, enumerate_outcomes,
    greedy_plan, one_shot_completable, validate_plan, Assignment, DegreeSumBound, EngineError,
    GlobalPlan, LocalStep, OneShot, PlanCheck, PlanTrace, PlanViolation, Policy, Restriction,
    MAX_ALL_VALID_ORDER, MAX_OUTCOME_ORDER,
};
pub use experiments::{
    braced_iterations, claims_scan, conjecture_scan, paper_table, path_bound,
    petersen_completing_plan, reveal_cover, six_path_completing_plan, six_path_stalling_plan,
    BracedIterations, CheckReport, CheckRow, CheckStatus, ExperimentError, PathBound, RevealCover,
};
pub use flow::Blocking;
pub use plan_text::{emit_schedule, parse_plan, parse_schedule, PlanTextError};
pub use solver::{
    counting_lower_bound, marcello_upper, min_join_order, verify_sequence, IndexEntry,
    IndexResult, MarcelloResult, QueryStats, SearchConfig, SequenceCheck, Solver, SolverError,
    SolverStats, UpperBound, Value, MAX_EXACT_ORDER,
};
pub use graph::{
    emit_edge_list, generate, parse_edge_list, pearl, pearl_with_links, EdgeListError, Family,
    Graph, GraphError, MAX_VERTICES,
};
pub use dot::{emit_dot, DotError};
pub use enumerate::{enumerate_graph_classes, EnumerateError, MAX_ENUMERATION_ORDER};
pub use graph6::{emit_graph6, parse_graph6, Graph6Error};
