//! Text format for iteration plans and multi-iteration schedules.
//!
//! One line per step, `initiator: target,target,...`, all vertices
//! 0-indexed.  A step may list no targets (`4:`), which is the vacuous
//! action.  Lines starting with `#` are comments.  A schedule is a sequence
//! of plans separated by one or more blank lines:
//!
//! ```text
//! # first iteration
//! 1: 3,5
//! 3: 0,5
//!
//! # second iteration
//! 0: 2
//! ```

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;
use core::fmt::Write as _;

use crate::engine::{GlobalPlan, LocalStep};

/// Parse failure for the plan text format, located by 1-based line number.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PlanTextError {
    /// The line has no `:` separating initiator from targets.
    MissingColon { line: usize },
    /// A vertex field is not a decimal number.
    BadNumber { line: usize },
}

impl fmt::Display for PlanTextError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PlanTextError::MissingColon { line } => {
                write!(f, "line {line}: expected `initiator: targets`")
            }
            PlanTextError::BadNumber { line } => {
                write!(f, "line {line}: vertex fields must be decimal numbers")
            }
        }
    }
}

impl core::error::Error for PlanTextError {}

/// Parses a schedule: blank-line-separated plan blocks.  Comment-only and
/// empty input yields an empty schedule.
pub fn parse_schedule(text: &str) -> Result<Vec<GlobalPlan>, PlanTextError> {
    let mut schedule = Vec::new();
    let mut current: Vec<LocalStep> = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = match raw.find('#') {
            Some(pos) => &raw[..pos],
            None => raw,
        };
        let content = content.trim();
        if content.is_empty() {
            // A fully blank or comment-only line ends the current block.
            if !current.is_empty() {
                schedule.push(GlobalPlan { steps: core::mem::take(&mut current) });
            }
            continue;
        }
        let (head, tail) =
            content.split_once(':').ok_or(PlanTextError::MissingColon { line })?;
        let initiator =
            head.trim().parse::<usize>().map_err(|_| PlanTextError::BadNumber { line })?;
        let mut added = Vec::new();
        for field in tail.split(',') {
            let field = field.trim();
            if field.is_empty() {
                continue;
            }
            added.push(field.parse::<usize>().map_err(|_| PlanTextError::BadNumber { line })?);
        }
        current.push(LocalStep { initiator, added });
    }
    if !current.is_empty() {
        schedule.push(GlobalPlan { steps: current });
    }
    Ok(schedule)
}

/// Parses text that must hold exactly one plan block.  A schedule with more
/// blocks is rejected by returning `None` alongside the parse (callers that
/// accept multi-block input should use [`parse_schedule`]).
pub fn parse_plan(text: &str) -> Result<Option<GlobalPlan>, PlanTextError> {
    let mut schedule = parse_schedule(text)?;
    if schedule.len() == 1 {
        Ok(Some(schedule.pop().expect("length checked")))
    } else {
        Ok(None)
    }
}

/// Renders a schedule in the plan text format, blocks separated by a single
/// blank line, with a trailing newline.
pub fn emit_schedule(schedule: &[GlobalPlan]) -> String {
    let mut out = String::new();
    for (i, plan) in schedule.iter().enumerate() {
        if i > 0 {
            out.push('\n');
        }
        for step in &plan.steps {
            let _ = write!(out, "{}:", step.initiator);
            for (j, t) in step.added.iter().enumerate() {
                let _ = write!(out, "{}{t}", if j == 0 { " " } else { "," });
            }
            out.push('\n');
        }
    }
    out
}

// ============================================================================
// Tests
// ============================================================================
