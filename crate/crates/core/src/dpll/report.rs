//! Side-by-side runs with and without a symmetry-breaking predicate.

use std::fmt;

use super::{count_models, solve, solve_all, SearchStats, SolveStatus, SolverError, COUNT_LIMIT};
use crate::cnf::{CnfFormula, Var};
use crate::sbp::{conjoin, SbpClauses, SbpError};

/// Assignments of the original variables that the predicate clauses alone do
/// not rule out. An assignment counts as ruled out when no choice of the
/// auxiliary variables satisfies every predicate clause.
pub fn explored_assignment_count(f: &CnfFormula, sbp: &SbpClauses) -> Result<u64, SolverError> {
    let n = check(f, sbp)?;
    if sbp.is_empty() {
        return Ok(1 << n);
    }
    let over: Vec<Var> = (1..=n).map(Var::new).collect();
    count_models(&sbp.as_formula(), &over)
}

/// Assignments of the original variables ruled out by the predicate.
pub fn pruned_assignment_count(f: &CnfFormula, sbp: &SbpClauses) -> Result<u64, SolverError> {
    let explored = explored_assignment_count(f, sbp)?;
    Ok((1u64 << f.num_vars()) - explored)
}

fn check(f: &CnfFormula, sbp: &SbpClauses) -> Result<u32, SolverError> {
    let n = f.num_vars();
    if sbp.base_vars != n {
        return Err(SbpError::IndexOverlap {
            sbp_vars: sbp.base_vars,
            formula_vars: n,
        }
        .into());
    }
    if n as usize > COUNT_LIMIT {
        return Err(SolverError::TooManyVariables {
            count: n as usize,
            limit: COUNT_LIMIT,
        });
    }
    Ok(n)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunSummary {
    pub status: SolveStatus,
    /// Stats of the search stopped at the first model.
    pub first_model: SearchStats,
    /// Stats of the search that walks the whole tree.
    pub full_search: SearchStats,
    /// Models projected onto the original variables.
    pub model_count: u64,
    pub explored: u64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComparisonReport {
    pub original: RunSummary,
    pub augmented: RunSummary,
    pub sbp_clauses: usize,
    pub aux_vars: u32,
    pub status_equal: bool,
}

/// Solves and counts `f` and `f` conjoined with `sbp`.
pub fn compare_runs(f: &CnfFormula, sbp: &SbpClauses) -> Result<ComparisonReport, SolverError> {
    let n = check(f, sbp)?;
    let augmented_formula = conjoin(f, sbp)?;
    let over: Vec<Var> = (1..=n).map(Var::new).collect();
    let summarize = |g: &CnfFormula, explored: u64| -> Result<RunSummary, SolverError> {
        Ok(RunSummary {
            status: solve(g).status,
            first_model: solve(g).stats,
            full_search: solve_all(g).stats,
            model_count: count_models(g, &over)?,
            explored,
        })
    };
    let original = summarize(f, 1 << n)?;
    let augmented = summarize(&augmented_formula, explored_assignment_count(f, sbp)?)?;
    Ok(ComparisonReport {
        status_equal: original.status == augmented.status,
        original,
        augmented,
        sbp_clauses: sbp.len(),
        aux_vars: sbp.num_aux_vars,
    })
}

impl fmt::Display for ComparisonReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (a, b) = (&self.original, &self.augmented);
        let status = |s: SolveStatus| if s.is_sat() { "SAT" } else { "UNSAT" };
        let mut row = |label: &str, x: String, y: String| writeln!(f, "{label:>14}: {x} → {y}");
        row("status", status(a.status).into(), status(b.status).into())?;
        row("explored", a.explored.to_string(), b.explored.to_string())?;
        row("models", a.model_count.to_string(), b.model_count.to_string())?;
        row("decisions", a.first_model.decisions.to_string(), b.first_model.decisions.to_string())?;
        row("propagations", a.first_model.propagations.to_string(), b.first_model.propagations.to_string())?;
        row("conflicts", a.first_model.conflicts.to_string(), b.first_model.conflicts.to_string())?;
        row("leaves", a.first_model.leaves_visited.to_string(), b.first_model.leaves_visited.to_string())?;
        row("all decisions", a.full_search.decisions.to_string(), b.full_search.decisions.to_string())?;
        row("all leaves", a.full_search.leaves_visited.to_string(), b.full_search.leaves_visited.to_string())?;
        writeln!(f, "{:>14}: {} ({} auxiliary variables)", "sbp clauses", self.sbp_clauses, self.aux_vars)?;
        writeln!(f, "{:>14}: {}", "status equal", self.status_equal)
    }
}
