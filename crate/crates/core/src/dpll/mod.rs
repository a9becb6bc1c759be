//! Chronological backtracking SAT solver with unit propagation.
//!
//! Variables are decided in natural order `x1, x2, ...`, value `0` before
//! `1`, until every variable is assigned. Auxiliary variables introduced by
//! predicate encodings are numbered after the original ones, so they are
//! decided last.

use std::fmt;

use thiserror::Error;

use crate::cnf::{Assignment, Clause, CnfFormula, Lit, Var};
use crate::sbp::SbpError;

mod report;

pub use report::{compare_runs, explored_assignment_count, pruned_assignment_count, ComparisonReport, RunSummary};

/// Most variables [`count_models`] and [`explored_assignment_count`] will
/// enumerate over.
pub const COUNT_LIMIT: usize = 20;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SolverError {
    #[error("counting over {count} variables exceeds the limit of {limit}")]
    TooManyVariables { count: usize, limit: usize },
    #[error("variable {var} is not in a formula over {num_vars} variables")]
    VariableOutOfRange { var: u32, num_vars: u32 },
    #[error(transparent)]
    Sbp(#[from] SbpError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Reason {
    Decision,
    Propagated,
    Assumption,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct TrailEntry {
    pub var: Var,
    pub value: bool,
    pub reason: Reason,
}

/// Three-valued assignment with the order in which values were set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartialAssignment {
    values: Vec<Option<bool>>,
    trail: Vec<TrailEntry>,
}

impl PartialAssignment {
    pub fn new(num_vars: u32) -> Self {
        PartialAssignment {
            values: vec![None; num_vars as usize],
            trail: Vec::new(),
        }
    }

    pub fn num_vars(&self) -> u32 {
        self.values.len() as u32
    }

    pub fn value(&self, var: Var) -> Option<bool> {
        self.values[var.offset()]
    }

    pub fn lit_value(&self, lit: Lit) -> Option<bool> {
        self.value(lit.var()).map(|v| v == lit.is_positive())
    }

    /// Makes `lit` true.
    ///
    /// # Panics
    ///
    /// Panics if its variable is already assigned.
    pub fn assign(&mut self, lit: Lit, reason: Reason) {
        let slot = &mut self.values[lit.var().offset()];
        assert!(slot.is_none(), "{} assigned twice", lit.var().index());
        *slot = Some(lit.is_positive());
        self.trail.push(TrailEntry {
            var: lit.var(),
            value: lit.is_positive(),
            reason,
        });
    }

    /// Undoes the most recent assignment.
    pub fn pop(&mut self) -> Option<TrailEntry> {
        let entry = self.trail.pop()?;
        self.values[entry.var.offset()] = None;
        Some(entry)
    }

    /// Pops until `len` entries remain.
    pub fn backtrack_to(&mut self, len: usize) {
        while self.trail.len() > len {
            self.pop();
        }
    }

    pub fn trail(&self) -> &[TrailEntry] {
        &self.trail
    }

    pub fn is_complete(&self) -> bool {
        self.trail.len() == self.values.len()
    }

    /// First unassigned variable in natural order.
    pub fn first_unassigned(&self) -> Option<Var> {
        self.values
            .iter()
            .position(Option::is_none)
            .map(|i| Var::new(i as u32 + 1))
    }

    /// The total assignment, if every variable has a value.
    pub fn to_assignment(&self) -> Option<Assignment> {
        self.values
            .iter()
            .copied()
            .collect::<Option<Vec<bool>>>()
            .map(Assignment::new)
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash)]
pub struct SearchStats {
    pub decisions: u64,
    pub propagations: u64,
    pub conflicts: u64,
    /// Search-tree leaves: conflicts plus total assignments reached.
    pub leaves_visited: u64,
}

impl fmt::Display for SearchStats {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "decisions={} propagations={} conflicts={} leaves={}",
            self.decisions, self.propagations, self.conflicts, self.leaves_visited
        )
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SolveStatus {
    Sat,
    Unsat,
}

impl SolveStatus {
    pub fn is_sat(self) -> bool {
        self == SolveStatus::Sat
    }
}

impl fmt::Display for SolveStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SolveStatus::Sat => "SATISFIABLE",
            SolveStatus::Unsat => "UNSATISFIABLE",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolveResult {
    pub status: SolveStatus,
    /// Present exactly when `status` is `Sat`.
    pub model: Option<Assignment>,
    pub stats: SearchStats,
}

/// Every model of a formula, in the order the search reaches them.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AllSolutions {
    pub models: Vec<Assignment>,
    pub stats: SearchStats,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Propagation {
    Fixpoint,
    /// Index of a clause with every literal false.
    Conflict(usize),
}

/// Assigns the last open literal of every clause whose other literals are
/// false, until nothing changes or some clause is falsified.
pub fn unit_propagate(
    clauses: &[Clause],
    a: &mut PartialAssignment,
    stats: &mut SearchStats,
) -> Propagation {
    loop {
        let mut changed = false;
        for (i, clause) in clauses.iter().enumerate() {
            let mut open = None;
            let mut open_count = 0;
            let mut satisfied = false;
            for &l in clause.lits() {
                match a.lit_value(l) {
                    Some(true) => {
                        satisfied = true;
                        break;
                    }
                    Some(false) => {}
                    None => {
                        open_count += 1;
                        open = Some(l);
                    }
                }
            }
            if satisfied {
                continue;
            }
            match open_count {
                0 => return Propagation::Conflict(i),
                1 => {
                    a.assign(open.unwrap(), Reason::Propagated);
                    stats.propagations += 1;
                    changed = true;
                }
                _ => {}
            }
        }
        if !changed {
            return Propagation::Fixpoint;
        }
    }
}

pub fn solve(f: &CnfFormula) -> SolveResult {
    solve_with_assumptions(f, &[]).expect("no assumptions to check")
}

/// Solves `f` with the given literals fixed before search starts.
pub fn solve_with_assumptions(f: &CnfFormula, assumptions: &[Lit]) -> Result<SolveResult, SolverError> {
    let mut solver = Solver::new(f);
    if !solver.assume(assumptions)? {
        return Ok(SolveResult {
            status: SolveStatus::Unsat,
            model: None,
            stats: solver.stats,
        });
    }
    let found = solver.search(false);
    let model = found.then(|| solver.models.pop().expect("model recorded"));
    Ok(SolveResult {
        status: if found { SolveStatus::Sat } else { SolveStatus::Unsat },
        model,
        stats: solver.stats,
    })
}

/// Walks the whole search tree and collects every model.
pub fn solve_all(f: &CnfFormula) -> AllSolutions {
    let mut solver = Solver::new(f);
    solver.search(true);
    AllSolutions {
        models: solver.models,
        stats: solver.stats,
    }
}

/// Number of assignments to `over` that extend to a model of `f`.
pub fn count_models(f: &CnfFormula, over: &[Var]) -> Result<u64, SolverError> {
    let mut over: Vec<Var> = over.to_vec();
    over.sort_unstable();
    over.dedup();
    if over.len() > COUNT_LIMIT {
        return Err(SolverError::TooManyVariables {
            count: over.len(),
            limit: COUNT_LIMIT,
        });
    }
    if let Some(v) = over.iter().find(|v| v.index() > f.num_vars()) {
        return Err(SolverError::VariableOutOfRange {
            var: v.index(),
            num_vars: f.num_vars(),
        });
    }
    let mut solver = Solver::new(f);
    Ok(solver.count_projected(&over))
}

struct Solver<'f> {
    clauses: &'f [Clause],
    assignment: PartialAssignment,
    stats: SearchStats,
    models: Vec<Assignment>,
}

impl<'f> Solver<'f> {
    fn new(f: &'f CnfFormula) -> Self {
        Solver {
            clauses: f.clauses(),
            assignment: PartialAssignment::new(f.num_vars()),
            stats: SearchStats::default(),
            models: Vec::new(),
        }
    }

    /// `false` if the assumptions contradict each other.
    fn assume(&mut self, assumptions: &[Lit]) -> Result<bool, SolverError> {
        let n = self.assignment.num_vars();
        for &l in assumptions {
            if l.var().index() > n {
                return Err(SolverError::VariableOutOfRange {
                    var: l.var().index(),
                    num_vars: n,
                });
            }
            match self.assignment.lit_value(l) {
                Some(true) => {}
                Some(false) => return Ok(false),
                None => self.assignment.assign(l, Reason::Assumption),
            }
        }
        Ok(true)
    }

    /// Depth-first search below the current assignment. With `all`, keeps
    /// going after each model and returns whether any was found.
    fn search(&mut self, all: bool) -> bool {
        let mark = self.assignment.trail().len();
        if let Propagation::Conflict(_) = unit_propagate(self.clauses, &mut self.assignment, &mut self.stats) {
            self.stats.conflicts += 1;
            self.stats.leaves_visited += 1;
            self.assignment.backtrack_to(mark);
            return false;
        }
        let Some(var) = self.assignment.first_unassigned() else {
            self.stats.leaves_visited += 1;
            self.models
                .push(self.assignment.to_assignment().expect("complete"));
            if !all {
                return true;
            }
            self.assignment.backtrack_to(mark);
            return true;
        };
        let mut found = false;
        let branch_mark = self.assignment.trail().len();
        for value in [false, true] {
            self.stats.decisions += 1;
            self.assignment.assign(Lit::new(var, value), Reason::Decision);
            if self.search(all) {
                found = true;
                if !all {
                    return true;
                }
            }
            self.assignment.backtrack_to(branch_mark);
        }
        self.assignment.backtrack_to(mark);
        found
    }

    /// Decides the `over` variables first; each complete choice for them
    /// counts once if the rest of the formula can be satisfied.
    fn count_projected(&mut self, over: &[Var]) -> u64 {
        let mark = self.assignment.trail().len();
        if let Propagation::Conflict(_) = unit_propagate(self.clauses, &mut self.assignment, &mut self.stats) {
            self.assignment.backtrack_to(mark);
            return 0;
        }
        let next = over.iter().copied().find(|&v| self.assignment.value(v).is_none());
        let count = match next {
            None => {
                let found = self.search(false);
                self.models.clear();
                u64::from(found)
            }
            Some(var) => {
                let branch_mark = self.assignment.trail().len();
                let mut total = 0;
                for value in [false, true] {
                    self.assignment.assign(Lit::new(var, value), Reason::Decision);
                    total += self.count_projected(over);
                    self.assignment.backtrack_to(branch_mark);
                }
                total
            }
        };
        self.assignment.backtrack_to(mark);
        count
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cnf::truth_table;

    fn cnf(n: u32, clauses: &[&[i32]]) -> CnfFormula {
        CnfFormula::from_dimacs_clauses(n, clauses).unwrap()
    }

    fn theta() -> CnfFormula {
        cnf(5, &[&[1, -2, 3, 4, 5], &[2, -3, -4, 5], &[-1, 2, -5]])
    }

    fn theta_prime() -> CnfFormula {
        cnf(5, &[&[1, -2, 3, 4, 5], &[2, -3, -4, 5], &[-1, 2, -5], &[-3, 4]])
    }

    fn x(i: u32) -> Lit {
        Var::new(i).positive()
    }

    #[test]
    fn propagation_chain() {
        let f = cnf(2, &[&[1], &[-1, 2]]);
        let mut a = PartialAssignment::new(2);
        let mut stats = SearchStats::default();
        assert_eq!(unit_propagate(f.clauses(), &mut a, &mut stats), Propagation::Fixpoint);
        assert_eq!(a.value(Var::new(1)), Some(true));
        assert_eq!(a.value(Var::new(2)), Some(true));
        assert_eq!(stats.propagations, 2);
        assert!(a.trail().iter().all(|e| e.reason == Reason::Propagated));
    }

    #[test]
    fn propagation_conflict() {
        let f = cnf(1, &[&[1], &[-1]]);
        let mut a = PartialAssignment::new(1);
        let mut stats = SearchStats::default();
        assert!(matches!(
            unit_propagate(f.clauses(), &mut a, &mut stats),
            Propagation::Conflict(_)
        ));
    }

    #[test]
    fn propagation_through_predicate_clause() {
        let f = theta_prime();
        let mut a = PartialAssignment::new(5);
        a.assign(x(3), Reason::Decision);
        let mut stats = SearchStats::default();
        assert_eq!(unit_propagate(f.clauses(), &mut a, &mut stats), Propagation::Fixpoint);
        assert_eq!(a.value(Var::new(4)), Some(true));
    }

    #[test]
    fn popping_restores_state() {
        let mut a = PartialAssignment::new(3);
        a.assign(x(2).negate(), Reason::Decision);
        let before = a.clone();
        a.assign(x(1), Reason::Propagated);
        a.assign(x(3), Reason::Decision);
        a.backtrack_to(1);
        assert_eq!(a, before);
        assert_eq!(a.first_unassigned(), Some(Var::new(1)));
    }

    #[test]
    fn first_model_of_equivalence() {
        let f = cnf(2, &[&[1, -2], &[-1, 2]]);
        let r = solve(&f);
        assert_eq!(r.status, SolveStatus::Sat);
        assert_eq!(r.model.unwrap().values(), &[false, false]);
    }

    #[test]
    fn contradiction_is_unsat() {
        let r = solve(&cnf(1, &[&[1], &[-1]]));
        assert_eq!(r.status, SolveStatus::Unsat);
        assert!(r.model.is_none());
        assert_eq!(r.stats.conflicts, 1);
    }

    #[test]
    fn empty_formula_decides_every_variable() {
        let r = solve(&cnf(3, &[]));
        assert_eq!(r.model.unwrap().values(), &[false, false, false]);
        assert_eq!(r.stats.decisions, 3);
        assert_eq!(r.stats.leaves_visited, 1);
    }

    #[test]
    fn predicate_shrinks_full_search() {
        let plain = solve_all(&theta());
        let broken = solve_all(&theta_prime());
        assert!(solve(&theta()).status.is_sat());
        assert!(solve(&theta_prime()).status.is_sat());
        let cost = |s: &SearchStats| s.decisions + s.leaves_visited;
        assert!(cost(&broken.stats) < cost(&plain.stats));

        let rows = |f: &CnfFormula| truth_table(f).unwrap().iter().filter(|r| r.1).count();
        assert_eq!(plain.models.len(), rows(&theta()));
        assert_eq!(broken.models.len(), rows(&theta_prime()));
    }

    #[test]
    fn all_solutions_come_in_row_order() {
        let f = cnf(3, &[&[1, 2, 3]]);
        let rows: Vec<u64> = solve_all(&f).models.iter().map(Assignment::row).collect();
        assert_eq!(rows, (1..8).collect::<Vec<_>>());
    }

    #[test]
    fn assumptions() {
        let f = cnf(2, &[&[1, -2], &[-1, 2]]);
        let r = solve_with_assumptions(&f, &[x(2)]).unwrap();
        assert_eq!(r.model.unwrap().values(), &[true, true]);
        let r = solve_with_assumptions(&f, &[x(2), x(2).negate()]).unwrap();
        assert_eq!(r.status, SolveStatus::Unsat);
        assert!(solve_with_assumptions(&f, &[x(3)]).is_err());
    }

    #[test]
    fn model_counts() {
        let f = cnf(2, &[&[1, -2], &[-1, 2]]);
        let all = [Var::new(1), Var::new(2)];
        assert_eq!(count_models(&f, &all).unwrap(), 2);
        let vars: Vec<Var> = (1..=3).map(Var::new).collect();
        assert_eq!(count_models(&cnf(3, &[]), &vars).unwrap(), 8);
        assert_eq!(count_models(&f, &[Var::new(1)]).unwrap(), 2);
        assert_eq!(count_models(&cnf(1, &[&[1], &[-1]]), &vars[..1]).unwrap(), 0);

        let five: Vec<Var> = (1..=5).map(Var::new).collect();
        let killed = truth_table(&theta())
            .unwrap()
            .iter()
            .filter(|(a, sat)| *sat && a.values()[2] && !a.values()[3])
            .count() as u64;
        let before = count_models(&theta(), &five).unwrap();
        let after = count_models(&theta_prime(), &five).unwrap();
        assert_eq!(before - after, killed);

        let wide: Vec<Var> = (1..=21).map(Var::new).collect();
        assert!(matches!(
            count_models(&cnf(21, &[]), &wide),
            Err(SolverError::TooManyVariables { count: 21, limit: 20 })
        ));
    }
}
