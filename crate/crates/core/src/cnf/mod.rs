//! CNF data model: variables, literals, clauses, formulas and assignments.

use std::fmt;

use thiserror::Error;

use crate::perm::LiteralPermutation;

pub mod dimacs;
pub mod oracle;

pub use dimacs::{parse_dimacs, parse_dimacs_with_comments, write_dimacs, write_dimacs_fragment, ParseError};
pub use oracle::{brute_force_symmetries, truth_table, BRUTE_FORCE_SYMMETRY_LIMIT, TRUTH_TABLE_LIMIT};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CnfError {
    #[error("clause has no literals")]
    EmptyClause,
    #[error("variable {var} exceeds the variable count {num_vars}")]
    VariableOutOfRange { var: u32, num_vars: u32 },
    #[error("assignment covers {found} variables, formula has {expected}")]
    AssignmentSize { expected: u32, found: u32 },
    #[error("permutation acts on {found} variables, formula has {expected}")]
    PermutationArity { expected: u32, found: u32 },
    #[error("{num_vars} variables exceeds the enumeration limit of {limit}")]
    TooManyVariables { num_vars: u32, limit: u32 },
}

/// A propositional variable, numbered from 1 as in DIMACS.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Var(u32);

impl Var {
    /// # Panics
    ///
    /// Panics if `index` is zero.
    pub fn new(index: u32) -> Self {
        assert!(index >= 1, "variables are numbered from 1");
        Var(index)
    }

    pub fn index(self) -> u32 {
        self.0
    }

    /// Zero-based position, convenient for indexing dense vectors.
    pub fn offset(self) -> usize {
        (self.0 - 1) as usize
    }

    pub fn positive(self) -> Lit {
        Lit::new(self, true)
    }

    pub fn negative(self) -> Lit {
        Lit::new(self, false)
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "x{}", self.0)
    }
}

/// A literal, packed as `2 * (var - 1) + negated`.
///
/// The packing doubles as the literal-vertex numbering of the clause graph and
/// fixes the literal order used everywhere: ascending by variable, positive
/// before negative.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Lit(u32);

impl Lit {
    pub fn new(var: Var, positive: bool) -> Self {
        Lit(2 * (var.0 - 1) + u32::from(!positive))
    }

    pub fn from_code(code: u32) -> Self {
        Lit(code)
    }

    /// Signed DIMACS integer; zero is not a literal.
    pub fn from_dimacs(value: i32) -> Option<Self> {
        match value {
            0 => None,
            v => Some(Lit::new(Var(v.unsigned_abs()), v > 0)),
        }
    }

    pub fn code(self) -> u32 {
        self.0
    }

    pub fn var(self) -> Var {
        Var(self.0 / 2 + 1)
    }

    pub fn is_positive(self) -> bool {
        self.0 & 1 == 0
    }

    pub fn negate(self) -> Self {
        Lit(self.0 ^ 1)
    }

    pub fn to_dimacs(self) -> i32 {
        let v = self.var().0 as i32;
        if self.is_positive() {
            v
        } else {
            -v
        }
    }
}

impl std::ops::Not for Lit {
    type Output = Lit;

    fn not(self) -> Lit {
        self.negate()
    }
}

impl fmt::Display for Lit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_positive() {
            write!(f, "x{}", self.var().0)
        } else {
            write!(f, "~x{}", self.var().0)
        }
    }
}

/// A disjunction of literals, kept sorted and free of repeated literals.
///
/// Tautological clauses (containing both `l` and `~l`) are kept as they are.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Clause {
    lits: Vec<Lit>,
}

impl Clause {
    pub fn new(lits: impl IntoIterator<Item = Lit>) -> Result<Self, CnfError> {
        let mut lits: Vec<Lit> = lits.into_iter().collect();
        if lits.is_empty() {
            return Err(CnfError::EmptyClause);
        }
        lits.sort_unstable();
        lits.dedup();
        Ok(Clause { lits })
    }

    pub fn from_dimacs(values: &[i32]) -> Result<Self, CnfError> {
        Clause::new(values.iter().filter_map(|&v| Lit::from_dimacs(v)))
    }

    pub fn lits(&self) -> &[Lit] {
        &self.lits
    }

    pub fn len(&self) -> usize {
        self.lits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lits.is_empty()
    }

    pub fn max_var(&self) -> Var {
        // non-empty and sorted
        self.lits[self.lits.len() - 1].var()
    }

    pub fn is_satisfied_by(&self, assignment: &Assignment) -> bool {
        self.lits.iter().any(|&l| assignment.lit_value(l))
    }
}

impl fmt::Display for Clause {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, l) in self.lits.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{l}")?;
        }
        write!(f, ")")
    }
}

/// A conjunction of clauses over variables `1..=num_vars`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CnfFormula {
    num_vars: u32,
    clauses: Vec<Clause>,
}

impl CnfFormula {
    pub fn new(num_vars: u32, clauses: Vec<Clause>) -> Result<Self, CnfError> {
        for c in &clauses {
            let var = c.max_var().index();
            if var > num_vars {
                return Err(CnfError::VariableOutOfRange { var, num_vars });
            }
        }
        Ok(CnfFormula { num_vars, clauses })
    }

    /// Builds a formula from DIMACS-style signed integer clauses.
    pub fn from_dimacs_clauses(num_vars: u32, clauses: &[&[i32]]) -> Result<Self, CnfError> {
        let clauses = clauses
            .iter()
            .map(|c| Clause::from_dimacs(c))
            .collect::<Result<Vec<_>, _>>()?;
        CnfFormula::new(num_vars, clauses)
    }

    pub fn num_vars(&self) -> u32 {
        self.num_vars
    }

    pub fn clauses(&self) -> &[Clause] {
        &self.clauses
    }

    pub fn num_clauses(&self) -> usize {
        self.clauses.len()
    }

    pub fn vars(&self) -> impl Iterator<Item = Var> {
        (1..=self.num_vars).map(Var)
    }

    pub fn evaluate(&self, assignment: &Assignment) -> Result<bool, CnfError> {
        if assignment.num_vars() != self.num_vars {
            return Err(CnfError::AssignmentSize {
                expected: self.num_vars,
                found: assignment.num_vars(),
            });
        }
        Ok(self.clauses.iter().all(|c| c.is_satisfied_by(assignment)))
    }

    /// Replaces every literal by its image under `perm`, keeping clause order.
    pub fn apply_permutation(&self, perm: &LiteralPermutation) -> Result<CnfFormula, CnfError> {
        self.check_arity(perm)?;
        let clauses = self
            .clauses
            .iter()
            .map(|c| Clause {
                lits: {
                    let mut lits: Vec<Lit> = c.lits.iter().map(|&l| perm.apply(l)).collect();
                    lits.sort_unstable();
                    lits
                },
            })
            .collect();
        Ok(CnfFormula {
            num_vars: self.num_vars,
            clauses,
        })
    }

    /// True when `perm` maps the clause multiset onto itself.
    pub fn is_symmetry(&self, perm: &LiteralPermutation) -> Result<bool, CnfError> {
        let image = self.apply_permutation(perm)?;
        Ok(image.clause_multiset() == self.clause_multiset())
    }

    /// Clauses sorted, so two formulas compare equal as multisets of literal sets.
    pub fn clause_multiset(&self) -> Vec<Clause> {
        let mut clauses = self.clauses.clone();
        clauses.sort_unstable();
        clauses
    }

    fn check_arity(&self, perm: &LiteralPermutation) -> Result<(), CnfError> {
        if perm.num_vars() != self.num_vars {
            return Err(CnfError::PermutationArity {
                expected: self.num_vars,
                found: perm.num_vars(),
            });
        }
        Ok(())
    }
}

impl fmt::Display for CnfFormula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.clauses.is_empty() {
            return write!(f, "1");
        }
        for c in &self.clauses {
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

/// A total truth assignment over `x1..xn`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Assignment {
    values: Vec<bool>,
}

impl Assignment {
    pub fn new(values: Vec<bool>) -> Self {
        Assignment { values }
    }

    pub fn all_false(num_vars: u32) -> Self {
        Assignment {
            values: vec![false; num_vars as usize],
        }
    }

    /// The assignment at position `row` of the truth table: x1 is the most
    /// significant bit.
    pub fn from_row(num_vars: u32, row: u64) -> Self {
        let n = num_vars as usize;
        let values = (0..n).map(|i| (row >> (n - 1 - i)) & 1 == 1).collect();
        Assignment { values }
    }

    /// Inverse of [`Assignment::from_row`]; the lexicographic rank.
    pub fn row(&self) -> u64 {
        self.values
            .iter()
            .fold(0u64, |acc, &b| (acc << 1) | u64::from(b))
    }

    pub fn num_vars(&self) -> u32 {
        self.values.len() as u32
    }

    pub fn values(&self) -> &[bool] {
        &self.values
    }

    pub fn value(&self, var: Var) -> bool {
        self.values[var.offset()]
    }

    pub fn set(&mut self, var: Var, value: bool) {
        self.values[var.offset()] = value;
    }

    pub fn lit_value(&self, lit: Lit) -> bool {
        self.value(lit.var()) == lit.is_positive()
    }

    /// The assignment under which `perm(l)` takes the value `l` has here.
    ///
    /// If `perm` is a symmetry of `f`, then `f` agrees on `self` and the result.
    pub fn permuted(&self, perm: &LiteralPermutation) -> Assignment {
        let mut values = vec![false; self.values.len()];
        for (i, &v) in self.values.iter().enumerate() {
            let image = perm.apply(Var(i as u32 + 1).positive());
            values[image.var().offset()] = v == image.is_positive();
        }
        Assignment { values }
    }

    /// Restriction to the first `num_vars` variables.
    pub fn truncated(&self, num_vars: u32) -> Assignment {
        Assignment {
            values: self.values[..num_vars as usize].to_vec(),
        }
    }

    /// The satisfied literal of every variable, in DIMACS form.
    pub fn to_dimacs(&self) -> Vec<i32> {
        self.values
            .iter()
            .enumerate()
            .map(|(i, &b)| if b { i as i32 + 1 } else { -(i as i32 + 1) })
            .collect()
    }
}

impl fmt::Display for Assignment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &b in &self.values {
            write!(f, "{}", u8::from(b))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn table1() -> CnfFormula {
        CnfFormula::from_dimacs_clauses(2, &[&[1, -2], &[-1, 2]]).unwrap()
    }

    pub(crate) fn theta() -> CnfFormula {
        CnfFormula::from_dimacs_clauses(5, &[&[1, -2, 3, 4, 5], &[2, -3, -4, 5], &[-1, 2, -5]])
            .unwrap()
    }

    #[test]
    fn literal_packing() {
        let x3 = Var::new(3);
        assert_eq!(x3.positive().code(), 4);
        assert_eq!(x3.negative().code(), 5);
        assert_eq!(!!x3.negative(), x3.negative());
        assert_eq!(Lit::from_dimacs(-3), Some(x3.negative()));
        assert_eq!(x3.negative().to_dimacs(), -3);
        assert_eq!(Lit::from_dimacs(0), None);
        assert_eq!(x3.negative().to_string(), "~x3");
    }

    #[test]
    fn clause_normalizes_but_keeps_tautologies() {
        let c = Clause::from_dimacs(&[3, -1, 1, 3]).unwrap();
        assert_eq!(
            c.lits().iter().map(|l| l.to_dimacs()).collect::<Vec<_>>(),
            vec![1, -1, 3]
        );
        assert_eq!(Clause::from_dimacs(&[]), Err(CnfError::EmptyClause));
    }

    #[test]
    fn formula_rejects_out_of_range_variable() {
        let err = CnfFormula::from_dimacs_clauses(2, &[&[1, 3]]).unwrap_err();
        assert_eq!(err, CnfError::VariableOutOfRange { var: 3, num_vars: 2 });
    }

    #[test]
    fn evaluate_table1_rows() {
        let f = table1();
        let row = |bits: &[bool]| f.evaluate(&Assignment::new(bits.to_vec())).unwrap();
        assert!(row(&[false, false]));
        assert!(!row(&[false, true]));
        assert!(!row(&[true, false]));
        assert!(row(&[true, true]));
    }

    #[test]
    fn evaluate_theta_falsified_by_second_clause() {
        let a = Assignment::new(vec![false, false, true, true, false]);
        assert!(!theta().evaluate(&a).unwrap());
        assert!(!theta().clauses()[1].is_satisfied_by(&a));
    }

    #[test]
    fn evaluate_rejects_partial_assignment() {
        let err = theta().evaluate(&Assignment::all_false(3)).unwrap_err();
        assert_eq!(err, CnfError::AssignmentSize { expected: 5, found: 3 });
    }

    #[test]
    fn row_round_trip() {
        let a = Assignment::from_row(5, 0b00110);
        assert_eq!(a.to_string(), "00110");
        assert_eq!(a.row(), 0b00110);
    }

    #[test]
    fn permutation_of_variables_preserves_clauses() {
        // (a+b+c)(d+e+f) with a..f = x1..x6
        let f = CnfFormula::from_dimacs_clauses(6, &[&[1, 2, 3], &[4, 5, 6]]).unwrap();
        let ab = LiteralPermutation::from_cycles(6, &[&[1, 2]]).unwrap();
        let image = f.apply_permutation(&ab).unwrap();
        assert_eq!(image.clause_multiset(), f.clause_multiset());
        assert!(f.is_symmetry(&ab).unwrap());
        let swap_blocks = LiteralPermutation::from_cycles(6, &[&[1, 4], &[2, 5], &[3, 6]]).unwrap();
        assert!(f.is_symmetry(&swap_blocks).unwrap());
        assert_eq!(
            f.apply_permutation(&LiteralPermutation::identity(6)).unwrap(),
            f
        );
    }

    #[test]
    fn theta_symmetries() {
        let f = theta();
        let gamma = LiteralPermutation::from_cycles(5, &[&[3, 4]]).unwrap();
        assert!(f.is_symmetry(&gamma).unwrap());
        let x1x2 = LiteralPermutation::from_cycles(5, &[&[1, 2]]).unwrap();
        assert!(!f.is_symmetry(&x1x2).unwrap());
        let t1 = table1();
        let swap = LiteralPermutation::from_cycles(2, &[&[1, 2]]).unwrap();
        assert!(t1.is_symmetry(&swap).unwrap());
    }

    #[test]
    fn apply_permutation_arity_mismatch() {
        let err = theta()
            .apply_permutation(&LiteralPermutation::identity(4))
            .unwrap_err();
        assert_eq!(err, CnfError::PermutationArity { expected: 5, found: 4 });
    }

    #[test]
    fn permuted_assignment_follows_literal_images() {
        // x1 -> ~x2, x2 -> x1
        let p = LiteralPermutation::from_var_images(&[Var::new(2).negative(), Var::new(1).positive()])
            .unwrap();
        let a = Assignment::new(vec![true, false]);
        let b = a.permuted(&p);
        // value of p(x1) = ~x2 under b equals a(x1) = 1, so x2 = 0
        assert!(b.lit_value(Var::new(2).negative()));
        // value of p(x2) = x1 under b equals a(x2) = 0
        assert!(!b.value(Var::new(1)));
    }
}
