//! Exhaustive oracles: the truth table and the brute-force symmetry group.
//!
//! Both are exponential and guarded by small variable-count limits; they exist
//! to cross-check the solver, the automorphism search and the predicate
//! generators.

use itertools::Itertools;

use super::{Assignment, CnfError, CnfFormula, Lit, Var};
use crate::perm::LiteralPermutation;

pub const TRUTH_TABLE_LIMIT: u32 = 20;
pub const BRUTE_FORCE_SYMMETRY_LIMIT: u32 = 6;

/// All `2^n` assignments in lexicographic order (x1 most significant, 0 before
/// 1), each paired with the formula's value.
pub fn truth_table(formula: &CnfFormula) -> Result<Vec<(Assignment, bool)>, CnfError> {
    let n = formula.num_vars();
    if n > TRUTH_TABLE_LIMIT {
        return Err(CnfError::TooManyVariables {
            num_vars: n,
            limit: TRUTH_TABLE_LIMIT,
        });
    }
    Ok((0..1u64 << n)
        .map(|row| {
            let a = Assignment::from_row(n, row);
            let value = formula.clauses().iter().all(|c| c.is_satisfied_by(&a));
            (a, value)
        })
        .collect())
}

/// Every variable permutation combined with every polarity flip that maps the
/// clause multiset onto itself. The identity is always included.
pub fn brute_force_symmetries(formula: &CnfFormula) -> Result<Vec<LiteralPermutation>, CnfError> {
    let n = formula.num_vars();
    if n > BRUTE_FORCE_SYMMETRY_LIMIT {
        return Err(CnfError::TooManyVariables {
            num_vars: n,
            limit: BRUTE_FORCE_SYMMETRY_LIMIT,
        });
    }
    let target = formula.clause_multiset();
    let mut found = Vec::new();
    for order in (1..=n).permutations(n as usize) {
        for flips in 0..1u32 << n {
            let images: Vec<Lit> = order
                .iter()
                .enumerate()
                .map(|(i, &v)| Lit::new(Var::new(v), flips >> i & 1 == 0))
                .collect();
            let perm = LiteralPermutation::from_var_images(&images)
                .expect("variable permutations with flips are consistent");
            if formula.apply_permutation(&perm)?.clause_multiset() == target {
                found.push(perm);
            }
        }
    }
    Ok(found)
}
