//! Symmetry-breaking predicates.
//!
//! Two constructions are offered. The lex-leader predicate conjoins, for every
//! generator `g`, the permutation predicate `PP(g)`: for each variable `x_i` in
//! order, if `x_j = g(x_j)` for all `j < i` then `x_i <= g(x_i)`. It keeps the
//! lexicographically least assignment of every orbit. The pairwise predicate
//! emits `~x_i | x_j` for every swap `(x_i x_j)`, `i < j`, of a generator; it
//! only accepts generators made of variable swaps.

use std::collections::HashSet;
use std::fmt;

use thiserror::Error;

use crate::automorphism::GeneratorSet;
use crate::cnf::{Clause, CnfFormula, Lit, Var};
use crate::perm::LiteralPermutation;

mod predicate;
mod tseitin;

pub use predicate::{equivalent, fold, simplify, PredicateFormula, Simplified, SIMPLIFY_VAR_LIMIT};
pub use tseitin::to_cnf;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SbpError {
    #[error("bit index {index} outside 1..={num_vars}")]
    IndexOutOfRange { index: u32, num_vars: u32 },
    #[error("permutation acts on {found} variables, expected {expected}")]
    ArityMismatch { expected: u32, found: u32 },
    #[error("generator {generator} has cycle {cycle}; the pairwise predicate only handles swaps of two variables")]
    UnsupportedCycle { generator: String, cycle: String },
    #[error("predicate was built for {sbp_vars} variables but the formula has {formula_vars}")]
    IndexOverlap { sbp_vars: u32, formula_vars: u32 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SbpMethod {
    LexLeader,
    Pairwise,
}

impl fmt::Display for SbpMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SbpMethod::LexLeader => f.write_str("lex"),
            SbpMethod::Pairwise => f.write_str("pairwise"),
        }
    }
}

/// Predicate clauses ready to be appended to a formula over `base_vars`
/// variables. Auxiliary variables are `base_vars + 1 ..= base_vars + num_aux_vars`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SbpClauses {
    pub clauses: Vec<Clause>,
    pub num_aux_vars: u32,
    pub base_vars: u32,
    pub method: SbpMethod,
}

impl SbpClauses {
    pub fn empty(base_vars: u32, method: SbpMethod) -> Self {
        SbpClauses {
            clauses: Vec::new(),
            num_aux_vars: 0,
            base_vars,
            method,
        }
    }

    pub fn len(&self) -> usize {
        self.clauses.len()
    }

    pub fn is_empty(&self) -> bool {
        self.clauses.is_empty()
    }

    /// The clauses as a standalone formula over base and auxiliary variables.
    pub fn as_formula(&self) -> CnfFormula {
        CnfFormula::new(self.base_vars + self.num_aux_vars, self.clauses.clone())
            .expect("clauses stay within base and auxiliary variables")
    }
}

/// `[x_1 = g(x_1)] & ... & [x_{i-1} = g(x_{i-1})] -> (x_i <= g(x_i))`.
///
/// `g(x)` is the image of the positive literal of `x`, so a variable mapped to
/// a negative literal compares against that literal's value.
pub fn bit_predicate(
    perm: &LiteralPermutation,
    index: u32,
    num_vars: u32,
) -> Result<PredicateFormula, SbpError> {
    check_arity(perm, num_vars)?;
    if index == 0 || index > num_vars {
        return Err(SbpError::IndexOutOfRange { index, num_vars });
    }
    let equalities = (1..index)
        .map(|j| {
            let x = Var::new(j).positive();
            PredicateFormula::iff(
                PredicateFormula::Literal(x),
                PredicateFormula::Literal(perm.apply(x)),
            )
        })
        .collect();
    let x = Var::new(index).positive();
    Ok(PredicateFormula::implies(
        PredicateFormula::And(equalities),
        PredicateFormula::Leq(x, perm.apply(x)),
    ))
}

/// Conjunction of the simplified bit predicates of `perm`.
pub fn permutation_predicate(
    perm: &LiteralPermutation,
    num_vars: u32,
) -> Result<PredicateFormula, SbpError> {
    check_arity(perm, num_vars)?;
    let mut bits = Vec::new();
    for i in 1..=num_vars {
        let bp = simplify(&bit_predicate(perm, i, num_vars)?).formula;
        if !bp.is_const(true) {
            bits.push(bp);
        }
    }
    Ok(simplify(&PredicateFormula::And(bits)).formula)
}

/// Lex-leader predicate over all generators, as clauses.
pub fn lex_leader_sbp(gens: &GeneratorSet, num_vars: u32) -> Result<SbpClauses, SbpError> {
    if gens.num_vars() != num_vars {
        return Err(SbpError::ArityMismatch {
            expected: num_vars,
            found: gens.num_vars(),
        });
    }
    let pps = gens
        .generators()
        .iter()
        .map(|g| permutation_predicate(g, num_vars))
        .collect::<Result<Vec<_>, _>>()?;
    let mut out = to_cnf(&PredicateFormula::And(pps), num_vars + 1);
    dedup_clauses(&mut out.clauses);
    out.method = SbpMethod::LexLeader;
    Ok(out)
}

/// One clause `~x_i | x_j` per swap `(x_i x_j)`, `i < j`, across all
/// generators, duplicates removed. Generators with longer cycles or with
/// cycles mixing polarities are rejected.
pub fn pairwise_sbp(gens: &GeneratorSet) -> Result<SbpClauses, SbpError> {
    let mut clauses = pairwise_clauses(gens)?;
    dedup_clauses(&mut clauses);
    Ok(SbpClauses {
        clauses,
        num_aux_vars: 0,
        base_vars: gens.num_vars(),
        method: SbpMethod::Pairwise,
    })
}

/// The pairwise clauses before duplicate removal, in generator order.
pub fn pairwise_clauses(gens: &GeneratorSet) -> Result<Vec<Clause>, SbpError> {
    let mut clauses = Vec::new();
    for g in gens.generators() {
        for cycle in g.cycles() {
            let positives = cycle.iter().filter(|l| l.is_positive()).count();
            let unsupported = || SbpError::UnsupportedCycle {
                generator: g.cycle_notation(),
                cycle: LiteralPermutation::from_images(cycle_only(g, &cycle))
                    .map(|p| p.cycle_notation())
                    .unwrap_or_default(),
            };
            if positives == 0 {
                // complement of a positive cycle, handled there
                continue;
            }
            if positives != cycle.len() || cycle.len() != 2 {
                return Err(unsupported());
            }
            let (a, b) = (cycle[0].min(cycle[1]), cycle[0].max(cycle[1]));
            clauses.push(Clause::new([a.negate(), b]).expect("two literals"));
        }
    }
    Ok(clauses)
}

/// `g` restricted to one cycle and its complement, for error messages.
fn cycle_only(g: &LiteralPermutation, cycle: &[Lit]) -> Vec<Lit> {
    let mut images: Vec<Lit> = (0..2 * g.num_vars()).map(Lit::from_code).collect();
    for &l in cycle {
        images[l.code() as usize] = g.apply(l);
        images[l.negate().code() as usize] = g.apply(l.negate());
    }
    images
}

/// `f` followed by the predicate clauses, with room for auxiliary variables.
pub fn conjoin(f: &CnfFormula, sbp: &SbpClauses) -> Result<CnfFormula, SbpError> {
    if sbp.base_vars != f.num_vars() {
        return Err(SbpError::IndexOverlap {
            sbp_vars: sbp.base_vars,
            formula_vars: f.num_vars(),
        });
    }
    let mut clauses = f.clauses().to_vec();
    clauses.extend(sbp.clauses.iter().cloned());
    Ok(CnfFormula::new(f.num_vars() + sbp.num_aux_vars, clauses)
        .expect("predicate clauses stay within base and auxiliary variables"))
}

fn check_arity(perm: &LiteralPermutation, num_vars: u32) -> Result<(), SbpError> {
    if perm.num_vars() != num_vars {
        return Err(SbpError::ArityMismatch {
            expected: num_vars,
            found: perm.num_vars(),
        });
    }
    Ok(())
}

fn dedup_clauses(clauses: &mut Vec<Clause>) {
    let mut seen = HashSet::new();
    clauses.retain(|c| seen.insert(c.clone()));
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cnf::truth_table;

    fn x(i: u32) -> Lit {
        Var::new(i).positive()
    }

    fn gamma() -> LiteralPermutation {
        LiteralPermutation::from_cycles(5, &[&[3, 4]]).unwrap()
    }

    fn theta() -> CnfFormula {
        CnfFormula::from_dimacs_clauses(5, &[&[1, -2, 3, 4, 5], &[2, -3, -4, 5], &[-1, 2, -5]])
            .unwrap()
    }

    fn clause(lits: &[i32]) -> Clause {
        Clause::from_dimacs(lits).unwrap()
    }

    #[test]
    fn bit_predicates_of_running_example() {
        let bp1 = bit_predicate(&gamma(), 1, 5).unwrap();
        assert_eq!(simplify(&bp1).formula, PredicateFormula::Const(true));

        let bp3 = bit_predicate(&gamma(), 3, 5).unwrap();
        assert_eq!(bp3.to_string(), "(((x1 = x1) & (x2 = x2)) -> (x3 <= x4))");
        assert_eq!(simplify(&bp3).formula, PredicateFormula::Leq(x(3), x(4)));

        let bp4 = bit_predicate(&gamma(), 4, 5).unwrap();
        assert_eq!(bp4.vars().len(), 4);
        assert_eq!(simplify(&bp4).formula, PredicateFormula::Const(true));

        let bp5 = bit_predicate(&gamma(), 5, 5).unwrap();
        assert_eq!(simplify(&bp5).formula, PredicateFormula::Const(true));

        assert_eq!(
            bit_predicate(&gamma(), 6, 5),
            Err(SbpError::IndexOutOfRange { index: 6, num_vars: 5 })
        );
        assert_eq!(
            bit_predicate(&gamma(), 0, 5),
            Err(SbpError::IndexOutOfRange { index: 0, num_vars: 5 })
        );
    }

    #[test]
    fn permutation_predicate_of_running_example() {
        let pp = permutation_predicate(&gamma(), 5).unwrap();
        assert_eq!(pp.as_clause(), Some(vec![x(3).negate(), x(4)]));
        assert_eq!(
            permutation_predicate(&LiteralPermutation::identity(4), 4).unwrap(),
            PredicateFormula::Const(true)
        );
    }

    #[test]
    fn permutation_predicate_of_single_swap_matches_truth_table() {
        let swap = LiteralPermutation::from_cycles(2, &[&[1, 2]]).unwrap();
        let pp = permutation_predicate(&swap, 2).unwrap();
        // ~x1 | x2 on rows 00, 01, 10, 11
        let values: Vec<bool> = (0..4)
            .map(|r| pp.evaluate(&crate::cnf::Assignment::from_row(2, r)))
            .collect();
        assert_eq!(values, vec![true, true, false, true]);
    }

    #[test]
    fn lex_leader_of_running_example() {
        let gens = GeneratorSet::new(5, vec![gamma()]).unwrap();
        let sbp = lex_leader_sbp(&gens, 5).unwrap();
        assert_eq!(sbp.clauses, vec![clause(&[-3, 4])]);
        assert_eq!(sbp.num_aux_vars, 0);
        assert_eq!(sbp.method, SbpMethod::LexLeader);

        let none = lex_leader_sbp(&GeneratorSet::empty(5), 5).unwrap();
        assert!(none.is_empty());
        assert!(lex_leader_sbp(&gens, 4).is_err());
    }

    #[test]
    fn three_cycle_needs_auxiliary_variables() {
        let rot = LiteralPermutation::from_cycles(3, &[&[1, 2, 3]]).unwrap();
        let gens = GeneratorSet::new(3, vec![rot]).unwrap();
        let sbp = lex_leader_sbp(&gens, 3).unwrap();
        assert!(sbp.num_aux_vars > 0);
        // projected onto x1..x3: x1 <= x2 and (x1 = x2 -> x2 <= x3)
        let f = sbp.as_formula();
        for row in 0..8 {
            let a = crate::cnf::Assignment::from_row(3, row);
            let (x1, x2, x3) = (a.values()[0], a.values()[1], a.values()[2]);
            let expected = (!x1 || x2) && (x1 != x2 || !x2 || x3);
            let extends = (0..1u64 << sbp.num_aux_vars).any(|aux| {
                let mut v = a.values().to_vec();
                v.extend((0..sbp.num_aux_vars).map(|i| aux >> i & 1 == 1));
                f.evaluate(&crate::cnf::Assignment::new(v)).unwrap()
            });
            assert_eq!(extends, expected, "row {row:03b}");
        }
    }

    #[test]
    fn pairwise_examples() {
        let gens = GeneratorSet::new(5, vec![gamma()]).unwrap();
        let sbp = pairwise_sbp(&gens).unwrap();
        assert_eq!(sbp.clauses, vec![clause(&[-3, 4])]);
        assert_eq!(sbp.num_aux_vars, 0);

        let three_swaps = LiteralPermutation::from_cycles(6, &[&[1, 2], &[3, 4], &[5, 6]]).unwrap();
        let gens = GeneratorSet::new(6, vec![three_swaps]).unwrap();
        let sbp = pairwise_sbp(&gens).unwrap();
        assert_eq!(
            sbp.clauses,
            vec![clause(&[-1, 2]), clause(&[-3, 4]), clause(&[-5, 6])]
        );
        assert!(sbp.clauses.iter().all(|c| c.len() == 2));

        assert!(pairwise_sbp(&GeneratorSet::empty(4)).unwrap().is_empty());
    }

    #[test]
    fn pairwise_rejects_long_and_flipping_cycles() {
        let rot = LiteralPermutation::from_cycles(3, &[&[1, 2, 3]]).unwrap();
        let err = pairwise_sbp(&GeneratorSet::new(3, vec![rot]).unwrap()).unwrap_err();
        assert!(matches!(err, SbpError::UnsupportedCycle { .. }));

        let flip = LiteralPermutation::from_cycles(2, &[&[1, -1]]).unwrap();
        assert!(pairwise_sbp(&GeneratorSet::new(2, vec![flip]).unwrap()).is_err());

        let crossed = LiteralPermutation::from_cycles(2, &[&[1, -2]]).unwrap();
        let err = pairwise_sbp(&GeneratorSet::new(2, vec![crossed]).unwrap()).unwrap_err();
        assert_eq!(
            err.to_string(),
            "generator (x1 ~x2)(~x1 x2) has cycle (x1 ~x2)(~x1 x2); the pairwise predicate only handles swaps of two variables"
        );
    }

    #[test]
    fn pairwise_clause_count_before_dedup() {
        let a = LiteralPermutation::from_cycles(4, &[&[1, 2], &[3, 4]]).unwrap();
        let b = LiteralPermutation::from_cycles(4, &[&[1, 2]]).unwrap();
        let gens = GeneratorSet::new(4, vec![a, b]).unwrap();
        assert_eq!(pairwise_clauses(&gens).unwrap().len(), 3);
        assert_eq!(pairwise_sbp(&gens).unwrap().len(), 2);
    }

    #[test]
    fn single_swaps_give_the_same_clause_both_ways() {
        for n in 2..=6u32 {
            for i in 1..n as i32 {
                for j in i + 1..=n as i32 {
                    let swap = LiteralPermutation::from_cycles(n, &[&[i, j]]).unwrap();
                    let gens = GeneratorSet::new(n, vec![swap]).unwrap();
                    let lex = lex_leader_sbp(&gens, n).unwrap();
                    let pairwise = pairwise_sbp(&gens).unwrap();
                    assert_eq!(lex.clauses, vec![clause(&[-i, j])]);
                    assert_eq!(lex.clauses, pairwise.clauses);
                }
            }
        }
    }

    #[test]
    fn conjoin_running_example() {
        let gens = GeneratorSet::new(5, vec![gamma()]).unwrap();
        let sbp = lex_leader_sbp(&gens, 5).unwrap();
        let theta_prime = conjoin(&theta(), &sbp).unwrap();
        assert_eq!(theta_prime.num_clauses(), 4);
        assert_eq!(theta_prime.clauses()[3], clause(&[-3, 4]));
        assert_eq!(&theta_prime.clauses()[..3], theta().clauses());

        let sat = |f: &CnfFormula| truth_table(f).unwrap().iter().any(|r| r.1);
        assert_eq!(sat(&theta()), sat(&theta_prime));

        assert_eq!(
            conjoin(&theta(), &SbpClauses::empty(5, SbpMethod::LexLeader)).unwrap(),
            theta()
        );
        assert_eq!(
            conjoin(&theta(), &SbpClauses::empty(4, SbpMethod::Pairwise)),
            Err(SbpError::IndexOverlap {
                sbp_vars: 4,
                formula_vars: 5
            })
        );
    }
}
