//! Clause translation of predicate formulas.

use super::predicate::{fold, PredicateFormula};
use super::{SbpClauses, SbpMethod};
use crate::cnf::{Clause, Lit, Var};

use PredicateFormula::*;

/// Translates `f` into clauses, introducing definition variables from
/// `first_fresh_var` upwards for internal nodes that are not part of a
/// top-level conjunction of clauses.
///
/// Every model of the result restricted to the original variables satisfies
/// `f`, and every model of `f` extends to a model of the result. A formula that
/// already is a conjunction of clauses comes back as exactly those clauses.
pub fn to_cnf(f: &PredicateFormula, first_fresh_var: u32) -> SbpClauses {
    assert!(first_fresh_var >= 1, "variables are numbered from 1");
    let mut enc = Encoder {
        next_var: first_fresh_var,
        clauses: Vec::new(),
    };
    enc.assert_formula(&fold(f));
    SbpClauses {
        clauses: enc.clauses,
        num_aux_vars: enc.next_var - first_fresh_var,
        base_vars: first_fresh_var - 1,
        method: SbpMethod::LexLeader,
    }
}

struct Encoder {
    next_var: u32,
    clauses: Vec<Clause>,
}

impl Encoder {
    fn fresh(&mut self) -> Lit {
        let v = Var::new(self.next_var);
        self.next_var += 1;
        v.positive()
    }

    fn add(&mut self, lits: impl IntoIterator<Item = Lit>) {
        self.clauses
            .push(Clause::new(lits).expect("encoder never emits empty clauses"));
    }

    /// Adds clauses forcing `f` to hold.
    fn assert_formula(&mut self, f: &PredicateFormula) {
        match f {
            Const(true) => {}
            And(fs) => fs.iter().for_each(|x| self.assert_formula(x)),
            Not(x) => match x.as_ref() {
                Or(fs) => fs
                    .iter()
                    .for_each(|y| self.assert_formula(&!y.clone())),
                Implies(a, b) => {
                    self.assert_formula(a);
                    self.assert_formula(&!b.as_ref().clone());
                }
                _ => self.assert_clause(f),
            },
            _ => self.assert_clause(f),
        }
    }

    fn assert_clause(&mut self, f: &PredicateFormula) {
        let mut parts = Vec::new();
        disjuncts(f, false, &mut parts);
        let lits: Vec<Lit> = parts
            .iter()
            .map(|part| match part {
                Part::Lit(l) => *l,
                Part::Sub(g, neg) => self.literal(g, *neg),
            })
            .collect();
        if lits.is_empty() {
            // constant false
            let v = self.fresh();
            self.add([v]);
            self.add([!v]);
        } else {
            self.add(lits);
        }
    }

    /// A literal equivalent to `f` (negated if `negated`), defining a fresh
    /// variable when `f` is not a literal.
    fn literal(&mut self, f: &PredicateFormula, negated: bool) -> Lit {
        let lit = match f {
            Literal(l) => *l,
            Not(x) => return self.literal(x, !negated),
            Const(b) => {
                let v = self.fresh();
                self.add([if *b { v } else { !v }]);
                v
            }
            And(fs) => {
                let kids: Vec<Lit> = fs.iter().map(|x| self.literal(x, false)).collect();
                self.define_and(&kids)
            }
            Or(fs) => {
                let kids: Vec<Lit> = fs.iter().map(|x| !self.literal(x, false)).collect();
                !self.define_and(&kids)
            }
            Implies(a, b) => {
                let kids = [self.literal(a, false), !self.literal(b, false)];
                !self.define_and(&kids)
            }
            Leq(a, b) => !self.define_and(&[*a, !*b]),
            Iff(a, b) => {
                let (a, b) = (self.literal(a, false), self.literal(b, false));
                let v = self.fresh();
                self.add([!v, !a, b]);
                self.add([!v, a, !b]);
                self.add([v, a, b]);
                self.add([v, !a, !b]);
                v
            }
        };
        if negated {
            !lit
        } else {
            lit
        }
    }

    /// Fresh `v` with `v <-> (k1 & k2 & ...)`.
    fn define_and(&mut self, kids: &[Lit]) -> Lit {
        let v = self.fresh();
        for &k in kids {
            self.add([!v, k]);
        }
        self.add(std::iter::once(v).chain(kids.iter().map(|&k| !k)));
        v
    }
}

enum Part<'a> {
    Lit(Lit),
    Sub(&'a PredicateFormula, bool),
}

/// Flattens `f` (negated if `negated`) into a disjunction of literals and
/// subformulas, each subformula paired with its own negation flag.
fn disjuncts<'a>(f: &'a PredicateFormula, negated: bool, out: &mut Vec<Part<'a>>) {
    match (f, negated) {
        (Const(false), false) | (Const(true), true) => {}
        (Literal(l), false) => out.push(Part::Lit(*l)),
        (Literal(l), true) => out.push(Part::Lit(l.negate())),
        (Leq(a, b), false) => {
            out.push(Part::Lit(a.negate()));
            out.push(Part::Lit(*b));
        }
        (Not(x), _) => disjuncts(x, !negated, out),
        (Or(fs), false) | (And(fs), true) => fs.iter().for_each(|x| disjuncts(x, negated, out)),
        (Implies(a, b), false) => {
            disjuncts(a, true, out);
            disjuncts(b, false, out);
        }
        _ => out.push(Part::Sub(f, negated)),
    }
}
