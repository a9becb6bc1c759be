//! Boolean formula trees for bit and permutation predicates.

use std::collections::BTreeSet;
use std::fmt;

use crate::cnf::{Assignment, Lit, Var};

/// Variables a formula may mention before [`simplify`] gives up on
/// exhaustive tautology checks.
pub const SIMPLIFY_VAR_LIMIT: usize = 16;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum PredicateFormula {
    Const(bool),
    Literal(Lit),
    Not(Box<PredicateFormula>),
    And(Vec<PredicateFormula>),
    Or(Vec<PredicateFormula>),
    Implies(Box<PredicateFormula>, Box<PredicateFormula>),
    Iff(Box<PredicateFormula>, Box<PredicateFormula>),
    /// `a <= b` on Booleans, i.e. `~a | b`.
    Leq(Lit, Lit),
}

use PredicateFormula::*;

impl PredicateFormula {
    pub fn implies(a: PredicateFormula, b: PredicateFormula) -> Self {
        Implies(Box::new(a), Box::new(b))
    }

    pub fn iff(a: PredicateFormula, b: PredicateFormula) -> Self {
        Iff(Box::new(a), Box::new(b))
    }

    /// `l1 | l2 | ...` as a formula.
    pub fn clause(lits: &[Lit]) -> Self {
        Or(lits.iter().map(|&l| Literal(l)).collect())
    }

    pub fn eval_with(&self, value: &impl Fn(Var) -> bool) -> bool {
        let lit = |l: &crate::cnf::Lit| value(l.var()) == l.is_positive();
        match self {
            Const(b) => *b,
            Literal(l) => lit(l),
            Not(f) => !f.eval_with(value),
            And(fs) => fs.iter().all(|f| f.eval_with(value)),
            Or(fs) => fs.iter().any(|f| f.eval_with(value)),
            Implies(a, b) => !a.eval_with(value) || b.eval_with(value),
            Iff(a, b) => a.eval_with(value) == b.eval_with(value),
            Leq(a, b) => !lit(a) || lit(b),
        }
    }

    /// # Panics
    ///
    /// Panics if the formula mentions a variable the assignment lacks.
    pub fn evaluate(&self, assignment: &Assignment) -> bool {
        self.eval_with(&|v| assignment.value(v))
    }

    pub fn vars(&self) -> BTreeSet<Var> {
        let mut out = BTreeSet::new();
        self.collect_vars(&mut out);
        out
    }

    fn collect_vars(&self, out: &mut BTreeSet<Var>) {
        match self {
            Const(_) => {}
            Literal(l) => {
                out.insert(l.var());
            }
            Not(f) => f.collect_vars(out),
            And(fs) | Or(fs) => fs.iter().for_each(|f| f.collect_vars(out)),
            Implies(a, b) | Iff(a, b) => {
                a.collect_vars(out);
                b.collect_vars(out);
            }
            Leq(a, b) => {
                out.insert(a.var());
                out.insert(b.var());
            }
        }
    }

    pub fn is_const(&self, value: bool) -> bool {
        matches!(self, Const(b) if *b == value)
    }

    /// If the formula is a literal or a disjunction of literals, those literals.
    pub fn as_clause(&self) -> Option<Vec<Lit>> {
        match self {
            Literal(l) => Some(vec![*l]),
            Leq(a, b) => Some(vec![a.negate(), *b]),
            Not(f) => match f.as_ref() {
                Literal(l) => Some(vec![l.negate()]),
                _ => None,
            },
            Or(fs) => {
                let mut lits = Vec::new();
                for f in fs {
                    lits.extend(f.as_clause()?);
                }
                Some(lits)
            }
            _ => None,
        }
    }

    /// Checks, by enumerating its own variables, that the formula always
    /// holds. `None` when it has more than `limit` variables.
    pub fn is_tautology(&self, limit: usize) -> Option<bool> {
        let vars: Vec<Var> = self.vars().into_iter().collect();
        if vars.len() > limit {
            return None;
        }
        let max = vars.last().map_or(0, |v| v.index()) as usize;
        let mut slot = vec![0usize; max + 1];
        for (i, v) in vars.iter().enumerate() {
            slot[v.index() as usize] = i;
        }
        Some((0..1u64 << vars.len()).all(|bits| {
            self.eval_with(&|v: Var| bits >> slot[v.index() as usize] & 1 == 1)
        }))
    }
}

impl std::ops::Not for PredicateFormula {
    type Output = PredicateFormula;

    fn not(self) -> Self {
        Not(Box::new(self))
    }
}

impl fmt::Display for PredicateFormula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn join(f: &mut fmt::Formatter<'_>, fs: &[PredicateFormula], op: &str) -> fmt::Result {
            write!(f, "(")?;
            for (i, x) in fs.iter().enumerate() {
                if i > 0 {
                    write!(f, " {op} ")?;
                }
                write!(f, "{x}")?;
            }
            write!(f, ")")
        }
        match self {
            Const(b) => write!(f, "{}", u8::from(*b)),
            Literal(l) => write!(f, "{l}"),
            Not(x) => write!(f, "!{x}"),
            And(fs) if fs.is_empty() => write!(f, "1"),
            Or(fs) if fs.is_empty() => write!(f, "0"),
            And(fs) => join(f, fs, "&"),
            Or(fs) => join(f, fs, "|"),
            Implies(a, b) => write!(f, "({a} -> {b})"),
            Iff(a, b) => write!(f, "({a} = {b})"),
            Leq(a, b) => write!(f, "({a} <= {b})"),
        }
    }
}

/// Result of [`simplify`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Simplified {
    pub formula: PredicateFormula,
    /// Set when some conjunct had too many variables for the tautology check;
    /// that conjunct was only simplified structurally.
    pub guard_exceeded: bool,
}

/// Constant folding plus the bit-level rewrites (`a = a`, `a <= a`, `a = ~a`),
/// then drops every top-level conjunct that is a tautology over its own
/// variables. The result is equivalent to the input.
pub fn simplify(f: &PredicateFormula) -> Simplified {
    let folded = fold(f);
    let conjuncts = match folded {
        And(fs) => fs,
        other => vec![other],
    };
    let mut guard_exceeded = false;
    let mut kept = Vec::with_capacity(conjuncts.len());
    for c in conjuncts {
        match c.is_tautology(SIMPLIFY_VAR_LIMIT) {
            Some(true) => {}
            Some(false) => kept.push(c),
            None => {
                guard_exceeded = true;
                kept.push(c);
            }
        }
    }
    Simplified {
        formula: fold(&And(kept)),
        guard_exceeded,
    }
}

/// Structural simplification; never changes the formula's meaning.
pub fn fold(f: &PredicateFormula) -> PredicateFormula {
    match f {
        Const(_) | Literal(_) => f.clone(),
        Not(x) => negate(fold(x)),
        And(fs) => {
            let mut out = Vec::with_capacity(fs.len());
            for x in fs {
                match fold(x) {
                    Const(true) => {}
                    Const(false) => return Const(false),
                    And(inner) => out.extend(inner),
                    other => out.push(other),
                }
            }
            dedup_in_order(&mut out);
            match out.len() {
                0 => Const(true),
                1 => out.pop().unwrap(),
                _ => And(out),
            }
        }
        Or(fs) => {
            let mut out = Vec::with_capacity(fs.len());
            for x in fs {
                match fold(x) {
                    Const(false) => {}
                    Const(true) => return Const(true),
                    Or(inner) => out.extend(inner),
                    other => out.push(other),
                }
            }
            dedup_in_order(&mut out);
            match out.len() {
                0 => Const(false),
                1 => out.pop().unwrap(),
                _ => Or(out),
            }
        }
        Implies(a, b) => match (fold(a), fold(b)) {
            (Const(false), _) | (_, Const(true)) => Const(true),
            (Const(true), b) => b,
            (a, Const(false)) => negate(a),
            (a, b) if a == b => Const(true),
            (a, b) => PredicateFormula::implies(a, b),
        },
        Iff(a, b) => match (fold(a), fold(b)) {
            (Const(true), x) | (x, Const(true)) => x,
            (Const(false), x) | (x, Const(false)) => negate(x),
            (Literal(x), Literal(y)) if x == y.negate() => Const(false),
            (a, b) if a == b => Const(true),
            (a, b) => PredicateFormula::iff(a, b),
        },
        Leq(a, b) if a == b => Const(true),
        // ~a | ~a
        Leq(a, b) if *a == b.negate() => Literal(*b),
        Leq(..) => f.clone(),
    }
}

fn negate(f: PredicateFormula) -> PredicateFormula {
    match f {
        Const(b) => Const(!b),
        Literal(l) => Literal(l.negate()),
        Not(x) => *x,
        other => !other,
    }
}

fn dedup_in_order(fs: &mut Vec<PredicateFormula>) {
    let mut seen = std::collections::HashSet::new();
    fs.retain(|f| seen.insert(f.clone()));
}

/// `true` if the two formulas agree on every assignment of their combined
/// variables (at most `limit` of them).
pub fn equivalent(a: &PredicateFormula, b: &PredicateFormula, limit: usize) -> Option<bool> {
    PredicateFormula::iff(a.clone(), b.clone()).is_tautology(limit)
}
