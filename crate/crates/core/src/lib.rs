//! Symmetry breaking for CNF formulas.
//!
//! The pipeline: encode a formula as a colored graph ([`graph`]), find its
//! automorphisms by partition refinement and individualization
//! ([`automorphism`]), turn them into symmetry-breaking predicates ([`sbp`]),
//! conjoin those with the formula and solve it with a chronological
//! backtracking solver ([`dpll`]).

pub mod automorphism;
pub mod cnf;
pub mod dpll;
pub mod graph;
pub mod perm;
pub mod sbp;

pub use cnf::{Assignment, Clause, CnfError, CnfFormula, Lit, Var};
pub use perm::{LiteralPermutation, PermError};
pub use automorphism::{detect_symmetries, GeneratorSet};
pub use graph::ColoredGraph;
pub use dpll::{solve, SolveResult, SolveStatus};
pub use sbp::{conjoin, lex_leader_sbp, pairwise_sbp, SbpClauses, SbpError, SbpMethod};
