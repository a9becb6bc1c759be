//! Graph automorphisms of the clause/literal graph and their projection to
//! CNF symmetries.

use thiserror::Error;

use crate::cnf::{CnfFormula, Lit};
use crate::graph::ColoredGraph;
use crate::perm::{group_closure, LiteralPermutation, PermError};

mod partition;
mod search;

pub use partition::{refine, OrderedPartition};
pub use search::{
    search_automorphisms, search_automorphisms_with, SearchOptions, SearchOutcome,
    VertexPermutation,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AutomorphismError {
    #[error("invalid partition: {0}")]
    InvalidPartition(String),
    #[error("partition is discrete; there is no target cell")]
    DiscretePartition,
    #[error("vertex {0} is not in a non-singleton cell")]
    NotIndividualizable(usize),
    #[error("vertex map is not a bijection on the graph's vertices")]
    NotBijective,
    #[error("vertex {0} is mapped to a vertex of another kind")]
    NotKindPreserving(usize),
    #[error("projected literal map is not Boolean-consistent: {0}")]
    BooleanConsistency(PermError),
    #[error("generator {0} is not a symmetry of the formula")]
    NotASymmetry(String),
}

/// Restricts a kind-preserving vertex permutation to the literal vertices.
pub fn project_to_literals(
    vp: &VertexPermutation,
    g: &ColoredGraph,
) -> Result<LiteralPermutation, AutomorphismError> {
    let literal_vertices = g.num_literal_vertices();
    let mut images = Vec::with_capacity(literal_vertices);
    for v in 0..literal_vertices {
        let w = vp.apply(v);
        if w >= literal_vertices {
            return Err(AutomorphismError::NotKindPreserving(v));
        }
        images.push(Lit::from_code(w as u32));
    }
    LiteralPermutation::from_images(images).map_err(AutomorphismError::BooleanConsistency)
}

/// Cycle notation with fixed points omitted, e.g. `(x3 x4)(~x3 ~x4)`.
pub fn cycle_notation(p: &LiteralPermutation) -> String {
    p.cycle_notation()
}

/// Symmetry generators of a formula, none of them the identity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneratorSet {
    num_vars: u32,
    generators: Vec<LiteralPermutation>,
}

impl GeneratorSet {
    pub fn empty(num_vars: u32) -> Self {
        GeneratorSet {
            num_vars,
            generators: Vec::new(),
        }
    }

    /// Wraps explicit permutations, dropping identities.
    pub fn new(num_vars: u32, generators: Vec<LiteralPermutation>) -> Result<Self, PermError> {
        if let Some(g) = generators.iter().find(|g| g.num_vars() != num_vars) {
            return Err(PermError::ArityMismatch(num_vars, g.num_vars()));
        }
        let generators = generators.into_iter().filter(|g| !g.is_identity()).collect();
        Ok(GeneratorSet {
            num_vars,
            generators,
        })
    }

    pub fn num_vars(&self) -> u32 {
        self.num_vars
    }

    pub fn generators(&self) -> &[LiteralPermutation] {
        &self.generators
    }

    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn cycle_notations(&self) -> Vec<String> {
        self.generators.iter().map(LiteralPermutation::cycle_notation).collect()
    }

    /// All elements of the generated group, or `None` past `limit` elements.
    pub fn group(&self, limit: usize) -> Option<std::collections::HashSet<LiteralPermutation>> {
        group_closure(self.num_vars, &self.generators, limit)
    }
}

/// Runs the whole detection pipeline: encode, search, project, and verify
/// each generator against the formula.
pub fn detect_symmetries(formula: &CnfFormula) -> Result<GeneratorSet, AutomorphismError> {
    detect_symmetries_with(formula, SearchOptions::default())
}

pub fn detect_symmetries_with(
    formula: &CnfFormula,
    options: SearchOptions,
) -> Result<GeneratorSet, AutomorphismError> {
    let g = ColoredGraph::encode(formula);
    let outcome = search_automorphisms_with(&g, options);
    let mut kept: Vec<LiteralPermutation> = Vec::new();
    let mut group = group_closure(formula.num_vars(), &kept, usize::MAX).expect("unbounded");
    for vp in &outcome.generators {
        let lp = project_to_literals(vp, &g)?;
        // swapping identical clauses projects to the identity
        if group.contains(&lp) {
            continue;
        }
        if !formula.is_symmetry(&lp).expect("same variable count") {
            return Err(AutomorphismError::NotASymmetry(lp.cycle_notation()));
        }
        kept.push(lp);
        group = group_closure(formula.num_vars(), &kept, usize::MAX).expect("unbounded");
    }
    Ok(GeneratorSet {
        num_vars: formula.num_vars(),
        generators: kept,
    })
}
