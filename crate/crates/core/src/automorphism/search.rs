//! Individualization-refinement search for graph automorphisms.

use std::collections::{HashMap, HashSet};

use super::partition::{refine, OrderedPartition};
use super::AutomorphismError;
use crate::graph::ColoredGraph;

/// A kind-preserving bijection on the vertices of a [`ColoredGraph`].
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VertexPermutation {
    images: Vec<usize>,
}

impl VertexPermutation {
    pub fn new(images: Vec<usize>, g: &ColoredGraph) -> Result<Self, AutomorphismError> {
        if images.len() != g.num_vertices() {
            return Err(AutomorphismError::NotBijective);
        }
        let mut seen = vec![false; images.len()];
        for (v, &w) in images.iter().enumerate() {
            match seen.get_mut(w) {
                Some(s) if !*s => *s = true,
                _ => return Err(AutomorphismError::NotBijective),
            }
            if g.kind(v) != g.kind(w) {
                return Err(AutomorphismError::NotKindPreserving(v));
            }
        }
        Ok(VertexPermutation { images })
    }

    pub fn identity(num_vertices: usize) -> Self {
        VertexPermutation {
            images: (0..num_vertices).collect(),
        }
    }

    pub fn apply(&self, v: usize) -> usize {
        self.images[v]
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &v)| i == v)
    }

    /// `self` followed by `other`.
    pub fn then(&self, other: &Self) -> Self {
        VertexPermutation {
            images: self.images.iter().map(|&v| other.images[v]).collect(),
        }
    }

    /// Edge-preserving check; kind preservation is guaranteed by construction.
    pub fn is_automorphism_of(&self, g: &ColoredGraph) -> bool {
        g.edges()
            .iter()
            .all(|&(u, v)| g.has_edge(self.images[u], self.images[v]))
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct SearchOptions {
    /// Compare every pair of leaves instead of each leaf against the first.
    /// Quadratic in the number of leaves; meant for cross-checking.
    pub compare_all_leaves: bool,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SearchOutcome {
    /// Irredundant generators, in discovery order.
    pub generators: Vec<VertexPermutation>,
    /// Distinct non-identity automorphisms seen at leaves.
    pub automorphisms_found: usize,
    pub nodes: usize,
    pub leaves: usize,
}

/// Automorphism generators of `g`, identity excluded.
pub fn search_automorphisms(g: &ColoredGraph) -> Vec<VertexPermutation> {
    search_automorphisms_with(g, SearchOptions::default()).generators
}

/// Depth-first individualization-refinement over the whole search tree.
///
/// Leaves are discrete colorings; two leaves with identical relabeled graphs
/// yield the automorphism taking one labeling to the other. The distinct
/// automorphisms found are reduced to a set where no member lies in the group
/// generated by the earlier ones.
pub fn search_automorphisms_with(g: &ColoredGraph, options: SearchOptions) -> SearchOutcome {
    let mut search = Search {
        g,
        options,
        first_leaf: None,
        leaves_by_graph: HashMap::new(),
        found: Vec::new(),
        seen: HashSet::new(),
        nodes: 0,
        leaves: 0,
    };
    let root = refine(g, &g.initial_coloring());
    search.descend(root);

    let automorphisms_found = search.found.len();
    let generators = irredundant(g.num_vertices(), search.found);
    SearchOutcome {
        generators,
        automorphisms_found,
        nodes: search.nodes,
        leaves: search.leaves,
    }
}

struct Leaf {
    labeling: Vec<usize>,
    relabeled: Vec<(usize, usize)>,
}

struct Search<'g> {
    g: &'g ColoredGraph,
    options: SearchOptions,
    first_leaf: Option<Leaf>,
    leaves_by_graph: HashMap<Vec<(usize, usize)>, Vec<Vec<usize>>>,
    found: Vec<VertexPermutation>,
    seen: HashSet<VertexPermutation>,
    nodes: usize,
    leaves: usize,
}

impl Search<'_> {
    fn descend(&mut self, p: OrderedPartition) {
        self.nodes += 1;
        if let Some(labeling) = p.labeling() {
            self.leaves += 1;
            self.visit_leaf(labeling);
            return;
        }
        let target = p.select_target_cell().expect("not discrete");
        for &v in &p.cells()[target] {
            let child = p.individualize(v).expect("target cell is non-singleton");
            self.descend(refine(self.g, &child));
        }
    }

    fn visit_leaf(&mut self, labeling: Vec<usize>) {
        let relabeled = relabel(self.g, &labeling);
        if self.options.compare_all_leaves {
            let class = self.leaves_by_graph.entry(relabeled).or_default();
            let earlier = class.clone();
            class.push(labeling.clone());
            for other in earlier {
                self.record(&other, &labeling);
                self.record(&labeling, &other);
            }
            return;
        }
        match &self.first_leaf {
            None => {
                self.first_leaf = Some(Leaf {
                    labeling,
                    relabeled,
                })
            }
            Some(first) if first.relabeled == relabeled => {
                let from = first.labeling.clone();
                self.record(&from, &labeling);
            }
            Some(_) => {}
        }
    }

    /// Records the map sending `from[k]` to `to[k]` for every position `k`.
    fn record(&mut self, from: &[usize], to: &[usize]) {
        let mut images = vec![0; from.len()];
        for (&u, &v) in from.iter().zip(to) {
            images[u] = v;
        }
        let perm = VertexPermutation { images };
        if !perm.is_identity() && self.seen.insert(perm.clone()) {
            self.found.push(perm);
        }
    }
}

/// Edges renamed by position in the labeling, sorted.
fn relabel(g: &ColoredGraph, labeling: &[usize]) -> Vec<(usize, usize)> {
    let mut position = vec![0; labeling.len()];
    for (k, &v) in labeling.iter().enumerate() {
        position[v] = k;
    }
    let mut edges: Vec<(usize, usize)> = g
        .edges()
        .into_iter()
        .map(|(u, v)| {
            let (a, b) = (position[u], position[v]);
            (a.min(b), a.max(b))
        })
        .collect();
    edges.sort_unstable();
    edges
}

/// Keeps each permutation that is not already generated by the ones kept
/// before it.
fn irredundant(num_vertices: usize, candidates: Vec<VertexPermutation>) -> Vec<VertexPermutation> {
    let mut generators: Vec<VertexPermutation> = Vec::new();
    let mut group: HashSet<VertexPermutation> = HashSet::from([VertexPermutation::identity(num_vertices)]);
    for candidate in candidates {
        if group.contains(&candidate) {
            continue;
        }
        generators.push(candidate);
        group = closure(num_vertices, &generators);
    }
    generators
}

fn closure(num_vertices: usize, generators: &[VertexPermutation]) -> HashSet<VertexPermutation> {
    let identity = VertexPermutation::identity(num_vertices);
    let mut elements = HashSet::from([identity.clone()]);
    let mut frontier = vec![identity];
    while let Some(p) = frontier.pop() {
        for g in generators {
            let q = p.then(g);
            if elements.insert(q.clone()) {
                frontier.push(q);
            }
        }
    }
    elements
}
