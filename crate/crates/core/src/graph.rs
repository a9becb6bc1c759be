//! The clause/literal graph of a CNF formula.
//!
//! Vertex numbering: the positive literal of variable `i` is vertex `2(i-1)`,
//! its negation `2(i-1)+1` (the literal code), and clause `j` (0-based) is
//! vertex `2n + j`. Every clause vertex is joined to its literals and every
//! literal to its complement.

use std::fmt::Write as _;

use thiserror::Error;

use crate::cnf::{CnfFormula, Lit};
use crate::automorphism::OrderedPartition;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("vertex {0} is out of range")]
    VertexOutOfRange(usize),
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("duplicate edge at vertex {0}")]
    DuplicateEdge(usize),
    #[error("fewer vertices than literal vertices")]
    TooFewVertices,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum VertexKind {
    Literal,
    Clause,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ColoredGraph {
    num_vars: u32,
    num_clauses: usize,
    /// Sorted neighbour lists.
    adjacency: Vec<Vec<usize>>,
}

impl ColoredGraph {
    pub fn encode(formula: &CnfFormula) -> Self {
        let literal_vertices = 2 * formula.num_vars() as usize;
        let num_vertices = literal_vertices + formula.num_clauses();
        let mut adjacency = vec![Vec::new(); num_vertices];
        for v in (0..literal_vertices).step_by(2) {
            adjacency[v].push(v + 1);
            adjacency[v + 1].push(v);
        }
        for (j, clause) in formula.clauses().iter().enumerate() {
            let c = literal_vertices + j;
            for lit in clause.lits() {
                let l = lit.code() as usize;
                adjacency[c].push(l);
                adjacency[l].push(c);
            }
        }
        for list in &mut adjacency {
            list.sort_unstable();
        }
        ColoredGraph {
            num_vars: formula.num_vars(),
            num_clauses: formula.num_clauses(),
            adjacency,
        }
    }

    /// A graph given by raw edges. The first `2 * num_vars` vertices are
    /// literal vertices, the rest clause vertices.
    pub fn from_edges(
        num_vars: u32,
        num_vertices: usize,
        edges: &[(usize, usize)],
    ) -> Result<Self, GraphError> {
        let literal_vertices = 2 * num_vars as usize;
        if literal_vertices > num_vertices {
            return Err(GraphError::TooFewVertices);
        }
        let mut adjacency = vec![Vec::new(); num_vertices];
        for &(u, v) in edges {
            if u >= num_vertices || v >= num_vertices {
                return Err(GraphError::VertexOutOfRange(u.max(v)));
            }
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            adjacency[u].push(v);
            adjacency[v].push(u);
        }
        for (u, list) in adjacency.iter_mut().enumerate() {
            list.sort_unstable();
            if list.windows(2).any(|w| w[0] == w[1]) {
                return Err(GraphError::DuplicateEdge(u));
            }
        }
        Ok(ColoredGraph {
            num_vars,
            num_clauses: num_vertices - literal_vertices,
            adjacency,
        })
    }

    pub fn num_vertices(&self) -> usize {
        self.adjacency.len()
    }

    pub fn num_vars(&self) -> u32 {
        self.num_vars
    }

    pub fn num_clauses(&self) -> usize {
        self.num_clauses
    }

    pub fn num_literal_vertices(&self) -> usize {
        2 * self.num_vars as usize
    }

    pub fn kind(&self, v: usize) -> VertexKind {
        if v < self.num_literal_vertices() {
            VertexKind::Literal
        } else {
            VertexKind::Clause
        }
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adjacency[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adjacency[v].len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adjacency[u].binary_search(&v).is_ok()
    }

    /// Each undirected edge once, as `(low, high)`, in ascending order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut edges = Vec::new();
        for (u, list) in self.adjacency.iter().enumerate() {
            for &v in list {
                if u < v {
                    edges.push((u, v));
                }
            }
        }
        edges
    }

    pub fn num_edges(&self) -> usize {
        self.adjacency.iter().map(Vec::len).sum::<usize>() / 2
    }

    /// Two cells in order: all literal vertices, then all clause vertices.
    /// An empty cell is omitted.
    pub fn initial_coloring(&self) -> OrderedPartition {
        let literals: Vec<usize> = (0..self.num_literal_vertices()).collect();
        let clauses: Vec<usize> = (self.num_literal_vertices()..self.num_vertices()).collect();
        let cells = [literals, clauses]
            .into_iter()
            .filter(|c| !c.is_empty())
            .collect();
        OrderedPartition::new(cells, self.num_vertices()).expect("two-cell split covers all vertices")
    }

    /// `x3`, `~x3` or `c2` (clauses numbered from 1).
    pub fn vertex_label(&self, v: usize) -> String {
        match self.kind(v) {
            VertexKind::Literal => Lit::from_code(v as u32).to_string(),
            VertexKind::Clause => format!("c{}", v - self.num_literal_vertices() + 1),
        }
    }

    pub fn to_dot(&self) -> String {
        let mut out = String::from("graph cnf {\n");
        for v in 0..self.num_vertices() {
            let shape = match self.kind(v) {
                VertexKind::Literal => "ellipse",
                VertexKind::Clause => "box",
            };
            writeln!(out, "  \"{}\" [shape={shape}];", self.vertex_label(v)).unwrap();
        }
        for (u, v) in self.edges() {
            writeln!(
                out,
                "  \"{}\" -- \"{}\";",
                self.vertex_label(u),
                self.vertex_label(v)
            )
            .unwrap();
        }
        out.push_str("}\n");
        out
    }

    /// One line per vertex: `label: neighbour neighbour ...`.
    pub fn to_adjacency_text(&self) -> String {
        let mut out = String::new();
        for v in 0..self.num_vertices() {
            let neighbors: Vec<String> = self.adjacency[v]
                .iter()
                .map(|&u| self.vertex_label(u))
                .collect();
            writeln!(out, "{}: {}", self.vertex_label(v), neighbors.join(" ")).unwrap();
        }
        out
    }
}
