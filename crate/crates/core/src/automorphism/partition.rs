//! Ordered partitions (colorings) and equitable refinement.

use std::cmp::Ordering;
use std::fmt;

use super::AutomorphismError;
use crate::graph::ColoredGraph;

/// A sequence of disjoint, non-empty vertex cells covering `0..num_vertices`.
/// Cell order is significant.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct OrderedPartition {
    cells: Vec<Vec<usize>>,
}

impl OrderedPartition {
    pub fn new(cells: Vec<Vec<usize>>, num_vertices: usize) -> Result<Self, AutomorphismError> {
        let mut seen = vec![false; num_vertices];
        for cell in &cells {
            if cell.is_empty() {
                return Err(AutomorphismError::InvalidPartition("empty cell".into()));
            }
            for &v in cell {
                match seen.get_mut(v) {
                    None => {
                        return Err(AutomorphismError::InvalidPartition(format!(
                            "vertex {v} out of range"
                        )))
                    }
                    Some(true) => {
                        return Err(AutomorphismError::InvalidPartition(format!(
                            "vertex {v} in two cells"
                        )))
                    }
                    Some(s) => *s = true,
                }
            }
        }
        if let Some(v) = seen.iter().position(|s| !s) {
            return Err(AutomorphismError::InvalidPartition(format!(
                "vertex {v} not covered"
            )));
        }
        Ok(OrderedPartition { cells })
    }

    /// The unit partition: one cell holding every vertex.
    pub fn unit(num_vertices: usize) -> Self {
        let cells = if num_vertices == 0 {
            Vec::new()
        } else {
            vec![(0..num_vertices).collect()]
        };
        OrderedPartition { cells }
    }

    pub fn cells(&self) -> &[Vec<usize>] {
        &self.cells
    }

    pub fn num_vertices(&self) -> usize {
        self.cells.iter().map(Vec::len).sum()
    }

    pub fn is_discrete(&self) -> bool {
        self.cells.iter().all(|c| c.len() == 1)
    }

    /// Index of the first non-singleton cell.
    pub fn select_target_cell(&self) -> Result<usize, AutomorphismError> {
        self.cells
            .iter()
            .position(|c| c.len() > 1)
            .ok_or(AutomorphismError::DiscretePartition)
    }

    /// Splits `v` off its cell, placing `{v}` directly in front of the rest.
    pub fn individualize(&self, v: usize) -> Result<Self, AutomorphismError> {
        let idx = self
            .cells
            .iter()
            .position(|c| c.contains(&v))
            .ok_or(AutomorphismError::NotIndividualizable(v))?;
        if self.cells[idx].len() < 2 {
            return Err(AutomorphismError::NotIndividualizable(v));
        }
        let rest: Vec<usize> = self.cells[idx].iter().copied().filter(|&u| u != v).collect();
        let mut cells = Vec::with_capacity(self.cells.len() + 1);
        cells.extend_from_slice(&self.cells[..idx]);
        cells.push(vec![v]);
        cells.push(rest);
        cells.extend_from_slice(&self.cells[idx + 1..]);
        Ok(OrderedPartition { cells })
    }

    /// For a discrete partition, the vertex at each position.
    pub fn labeling(&self) -> Option<Vec<usize>> {
        self.is_discrete()
            .then(|| self.cells.iter().map(|c| c[0]).collect())
    }

    /// `true` if every cell of `self` lies inside some cell of `coarser`.
    pub fn is_finer_than(&self, coarser: &OrderedPartition) -> bool {
        let mut owner = vec![usize::MAX; coarser.num_vertices()];
        for (i, cell) in coarser.cells.iter().enumerate() {
            for &v in cell {
                owner[v] = i;
            }
        }
        self.cells
            .iter()
            .all(|cell| cell.iter().all(|&v| owner.get(v) == owner.get(cell[0])))
    }

    /// `true` if every vertex of a cell has the same number of neighbours in
    /// each cell.
    pub fn is_equitable(&self, g: &ColoredGraph) -> bool {
        let cell_of = self.cell_index();
        self.cells.iter().all(|cell| {
            let first = count_vector(g, &cell_of, cell[0]);
            cell.iter().all(|&v| count_vector(g, &cell_of, v) == first)
        })
    }

    /// Cells as a sorted family of sorted sets, ignoring cell order.
    pub fn cell_family(&self) -> Vec<Vec<usize>> {
        let mut family: Vec<Vec<usize>> = self
            .cells
            .iter()
            .map(|c| {
                let mut c = c.clone();
                c.sort_unstable();
                c
            })
            .collect();
        family.sort();
        family
    }

    fn cell_index(&self) -> Vec<usize> {
        let mut cell_of = vec![0; self.num_vertices()];
        for (i, cell) in self.cells.iter().enumerate() {
            for &v in cell {
                cell_of[v] = i;
            }
        }
        cell_of
    }
}

impl fmt::Display for OrderedPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, cell) in self.cells.iter().enumerate() {
            if i > 0 {
                write!(f, " |")?;
            }
            for v in cell {
                write!(f, " {v}")?;
            }
        }
        write!(f, " ]")
    }
}

/// Number of neighbours of `v` in each cell, as sorted `(cell, count)` pairs
/// with zero counts left out.
fn count_vector(g: &ColoredGraph, cell_of: &[usize], v: usize) -> Vec<(usize, u32)> {
    let mut cells: Vec<usize> = g.neighbors(v).iter().map(|&u| cell_of[u]).collect();
    cells.sort_unstable();
    let mut counts: Vec<(usize, u32)> = Vec::new();
    for c in cells {
        match counts.last_mut() {
            Some((last, n)) if *last == c => *n += 1,
            _ => counts.push((c, 1)),
        }
    }
    counts
}

/// Lexicographic order of the dense count vectors the sparse forms stand for.
fn cmp_count_vectors(a: &[(usize, u32)], b: &[(usize, u32)]) -> Ordering {
    let (mut a, mut b) = (a.iter(), b.iter());
    loop {
        match (a.next(), b.next()) {
            (None, None) => return Ordering::Equal,
            (Some(_), None) => return Ordering::Greater,
            (None, Some(_)) => return Ordering::Less,
            (Some(&(ca, na)), Some(&(cb, nb))) => match ca.cmp(&cb) {
                // the side with the earlier nonzero entry is larger there
                Ordering::Less => return Ordering::Greater,
                Ordering::Greater => return Ordering::Less,
                Ordering::Equal => match na.cmp(&nb) {
                    Ordering::Equal => continue,
                    other => return other,
                },
            },
        }
    }
}

/// Coarsest equitable refinement of `p`.
///
/// Each round splits every cell by its members' neighbour counts into the
/// cells of the previous round; fragments replace the cell in place, ordered by
/// ascending count vector. Rounds repeat until nothing splits.
pub fn refine(g: &ColoredGraph, p: &OrderedPartition) -> OrderedPartition {
    let mut cells = p.cells.clone();
    loop {
        let cell_of = OrderedPartition { cells: cells.clone() }.cell_index();
        let mut next = Vec::with_capacity(cells.len());
        let mut split = false;
        for cell in &cells {
            if cell.len() == 1 {
                next.push(cell.clone());
                continue;
            }
            let mut keyed: Vec<(Vec<(usize, u32)>, usize)> = cell
                .iter()
                .map(|&v| (count_vector(g, &cell_of, v), v))
                .collect();
            // stable, so members keep their relative order within a fragment
            keyed.sort_by(|x, y| cmp_count_vectors(&x.0, &y.0));
            let mut fragment = vec![keyed[0].1];
            for w in keyed.windows(2) {
                if cmp_count_vectors(&w[0].0, &w[1].0) != Ordering::Equal {
                    next.push(std::mem::take(&mut fragment));
                    split = true;
                }
                fragment.push(w[1].1);
            }
            next.push(fragment);
        }
        cells = next;
        if !split {
            return OrderedPartition { cells };
        }
    }
}
