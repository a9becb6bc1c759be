//! Boolean-consistent permutations of the literals `x1, ~x1, ..., xn, ~xn`.

use std::collections::HashSet;
use std::fmt;

use thiserror::Error;

use crate::cnf::{Lit, Var};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PermError {
    #[error("expected {expected} literal images, got {found}")]
    WrongLength { expected: usize, found: usize },
    #[error("literal {0} is outside the permuted range")]
    OutOfRange(Lit),
    #[error("literal {0} is the image of more than one literal")]
    NotBijective(Lit),
    #[error("image of {lit} is {image} but image of {neg} is {neg_image}; complements must map to complements")]
    Inconsistent {
        lit: Lit,
        image: Lit,
        neg: Lit,
        neg_image: Lit,
    },
    #[error("cycle literal `{0}` is zero or out of range")]
    BadCycleLiteral(i32),
    #[error("malformed permutation line `{0}`")]
    MalformedLine(String),
    #[error("permutations act on different variable counts ({0} and {1})")]
    ArityMismatch(u32, u32),
}

/// A bijection on the `2n` literals that commutes with negation.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LiteralPermutation {
    /// Image of every literal, indexed by literal code.
    images: Vec<Lit>,
}

impl LiteralPermutation {
    pub fn identity(num_vars: u32) -> Self {
        LiteralPermutation {
            images: (0..2 * num_vars).map(Lit::from_code).collect(),
        }
    }

    /// Builds a permutation from the image of every literal, indexed by code.
    /// Rejects maps that are not bijective or not Boolean-consistent.
    pub fn from_images(images: Vec<Lit>) -> Result<Self, PermError> {
        if !images.len().is_multiple_of(2) {
            return Err(PermError::WrongLength {
                expected: images.len() + 1,
                found: images.len(),
            });
        }
        let mut seen = vec![false; images.len()];
        for &img in &images {
            let slot = seen
                .get_mut(img.code() as usize)
                .ok_or(PermError::OutOfRange(img))?;
            if *slot {
                return Err(PermError::NotBijective(img));
            }
            *slot = true;
        }
        for (code, &image) in images.iter().enumerate() {
            let lit = Lit::from_code(code as u32);
            let neg = lit.negate();
            let neg_image = images[neg.code() as usize];
            if neg_image != image.negate() {
                return Err(PermError::Inconsistent {
                    lit,
                    image,
                    neg,
                    neg_image,
                });
            }
        }
        Ok(LiteralPermutation { images })
    }

    /// Builds a permutation from the images of the positive literals `x1..xn`;
    /// negative literals follow by consistency.
    pub fn from_var_images(var_images: &[Lit]) -> Result<Self, PermError> {
        let mut images = Vec::with_capacity(2 * var_images.len());
        for &img in var_images {
            images.push(img);
            images.push(img.negate());
        }
        Self::from_images(images)
    }

    /// Builds a permutation from cycles of signed DIMACS literals. Each cycle
    /// also induces its complement cycle, so `[[3, 4]]` is `(x3 x4)(~x3 ~x4)`.
    pub fn from_cycles(num_vars: u32, cycles: &[&[i32]]) -> Result<Self, PermError> {
        let mut images: Vec<Lit> = (0..2 * num_vars).map(Lit::from_code).collect();
        for cycle in cycles {
            let lits = cycle
                .iter()
                .map(|&v| match Lit::from_dimacs(v) {
                    Some(l) if l.var().index() <= num_vars => Ok(l),
                    _ => Err(PermError::BadCycleLiteral(v)),
                })
                .collect::<Result<Vec<_>, _>>()?;
            for (i, &l) in lits.iter().enumerate() {
                let next = lits[(i + 1) % lits.len()];
                images[l.code() as usize] = next;
                images[l.negate().code() as usize] = next.negate();
            }
        }
        Self::from_images(images)
    }

    pub fn num_vars(&self) -> u32 {
        (self.images.len() / 2) as u32
    }

    pub fn apply(&self, lit: Lit) -> Lit {
        self.images[lit.code() as usize]
    }

    /// Image of the positive literal of `var`.
    pub fn var_image(&self, var: Var) -> Lit {
        self.apply(var.positive())
    }

    pub fn images(&self) -> &[Lit] {
        &self.images
    }

    pub fn is_identity(&self) -> bool {
        self.images
            .iter()
            .enumerate()
            .all(|(i, l)| l.code() as usize == i)
    }

    /// `self` followed by `other`: `l -> other(self(l))`.
    pub fn then(&self, other: &Self) -> Result<Self, PermError> {
        if self.num_vars() != other.num_vars() {
            return Err(PermError::ArityMismatch(self.num_vars(), other.num_vars()));
        }
        Ok(LiteralPermutation {
            images: self.images.iter().map(|&l| other.apply(l)).collect(),
        })
    }

    pub fn inverse(&self) -> Self {
        let mut images = self.images.clone();
        for (code, &img) in self.images.iter().enumerate() {
            images[img.code() as usize] = Lit::from_code(code as u32);
        }
        LiteralPermutation { images }
    }

    /// Disjoint cycles, fixed points omitted, each starting at its smallest
    /// literal and ordered by that literal.
    pub fn cycles(&self) -> Vec<Vec<Lit>> {
        let mut visited = vec![false; self.images.len()];
        let mut cycles = Vec::new();
        for start in 0..self.images.len() {
            if visited[start] {
                continue;
            }
            let mut cycle = Vec::new();
            let mut cur = start;
            while !visited[cur] {
                visited[cur] = true;
                cycle.push(Lit::from_code(cur as u32));
                cur = self.images[cur].code() as usize;
            }
            if cycle.len() > 1 {
                cycles.push(cycle);
            }
        }
        cycles
    }

    /// Renders the permutation as a product of disjoint cycles, e.g.
    /// `(x3 x4)(~x3 ~x4)`; the identity renders as `()`.
    pub fn cycle_notation(&self) -> String {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return "()".to_string();
        }
        cycles
            .iter()
            .map(|c| {
                let body: Vec<String> = c.iter().map(|l| l.to_string()).collect();
                format!("({})", body.join(" "))
            })
            .collect()
    }

    /// Machine-readable form: `p` followed by the signed image of `x1..xn`.
    pub fn to_p_line(&self) -> String {
        let mut line = String::from("p");
        for v in 1..=self.num_vars() {
            line.push(' ');
            line.push_str(&self.var_image(Var::new(v)).to_dimacs().to_string());
        }
        line
    }

    /// Inverse of [`LiteralPermutation::to_p_line`].
    pub fn from_p_line(line: &str) -> Result<Self, PermError> {
        let mut parts = line.split_whitespace();
        if parts.next() != Some("p") {
            return Err(PermError::MalformedLine(line.to_string()));
        }
        let values: Vec<i32> = parts
            .map(|t| t.parse().map_err(|_| PermError::MalformedLine(line.to_string())))
            .collect::<Result<_, _>>()?;
        let n = values.len() as u32;
        let lits = values
            .iter()
            .map(|&v| match Lit::from_dimacs(v) {
                Some(l) if l.var().index() <= n => Ok(l),
                _ => Err(PermError::BadCycleLiteral(v)),
            })
            .collect::<Result<Vec<_>, _>>()?;
        Self::from_var_images(&lits)
    }
}

impl fmt::Display for LiteralPermutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.cycle_notation())
    }
}

/// Every element of the group generated by `generators`, by breadth-first
/// closure. Returns `None` if the group has more than `limit` elements.
pub fn group_closure(
    num_vars: u32,
    generators: &[LiteralPermutation],
    limit: usize,
) -> Option<HashSet<LiteralPermutation>> {
    let identity = LiteralPermutation::identity(num_vars);
    let mut elements = HashSet::from([identity.clone()]);
    let mut frontier = vec![identity];
    while let Some(p) = frontier.pop() {
        for g in generators {
            let q = p.then(g).expect("generators share the variable count");
            if elements.insert(q.clone()) {
                if elements.len() > limit {
                    return None;
                }
                frontier.push(q);
            }
        }
    }
    Some(elements)
}
