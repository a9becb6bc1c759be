#![allow(dead_code)]

use std::collections::HashSet;

use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use symbreak::{Assignment, Clause, CnfFormula, Lit, LiteralPermutation, Var};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn theta() -> CnfFormula {
    CnfFormula::from_dimacs_clauses(5, &[&[1, -2, 3, 4, 5], &[2, -3, -4, 5], &[-1, 2, -5]]).unwrap()
}

pub fn theta_prime() -> CnfFormula {
    CnfFormula::from_dimacs_clauses(5, &[&[1, -2, 3, 4, 5], &[2, -3, -4, 5], &[-1, 2, -5], &[-3, 4]])
        .unwrap()
}

pub fn random_clause(rng: &mut impl Rng, n: u32, max_len: usize) -> Clause {
    let len = rng.gen_range(1..=max_len.min(n as usize));
    let mut vars: Vec<u32> = (1..=n).collect();
    vars.shuffle(rng);
    Clause::new(
        vars[..len]
            .iter()
            .map(|&v| Lit::new(Var::new(v), rng.gen_bool(0.5))),
    )
    .unwrap()
}

/// Uniform random clauses of length 1..=3.
pub fn random_cnf(rng: &mut impl Rng, n: u32, max_clauses: usize) -> CnfFormula {
    let m = rng.gen_range(0..=max_clauses);
    let clauses = (0..m).map(|_| random_clause(rng, n, 3)).collect();
    CnfFormula::new(n, clauses).unwrap()
}

pub fn random_permutation(rng: &mut impl Rng, n: u32) -> LiteralPermutation {
    let mut vars: Vec<u32> = (1..=n).collect();
    vars.shuffle(rng);
    let images: Vec<Lit> = vars
        .iter()
        .map(|&v| Lit::new(Var::new(v), rng.gen_bool(0.7)))
        .collect();
    LiteralPermutation::from_var_images(&images).unwrap()
}

/// Random clauses closed under a random permutation, so the formula has at
/// least that symmetry.
pub fn symmetric_cnf(rng: &mut impl Rng, n: u32, seeds: usize) -> CnfFormula {
    let sigma = random_permutation(rng, n);
    let mut clauses = Vec::new();
    let mut seen = HashSet::new();
    for _ in 0..rng.gen_range(1..=seeds) {
        let mut c = random_clause(rng, n, 3);
        while seen.insert(c.clone()) {
            clauses.push(c.clone());
            c = Clause::new(c.lits().iter().map(|&l| sigma.apply(l))).unwrap();
        }
    }
    CnfFormula::new(n, clauses).unwrap()
}

/// Half uniform, half symmetric formulas.
pub fn corpus(seed: u64, count: usize, max_vars: u32) -> Vec<CnfFormula> {
    let mut rng = rng(seed);
    (0..count)
        .map(|i| {
            let n = rng.gen_range(1..=max_vars);
            if i % 2 == 0 {
                random_cnf(&mut rng, n, 2 * n as usize + 2)
            } else {
                symmetric_cnf(&mut rng, n, 3)
            }
        })
        .collect()
}

pub fn is_sat_by_table(f: &CnfFormula) -> bool {
    symbreak::cnf::truth_table(f).unwrap().iter().any(|r| r.1)
}

pub fn models(f: &CnfFormula) -> Vec<Assignment> {
    symbreak::cnf::truth_table(f)
        .unwrap()
        .into_iter()
        .filter(|r| r.1)
        .map(|r| r.0)
        .collect()
}
