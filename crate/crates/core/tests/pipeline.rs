mod common;

use symbreak::automorphism::{search_automorphisms_with, SearchOptions};
use symbreak::cnf::{parse_dimacs, write_dimacs};
use symbreak::dpll::{compare_runs, count_models, solve_all};
use symbreak::{conjoin, detect_symmetries, lex_leader_sbp, pairwise_sbp, solve, ColoredGraph, Var};

#[test]
fn running_example_end_to_end() {
    let text = "c running example\np cnf 5 3\n1 -2 3 4 5 0\n2 -3 -4 5 0\n-1 2 -5 0\n";
    let f = parse_dimacs(text).unwrap();
    assert_eq!(f, common::theta());

    let g = ColoredGraph::encode(&f);
    assert_eq!((g.num_vertices(), g.num_edges()), (13, 17));

    let gens = detect_symmetries(&f).unwrap();
    let sbp = lex_leader_sbp(&gens, 5).unwrap();
    let augmented = conjoin(&f, &sbp).unwrap();
    assert_eq!(
        write_dimacs(&augmented),
        "p cnf 5 4\n1 -2 3 4 5 0\n2 -3 -4 5 0\n-1 2 -5 0\n-3 4 0\n"
    );
    assert_eq!(conjoin(&f, &pairwise_sbp(&gens).unwrap()).unwrap(), augmented);

    let report = compare_runs(&f, &sbp).unwrap();
    assert!(report.status_equal);
    assert_eq!((report.original.explored, report.augmented.explored), (32, 24));
    let vars: Vec<Var> = (1..=5).map(Var::new).collect();
    assert_eq!(report.original.model_count, count_models(&f, &vars).unwrap());
    assert!(solve(&augmented).status.is_sat());
}

#[test]
fn full_search_shrinks_with_predicate() {
    let plain = solve_all(&common::theta()).stats;
    let broken = solve_all(&common::theta_prime()).stats;
    assert!(broken.decisions + broken.leaves_visited < plain.decisions + plain.leaves_visited);
}

#[test]
fn star_and_all_pairs_comparison_agree_on_groups() {
    for f in common::corpus(21, 150, 4) {
        let g = ColoredGraph::encode(&f);
        let star = search_automorphisms_with(&g, SearchOptions::default());
        let all = search_automorphisms_with(&g, SearchOptions { compare_all_leaves: true });
        assert_eq!(star.leaves, all.leaves);
        let order = |gens: &[symbreak::automorphism::VertexPermutation]| {
            let mut seen = std::collections::HashSet::from([symbreak::automorphism::VertexPermutation::identity(g.num_vertices())]);
            let mut frontier: Vec<_> = seen.iter().cloned().collect();
            while let Some(p) = frontier.pop() {
                for q in gens {
                    let r = p.then(q);
                    if seen.insert(r.clone()) {
                        frontier.push(r);
                    }
                }
            }
            seen.len()
        };
        assert_eq!(order(&star.generators), order(&all.generators), "{f:?}");
    }
}

#[test]
fn detection_is_deterministic() {
    for f in common::corpus(22, 100, 5) {
        assert_eq!(detect_symmetries(&f).unwrap(), detect_symmetries(&f).unwrap());
    }
}
