mod common;

use common::{codegree_rule_holds, turan_by_subsets, turan_by_subsets_with};
use sparse_hyper::extremal::{exact_max, SolveStatus, SolverOptions};
use sparse_hyper::freeness::{is_family_free, ConstraintFamily, FreenessConstraint};
use sparse_hyper::DEFAULT_BUDGET;

fn single(v: usize, e: usize) -> ConstraintFamily {
    ConstraintFamily::single(FreenessConstraint::new(v, e).unwrap())
}

#[test]
fn single_constraints_match_subset_enumeration() {
    let opts = SolverOptions::default();
    for (r, max_n) in [(2, 6), (3, 6), (4, 6)] {
        for n in r..=max_n {
            for e in 2..=4 {
                for v in r..=e * r {
                    let res = exact_max(n, r, &single(v, e), opts).unwrap();
                    assert_eq!(res.status, SolveStatus::ProvenOptimal);
                    assert_eq!(
                        res.optimum,
                        turan_by_subsets(n, r, &[(v, e)]),
                        "n={n} r={r} v={v} e={e}"
                    );
                }
            }
        }
    }
}

#[test]
fn constrained_families_match_subset_enumeration() {
    let opts = SolverOptions::default();
    for n in 3..=6 {
        for (e, t) in [(3, 2), (4, 2), (4, 3)] {
            let family = ConstraintFamily::constrained(3, 2, e, t).unwrap();
            let pairs: Vec<(usize, usize)> = family.constraints.iter().map(|c| (c.v, c.e)).collect();
            let expected = turan_by_subsets_with(n, 3, &pairs, |set| codegree_rule_holds(n, 2, e, set));
            let res = exact_max(n, 3, &family, opts).unwrap();
            assert_eq!(res.optimum, expected, "n={n} e={e} t={t}");
            assert!(is_family_free(&res.witness, &family, DEFAULT_BUDGET).unwrap().all_free());
        }
    }
}

#[test]
fn thread_count_is_invisible() {
    let family = single(6, 3);
    let one = exact_max(7, 3, &family, SolverOptions { budget: DEFAULT_BUDGET, threads: 1 }).unwrap();
    let four = exact_max(7, 3, &family, SolverOptions { budget: DEFAULT_BUDGET, threads: 4 }).unwrap();
    assert_eq!(one, four);
}

#[test]
fn exhausted_budget_keeps_a_valid_incumbent() {
    let family = single(5, 3);
    let res = exact_max(7, 3, &family, SolverOptions { budget: 10, threads: 2 }).unwrap();
    assert_eq!(res.status, SolveStatus::BudgetExhausted);
    assert!(is_family_free(&res.witness, &family, DEFAULT_BUDGET).unwrap().all_free());
    assert_eq!(res.witness.edge_count(), res.optimum);
}
