mod common;

use common::oracle::oracle_width;
use cwlab::corpus::labeled_graphs_up_to;
use cwlab::solvers::{cwd_exact, lcwd_exact, CwdBudget};

#[test]
fn dp_matches_oracle_up_to_four_vertices() {
    let budget = CwdBudget::default();
    for g in labeled_graphs_up_to(4) {
        assert_eq!(cwd_exact(&g, &budget).unwrap().value, oracle_width(&g, false), "{g:?}");
        assert_eq!(lcwd_exact(&g, &budget).unwrap().value, oracle_width(&g, true), "{g:?}");
    }
}

