//! Exact width solvers for small graphs.

pub mod cliquewidth;
pub mod cograph;
pub mod gf2;
pub mod rankwidth;

pub use cliquewidth::{
    cwd_exact, cwd_leq, lcwd_exact, lcwd_leq, CwdBudget, Decision, Mode, WidthOutcome,
};
pub use cograph::is_cograph;
pub use gf2::{gf2_rank, Gf2Matrix};
pub use rankwidth::{cut_rank, rank_width_exact, BranchDecomposition, RankWidth};
