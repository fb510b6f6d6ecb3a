//! Explicit expressions for `G(n)`, `H(n)` and `Hprime(n)`: width-3 terms and
//! linear width-4 terms, each evaluating name-for-name to the generator.
//!
//! Label roles in the width-3 terms: 1 = finished `x` vertices, 2 = `y`
//! vertices of groups already joined, 3 = `y` vertices of the group being
//! attached. The linear terms add label 4 for the group under construction
//! and use 3 for the single arriving vertex.

use crate::constructions::{hub, x, y, ycopy, GROUP_SIZE};
use crate::error::{Error, Result};
use crate::term::CwTerm;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Family {
    G,
    H,
    HPrime,
}

impl Family {
    fn group(self, i: usize) -> Vec<String> {
        match self {
            Family::G => vec![y(i)],
            Family::H | Family::HPrime => (1..=GROUP_SIZE).map(|c| ycopy(i, c)).collect(),
        }
    }

    fn clique_groups(self) -> bool {
        self == Family::HPrime
    }
}

fn check(n: usize) -> Result<()> {
    if n < 2 {
        return Err(Error::SizeOutOfRange(n));
    }
    Ok(())
}

fn group_piece(family: Family, i: usize) -> CwTerm {
    let mut members = family.group(i).into_iter();
    let mut piece = CwTerm::create(3, members.next().unwrap());
    for name in members {
        let arriving = CwTerm::create(1, name);
        piece = if family.clique_groups() {
            CwTerm::relabel(1, 3, CwTerm::add_edges(1, 3, CwTerm::union(piece, arriving)))
        } else {
            CwTerm::relabel(1, 3, CwTerm::union(piece, arriving))
        };
    }
    CwTerm::add_edges(1, 3, CwTerm::union(piece, CwTerm::create(1, x(i))))
}

fn build(family: Family, n: usize) -> Result<CwTerm> {
    check(n)?;
    let mut acc = match family {
        Family::HPrime => Some(CwTerm::create(2, hub())),
        _ => None,
    };
    for i in 1..=n {
        let piece = group_piece(family, i);
        let joined = match acc {
            None => piece,
            Some(prev) => CwTerm::add_edges(2, 3, CwTerm::union(prev, piece)),
        };
        acc = Some(CwTerm::relabel(3, 2, joined));
    }
    Ok(acc.unwrap())
}

fn build_linear(family: Family, n: usize) -> Result<CwTerm> {
    check(n)?;
    let mut acc = match family {
        Family::HPrime => Some(CwTerm::create(2, hub())),
        _ => None,
    };
    let attach = |acc: Option<CwTerm>, name: String| match acc {
        None => CwTerm::create(3, name),
        Some(prev) => CwTerm::union(prev, CwTerm::create(3, name)),
    };
    for i in 1..=n {
        for name in family.group(i) {
            let mut t = CwTerm::add_edges(2, 3, attach(acc.take(), name));
            if family.clique_groups() {
                t = CwTerm::add_edges(3, 4, t);
            }
            acc = Some(CwTerm::relabel(3, 4, t));
        }
        let t = CwTerm::add_edges(3, 4, attach(acc.take(), x(i)));
        acc = Some(CwTerm::relabel(4, 2, CwTerm::relabel(3, 1, t)));
    }
    Ok(acc.unwrap())
}

pub fn build_term_g(n: usize) -> Result<CwTerm> {
    build(Family::G, n)
}

pub fn build_term_h(n: usize) -> Result<CwTerm> {
    build(Family::H, n)
}

pub fn build_term_hprime(n: usize) -> Result<CwTerm> {
    build(Family::HPrime, n)
}

pub fn build_linear_term_g(n: usize) -> Result<CwTerm> {
    build_linear(Family::G, n)
}

pub fn build_linear_term_h(n: usize) -> Result<CwTerm> {
    build_linear(Family::H, n)
}

pub fn build_linear_term_hprime(n: usize) -> Result<CwTerm> {
    build_linear(Family::HPrime, n)
}
