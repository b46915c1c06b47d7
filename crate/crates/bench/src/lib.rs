//! Shared inputs for the benchmarks.

use ordjump::oracles::{enumerate_terms, enumerate_trees};
use ordjump::{OrderTerm, PointValue, RegTree, RelDesc};

pub fn term_corpus(size: u64) -> Vec<OrderTerm> {
    enumerate_terms(size).expect("size within the enumeration cap")
}

pub fn tree_corpus() -> Vec<RegTree> {
    enumerate_trees(3, 30)
}

/// Points of the ℤ-jump of `E₀` at the given enumeration bound.
pub fn zjump_points(bound: usize) -> (RelDesc, Vec<PointValue>) {
    let r = ordjump::make_relation("jump(e0,Z)").expect("valid relation");
    let pts = r.enumerate(bound);
    (r, pts)
}
