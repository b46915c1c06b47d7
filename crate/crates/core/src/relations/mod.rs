//! Equivalence relations on finitely presented points: base relations,
//! products, powers, sums, Γ-jumps, the Friedman–Stanley and Louveau jumps,
//! and the coding of iterated ℤ-jumps by ℤ-trees.

pub mod group;
pub mod jump;
pub mod lazy;
pub mod parse;
pub mod point;
pub mod rel;
pub mod ztree_code;

pub use group::{GroupDesc, GroupElem};
pub use jump::Freeness;
pub use parse::{make_relation, parse_group};
pub use point::{EqKind, PointValue};
pub use rel::RelDesc;
pub use ztree_code::{point_to_ztree, ztree_to_point};

use crate::error::Result;

/// `R.decide(x, y)` after schema checks.
pub fn rel_decide(r: &RelDesc, x: &PointValue, y: &PointValue) -> Result<bool> {
    r.decide(x, y)
}
