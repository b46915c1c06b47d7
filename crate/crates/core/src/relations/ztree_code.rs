//! Points of the `n`-fold ℤ-jump of `Δ(2)` as ℤ-trees.
//!
//! At level 1 the root has a leaf child at each position holding 1. At
//! higher levels every position holds the tree of the coordinate.

use super::group::GroupDesc;
use super::point::PointValue;
use super::rel::RelDesc;
use crate::error::{Error, Result};
use crate::order_trees::ZTree;

fn level_error(msg: &str) -> Error {
    Error::Precondition(format!("rank/level mismatch: {msg}"))
}

/// Tree coding of a point of `iter(delta2, Z, n)`.
pub fn point_to_ztree(n: usize, x: &PointValue) -> Result<ZTree> {
    if n == 0 {
        return Err(level_error("level must be at least 1"));
    }
    let r = RelDesc::iterate_jump(RelDesc::delta(2), GroupDesc::Int, n)?;
    r.check(x)?;
    build(n, &r.int_lasso(x)?)
}

fn build(n: usize, z: &crate::lasso::ZLasso<PointValue>) -> Result<ZTree> {
    let children = z.try_map(|v| {
        if n == 1 {
            Ok(match v {
                PointValue::Atom(1) => Some(ZTree::leaf()),
                _ => None,
            })
        } else {
            let inner = match v {
                PointValue::LassoZ(c) => c.clone(),
                PointValue::GroupMap { .. } => RelDesc::Identity.int_lasso(v)?,
                other => return Err(Error::Schema(format!("{} at level {n}", other.shape()))),
            };
            Ok(Some(build(n - 1, &inner)?))
        }
    })?;
    Ok(ZTree { children })
}

/// Inverse of [`point_to_ztree`] at level `n`.
pub fn ztree_to_point(t: &ZTree, n: usize) -> Result<PointValue> {
    if n == 0 {
        return Err(level_error("level must be at least 1"));
    }
    let cells = t.children.try_map(|c| match (n, c) {
        (1, None) => Ok(PointValue::Atom(0)),
        (1, Some(s)) if s.is_leaf() => Ok(PointValue::Atom(1)),
        (1, Some(_)) => Err(level_error("tree is deeper than the level")),
        (_, None) => Err(level_error("missing child above level 1")),
        (_, Some(s)) => ztree_to_point(s, n - 1),
    })?;
    Ok(PointValue::LassoZ(cells))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lasso::ZLasso;

    #[test]
    fn level_one_examples() {
        let x = PointValue::LassoZ(ZLasso::with_entries(
            PointValue::Atom(0),
            &[(0, PointValue::Atom(1))],
        ));
        let t = point_to_ztree(1, &x).unwrap();
        assert_eq!(t, ZTree::with_children(&[(0, ZTree::leaf())]));
        let ones = PointValue::LassoZ(ZLasso::constant(PointValue::Atom(1)));
        let t = point_to_ztree(1, &ones).unwrap();
        assert!(t
            .children
            .cells()
            .all(|c| c.as_ref().is_some_and(ZTree::is_leaf)));
        assert_eq!(ztree_to_point(&t, 1).unwrap(), ones);
    }

    #[test]
    fn level_mismatch() {
        let t = ZTree::with_children(&[(0, ZTree::with_children(&[(0, ZTree::leaf())]))]);
        assert!(matches!(ztree_to_point(&t, 1), Err(Error::Precondition(_))));
        assert!(ztree_to_point(&t, 2).is_err());
    }
}
