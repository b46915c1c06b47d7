//! Symbolic workbench for regular scattered linear orders, scattered order
//! trees and ℤ-trees, and Bernoulli jumps of equivalence relations on
//! finitely presented points.

pub mod acceptance;
pub mod error;
pub mod lasso;
pub mod oracles;
pub mod order_terms;
pub mod order_trees;
pub mod reductions;
pub mod relations;

pub use error::{Error, Result};
pub use lasso::{Lasso, ZLasso};
pub use oracles::{
    brute_shift_equiv, enumerate_terms, invariant_signature, window_eval, InvariantSignature,
};
pub use order_terms::{
    canonicalize, complete_hull, derivative, is_complete, iso_terms, parse_term, rank, render_term,
    EndFlags, IsoVerdict, Label, OrderTerm, Term,
};
pub use order_trees::{
    order_to_tree, tree_canon, tree_iso, tree_rank, tree_to_order, RegTree, ZTree,
};
pub use reductions::{
    apply_reduction, catalog_reduction, catalog_reduction_with, verify_reduction, Reduction,
    ReductionParams, VerifyReport,
};
pub use relations::{
    make_relation, point_to_ztree, rel_decide, ztree_to_point, EqKind, Freeness, GroupDesc,
    GroupElem, PointValue, RelDesc,
};
