//! Regular scattered order trees, ℤ-trees, and the encodings between
//! orders, order trees and ℤ-trees.

pub mod encode;
pub mod label;
pub mod regtree;
pub mod sot;
pub mod ztree;

pub use encode::{
    decode_order, order_to_tree, separator_singletons_exact, tree_to_order, tree_to_order_marked,
};
pub use label::{g_set, label_encode, GTable};
pub use regtree::{tree_canon, tree_iso, tree_rank, RegTree};
pub use sot::{sot_to_ztree, ztree_to_sot};
pub use ztree::{ztree_iso, LabelledZTree, ZTree};
