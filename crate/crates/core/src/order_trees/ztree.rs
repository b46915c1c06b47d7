use serde::{Deserialize, Serialize};

use crate::lasso::ZLasso;

/// ℤ-tree: the children of a node sit at integer positions given by an
/// eventually periodic map (`None` = no child there).
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct ZTree {
    pub children: ZLasso<Option<ZTree>>,
}

impl Default for ZTree {
    fn default() -> Self {
        ZTree::leaf()
    }
}

impl ZTree {
    pub fn leaf() -> Self {
        ZTree {
            children: ZLasso::constant(None),
        }
    }

    /// Node with the given subtrees at finitely many positions.
    pub fn with_children(entries: &[(i64, ZTree)]) -> Self {
        let cells: Vec<(i64, Option<ZTree>)> =
            entries.iter().map(|(p, t)| (*p, Some(t.clone()))).collect();
        ZTree {
            children: ZLasso::with_entries(None, &cells),
        }
    }

    pub fn is_leaf(&self) -> bool {
        self.children.cells().all(Option::is_none)
    }

    pub fn rank(&self) -> usize {
        1 + self
            .children
            .cells()
            .flatten()
            .map(ZTree::rank)
            .max()
            .unwrap_or(0)
    }

    /// Subtrees canonicalized, then the child map reduced modulo shift.
    pub fn canon(&self) -> ZTree {
        ZTree {
            children: self
                .children
                .map(|c| c.as_ref().map(ZTree::canon))
                .shift_canon(),
        }
    }
}

pub fn ztree_iso(a: &ZTree, b: &ZTree) -> bool {
    a.canon() == b.canon()
}

/// ℤ-tree whose nodes carry labels.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct LabelledZTree {
    pub label: String,
    pub children: ZLasso<Option<LabelledZTree>>,
}

impl LabelledZTree {
    pub fn leaf(label: &str) -> Self {
        LabelledZTree {
            label: label.to_string(),
            children: ZLasso::constant(None),
        }
    }

    pub fn with_children(label: &str, entries: &[(i64, LabelledZTree)]) -> Self {
        let cells: Vec<(i64, Option<LabelledZTree>)> =
            entries.iter().map(|(p, t)| (*p, Some(t.clone()))).collect();
        LabelledZTree {
            label: label.to_string(),
            children: ZLasso::with_entries(None, &cells),
        }
    }

    pub fn canon(&self) -> LabelledZTree {
        LabelledZTree {
            label: self.label.clone(),
            children: self
                .children
                .map(|c| c.as_ref().map(LabelledZTree::canon))
                .shift_canon(),
        }
    }

    pub fn labels(&self, out: &mut std::collections::BTreeSet<String>) {
        out.insert(self.label.clone());
        for c in self.children.cells().flatten() {
            c.labels(out);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shift_invariance() {
        let l = ZTree::leaf();
        let a = ZTree::with_children(&[(0, l.clone()), (3, l.clone())]);
        let b = ZTree::with_children(&[(5, l.clone()), (8, l.clone())]);
        assert!(ztree_iso(&a, &b));
        let c = ZTree::with_children(&[(0, l.clone()), (1, l.clone())]);
        let d = ZTree::with_children(&[(0, l.clone()), (2, l.clone())]);
        assert!(!ztree_iso(&c, &d));
        assert_eq!(a.rank(), 2);
        assert_eq!(l.rank(), 1);
    }
}
