//! Labelled ℤ-trees as plain ℤ-trees. Each node becomes a node with its
//! children (encoded, at their positions) hanging below position 0 and
//! leaves at the positions `g(label)`, where the sets `{0} ∪ g(i)` are
//! pairwise distinct up to translation.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::lasso::ZLasso;

use super::ztree::{LabelledZTree, ZTree};

pub const MAX_ALPHABET: usize = 64;

/// `g(i) = {1, …, i + 1} ∪ {−(i + 2)}`.
pub fn g_set(i: usize) -> Vec<i64> {
    let i = i as i64;
    let mut out: Vec<i64> = (1..=i + 1).collect();
    out.insert(0, -(i + 2));
    out
}

#[derive(Clone, Debug)]
pub struct GTable {
    alphabet: Vec<String>,
}

impl GTable {
    pub fn new<I: IntoIterator<Item = String>>(labels: I) -> Result<Self> {
        let alphabet: Vec<String> = labels
            .into_iter()
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();
        if alphabet.len() > MAX_ALPHABET {
            return Err(Error::CapExceeded(format!(
                "label alphabet of size {} exceeds {MAX_ALPHABET}",
                alphabet.len()
            )));
        }
        Ok(GTable { alphabet })
    }

    /// Table for the labels occurring in the given trees.
    pub fn for_trees(trees: &[&LabelledZTree]) -> Result<Self> {
        let mut labels = BTreeSet::new();
        for t in trees {
            t.labels(&mut labels);
        }
        GTable::new(labels)
    }

    pub fn positions(&self, label: &str) -> Result<Vec<i64>> {
        let i = self
            .alphabet
            .binary_search_by(|l| l.as_str().cmp(label))
            .map_err(|_| Error::Schema(format!("label {label:?} is not in the alphabet")))?;
        Ok(g_set(i))
    }

    pub fn encode(&self, t: &LabelledZTree) -> Result<ZTree> {
        let spine = ZTree {
            children: t
                .children
                .try_map(|c| c.as_ref().map(|c| self.encode(c)).transpose())?,
        };
        let mut cells = vec![(0, Some(spine))];
        for p in self.positions(&t.label)? {
            cells.push((p, Some(ZTree::leaf())));
        }
        Ok(ZTree {
            children: ZLasso::with_entries(None, &cells),
        })
    }
}

/// Encode with the table built from the labels of `t` itself.
pub fn label_encode(t: &LabelledZTree) -> Result<ZTree> {
    GTable::for_trees(&[t])?.encode(t)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::order_trees::ztree::ztree_iso;

    fn shift_class(set: &[i64]) -> Vec<i64> {
        let m = *set.iter().min().unwrap();
        let mut v: Vec<i64> = set.iter().map(|x| x - m).collect();
        v.sort();
        v
    }

    #[test]
    fn g_sets_are_rigid_and_distinct() {
        let classes: BTreeSet<Vec<i64>> = (0..MAX_ALPHABET)
            .map(|i| {
                let mut s = g_set(i);
                s.push(0);
                shift_class(&s)
            })
            .collect();
        assert_eq!(classes.len(), MAX_ALPHABET);
        assert!(g_set(3).iter().all(|&p| p != 0));
    }

    #[test]
    fn single_node() {
        let t = LabelledZTree::leaf("a");
        let z = label_encode(&t).unwrap();
        let present: Vec<i64> = (-5..5).filter(|&i| z.children.at(i).is_some()).collect();
        assert_eq!(present, vec![-2, 0, 1]);
        assert!(z.children.at(0).as_ref().unwrap().is_leaf());
    }

    #[test]
    fn labels_separate_and_shifts_do_not() {
        let table = GTable::new(["a".to_string(), "b".to_string()]).unwrap();
        let a = table.encode(&LabelledZTree::leaf("a")).unwrap();
        let b = table.encode(&LabelledZTree::leaf("b")).unwrap();
        assert!(!ztree_iso(&a, &b));
        let x = LabelledZTree::with_children(
            "a",
            &[(0, LabelledZTree::leaf("a")), (2, LabelledZTree::leaf("a"))],
        );
        let y = LabelledZTree::with_children(
            "a",
            &[(7, LabelledZTree::leaf("a")), (9, LabelledZTree::leaf("a"))],
        );
        assert!(ztree_iso(
            &table.encode(&x).unwrap(),
            &table.encode(&y).unwrap()
        ));
    }
}
