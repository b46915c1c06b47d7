//! Scattered order trees as ℤ-trees of one rank less.
//!
//! A child of rank at most 2 is absorbed into the positions of its parent:
//! it becomes a leaf followed by `label + 1` empty positions, where the
//! label records its shape (leaf 0, ω 1, ω* 2, ζ 3, `n` leaves `n + 3`).
//! A larger child becomes its own encoding followed by one empty position.
//! When the child order has a greatest element, one more leaf marks the end.

use crate::error::{Error, Result};
use crate::lasso::{rotate_left, ZLasso};
use crate::order_terms::{key_of, Key, Term, Word};

use super::regtree::RegTree;
use super::ztree::ZTree;

fn not_image(msg: &str) -> Error {
    Error::NotInImage(msg.to_string())
}

/// Child word of a node as a regular ℤ-word over subtrees.
fn child_word(t: &RegTree) -> Result<Word<RegTree>> {
    let (k, r) = key_of(&t.children.relabel(&RegTree::canon))?;
    if r > 1 {
        return Err(Error::Unsupported(
            "child order is not a suborder of ℤ".into(),
        ));
    }
    let base = |k: &Key<RegTree>| match k {
        Key::Base(a) => a.clone(),
        Key::Class(_) => unreachable!("rank ≤ 1 words have base letters"),
    };
    Ok(match &k {
        Key::Base(a) => Word::Fin(vec![a.clone()]),
        Key::Class(w) => match &**w {
            Word::Fin(v) => Word::Fin(v.iter().map(base).collect()),
            Word::Omega { prefix, period } => Word::Omega {
                prefix: prefix.iter().map(base).collect(),
                period: period.iter().map(base).collect(),
            },
            Word::OmegaStar { period, suffix } => Word::OmegaStar {
                period: period.iter().map(base).collect(),
                suffix: suffix.iter().map(base).collect(),
            },
            Word::Zeta { left, mid, right } => Word::Zeta {
                left: left.iter().map(base).collect(),
                mid: mid.iter().map(base).collect(),
                right: right.iter().map(base).collect(),
            },
        },
    })
}

fn small_label(t: &RegTree) -> Result<usize> {
    if t.is_leaf() {
        return Ok(0);
    }
    Ok(match child_word(t)? {
        Word::Fin(v) => v.len() + 3,
        Word::Omega { .. } => 1,
        Word::OmegaStar { .. } => 2,
        Word::Zeta { .. } => 3,
    })
}

fn small_tree(label: usize) -> RegTree {
    let leaf = || Term::Atom(RegTree::leaf());
    match label {
        0 => RegTree::leaf(),
        1 => RegTree::node(Term::omega(leaf())),
        2 => RegTree::node(Term::omega_star(leaf())),
        3 => RegTree::node(Term::zeta(leaf())).canon(),
        n => RegTree::node(Term::fin((n - 3) as u64)),
    }
}

fn blocks(children: &[RegTree]) -> Result<Vec<Option<ZTree>>> {
    let mut out = Vec::new();
    for c in children {
        if c.rank() <= 2 {
            out.push(Some(ZTree::leaf()));
            out.extend(std::iter::repeat_n(None, small_label(c)? + 1));
        } else {
            out.push(Some(encode(c)?));
            out.push(None);
        }
    }
    Ok(out)
}

fn encode(t: &RegTree) -> Result<ZTree> {
    let marker = || Some(ZTree::leaf());
    let (left, mid, right) = match child_word(t)? {
        Word::Fin(v) => {
            let mut mid = blocks(&v)?;
            mid.push(marker());
            (vec![None], mid, vec![None])
        }
        Word::Omega { prefix, period } => (vec![None], blocks(&prefix)?, blocks(&period)?),
        Word::OmegaStar { period, suffix } => {
            let mut mid = blocks(&suffix)?;
            mid.push(marker());
            (blocks(&period)?, mid, vec![None])
        }
        Word::Zeta { left, mid, right } => (blocks(&left)?, blocks(&mid)?, blocks(&right)?),
    };
    Ok(ZTree {
        children: ZLasso::new(left, mid, right, 0)?.normalized(),
    })
}

/// Encode a scattered order tree of rank at least 3.
pub fn sot_to_ztree(t: &RegTree) -> Result<ZTree> {
    if t.rank() < 3 {
        return Err(Error::Precondition("tree rank must be at least 3".into()));
    }
    encode(&t.canon())
}

fn parse_blocks(cells: &[Option<ZTree>]) -> Result<Vec<RegTree>> {
    let mut out = Vec::new();
    let mut i = 0;
    while i < cells.len() {
        let Some(head) = &cells[i] else {
            return Err(not_image("block does not start with a child"));
        };
        let mut gap = 0;
        while i + 1 + gap < cells.len() && cells[i + 1 + gap].is_none() {
            gap += 1;
        }
        if head.is_leaf() {
            if gap == 0 {
                return Err(not_image("leaf block without gap"));
            }
            out.push(small_tree(gap - 1));
        } else {
            if gap != 1 {
                return Err(not_image("subtree block must have a gap of one"));
            }
            out.push(ztree_to_sot(head)?);
        }
        i += 1 + gap;
    }
    Ok(out)
}

fn word_term(children: Vec<RegTree>) -> Term<RegTree> {
    Term::sum(children.into_iter().map(Term::Atom))
}

/// Decode a ℤ-tree produced by [`sot_to_ztree`]. A leaf decodes to a leaf.
pub fn ztree_to_sot(z: &ZTree) -> Result<RegTree> {
    if z.is_leaf() {
        return Ok(RegTree::leaf());
    }
    let n = z.children.normalized();
    let left_first = n.left.iter().position(Option::is_some);
    let right_first = n.right.iter().position(Option::is_some);
    let mut stream: Vec<Option<ZTree>> = Vec::new();
    let mut left_word = Term::Zero;
    if let Some(j) = left_first {
        left_word = Term::omega_star(word_term(parse_blocks(&rotate_left(&n.left, j))?));
        stream.extend_from_slice(&n.left[j..]);
    }
    stream.extend_from_slice(&n.mid);
    let mut right_word = Term::Zero;
    if let Some(i) = right_first {
        right_word = Term::omega(word_term(parse_blocks(&rotate_left(&n.right, i))?));
        stream.extend_from_slice(&n.right[..i]);
    } else {
        let last = stream
            .iter()
            .rposition(Option::is_some)
            .ok_or_else(|| not_image("missing end marker"))?;
        if !stream[last].as_ref().unwrap().is_leaf() {
            return Err(not_image("end marker must be a leaf"));
        }
        stream.truncate(last);
    }
    if left_first.is_none() {
        let first = stream
            .iter()
            .position(Option::is_some)
            .unwrap_or(stream.len());
        stream.drain(..first);
    }
    let mid_word = word_term(parse_blocks(&stream)?);
    Ok(RegTree::node(Term::sum([left_word, mid_word, right_word])).canon())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(s: &str) -> RegTree {
        RegTree::parse(s).unwrap().canon()
    }

    #[test]
    fn zeta_of_leaf_parents() {
        let tree = t("[z([1])]");
        assert_eq!(tree.rank(), 3);
        let z = sot_to_ztree(&tree).unwrap();
        assert_eq!(z.rank(), 2);
        assert!(z.children.is_fully_periodic());
        assert_eq!(ztree_to_sot(&z).unwrap(), tree);
    }

    #[test]
    fn round_trips() {
        for s in [
            "[[1]+*]",
            "[w([w(*)])]",
            "[ws([3])+*+[z(*)]]",
            "[[[1]]+w([2])]",
            "[z([1]+[[*]])]",
            "[ws(*+[2])+*+[*]]",
        ] {
            let tree = t(s);
            let z = sot_to_ztree(&tree).expect(s);
            assert_eq!(z.rank() + 1, tree.rank(), "{s}");
            assert_eq!(ztree_to_sot(&z).unwrap(), tree, "{s}");
        }
    }

    #[test]
    fn missing_child_and_rank_check() {
        assert_eq!(ztree_to_sot(&ZTree::leaf()).unwrap(), RegTree::leaf());
        assert!(matches!(
            sot_to_ztree(&t("[w(*)]")),
            Err(Error::Precondition(_))
        ));
        assert!(matches!(
            sot_to_ztree(&t("[w([1])+w([1])]")),
            Err(Error::Unsupported(_))
        ));
    }
}
