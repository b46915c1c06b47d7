use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::order_terms::{canonicalize, render_with, Parser, Term};

/// Regular scattered order tree: the children of a node form a regular word
/// of subtrees. A leaf has the empty word. `Fin(n)` in a child word stands
/// for `n` leaves.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default, Serialize, Deserialize)]
pub struct RegTree {
    pub children: Box<Term<RegTree>>,
}

impl RegTree {
    pub fn leaf() -> Self {
        RegTree::default()
    }

    pub fn node(children: Term<RegTree>) -> Self {
        RegTree {
            children: Box::new(children),
        }
    }

    pub fn is_leaf(&self) -> bool {
        self.children.is_empty()
    }

    /// Rank with leaves at 1.
    pub fn rank(&self) -> usize {
        if self.is_leaf() {
            return 1;
        }
        let mut best = 0;
        if self.children.contains_fin() {
            best = 1;
        }
        for c in self.children.atoms() {
            best = best.max(c.rank());
        }
        1 + best
    }

    /// Subtrees canonicalized bottom-up, then the child word.
    pub fn canon(&self) -> RegTree {
        if self.is_leaf() {
            return RegTree::leaf();
        }
        RegTree::node(canonicalize(&self.children.relabel(&RegTree::canon)))
    }

    /// Text form: `*` is a leaf, `[w]` a node whose child word is `w`;
    /// integers in `w` count leaves.
    pub fn render(&self) -> String {
        if self.is_leaf() {
            return "*".into();
        }
        format!(
            "[{}]",
            render_with(&self.children, &|t: &RegTree| t.render())
        )
    }

    pub fn parse(text: &str) -> Result<RegTree> {
        let mut p = Parser::new(text);
        let t = parse_tree(&mut p)?;
        if !p.at_end() {
            return p.err("trailing input");
        }
        Ok(t)
    }
}

fn tree_atom(p: &mut Parser<'_>) -> Option<Result<RegTree>> {
    match p.peek() {
        Some(b'*') | Some(b'[') => Some(parse_tree(p)),
        _ => None,
    }
}

fn parse_tree(p: &mut Parser<'_>) -> Result<RegTree> {
    if p.eat("*") {
        return Ok(RegTree::leaf());
    }
    p.expect("[")?;
    let children = p.term(&tree_atom)?;
    p.expect("]")?;
    Ok(RegTree {
        children: Box::new(children),
    })
}

pub fn tree_rank(t: &RegTree) -> usize {
    t.rank()
}

pub fn tree_canon(t: &RegTree) -> RegTree {
    t.canon()
}

pub fn tree_iso(a: &RegTree, b: &RegTree) -> bool {
    a.canon() == b.canon()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ranks() {
        assert_eq!(RegTree::leaf().rank(), 1);
        let w = RegTree::parse("[w(*)]").unwrap();
        assert_eq!(w.rank(), 2);
        let mixed = RegTree::parse("[[2]+*]").unwrap();
        assert_eq!(mixed.rank(), 3);
    }

    #[test]
    fn canon_absorbs() {
        let a = RegTree::parse("[*+w(*)]").unwrap();
        assert_eq!(a.canon(), RegTree::parse("[w(*)]").unwrap());
        let b = RegTree::parse("[[1]+[1]]").unwrap();
        assert_eq!(b.canon().render(), "[[1]+[1]]");
        assert_eq!(RegTree::parse("[0]").unwrap().canon(), RegTree::leaf());
    }

    #[test]
    fn text_round_trip() {
        for s in ["*", "[3]", "[w([2])+ws(*)]", "[z([1]+*)]"] {
            let t = RegTree::parse(s).unwrap();
            assert_eq!(RegTree::parse(&t.render()).unwrap(), t);
        }
    }
}
