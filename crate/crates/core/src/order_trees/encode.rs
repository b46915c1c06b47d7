//! Orders to trees and back.
//!
//! `order_to_tree` builds the tree of condensation classes. `tree_to_order`
//! encodes a tree as an order by writing each child's (doubled) encoding
//! followed by a separator `z(1)+1+z(1)`; doubling keeps every class inside
//! a child encoding of even size, so at any depth the separator middles are
//! the only classes of the minimal size. `decode_order` inverts the encoding.

use std::collections::VecDeque;

use crate::error::{Error, Result};
use crate::order_terms::{
    complete_hull, condense, key_of, lift, Key, Label, OrderTerm, Term, Word,
};

use super::regtree::RegTree;

fn tree_of_key<A: crate::order_terms::Letter>(k: &Key<A>) -> RegTree {
    match k {
        Key::Base(_) => RegTree::leaf(),
        Key::Class(w) => RegTree::node(w.to_term(&|l| Term::Atom(tree_of_key(l)))).canon(),
    }
}

/// Tree whose level-`i` nodes are the classes of the `i`-th condensation.
/// Every leaf sits at depth `rank(L)`, so the tree has rank `rank(L) + 1`.
pub fn order_to_tree(l: &OrderTerm) -> Result<RegTree> {
    let (k, _) = key_of(l)?;
    Ok(tree_of_key(&k).canon())
}

pub const SEPARATOR_MARK: &str = "sep";

fn separator(complete: bool, mid: Label) -> OrderTerm {
    let z = || Term::zeta(Term::unit());
    let m = Term::Atom(mid);
    if complete {
        Term::sum([Term::unit(), z(), m, z(), Term::unit()])
    } else {
        Term::sum([z(), m, z()])
    }
}

/// Encoding with separator middles labelled [`SEPARATOR_MARK`]. In the
/// complete variant every unit has both endpoints, so a limit point is added
/// wherever a run of units has no supremum or infimum in the child word.
pub fn tree_to_order_marked(t: &RegTree, complete: bool) -> OrderTerm {
    if t.is_leaf() {
        return Term::unit();
    }
    let word = t.children.substitute(&|c: &RegTree| {
        Term::sum([
            tree_to_order_marked(c, complete).scaled(2),
            separator(complete, Label::new(SEPARATOR_MARK)),
        ])
    });
    if complete {
        complete_hull(&word)
    } else {
        word
    }
}

pub fn tree_to_order(t: &RegTree, complete: bool) -> OrderTerm {
    tree_to_order_marked(t, complete).relabel(&|_: &Label| Label::default())
}

/// In the first condensation of the marked encoding, every single-point
/// class is a separator middle, and the top-level separator middles are
/// single points (nested ones are doubled away).
pub fn separator_singletons_exact(t: &RegTree) -> bool {
    if t.is_leaf() {
        return true;
    }
    let c = condense(&lift(&tree_to_order_marked(t, false)));
    let mut singletons = 0;
    for k in c.atoms() {
        let w = k.word().expect("class key");
        if w.is_singleton() {
            singletons += 1;
            if !matches!(&w.letters()[..], [Key::Base(b)] if b.0 == SEPARATOR_MARK) {
                return false;
            }
        }
    }
    singletons > 0
}

type CKey = Key<Label>;
type CTerm = Term<CKey>;

fn fin_len(k: &CKey) -> Option<usize> {
    match k.word()? {
        Word::Fin(v) => Some(v.len()),
        _ => None,
    }
}

fn is_zeta_class(t: &CTerm) -> bool {
    matches!(t, Term::Atom(k) if matches!(k.word(), Some(Word::Zeta { .. })))
}

fn is_sep_mid(t: &CTerm, size: usize) -> bool {
    matches!(t, Term::Atom(k) if fin_len(k) == Some(size))
}

fn contains_sep(t: &CTerm, size: usize) -> bool {
    t.atoms().into_iter().any(|k| fin_len(k) == Some(size))
}

enum Item {
    Part(CTerm),
    Omega(Vec<CTerm>),
    OmegaStar(Vec<CTerm>),
}

fn not_image(msg: &str) -> Error {
    Error::NotInImage(msg.to_string())
}

/// Child word of a node from the condensation of its encoding at doubling
/// depth `depth` (separator middles have `2^depth` points).
fn decode_word(parts: Vec<CTerm>, depth: u32) -> Result<Term<RegTree>> {
    let size = 1usize << depth;
    let mut queue: VecDeque<Item> = parts.into_iter().map(Item::Part).collect();
    let mut out: Vec<Term<RegTree>> = Vec::new();
    let mut seg: Vec<CTerm> = Vec::new();
    while let Some(item) = queue.pop_front() {
        match item {
            Item::Omega(period) => {
                if !seg.is_empty() {
                    return Err(not_image("repetition inside a child encoding"));
                }
                out.push(Term::omega(decode_word(period, depth)?));
            }
            Item::OmegaStar(period) => {
                if !seg.is_empty() {
                    return Err(not_image("repetition inside a child encoding"));
                }
                out.push(Term::omega_star(decode_word(period, depth)?));
            }
            Item::Part(p) if is_sep_mid(&p, size) => {
                match seg.pop() {
                    Some(z) if is_zeta_class(&z) => {}
                    // ws(B + z) = ws(z + B) + z
                    Some(Term::OmegaStar(b)) if b.parts().last().is_some_and(is_zeta_class) => {
                        let mut body = b.parts();
                        body.rotate_right(1);
                        seg.push(Term::omega_star(Term::sum(body)));
                    }
                    _ => return Err(not_image("separator middle without left ζ")),
                }
                match queue.pop_front() {
                    Some(Item::Part(z)) if is_zeta_class(&z) => {}
                    // w(z + B) = z + w(B + z)
                    Some(Item::Part(Term::Omega(b)))
                        if b.parts().first().is_some_and(is_zeta_class) =>
                    {
                        let mut body = b.parts();
                        body.rotate_left(1);
                        queue.push_front(Item::Part(Term::omega(Term::sum(body))));
                    }
                    _ => return Err(not_image("separator middle without right ζ")),
                }
                let child = decode_level(&Term::sum(seg.drain(..)), depth + 1)?;
                out.push(Term::Atom(child));
            }
            Item::Part(Term::Zeta(b)) if contains_sep(&b, size) => {
                queue.push_front(Item::Part(Term::omega((*b).clone())));
                queue.push_front(Item::Part(Term::omega_star(*b)));
            }
            Item::Part(Term::Omega(b)) if contains_sep(&b, size) => {
                let body = b.parts();
                let n = body.len();
                match body.iter().position(|q| is_sep_mid(q, size)) {
                    None => queue.push_front(Item::Omega(body)),
                    Some(s) => {
                        let (prefix, period) = if s + 2 <= n {
                            (
                                body[..s + 2].to_vec(),
                                crate::lasso::rotate_left(&body, s + 2),
                            )
                        } else {
                            let mut pre = body.clone();
                            pre.push(body[0].clone());
                            (pre, crate::lasso::rotate_left(&body, 1))
                        };
                        queue.push_front(Item::Omega(period));
                        for q in prefix.into_iter().rev() {
                            queue.push_front(Item::Part(q));
                        }
                    }
                }
            }
            Item::Part(Term::OmegaStar(b)) if contains_sep(&b, size) => {
                let body = b.parts();
                let n = body.len();
                match body.iter().position(|q| is_sep_mid(q, size)) {
                    None => queue.push_front(Item::OmegaStar(body)),
                    Some(s) => {
                        let j = (s + 2) % n;
                        let period = crate::lasso::rotate_left(&body, j);
                        for q in body[j..].iter().rev() {
                            queue.push_front(Item::Part(q.clone()));
                        }
                        queue.push_front(Item::OmegaStar(period));
                    }
                }
            }
            Item::Part(p) => seg.push(p),
        }
    }
    if !seg.is_empty() {
        return Err(not_image("trailing material after the last separator"));
    }
    if out.is_empty() {
        return Err(not_image("node without children"));
    }
    Ok(Term::sum(out))
}

fn decode_level(c: &CTerm, depth: u32) -> Result<RegTree> {
    let size = 1usize << depth;
    if let Term::Atom(k) = c {
        if fin_len(k) == Some(size) {
            return Ok(RegTree::leaf());
        }
    }
    let children = decode_word(c.parts(), depth)?;
    Ok(RegTree::node(children).canon())
}

/// Recover `T` from an order isomorphic to `tree_to_order(T, false)`.
pub fn decode_order(l: &OrderTerm) -> Result<RegTree> {
    let plain = l.relabel(&|_: &Label| Label::default());
    if plain.is_empty() {
        return Err(Error::EmptyOrder);
    }
    if plain.end_flags().finite_size == Some(1) {
        return Ok(RegTree::leaf());
    }
    decode_level(&condense(&lift(&plain)), 0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::order_terms::{canonicalize, parse_term, rank};

    fn p(s: &str) -> OrderTerm {
        parse_term(s).unwrap()
    }

    fn t(s: &str) -> RegTree {
        RegTree::parse(s).unwrap()
    }

    #[test]
    fn condensation_trees() {
        assert_eq!(order_to_tree(&p("1")).unwrap(), RegTree::leaf());
        assert_eq!(order_to_tree(&p("w(1)")).unwrap(), t("[w(*)]"));
        assert_eq!(
            order_to_tree(&p("z(1)+1+z(1)")).unwrap(),
            t("[[z(*)]+[*]+[z(*)]]").canon()
        );
        let l = p("w(z(1)+2)+ws(1)");
        assert_eq!(order_to_tree(&l).unwrap().rank(), rank(&l).unwrap() + 1);
    }

    #[test]
    fn encoding_of_small_trees() {
        assert_eq!(tree_to_order(&RegTree::leaf(), false), p("1"));
        assert_eq!(
            canonicalize(&tree_to_order(&t("[*]"), false)),
            canonicalize(&p("2+z(1)+1+z(1)"))
        );
    }

    #[test]
    fn decoder_inverts_encoding() {
        for s in [
            "*",
            "[*]",
            "[3]",
            "[w(*)]",
            "[ws([2])+*]",
            "[z(*+[w(*)])]",
            "[*+w([*]+*)]",
            "[[*]+[[*]]]",
            "[w(w(*))]",
        ] {
            let tree = t(s).canon();
            let enc = tree_to_order(&tree, false);
            assert_eq!(decode_order(&enc).expect(s), tree, "{s}");
            assert_eq!(
                decode_order(&canonicalize(&enc)).expect(s),
                tree,
                "{s} canonical"
            );
            assert!(separator_singletons_exact(&tree), "{s}");
        }
    }

    #[test]
    fn undoubled_single_separator_encoding_collides() {
        fn literal(t: &RegTree) -> OrderTerm {
            if t.is_leaf() {
                return Term::unit();
            }
            Term::sum([t.children.substitute(&literal), p("z(1)+1+z(1)")])
        }
        let a = t("[*+[*]]");
        let b = t("[[2]]");
        assert_ne!(a.canon(), b.canon());
        assert_eq!(canonicalize(&literal(&a)), canonicalize(&literal(&b)));
        assert_ne!(
            canonicalize(&tree_to_order(&a, false)),
            canonicalize(&tree_to_order(&b, false))
        );
    }
}
