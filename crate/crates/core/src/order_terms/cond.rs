//! Condensation engine. One condensation step quotients an order by the
//! relation "finitely many points in between"; each class is a finite, ω,
//! ω* or ζ word over the labels of the previous level. Iterating until one
//! point remains yields a structural key that is a complete isomorphism
//! invariant on the regular fragment.

use std::rc::Rc;

use crate::error::{Error, Result};
use crate::lasso::{least_rotation, primitive_root, rotate_left};

use super::term::{Letter, Term};

/// Order type of one condensation class, as a normalized regular word.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Word<L> {
    Fin(Vec<L>),
    /// `prefix · period^ω`
    Omega {
        prefix: Vec<L>,
        period: Vec<L>,
    },
    /// `^ω period · suffix`
    OmegaStar {
        period: Vec<L>,
        suffix: Vec<L>,
    },
    /// `^ω left · mid · right^ω`
    Zeta {
        left: Vec<L>,
        mid: Vec<L>,
        right: Vec<L>,
    },
}

/// Label of a point at some condensation level.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Key<A> {
    Base(A),
    Class(Rc<Word<Key<A>>>),
}

impl<A: Letter> Default for Key<A> {
    fn default() -> Self {
        Key::Base(A::default())
    }
}

impl<A> Key<A> {
    pub fn word(&self) -> Option<&Word<Key<A>>> {
        match self {
            Key::Class(w) => Some(w),
            Key::Base(_) => None,
        }
    }
}

impl<L: Clone + Ord> Word<L> {
    pub fn is_singleton(&self) -> bool {
        matches!(self, Word::Fin(v) if v.len() == 1)
    }

    pub fn normalized(self) -> Self {
        match self {
            Word::Fin(v) => Word::Fin(v),
            Word::Omega { mut prefix, period } => {
                let mut period = primitive_root(&period);
                while !prefix.is_empty() && prefix.last() == period.last() {
                    prefix.pop();
                    period.rotate_right(1);
                }
                Word::Omega { prefix, period }
            }
            Word::OmegaStar { period, suffix } => {
                let mut period = primitive_root(&period);
                let mut start = 0;
                while start < suffix.len() && suffix[start] == period[0] {
                    start += 1;
                    period.rotate_left(1);
                }
                Word::OmegaStar {
                    period,
                    suffix: suffix[start..].to_vec(),
                }
            }
            Word::Zeta { left, mid, right } => {
                let mut left = primitive_root(&left);
                let mut right = primitive_root(&right);
                let mut start = 0;
                loop {
                    if start < mid.len() {
                        if mid[start] != left[0] {
                            break;
                        }
                        start += 1;
                        left.rotate_left(1);
                    } else {
                        if left == right || left[0] != right[0] {
                            break;
                        }
                        left.rotate_left(1);
                        right.rotate_left(1);
                    }
                }
                let mut mid = mid[start..].to_vec();
                while !mid.is_empty() && mid.last() == right.last() {
                    mid.pop();
                    right.rotate_right(1);
                }
                if mid.is_empty() && left == right {
                    let r = least_rotation(&left);
                    left = rotate_left(&left, r);
                    right = left.clone();
                }
                Word::Zeta { left, mid, right }
            }
        }
    }

    /// Concatenation of a class ending in a maximum with a class starting in
    /// a minimum.
    pub fn concat(&self, other: &Word<L>) -> Word<L> {
        let cat = |a: &[L], b: &[L]| [a, b].concat();
        let w = match (self, other) {
            (Word::Fin(a), Word::Fin(b)) => Word::Fin(cat(a, b)),
            (Word::Fin(a), Word::Omega { prefix, period }) => Word::Omega {
                prefix: cat(a, prefix),
                period: period.clone(),
            },
            (Word::OmegaStar { period, suffix }, Word::Fin(b)) => Word::OmegaStar {
                period: period.clone(),
                suffix: cat(suffix, b),
            },
            (
                Word::OmegaStar { period, suffix },
                Word::Omega {
                    prefix,
                    period: right,
                },
            ) => Word::Zeta {
                left: period.clone(),
                mid: cat(suffix, prefix),
                right: right.clone(),
            },
            _ => unreachable!("fused classes must meet at a maximum and a minimum"),
        };
        w.normalized()
    }

    /// A regular-word term denoting this class, with letters mapped by `f`.
    pub fn to_term<B: Letter>(&self, f: &dyn Fn(&L) -> Term<B>) -> Term<B> {
        let seq = |v: &[L]| Term::sum(v.iter().map(f));
        match self {
            Word::Fin(v) => seq(v),
            Word::Omega { prefix, period } => Term::sum([seq(prefix), Term::omega(seq(period))]),
            Word::OmegaStar { period, suffix } => {
                Term::sum([Term::omega_star(seq(period)), seq(suffix)])
            }
            Word::Zeta { left, mid, right } => Term::sum([
                Term::omega_star(seq(left)),
                seq(mid),
                Term::omega(seq(right)),
            ]),
        }
    }

    pub fn letters(&self) -> Vec<&L> {
        match self {
            Word::Fin(v) => v.iter().collect(),
            Word::Omega { prefix, period } => prefix.iter().chain(period).collect(),
            Word::OmegaStar { period, suffix } => period.iter().chain(suffix).collect(),
            Word::Zeta { left, mid, right } => left.iter().chain(mid).chain(right).collect(),
        }
    }
}

fn class<A: Letter>(w: Word<Key<A>>) -> Term<Key<A>> {
    Term::Atom(Key::Class(Rc::new(w)))
}

fn class_word<A: Letter>(k: &Key<A>) -> &Word<Key<A>> {
    k.word().expect("condensed terms carry class keys")
}

/// Lift a term to the key alphabet, expanding `Fin` and `Zeta`.
pub fn lift<A: Letter>(t: &Term<A>) -> Term<Key<A>> {
    match t {
        Term::Zero => Term::Zero,
        Term::Atom(a) => Term::Atom(Key::Base(a.clone())),
        Term::Fin(n) => Term::sum((0..*n).map(|_| Term::Atom(Key::Base(A::default())))),
        Term::Sum(ps) => Term::sum(ps.iter().map(lift)),
        Term::Omega(b) => Term::omega(lift(b)),
        Term::OmegaStar(b) => Term::omega_star(lift(b)),
        Term::Zeta(b) => {
            let b = lift(b);
            Term::sum([Term::omega_star(b.clone()), Term::omega(b)])
        }
    }
}

/// Least point of a condensed term and the remainder.
fn split_min<A: Letter>(t: &Term<Key<A>>) -> (Key<A>, Term<Key<A>>) {
    match t {
        Term::Atom(k) => (k.clone(), Term::Zero),
        Term::Sum(ps) => {
            let (k, rest) = split_min(&ps[0]);
            (
                k,
                Term::sum(std::iter::once(rest).chain(ps[1..].iter().cloned())),
            )
        }
        Term::Omega(b) => {
            let (k, rest) = split_min(b);
            (k, Term::sum([rest, t.clone()]))
        }
        _ => unreachable!("split_min on a term without a least point"),
    }
}

/// Greatest point of a condensed term and the remainder.
fn split_max<A: Letter>(t: &Term<Key<A>>) -> (Key<A>, Term<Key<A>>) {
    match t {
        Term::Atom(k) => (k.clone(), Term::Zero),
        Term::Sum(ps) => {
            let n = ps.len();
            let (k, rest) = split_max(&ps[n - 1]);
            (
                k,
                Term::sum(ps[..n - 1].iter().cloned().chain(std::iter::once(rest))),
            )
        }
        Term::OmegaStar(b) => {
            let (k, rest) = split_max(b);
            (k, Term::sum([t.clone(), rest]))
        }
        _ => unreachable!("split_max on a term without a greatest point"),
    }
}

/// One condensation step. The input must be `Fin`- and `Zeta`-free (see
/// [`lift`]); the output is again such a term whose atoms are class keys.
/// A class straddling a sum boundary is attributed to the left operand.
pub fn condense<A: Letter>(t: &Term<Key<A>>) -> Term<Key<A>> {
    match t {
        Term::Zero => Term::Zero,
        Term::Atom(k) => class(Word::Fin(vec![k.clone()])),
        Term::Fin(_) | Term::Zeta(_) => condense(&lift_keys(t)),
        Term::Sum(ps) => {
            let mut acc = Term::Zero;
            let mut acc_flags = super::term::EndFlags::EMPTY;
            for p in ps {
                let pf = p.end_flags();
                if pf.is_empty {
                    continue;
                }
                let pc = condense(p);
                if !acc_flags.is_empty && acc_flags.has_max && pf.has_min {
                    let (lk, lrest) = split_max(&acc);
                    let (fk, frest) = split_min(&pc);
                    let fused = class_word(&lk).concat(class_word(&fk));
                    acc = Term::sum([lrest, class(fused), frest]);
                } else {
                    acc = Term::sum([acc, pc]);
                }
                acc_flags = acc_flags.then(pf);
            }
            acc
        }
        Term::Omega(b) => {
            let bf = b.end_flags();
            if bf.is_empty {
                return Term::Zero;
            }
            let cb = condense(b);
            if !(bf.has_min && bf.has_max) {
                return Term::omega(cb);
            }
            if let Term::Atom(k) = &cb {
                let letters: Vec<Key<A>> = class_word(k).letters().into_iter().cloned().collect();
                return class(
                    Word::Omega {
                        prefix: Vec::new(),
                        period: letters,
                    }
                    .normalized(),
                );
            }
            let (fk, r1) = split_min(&cb);
            let (lk, mid) = split_max(&r1);
            let joint = class(class_word(&lk).concat(class_word(&fk)));
            Term::sum([
                Term::Atom(fk),
                mid.clone(),
                Term::omega(Term::sum([joint, mid])),
            ])
        }
        Term::OmegaStar(b) => {
            let bf = b.end_flags();
            if bf.is_empty {
                return Term::Zero;
            }
            let cb = condense(b);
            if !(bf.has_min && bf.has_max) {
                return Term::omega_star(cb);
            }
            if let Term::Atom(k) = &cb {
                let letters: Vec<Key<A>> = class_word(k).letters().into_iter().cloned().collect();
                return class(
                    Word::OmegaStar {
                        period: letters,
                        suffix: Vec::new(),
                    }
                    .normalized(),
                );
            }
            let (fk, r1) = split_min(&cb);
            let (lk, mid) = split_max(&r1);
            let joint = class(class_word(&lk).concat(class_word(&fk)));
            Term::sum([
                Term::omega_star(Term::sum([joint, mid.clone()])),
                mid,
                Term::Atom(lk),
            ])
        }
    }
}

fn lift_keys<A: Letter>(t: &Term<Key<A>>) -> Term<Key<A>> {
    match t {
        Term::Fin(n) => Term::sum((0..*n).map(|_| Term::Atom(Key::default()))),
        Term::Zeta(b) => Term::sum([Term::omega_star((**b).clone()), Term::omega((**b).clone())]),
        t => t.clone(),
    }
}

/// Canonical key of a nonempty order together with its rank (the number of
/// condensation steps needed to reach a single point).
pub fn key_of<A: Letter>(t: &Term<A>) -> Result<(Key<A>, usize)> {
    let mut cur = lift(t);
    let mut steps = 0;
    loop {
        match cur {
            Term::Zero => return Err(Error::EmptyOrder),
            Term::Atom(k) => return Ok((k, steps)),
            _ => {
                cur = condense(&cur);
                steps += 1;
            }
        }
    }
}

/// Expand a key back into a term over the base alphabet.
pub fn expand_key<A: Letter>(k: &Key<A>) -> Term<A> {
    match k {
        Key::Base(a) => Term::Atom(a.clone()),
        Key::Class(w) => w.to_term(&expand_key),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::order_terms::term::OrderTerm;

    fn unit() -> OrderTerm {
        OrderTerm::unit()
    }

    #[test]
    fn zeta_word_normalization_detects_periodicity() {
        let w: Word<u8> = Word::Zeta {
            left: vec![0, 1],
            mid: vec![0, 1, 0],
            right: vec![1, 0],
        }
        .normalized();
        assert_eq!(
            w,
            Word::Zeta {
                left: vec![0, 1],
                mid: vec![],
                right: vec![0, 1]
            }
        );
    }

    #[test]
    fn omega_word_shortest_prefix() {
        let w: Word<u8> = Word::Omega {
            prefix: vec![1, 1],
            period: vec![1, 1],
        }
        .normalized();
        assert_eq!(
            w,
            Word::Omega {
                prefix: vec![],
                period: vec![1]
            }
        );
    }

    #[test]
    fn rank_counts() {
        assert_eq!(key_of(&unit()).unwrap().1, 0);
        let ww = OrderTerm::omega(OrderTerm::omega(unit()));
        assert_eq!(key_of(&ww).unwrap().1, 2);
        let sep = OrderTerm::sum([OrderTerm::zeta(unit()), unit(), OrderTerm::zeta(unit())]);
        assert_eq!(key_of(&sep).unwrap().1, 2);
        assert_eq!(key_of(&OrderTerm::Zero), Err(Error::EmptyOrder));
    }

    #[test]
    fn absorption_is_visible_in_keys() {
        let a = OrderTerm::sum([unit(), OrderTerm::omega(unit())]);
        let b = OrderTerm::omega(unit());
        assert_eq!(key_of(&a).unwrap(), key_of(&b).unwrap());
        let z1 = OrderTerm::zeta(unit());
        let z2 = OrderTerm::sum([
            OrderTerm::omega_star(unit()),
            unit(),
            OrderTerm::omega(unit()),
        ]);
        assert_eq!(key_of(&z1).unwrap(), key_of(&z2).unwrap());
        assert_ne!(key_of(&z1).unwrap(), key_of(&b).unwrap());
    }
}
