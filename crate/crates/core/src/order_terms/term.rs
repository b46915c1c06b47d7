use std::fmt::{self, Debug};
use std::hash::Hash;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Alphabet for atom labels. `Default` is the plain, uncolored point.
pub trait Letter: Clone + Ord + Hash + Default + Debug {}
impl<T: Clone + Ord + Hash + Default + Debug> Letter for T {}

/// Atom label of an order term. The default label `"1"` is a plain point.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Label(pub String);

impl Default for Label {
    fn default() -> Self {
        Label("1".to_string())
    }
}

impl Debug for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl Label {
    pub fn new(s: &str) -> Self {
        Label(s.to_string())
    }

    pub fn is_default(&self) -> bool {
        self.0 == "1"
    }
}

/// A term denoting a regular scattered linear order.
///
/// `Fin(n)` stands for `n` default atoms. The derived `Ord` (constructor
/// tag first, then children) is the frozen total term order.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize, Default)]
#[serde(rename_all = "camelCase")]
pub enum Term<A> {
    #[default]
    Zero,
    Atom(A),
    Fin(u64),
    Sum(Vec<Term<A>>),
    Omega(Box<Term<A>>),
    OmegaStar(Box<Term<A>>),
    Zeta(Box<Term<A>>),
}

pub type OrderTerm = Term<Label>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct EndFlags {
    pub is_empty: bool,
    pub has_min: bool,
    pub has_max: bool,
    pub finite_size: Option<u64>,
}

impl EndFlags {
    pub const EMPTY: EndFlags = EndFlags {
        is_empty: true,
        has_min: false,
        has_max: false,
        finite_size: Some(0),
    };

    pub fn finite(n: u64) -> EndFlags {
        if n == 0 {
            return Self::EMPTY;
        }
        EndFlags {
            is_empty: false,
            has_min: true,
            has_max: true,
            finite_size: Some(n),
        }
    }

    /// Flags of the ordered sum `self + other`.
    pub fn then(self, other: EndFlags) -> EndFlags {
        if self.is_empty {
            return other;
        }
        if other.is_empty {
            return self;
        }
        EndFlags {
            is_empty: false,
            has_min: self.has_min,
            has_max: other.has_max,
            finite_size: match (self.finite_size, other.finite_size) {
                (Some(a), Some(b)) => Some(a + b),
                _ => None,
            },
        }
    }
}

impl<A: Letter> Term<A> {
    pub fn unit() -> Self {
        Term::Atom(A::default())
    }

    /// `n` default points.
    pub fn fin(n: u64) -> Self {
        match n {
            0 => Term::Zero,
            1 => Term::unit(),
            n => Term::Fin(n),
        }
    }

    /// Flattening sum constructor: drops empty parts, splices nested sums,
    /// unwraps singletons.
    pub fn sum<I: IntoIterator<Item = Term<A>>>(parts: I) -> Self {
        let mut out = Vec::new();
        for p in parts {
            match p {
                Term::Zero => {}
                Term::Sum(inner) => out.extend(inner),
                p => out.push(p),
            }
        }
        match out.len() {
            0 => Term::Zero,
            1 => out.pop().unwrap(),
            _ => Term::Sum(out),
        }
    }

    pub fn omega(body: Term<A>) -> Self {
        if body.is_empty() {
            Term::Zero
        } else {
            Term::Omega(Box::new(body))
        }
    }

    pub fn omega_star(body: Term<A>) -> Self {
        if body.is_empty() {
            Term::Zero
        } else {
            Term::OmegaStar(Box::new(body))
        }
    }

    pub fn zeta(body: Term<A>) -> Self {
        if body.is_empty() {
            Term::Zero
        } else {
            Term::Zeta(Box::new(body))
        }
    }

    pub fn is_empty(&self) -> bool {
        match self {
            Term::Zero => true,
            Term::Atom(_) | Term::Fin(_) => false,
            Term::Sum(ps) => ps.iter().all(Term::is_empty),
            Term::Omega(b) | Term::OmegaStar(b) | Term::Zeta(b) => b.is_empty(),
        }
    }

    pub fn is_default_point(&self) -> bool {
        matches!(self, Term::Atom(a) if *a == A::default())
    }

    /// Structural size: atoms and `Zero` count 1, `Fin n` counts `n`,
    /// a repetition counts 1 plus its body.
    pub fn size(&self) -> u64 {
        match self {
            Term::Zero | Term::Atom(_) => 1,
            Term::Fin(n) => *n,
            Term::Sum(ps) => ps.iter().map(Term::size).sum(),
            Term::Omega(b) | Term::OmegaStar(b) | Term::Zeta(b) => 1 + b.size(),
        }
    }

    pub fn has_repetition(&self) -> bool {
        match self {
            Term::Zero | Term::Atom(_) | Term::Fin(_) => false,
            Term::Sum(ps) => ps.iter().any(Term::has_repetition),
            _ => true,
        }
    }

    pub fn end_flags(&self) -> EndFlags {
        match self {
            Term::Zero => EndFlags::EMPTY,
            Term::Atom(_) => EndFlags::finite(1),
            Term::Fin(n) => EndFlags::finite(*n),
            Term::Sum(ps) => ps
                .iter()
                .fold(EndFlags::EMPTY, |acc, p| acc.then(p.end_flags())),
            Term::Omega(b) => {
                let f = b.end_flags();
                if f.is_empty {
                    return EndFlags::EMPTY;
                }
                EndFlags {
                    is_empty: false,
                    has_min: f.has_min,
                    has_max: false,
                    finite_size: None,
                }
            }
            Term::OmegaStar(b) => {
                let f = b.end_flags();
                if f.is_empty {
                    return EndFlags::EMPTY;
                }
                EndFlags {
                    is_empty: false,
                    has_min: false,
                    has_max: f.has_max,
                    finite_size: None,
                }
            }
            Term::Zeta(b) => {
                if b.is_empty() {
                    return EndFlags::EMPTY;
                }
                EndFlags {
                    is_empty: false,
                    has_min: false,
                    has_max: false,
                    finite_size: None,
                }
            }
        }
    }

    /// Replace every atom (including the points of `Fin`) by a term.
    pub fn substitute<B: Letter, F: Fn(&A) -> Term<B>>(&self, f: &F) -> Term<B> {
        match self {
            Term::Zero => Term::Zero,
            Term::Atom(a) => f(a),
            Term::Fin(n) => {
                let d = f(&A::default());
                Term::sum((0..*n).map(|_| d.clone()))
            }
            Term::Sum(ps) => Term::sum(ps.iter().map(|p| p.substitute(f))),
            Term::Omega(b) => Term::omega(b.substitute(f)),
            Term::OmegaStar(b) => Term::omega_star(b.substitute(f)),
            Term::Zeta(b) => Term::zeta(b.substitute(f)),
        }
    }

    /// Rename atom labels. `Fin` survives when the default maps to the default.
    pub fn relabel<B: Letter, F: Fn(&A) -> B>(&self, f: &F) -> Term<B> {
        let keeps_fin = f(&A::default()) == B::default();
        self.relabel_inner(f, keeps_fin)
    }

    fn relabel_inner<B: Letter, F: Fn(&A) -> B>(&self, f: &F, keeps_fin: bool) -> Term<B> {
        match self {
            Term::Zero => Term::Zero,
            Term::Atom(a) => Term::Atom(f(a)),
            Term::Fin(n) if keeps_fin => Term::Fin(*n),
            Term::Fin(n) => {
                let d = f(&A::default());
                Term::sum((0..*n).map(|_| Term::Atom(d.clone())))
            }
            Term::Sum(ps) => Term::Sum(ps.iter().map(|p| p.relabel_inner(f, keeps_fin)).collect()),
            Term::Omega(b) => Term::Omega(Box::new(b.relabel_inner(f, keeps_fin))),
            Term::OmegaStar(b) => Term::OmegaStar(Box::new(b.relabel_inner(f, keeps_fin))),
            Term::Zeta(b) => Term::Zeta(Box::new(b.relabel_inner(f, keeps_fin))),
        }
    }

    /// Every atom label occurring in the term (`Fin` contributes the default).
    pub fn atoms(&self) -> Vec<&A> {
        fn go<'a, A: Letter>(t: &'a Term<A>, out: &mut Vec<&'a A>, has_fin: &mut bool) {
            match t {
                Term::Zero => {}
                Term::Atom(a) => out.push(a),
                Term::Fin(_) => *has_fin = true,
                Term::Sum(ps) => ps.iter().for_each(|p| go(p, out, has_fin)),
                Term::Omega(b) | Term::OmegaStar(b) | Term::Zeta(b) => go(b, out, has_fin),
            }
        }
        let mut out = Vec::new();
        let mut has_fin = false;
        go(self, &mut out, &mut has_fin);
        out
    }

    pub fn contains_fin(&self) -> bool {
        match self {
            Term::Fin(_) => true,
            Term::Sum(ps) => ps.iter().any(Term::contains_fin),
            Term::Omega(b) | Term::OmegaStar(b) | Term::Zeta(b) => b.contains_fin(),
            _ => false,
        }
    }

    /// The term with its least element removed.
    pub fn drop_min(&self) -> Result<Term<A>> {
        let no_min = || Error::Precondition("order has no least element".into());
        match self {
            Term::Zero => Err(no_min()),
            Term::Atom(_) => Ok(Term::Zero),
            Term::Fin(n) => Ok(Term::fin(n - 1)),
            Term::Sum(ps) => {
                let i = ps.iter().position(|p| !p.is_empty()).ok_or_else(no_min)?;
                let head = ps[i].drop_min()?;
                Ok(Term::sum(
                    std::iter::once(head).chain(ps[i + 1..].iter().cloned()),
                ))
            }
            Term::Omega(b) => {
                if b.is_empty() {
                    return Err(no_min());
                }
                Ok(Term::sum([b.drop_min()?, self.clone()]))
            }
            Term::OmegaStar(_) | Term::Zeta(_) => Err(no_min()),
        }
    }

    /// The term with its greatest element removed.
    pub fn drop_max(&self) -> Result<Term<A>> {
        let no_max = || Error::Precondition("order has no greatest element".into());
        match self {
            Term::Zero => Err(no_max()),
            Term::Atom(_) => Ok(Term::Zero),
            Term::Fin(n) => Ok(Term::fin(n - 1)),
            Term::Sum(ps) => {
                let i = ps.iter().rposition(|p| !p.is_empty()).ok_or_else(no_max)?;
                let tail = ps[i].drop_max()?;
                Ok(Term::sum(
                    ps[..i].iter().cloned().chain(std::iter::once(tail)),
                ))
            }
            Term::OmegaStar(b) => {
                if b.is_empty() {
                    return Err(no_max());
                }
                Ok(Term::sum([self.clone(), b.drop_max()?]))
            }
            Term::Omega(_) | Term::Zeta(_) => Err(no_max()),
        }
    }

    /// Merge runs of default points inside sums into `Fin`.
    pub fn coalesced(&self) -> Term<A> {
        match self {
            Term::Sum(ps) => {
                let mut out: Vec<Term<A>> = Vec::new();
                let mut run = 0u64;
                for p in ps.iter().map(Term::coalesced) {
                    match p {
                        Term::Fin(n) => run += n,
                        ref a if a.is_default_point() => run += 1,
                        Term::Zero => {}
                        other => {
                            if run > 0 {
                                out.push(Term::fin(run));
                                run = 0;
                            }
                            match other {
                                Term::Sum(inner) => out.extend(inner),
                                o => out.push(o),
                            }
                        }
                    }
                }
                if run > 0 {
                    out.push(Term::fin(run));
                }
                Term::sum(out)
            }
            Term::Omega(b) => Term::omega(b.coalesced()),
            Term::OmegaStar(b) => Term::omega_star(b.coalesced()),
            Term::Zeta(b) => Term::zeta(b.coalesced()),
            t => t.clone(),
        }
    }

    /// `Zeta(A)` rewritten to `OmegaStar(A) + Omega(A)` everywhere.
    pub fn without_zeta(&self) -> Term<A> {
        match self {
            Term::Sum(ps) => Term::sum(ps.iter().map(Term::without_zeta)),
            Term::Omega(b) => Term::omega(b.without_zeta()),
            Term::OmegaStar(b) => Term::omega_star(b.without_zeta()),
            Term::Zeta(b) => {
                let b = b.without_zeta();
                Term::sum([Term::omega_star(b.clone()), Term::omega(b)])
            }
            t => t.clone(),
        }
    }

    /// Parts of a sum, or the term itself as a one-element list.
    pub fn parts(&self) -> Vec<Term<A>> {
        match self {
            Term::Zero => Vec::new(),
            Term::Sum(ps) => ps.clone(),
            t => vec![t.clone()],
        }
    }

    /// The denoted order with every point replaced by `k` consecutive points.
    pub fn scaled(&self, k: u64) -> Term<A> {
        match self {
            Term::Zero => Term::Zero,
            Term::Atom(a) if *a == A::default() => Term::fin(k),
            Term::Atom(a) => Term::sum((0..k).map(|_| Term::Atom(a.clone()))),
            Term::Fin(n) => Term::fin(n * k),
            Term::Sum(ps) => Term::sum(ps.iter().map(|p| p.scaled(k))),
            Term::Omega(b) => Term::omega(b.scaled(k)),
            Term::OmegaStar(b) => Term::omega_star(b.scaled(k)),
            Term::Zeta(b) => Term::zeta(b.scaled(k)),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    type T = OrderTerm;

    #[test]
    fn flags_of_basic_terms() {
        let w = T::omega(T::unit());
        let f = w.end_flags();
        assert!(f.has_min && !f.has_max);
        let z = T::zeta(T::unit()).end_flags();
        assert!(!z.has_min && !z.has_max);
        let s = T::Sum(vec![T::Fin(2), T::omega(T::unit())]).end_flags();
        assert!(s.has_min && !s.has_max);
        assert_eq!(T::omega(T::Zero).end_flags(), EndFlags::EMPTY);
        assert_eq!(T::Fin(3).end_flags().finite_size, Some(3));
    }

    #[test]
    fn drop_min_examples() {
        assert_eq!(T::Fin(3).drop_min().unwrap(), T::Fin(2));
        assert_eq!(T::unit().drop_min().unwrap(), T::Zero);
        let w2 = T::omega(T::Fin(2));
        assert_eq!(w2.drop_min().unwrap(), T::Sum(vec![T::unit(), w2.clone()]));
        assert!(T::zeta(T::unit()).drop_min().is_err());
        assert!(T::Zero.drop_min().is_err());
    }

    #[test]
    fn coalescing_runs() {
        let t = T::Sum(vec![T::unit(), T::Fin(2), T::omega(T::unit()), T::unit()]);
        assert_eq!(
            t.coalesced(),
            T::Sum(vec![T::Fin(3), T::omega(T::unit()), T::unit()])
        );
    }
}
