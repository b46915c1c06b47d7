use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

use super::cond::{condense, expand_key, key_of, lift, Key};
use super::term::{EndFlags, Label, Letter, Term};

/// Canonical form: equal for two terms iff they denote isomorphic
/// (label-preserving) orders. ζ never appears in the output.
pub fn canonicalize<A: Letter>(t: &Term<A>) -> Term<A> {
    match key_of(t) {
        Ok((k, _)) => expand_key(&k).coalesced(),
        Err(_) => Term::Zero,
    }
}

pub fn rank<A: Letter>(t: &Term<A>) -> Result<usize> {
    key_of(t).map(|(_, r)| r)
}

/// The quotient by finite-interval classes, as a plain (unlabelled) order.
pub fn derivative<A: Letter>(t: &Term<A>) -> Term<A> {
    condense(&lift(t))
        .relabel(&|_: &Key<A>| A::default())
        .coalesced()
}

/// The derivative with each class marked `S` (a single point) or `N`.
pub fn singleton_marks<A: Letter>(t: &Term<A>) -> Term<Label> {
    condense(&lift(t)).relabel(&|k: &Key<A>| match k.word() {
        Some(w) if w.is_singleton() => Label::new("S"),
        _ => Label::new("N"),
    })
}

/// Which sound invariant separated two terms.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub invariant: String,
    pub left: String,
    pub right: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum IsoVerdict<A> {
    Isomorphic(Term<A>),
    NonIsomorphic(Certificate),
    Unknown,
}

impl<A> IsoVerdict<A> {
    pub fn is_isomorphic(&self) -> bool {
        matches!(self, IsoVerdict::Isomorphic(_))
    }
}

fn flag_certificate(a: &EndFlags, b: &EndFlags) -> Option<Certificate> {
    let cert = |name: &str, x: String, y: String| Certificate {
        invariant: name.to_string(),
        left: x,
        right: y,
    };
    if a.is_empty != b.is_empty {
        return Some(cert(
            "is_empty",
            a.is_empty.to_string(),
            b.is_empty.to_string(),
        ));
    }
    if a.has_min != b.has_min {
        return Some(cert(
            "has_min",
            a.has_min.to_string(),
            b.has_min.to_string(),
        ));
    }
    if a.has_max != b.has_max {
        return Some(cert(
            "has_max",
            a.has_max.to_string(),
            b.has_max.to_string(),
        ));
    }
    if a.finite_size != b.finite_size {
        let show = |s: Option<u64>| s.map_or("infinite".to_string(), |n| n.to_string());
        return Some(cert(
            "finite_size",
            show(a.finite_size),
            show(b.finite_size),
        ));
    }
    None
}

/// Sequence of derivatives `t, t', t'', …` down to a single point.
pub fn derivative_chain<A: Letter>(t: &Term<A>) -> Result<Vec<Term<A>>> {
    let r = rank(t)?;
    let mut out = vec![t.clone()];
    for _ in 0..r {
        let next = derivative(out.last().unwrap());
        out.push(next);
    }
    Ok(out)
}

/// Decide isomorphism by canonical forms; when they differ, look for a
/// separating invariant from a fixed list.
pub fn iso_terms<A: Letter>(a: &Term<A>, b: &Term<A>) -> IsoVerdict<A> {
    let ca = canonicalize(a);
    let cb = canonicalize(b);
    if ca == cb {
        return IsoVerdict::Isomorphic(ca);
    }
    let (fa, fb) = (a.end_flags(), b.end_flags());
    if let Some(c) = flag_certificate(&fa, &fb) {
        return IsoVerdict::NonIsomorphic(c);
    }
    let (Ok(ra), Ok(rb)) = (rank(a), rank(b)) else {
        return IsoVerdict::Unknown;
    };
    if ra != rb {
        return IsoVerdict::NonIsomorphic(Certificate {
            invariant: "rank".into(),
            left: ra.to_string(),
            right: rb.to_string(),
        });
    }
    let (Ok(da), Ok(db)) = (derivative_chain(a), derivative_chain(b)) else {
        return IsoVerdict::Unknown;
    };
    for (x, y) in da.iter().zip(&db).skip(1) {
        if flag_certificate(&x.end_flags(), &y.end_flags()).is_some() {
            let plain = |t: &Term<A>| {
                super::parse::render_with(&t.relabel(&|_| Label::default()), &|l: &Label| {
                    l.0.clone()
                })
            };
            return IsoVerdict::NonIsomorphic(Certificate {
                invariant: "derivative signature".into(),
                left: plain(x),
                right: plain(y),
            });
        }
    }
    for (x, y) in da.iter().zip(&db) {
        let mx = canonicalize(&singleton_marks(x));
        let my = canonicalize(&singleton_marks(y));
        if mx != my {
            return IsoVerdict::NonIsomorphic(Certificate {
                invariant: "invariant_signature".into(),
                left: super::parse::render_term(&mx),
                right: super::parse::render_term(&my),
            });
        }
    }
    IsoVerdict::Unknown
}

/// Dedekind completion: complete each part and fill every gap between a
/// part without maximum and a following part without minimum.
pub fn complete_hull<A: Letter>(t: &Term<A>) -> Term<A> {
    match t {
        Term::Zero | Term::Atom(_) | Term::Fin(_) => t.clone(),
        Term::Sum(ps) => {
            let mut out: Vec<Term<A>> = Vec::new();
            let mut acc = EndFlags::EMPTY;
            for p in ps {
                let h = complete_hull(p);
                let hf = h.end_flags();
                if hf.is_empty {
                    continue;
                }
                if !acc.is_empty && !acc.has_max && !hf.has_min {
                    out.push(Term::unit());
                    acc = acc.then(EndFlags::finite(1));
                }
                acc = acc.then(hf);
                out.push(h);
            }
            Term::sum(out)
        }
        Term::Omega(b) => {
            let h = complete_hull(b);
            let f = h.end_flags();
            if !f.is_empty && !f.has_max && !f.has_min {
                Term::omega(Term::sum([h, Term::unit()]))
            } else {
                Term::omega(h)
            }
        }
        Term::OmegaStar(b) => {
            let h = complete_hull(b);
            let f = h.end_flags();
            if !f.is_empty && !f.has_max && !f.has_min {
                Term::omega_star(Term::sum([Term::unit(), h]))
            } else {
                Term::omega_star(h)
            }
        }
        Term::Zeta(b) => {
            let h = complete_hull(b);
            let f = h.end_flags();
            if !f.is_empty && !f.has_max && !f.has_min {
                Term::zeta(Term::sum([h, Term::unit()]))
            } else {
                Term::zeta(h)
            }
        }
    }
}

pub fn is_complete<A: Letter>(t: &Term<A>) -> Result<bool> {
    match iso_terms(&complete_hull(t), t) {
        IsoVerdict::Isomorphic(_) => Ok(true),
        IsoVerdict::NonIsomorphic(_) => Ok(false),
        IsoVerdict::Unknown => Err(Error::Indeterminate),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::order_terms::parse::parse_term;
    use crate::order_terms::term::OrderTerm;

    fn p(s: &str) -> OrderTerm {
        parse_term(s).unwrap()
    }

    #[test]
    fn canonical_examples() {
        assert_eq!(canonicalize(&p("1+w(1)")), p("w(1)"));
        assert_eq!(canonicalize(&p("w(2)")), p("w(1)"));
        assert_eq!(canonicalize(&p("2")), p("2"));
        assert_eq!(canonicalize(&p("ws(1)+w(1)")), canonicalize(&p("z(1)")));
    }

    #[test]
    fn derivative_examples() {
        assert_eq!(derivative(&p("w(1)")), p("1"));
        assert_eq!(derivative(&p("z(1)+1+z(1)")), p("3"));
        assert_eq!(derivative(&p("w(w(1))")), p("w(1)"));
        assert_eq!(derivative(&p("0")), p("0"));
    }

    #[test]
    fn rank_examples() {
        assert_eq!(rank(&p("1")).unwrap(), 0);
        assert_eq!(rank(&p("w(w(1))")).unwrap(), 2);
        assert_eq!(rank(&p("z(1)+1+z(1)")).unwrap(), 2);
        assert_eq!(rank(&p("0")), Err(Error::EmptyOrder));
    }

    #[test]
    fn iso_examples() {
        assert!(iso_terms(&p("ws(1)+w(1)"), &p("z(1)")).is_isomorphic());
        match iso_terms(&p("w(1)"), &p("z(1)")) {
            IsoVerdict::NonIsomorphic(c) => {
                assert_eq!(c.invariant, "has_min");
                assert_eq!((c.left.as_str(), c.right.as_str()), ("true", "false"));
            }
            v => panic!("{v:?}"),
        }
        match iso_terms(&p("w(z(1))"), &p("z(z(1))")) {
            IsoVerdict::NonIsomorphic(c) => {
                assert_eq!(c.invariant, "derivative signature");
                assert_eq!((c.left.as_str(), c.right.as_str()), ("w(1)", "z(1)"));
            }
            v => panic!("{v:?}"),
        }
    }

    #[test]
    fn completeness_examples() {
        assert!(is_complete(&p("z(1)")).unwrap());
        assert!(!is_complete(&p("w(z(1))")).unwrap());
        assert!(is_complete(&p("1+z(1)+1+z(1)+1")).unwrap());
        assert_eq!(complete_hull(&p("w(1)")), p("w(1)"));
        assert_eq!(complete_hull(&p("w(z(1))")), p("w(z(1)+1)"));
        assert_eq!(complete_hull(&p("0")), p("0"));
    }
}
