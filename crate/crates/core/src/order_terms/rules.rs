//! Individual denotation-preserving rewrite rules. The canonicalizer does
//! not run these to a fixpoint; they exist so each rule can be exercised
//! and checked against invariants on its own.

use serde::{Deserialize, Serialize};

use crate::lasso::primitive_root_len;

use super::term::{Letter, Term};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Rule {
    /// `z(A) → ws(A) + w(A)`
    ZetaExpand,
    /// splice a nested sum into its parent
    Flatten,
    /// remove a `0` part from a sum
    DropZero,
    /// `w(0)`, `ws(0)`, `z(0)` → `0`
    RepZero,
    /// adjacent plain points and finite chains merge
    Coalesce,
    /// `A + w(A) → w(A)`
    AbsorbOmega,
    /// `ws(A) + A → ws(A)`
    AbsorbOmegaStar,
    /// `w(Aⁿ) → w(A)` (same for `ws`, `z`)
    PowerCollapse,
    /// `w(A + B) → A + w(B + A)`
    Rotate,
    /// `ws(B + A) → ws(A + B) + A`
    RotateStar,
    /// `w(A) → A + w(A)`
    Unroll,
    /// `ws(A) → ws(A) + A`
    UnrollStar,
}

pub const ALL_RULES: [Rule; 12] = [
    Rule::ZetaExpand,
    Rule::Flatten,
    Rule::DropZero,
    Rule::RepZero,
    Rule::Coalesce,
    Rule::AbsorbOmega,
    Rule::AbsorbOmegaStar,
    Rule::PowerCollapse,
    Rule::Rotate,
    Rule::RotateStar,
    Rule::Unroll,
    Rule::UnrollStar,
];

fn is_chain<A: Letter>(t: &Term<A>) -> bool {
    matches!(t, Term::Fin(_)) || t.is_default_point()
}

fn chain_len<A: Letter>(t: &Term<A>) -> u64 {
    match t {
        Term::Fin(n) => *n,
        _ => 1,
    }
}

fn body_parts<A: Letter>(b: &Term<A>) -> Vec<Term<A>> {
    match b {
        Term::Sum(ps) => ps.clone(),
        t => vec![t.clone()],
    }
}

fn raw_sum<A: Letter>(mut ps: Vec<Term<A>>) -> Term<A> {
    if ps.len() == 1 {
        ps.pop().unwrap()
    } else {
        Term::Sum(ps)
    }
}

/// Apply `rule` at the root of `t`, if it matches.
pub fn apply_at_root<A: Letter>(t: &Term<A>, rule: Rule) -> Option<Term<A>> {
    match (rule, t) {
        (Rule::ZetaExpand, Term::Zeta(b)) => Some(Term::Sum(vec![
            Term::OmegaStar(b.clone()),
            Term::Omega(b.clone()),
        ])),
        (Rule::Flatten, Term::Sum(ps)) => {
            let i = ps.iter().position(|p| matches!(p, Term::Sum(_)))?;
            let mut out = ps[..i].to_vec();
            out.extend(body_parts(&ps[i]));
            out.extend_from_slice(&ps[i + 1..]);
            Some(raw_sum(out))
        }
        (Rule::DropZero, Term::Sum(ps)) => {
            let i = ps.iter().position(|p| *p == Term::Zero)?;
            let mut out = ps.clone();
            out.remove(i);
            Some(if out.is_empty() {
                Term::Zero
            } else {
                raw_sum(out)
            })
        }
        (Rule::RepZero, Term::Omega(b) | Term::OmegaStar(b) | Term::Zeta(b))
            if **b == Term::Zero =>
        {
            Some(Term::Zero)
        }
        (Rule::Coalesce, Term::Sum(ps)) => {
            let i = (0..ps.len().saturating_sub(1))
                .find(|&i| is_chain(&ps[i]) && is_chain(&ps[i + 1]))?;
            let mut out = ps[..i].to_vec();
            out.push(Term::Fin(chain_len(&ps[i]) + chain_len(&ps[i + 1])));
            out.extend_from_slice(&ps[i + 2..]);
            Some(raw_sum(out))
        }
        (Rule::AbsorbOmega, Term::Sum(ps)) => {
            let i = (0..ps.len().saturating_sub(1))
                .find(|&i| matches!(&ps[i + 1], Term::Omega(b) if **b == ps[i]))?;
            let mut out = ps.clone();
            out.remove(i);
            Some(raw_sum(out))
        }
        (Rule::AbsorbOmegaStar, Term::Sum(ps)) => {
            let i = (0..ps.len().saturating_sub(1))
                .find(|&i| matches!(&ps[i], Term::OmegaStar(b) if **b == ps[i + 1]))?;
            let mut out = ps.clone();
            out.remove(i + 1);
            Some(raw_sum(out))
        }
        (Rule::PowerCollapse, Term::Omega(b) | Term::OmegaStar(b) | Term::Zeta(b)) => {
            let collapsed = match &**b {
                Term::Fin(_) => Term::unit(),
                Term::Sum(ps) => {
                    let d = primitive_root_len(ps);
                    if d == ps.len() {
                        return None;
                    }
                    raw_sum(ps[..d].to_vec())
                }
                _ => return None,
            };
            let boxed = Box::new(collapsed);
            Some(match t {
                Term::Omega(_) => Term::Omega(boxed),
                Term::OmegaStar(_) => Term::OmegaStar(boxed),
                _ => Term::Zeta(boxed),
            })
        }
        (Rule::Rotate, Term::Omega(b)) => match &**b {
            Term::Sum(ps) if ps.len() >= 2 => {
                let mut rotated = ps[1..].to_vec();
                rotated.push(ps[0].clone());
                Some(Term::Sum(vec![
                    ps[0].clone(),
                    Term::Omega(Box::new(Term::Sum(rotated))),
                ]))
            }
            _ => None,
        },
        (Rule::RotateStar, Term::OmegaStar(b)) => match &**b {
            Term::Sum(ps) if ps.len() >= 2 => {
                let last = ps.last().unwrap().clone();
                let mut rotated = vec![last.clone()];
                rotated.extend_from_slice(&ps[..ps.len() - 1]);
                Some(Term::Sum(vec![
                    Term::OmegaStar(Box::new(Term::Sum(rotated))),
                    last,
                ]))
            }
            _ => None,
        },
        (Rule::Unroll, Term::Omega(b)) => Some(Term::Sum(vec![(**b).clone(), t.clone()])),
        (Rule::UnrollStar, Term::OmegaStar(b)) => Some(Term::Sum(vec![t.clone(), (**b).clone()])),
        _ => None,
    }
}

fn children<A: Letter>(t: &Term<A>) -> Vec<&Term<A>> {
    match t {
        Term::Sum(ps) => ps.iter().collect(),
        Term::Omega(b) | Term::OmegaStar(b) | Term::Zeta(b) => vec![&**b],
        _ => Vec::new(),
    }
}

/// Every position (as a child-index path) where some rule applies.
pub fn redexes<A: Letter>(t: &Term<A>) -> Vec<(Vec<usize>, Rule)> {
    fn go<A: Letter>(t: &Term<A>, path: &mut Vec<usize>, out: &mut Vec<(Vec<usize>, Rule)>) {
        for r in ALL_RULES {
            if apply_at_root(t, r).is_some() {
                out.push((path.clone(), r));
            }
        }
        for (i, c) in children(t).into_iter().enumerate() {
            path.push(i);
            go(c, path, out);
            path.pop();
        }
    }
    let mut out = Vec::new();
    go(t, &mut Vec::new(), &mut out);
    out
}

/// Apply `rule` at the subterm addressed by `path`.
pub fn apply_rule<A: Letter>(t: &Term<A>, path: &[usize], rule: Rule) -> Option<Term<A>> {
    let Some((&i, rest)) = path.split_first() else {
        return apply_at_root(t, rule);
    };
    match t {
        Term::Sum(ps) if i < ps.len() => {
            let mut out = ps.clone();
            out[i] = apply_rule(&ps[i], rest, rule)?;
            Some(Term::Sum(out))
        }
        Term::Omega(b) if i == 0 => Some(Term::Omega(Box::new(apply_rule(b, rest, rule)?))),
        Term::OmegaStar(b) if i == 0 => Some(Term::OmegaStar(Box::new(apply_rule(b, rest, rule)?))),
        Term::Zeta(b) if i == 0 => Some(Term::Zeta(Box::new(apply_rule(b, rest, rule)?))),
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::order_terms::canon::canonicalize;
    use crate::order_terms::parse::parse_term;
    use crate::order_terms::term::OrderTerm;

    fn p(s: &str) -> OrderTerm {
        parse_term(s).unwrap()
    }

    #[test]
    fn rule_instances() {
        assert_eq!(
            apply_at_root(&p("1+w(1)"), Rule::AbsorbOmega),
            Some(p("w(1)"))
        );
        assert_eq!(
            apply_at_root(&p("ws(2)+2"), Rule::AbsorbOmegaStar),
            Some(p("ws(2)"))
        );
        assert_eq!(
            apply_at_root(&p("w(1+2+1+2)"), Rule::PowerCollapse),
            Some(p("w(1+2)"))
        );
        assert_eq!(
            apply_at_root(&p("w(3)"), Rule::PowerCollapse),
            Some(p("w(1)"))
        );
        assert_eq!(
            apply_at_root(&p("1+2+w(1)"), Rule::Coalesce),
            Some(p("3+w(1)"))
        );
        assert_eq!(apply_at_root(&p("w(0)"), Rule::RepZero), Some(p("0")));
        assert_eq!(
            apply_at_root(&p("w(1+2)"), Rule::Rotate),
            Some(p("1+w(2+1)"))
        );
    }

    #[test]
    fn every_redex_preserves_canonical_form() {
        for s in [
            "w(1+2)+z(3)",
            "ws(z(1)+1)+1+0",
            "w(w(1)+1+w(1)+1)",
            "1+w(1)+ws(2)+2",
        ] {
            let t = p(s);
            let c = canonicalize(&t);
            for (path, rule) in redexes(&t) {
                let u = apply_rule(&t, &path, rule).unwrap();
                assert_eq!(canonicalize(&u), c, "{s} {rule:?} at {path:?}");
            }
        }
    }
}
