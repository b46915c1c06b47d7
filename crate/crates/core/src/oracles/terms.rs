use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::order_terms::{derivative_chain, singleton_marks, EndFlags, Label, OrderTerm, Term};

/// Largest size accepted by [`enumerate_terms`].
pub const MAX_TERM_SIZE: u64 = 9;

/// Every canonical-candidate term of structural size at most `size`.
///
/// Candidates use default atoms only, never place `Zero` below the root,
/// never nest sums and never put two finite parts next to each other.
/// Output is sorted by size, then by the term order.
pub fn enumerate_terms(size: u64) -> Result<Vec<OrderTerm>> {
    generate(size, true)
}

/// Like [`enumerate_terms`] but sums may contain `Zero` and adjacent finite
/// parts, so one order usually has many spellings.
pub fn enumerate_raw_terms(size: u64) -> Result<Vec<OrderTerm>> {
    generate(size, false)
}

fn generate(size: u64, canonical: bool) -> Result<Vec<OrderTerm>> {
    if size > MAX_TERM_SIZE {
        return Err(Error::CapExceeded(format!(
            "term size {size} > {MAX_TERM_SIZE}"
        )));
    }
    let mut gen = Gen {
        canonical,
        parts: BTreeMap::new(),
        sums: BTreeMap::new(),
    };
    let mut out = vec![Term::Zero];
    for s in 1..=size {
        let mut level = gen.parts_of(s);
        level.extend(
            gen.sums_of(s, false)
                .into_iter()
                .filter(|p| p.len() >= 2)
                .map(Term::Sum),
        );
        level.sort();
        level.dedup();
        out.extend(level);
    }
    Ok(out)
}

struct Gen {
    canonical: bool,
    parts: BTreeMap<u64, Vec<OrderTerm>>,
    sums: BTreeMap<(u64, bool), Vec<Vec<OrderTerm>>>,
}

fn is_finite_part(t: &OrderTerm) -> bool {
    matches!(t, Term::Atom(_) | Term::Fin(_) | Term::Zero)
}

impl Gen {
    /// Non-sum terms of size exactly `s`.
    fn parts_of(&mut self, s: u64) -> Vec<OrderTerm> {
        if let Some(v) = self.parts.get(&s) {
            return v.clone();
        }
        let mut out = Vec::new();
        if s == 1 {
            out.push(Term::unit());
        } else {
            out.push(Term::Fin(s));
            let mut bodies = self.parts_of(s - 1);
            bodies.extend(
                self.sums_of(s - 1, false)
                    .into_iter()
                    .filter(|p| p.len() >= 2)
                    .map(Term::Sum),
            );
            for b in bodies {
                out.push(Term::Omega(Box::new(b.clone())));
                out.push(Term::OmegaStar(Box::new(b.clone())));
                out.push(Term::Zeta(Box::new(b)));
            }
        }
        self.parts.insert(s, out.clone());
        out
    }

    /// Part lists of total size `s`; `after_finite` forbids a leading finite
    /// part in canonical mode.
    fn sums_of(&mut self, s: u64, after_finite: bool) -> Vec<Vec<OrderTerm>> {
        if let Some(v) = self.sums.get(&(s, after_finite)) {
            return v.clone();
        }
        let mut out = Vec::new();
        for first in 1..=s {
            let mut heads = self.parts_of(first);
            if !self.canonical && first == 1 {
                heads.push(Term::Zero);
            }
            for h in heads {
                let fin = is_finite_part(&h);
                if self.canonical && after_finite && fin {
                    continue;
                }
                if first == s {
                    out.push(vec![h.clone()]);
                    continue;
                }
                for mut tail in self.sums_of(s - first, fin) {
                    tail.insert(0, h.clone());
                    out.push(tail);
                }
            }
        }
        self.sums.insert((s, after_finite), out.clone());
        out
    }
}

/// One derivative step: flags of the order before the step and the number
/// of single-point and of larger classes (`None` when infinite).
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct ChainStep {
    pub flags: EndFlags,
    pub singleton_classes: Option<u64>,
    pub other_classes: Option<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct InvariantSignature {
    pub rank: usize,
    pub flags: EndFlags,
    pub derivative_chain: Vec<ChainStep>,
}

/// Number of atoms labelled `want`, `None` if one sits under a repetition.
fn count_label(t: &Term<Label>, want: &str) -> Option<u64> {
    match t {
        Term::Zero => Some(0),
        Term::Atom(l) => Some(u64::from(l.0 == want)),
        Term::Fin(n) => Some(if want == "1" { *n } else { 0 }),
        Term::Sum(ps) => ps
            .iter()
            .try_fold(0, |acc, p| Some(acc + count_label(p, want)?)),
        Term::Omega(b) | Term::OmegaStar(b) | Term::Zeta(b) => match count_label(b, want)? {
            0 => Some(0),
            _ => None,
        },
    }
}

/// Rank, end flags and per-step class counts; isomorphic terms get equal
/// signatures.
pub fn invariant_signature(t: &OrderTerm) -> Result<InvariantSignature> {
    if t.is_empty() {
        return Err(Error::EmptyOrder);
    }
    let chain = derivative_chain(t)?;
    let rank = chain.len() - 1;
    let steps = chain[..rank]
        .iter()
        .map(|u| {
            let marks = singleton_marks(u);
            ChainStep {
                flags: u.end_flags(),
                singleton_classes: count_label(&marks, "S"),
                other_classes: count_label(&marks, "N"),
            }
        })
        .collect();
    Ok(InvariantSignature {
        rank,
        flags: t.end_flags(),
        derivative_chain: steps,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::order_terms::parse_term;

    #[test]
    fn small_sizes() {
        let one = enumerate_terms(1).unwrap();
        assert_eq!(one, vec![Term::Zero, Term::unit()]);
        let two = enumerate_terms(2).unwrap();
        for s in ["2", "w(1)", "ws(1)"] {
            assert!(two.contains(&parse_term(s).unwrap()), "{s}");
        }
        assert!(enumerate_terms(10).is_err());
    }

    #[test]
    fn no_duplicates() {
        let all = enumerate_terms(6).unwrap();
        let mut sorted = all.clone();
        sorted.sort();
        sorted.dedup();
        assert_eq!(sorted.len(), all.len());
        assert!(enumerate_raw_terms(5).unwrap().len() > enumerate_terms(5).unwrap().len());
    }

    #[test]
    fn signature_examples() {
        let w = invariant_signature(&parse_term("w(1)").unwrap()).unwrap();
        assert_eq!(w.rank, 1);
        assert!(w.flags.has_min && !w.flags.has_max);
        assert_eq!(w.derivative_chain.len(), 1);
        let z = invariant_signature(&parse_term("z(1)").unwrap()).unwrap();
        assert_eq!(z.rank, 1);
        assert!(!z.flags.has_min && !z.flags.has_max);
        let a = invariant_signature(&Term::unit()).unwrap();
        assert_eq!(a.rank, 0);
        assert!(a.derivative_chain.is_empty());
        assert!(matches!(
            invariant_signature(&Term::Zero),
            Err(Error::EmptyOrder)
        ));
    }
}
