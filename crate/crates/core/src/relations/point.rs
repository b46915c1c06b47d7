use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::group::GroupElem;
use crate::error::{Error, Result};
use crate::lasso::{Lasso, ZLasso};

/// Finitely presented point of some relation's domain.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub enum PointValue {
    Atom(u64),
    Tuple(Vec<PointValue>),
    /// ω-sequence equal to `default` off the listed indices.
    SeqDefault {
        entries: BTreeMap<u64, PointValue>,
        default: Box<PointValue>,
    },
    LassoSeq(Lasso<PointValue>),
    LassoZ(ZLasso<PointValue>),
    FinSet(Vec<PointValue>),
    /// Map on a group, `default` off the support.
    GroupMap {
        support: Vec<(GroupElem, PointValue)>,
        default: Box<PointValue>,
    },
    /// Lazily evaluated map on a group, determined by `base` and `kind`.
    Equivariant {
        base: Box<PointValue>,
        kind: EqKind,
    },
}

/// Shapes of lazily evaluated points.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub enum EqKind {
    /// `α ↦ β ↦ ((γ, δ) ↦ x(αγ, βδ))` for a map `x` on `Γ × Γ`.
    GammaSquare,
    /// `s ↦ (n ↦ x_n, complemented when n ∈ s)` on `ℤ₂^{<ω}`.
    Flip,
    /// `n ↦ (p_n, (x_n, …, x_{n+d_n}))` for a class-id ℤ-lasso `x`.
    Anchored,
    /// `0 ↦ (h, ())` and `n ↦ (a_n, ())` with reserved distinct `a_n`.
    Marker,
    /// The set `{g_n ⌢ b ⌢ g_{n+1} : n ∈ ℤ}` over a class-id ℤ-lasso.
    Orbit,
}

impl PointValue {
    pub fn atom(n: u64) -> Self {
        PointValue::Atom(n)
    }

    pub fn tagged(tag: u64, v: PointValue) -> Self {
        PointValue::Tuple(vec![PointValue::Atom(tag), v])
    }

    pub fn seq(entries: impl IntoIterator<Item = (u64, PointValue)>, default: PointValue) -> Self {
        PointValue::SeqDefault {
            entries: entries.into_iter().collect(),
            default: Box::new(default),
        }
    }

    pub fn lasso_seq(prefix: Vec<PointValue>, period: Vec<PointValue>) -> Result<Self> {
        Ok(PointValue::LassoSeq(Lasso::new(prefix, period)?))
    }

    /// Binary one-sided lasso from bit strings.
    pub fn bits(prefix: &str, period: &str) -> Result<Self> {
        let conv = |s: &str| -> Result<Vec<PointValue>> {
            s.chars()
                .map(|c| match c {
                    '0' => Ok(PointValue::Atom(0)),
                    '1' => Ok(PointValue::Atom(1)),
                    _ => Err(Error::Schema(format!("bad bit {c:?}"))),
                })
                .collect()
        };
        Self::lasso_seq(conv(prefix)?, conv(period)?)
    }

    pub fn lasso_z(
        left: Vec<PointValue>,
        mid: Vec<PointValue>,
        right: Vec<PointValue>,
        origin: i64,
    ) -> Result<Self> {
        Ok(PointValue::LassoZ(ZLasso::new(left, mid, right, origin)?))
    }

    pub fn group_map(support: Vec<(GroupElem, PointValue)>, default: PointValue) -> Self {
        PointValue::GroupMap {
            support,
            default: Box::new(default),
        }
    }

    pub fn equivariant(base: PointValue, kind: EqKind) -> Self {
        PointValue::Equivariant {
            base: Box::new(base),
            kind,
        }
    }

    pub fn as_atom(&self) -> Option<u64> {
        match self {
            PointValue::Atom(n) => Some(*n),
            _ => None,
        }
    }

    /// Coordinate `n` of a `SeqDefault`.
    pub fn seq_at(&self, n: u64) -> Option<&PointValue> {
        match self {
            PointValue::SeqDefault { entries, default } => Some(entries.get(&n).unwrap_or(default)),
            _ => None,
        }
    }

    /// Value of a `GroupMap` at `g`.
    pub fn map_at(&self, g: &[i64]) -> Option<&PointValue> {
        match self {
            PointValue::GroupMap { support, default } => Some(
                support
                    .iter()
                    .find(|(k, _)| k.as_slice() == g)
                    .map(|(_, v)| v)
                    .unwrap_or(default),
            ),
            _ => None,
        }
    }

    /// Bitwise complement, applied through sequences of bits.
    pub fn flip(&self) -> Result<PointValue> {
        match self {
            PointValue::Atom(b @ 0..=1) => Ok(PointValue::Atom(1 - b)),
            PointValue::LassoSeq(l) => Ok(PointValue::LassoSeq(Lasso {
                prefix: l
                    .prefix
                    .iter()
                    .map(PointValue::flip)
                    .collect::<Result<_>>()?,
                period: l
                    .period
                    .iter()
                    .map(PointValue::flip)
                    .collect::<Result<_>>()?,
            })),
            PointValue::SeqDefault { entries, default } => Ok(PointValue::SeqDefault {
                entries: entries
                    .iter()
                    .map(|(k, v)| Ok((*k, v.flip()?)))
                    .collect::<Result<_>>()?,
                default: Box::new(default.flip()?),
            }),
            other => Err(Error::Schema(format!(
                "cannot complement {}",
                other.shape()
            ))),
        }
    }

    /// Short name of the variant, for error messages.
    pub fn shape(&self) -> &'static str {
        match self {
            PointValue::Atom(_) => "atom",
            PointValue::Tuple(_) => "tuple",
            PointValue::SeqDefault { .. } => "seqDefault",
            PointValue::LassoSeq(_) => "lassoSeq",
            PointValue::LassoZ(_) => "lassoZ",
            PointValue::FinSet(_) => "finSet",
            PointValue::GroupMap { .. } => "groupMap",
            PointValue::Equivariant { .. } => "equivariant",
        }
    }
}

/// `0, 1, -1, 2, -2, …` ↦ `0, 1, 2, 3, 4, …`.
pub fn zigzag(n: i64) -> u64 {
    if n > 0 {
        2 * n as u64 - 1
    } else {
        2 * n.unsigned_abs()
    }
}

fn join<T: fmt::Display>(f: &mut fmt::Formatter<'_>, xs: &[T], sep: &str) -> fmt::Result {
    for (i, x) in xs.iter().enumerate() {
        if i > 0 {
            f.write_str(sep)?;
        }
        write!(f, "{x}")?;
    }
    Ok(())
}

fn group_elem(g: &[i64]) -> String {
    let parts: Vec<String> = g.iter().map(i64::to_string).collect();
    format!("<{}>", parts.join(","))
}

impl fmt::Display for PointValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PointValue::Atom(n) => write!(f, "{n}"),
            PointValue::Tuple(xs) => {
                f.write_str("(")?;
                join(f, xs, ",")?;
                f.write_str(")")
            }
            PointValue::SeqDefault { entries, default } => {
                f.write_str("{")?;
                for (k, v) in entries {
                    write!(f, "{k}:{v},")?;
                }
                write!(f, "*:{default}}}")
            }
            PointValue::LassoSeq(l) => {
                join(f, &l.prefix, " ")?;
                f.write_str("[")?;
                join(f, &l.period, " ")?;
                f.write_str("]")
            }
            PointValue::LassoZ(z) => {
                f.write_str("[")?;
                join(f, &z.left, " ")?;
                f.write_str("]")?;
                join(f, &z.mid, " ")?;
                f.write_str("[")?;
                join(f, &z.right, " ")?;
                write!(f, "]@{}", z.origin)
            }
            PointValue::FinSet(xs) => {
                f.write_str("{{")?;
                join(f, xs, ",")?;
                f.write_str("}}")
            }
            PointValue::GroupMap { support, default } => {
                f.write_str("map{")?;
                for (g, v) in support {
                    write!(f, "{}:{v},", group_elem(g))?;
                }
                write!(f, "*:{default}}}")
            }
            PointValue::Equivariant { base, kind } => write!(f, "{kind:?}<{base}>"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_shape() {
        let z = PointValue::lasso_z(
            vec![PointValue::Atom(0)],
            vec![PointValue::Atom(1)],
            vec![PointValue::Atom(0)],
            0,
        )
        .unwrap();
        let s = serde_json::to_string(&z).unwrap();
        assert!(s.starts_with("{\"lassoZ\":{\"left\":"), "{s}");
        let back: PointValue = serde_json::from_str(&s).unwrap();
        assert_eq!(back, z);
        let sd = PointValue::seq([(2, PointValue::Atom(1))], PointValue::Atom(0));
        let back: PointValue = serde_json::from_str(&serde_json::to_string(&sd).unwrap()).unwrap();
        assert_eq!(back, sd);
    }

    #[test]
    fn flips() {
        let x = PointValue::bits("1", "01").unwrap();
        assert_eq!(x.flip().unwrap(), PointValue::bits("0", "10").unwrap());
        assert_eq!(x.flip().unwrap().flip().unwrap(), x);
        assert!(PointValue::Atom(2).flip().is_err());
    }

    #[test]
    fn zigzag_is_injective() {
        let v: Vec<u64> = (-3..=3).map(zigzag).collect();
        assert_eq!(v, vec![6, 4, 2, 0, 1, 3, 5]);
    }
}
