//! Evaluation of `Equivariant` points.

use std::collections::BTreeMap;

use super::group::{GroupDesc, GroupElem};
use super::point::{zigzag, PointValue};
use crate::error::{Error, Result};
use crate::lasso::ZLasso;

/// Tags of the letters in the sequences built for the FS coding.
pub const TAG_VALUE: u64 = 0;
pub const TAG_PATTERN: u64 = 1;
pub const TAG_RESERVED: u64 = 2;
/// Reserved letters `a` and `b`.
pub const LETTER_A: u64 = 0;
pub const LETTER_B: u64 = 1;

pub fn as_zlasso(p: &PointValue) -> Result<&ZLasso<PointValue>> {
    match p {
        PointValue::LassoZ(z) => Ok(z),
        other => Err(Error::Schema(format!(
            "expected lassoZ, got {}",
            other.shape()
        ))),
    }
}

/// Equality pattern of a sequence: cells renamed to `0, 1, …` in order of
/// first occurrence in the normal form. Two sequences get the same pattern
/// iff one is an injective relabelling of the other.
pub fn pattern(z: &ZLasso<PointValue>) -> ZLasso<PointValue> {
    let n = z.normalized();
    let mut names: BTreeMap<PointValue, u64> = BTreeMap::new();
    let mut rename = |v: &PointValue| {
        let next = names.len() as u64;
        PointValue::Atom(*names.entry(v.clone()).or_insert(next))
    };
    let left: Vec<PointValue> = n.left.iter().map(&mut rename).collect();
    let mid: Vec<PointValue> = n.mid.iter().map(&mut rename).collect();
    let right: Vec<PointValue> = n.right.iter().map(&mut rename).collect();
    ZLasso {
        left,
        mid,
        right,
        origin: n.origin,
    }
}

/// `p_n`: the pattern of `x` viewed from position `n`.
pub fn pattern_at(x: &ZLasso<PointValue>, n: i64) -> ZLasso<PointValue> {
    pattern(&x.shifted(-n))
}

/// Primitive period of a fully periodic lasso.
pub fn full_period(x: &ZLasso<PointValue>) -> Option<i64> {
    let n = x.normalized();
    (n.mid.is_empty() && n.left == n.right).then_some(n.left.len() as i64)
}

/// `d_n`: least `d > 0` with `x_n = x_{n+d}` and `p_n = p_{n+d}`, else 0.
pub fn anchored_d(x: &ZLasso<PointValue>, n: i64) -> i64 {
    let Some(period) = full_period(x) else {
        return 0;
    };
    let p = pattern_at(x, n);
    (1..=period)
        .find(|&d| x.at(n) == x.at(n + d) && pattern_at(x, n + d) == p)
        .unwrap_or(period)
}

/// `g_n` as a word of tagged letters: the pattern, then `x_n, …, x_{n+d_n}`.
pub fn anchored_block(x: &ZLasso<PointValue>, n: i64) -> Vec<PointValue> {
    let d = anchored_d(x, n);
    let mut out = vec![PointValue::tagged(
        TAG_PATTERN,
        PointValue::LassoZ(pattern_at(x, n)),
    )];
    out.extend((n..=n + d).map(|i| PointValue::tagged(TAG_VALUE, x.at(i).clone())));
    out
}

/// `y_n = (p_n, (x_n, …, x_{n+d_n}))`.
pub fn anchored_value(x: &ZLasso<PointValue>, n: i64) -> PointValue {
    let d = anchored_d(x, n);
    PointValue::Tuple(vec![
        PointValue::LassoZ(pattern_at(x, n)),
        PointValue::Tuple(x.window(n, n + d + 1)),
    ])
}

/// Marker point: `h` at the origin, distinct reserved letters elsewhere.
pub fn marker_value(h: &PointValue, n: i64) -> PointValue {
    let head = if n == 0 {
        h.clone()
    } else {
        PointValue::Atom(zigzag(n))
    };
    PointValue::Tuple(vec![head, PointValue::Tuple(Vec::new())])
}

/// `g_n ⌢ b ⌢ g_{n+1}`.
pub fn orbit_element(x: &ZLasso<PointValue>, n: i64) -> PointValue {
    let mut w = anchored_block(x, n);
    w.push(PointValue::tagged(TAG_RESERVED, PointValue::Atom(LETTER_B)));
    w.extend(anchored_block(x, n + 1));
    PointValue::Tuple(w)
}

/// `(a, x_i, …, x_{i+k-1})` for a `k`-periodic sequence.
pub fn periodic_element(x: &ZLasso<PointValue>, i: i64, k: i64) -> PointValue {
    let mut w = vec![PointValue::tagged(TAG_RESERVED, PointValue::Atom(LETTER_A))];
    w.extend((i..i + k).map(|j| PointValue::tagged(TAG_VALUE, x.at(j).clone())));
    PointValue::Tuple(w)
}

/// The sequence `n ↦ x_n`, complemented at the coordinates in `s`.
pub fn flip_value(x: &PointValue, s: &[i64]) -> Result<PointValue> {
    let PointValue::SeqDefault { entries, default } = x else {
        return Err(Error::Schema(format!(
            "flip base must be seqDefault, got {}",
            x.shape()
        )));
    };
    let mut out = entries.clone();
    for &n in s {
        let n = u64::try_from(n).map_err(|_| Error::Schema("negative coordinate".into()))?;
        let v = entries.get(&n).unwrap_or(default).flip()?;
        out.insert(n, v);
    }
    Ok(PointValue::SeqDefault {
        entries: out,
        default: default.clone(),
    })
}

/// Writes out `α ↦ β ↦ ((γ, δ) ↦ x(αγ, βδ))` for finite `Γ`.
pub fn gamma_square(x: &PointValue, g: &GroupDesc) -> Result<PointValue> {
    let elems = g
        .elements()
        .ok_or_else(|| Error::Unsupported("gamma-square images need a finite group".into()))?;
    let at = |a: &GroupElem, b: &GroupElem| -> Result<PointValue> {
        let key: GroupElem = a.iter().chain(b).copied().collect();
        x.map_at(&key).cloned().ok_or_else(|| {
            Error::Schema(format!(
                "gamma-square base must be groupMap, got {}",
                x.shape()
            ))
        })
    };
    let mut outer = Vec::new();
    for alpha in &elems {
        let mut inner = Vec::new();
        for beta in &elems {
            let mut code = Vec::new();
            for gamma in &elems {
                for delta in &elems {
                    let key: GroupElem = gamma.iter().chain(delta).copied().collect();
                    code.push((key, at(&g.mul(alpha, gamma), &g.mul(beta, delta))?));
                }
            }
            let d = code[0].1.clone();
            inner.push((beta.clone(), PointValue::group_map(code, d)));
        }
        let d = inner[0].1.clone();
        outer.push((alpha.clone(), PointValue::group_map(inner, d)));
    }
    let d = outer[0].1.clone();
    Ok(PointValue::group_map(outer, d))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a(n: u64) -> PointValue {
        PointValue::Atom(n)
    }

    #[test]
    fn patterns_forget_names() {
        let x = ZLasso::new(vec![a(5)], vec![a(7), a(5)], vec![a(9)], 0).unwrap();
        let y = x.map(|v| match v {
            PointValue::Atom(n) => a(n + 100),
            o => o.clone(),
        });
        assert_eq!(pattern(&x), pattern(&y));
        assert_ne!(pattern(&x), pattern(&x.shifted(1)));
    }

    #[test]
    fn d_is_zero_off_periodic() {
        let x = ZLasso::with_entries(a(0), &[(0, a(1))]);
        assert_eq!(anchored_d(&x, 0), 0);
        let p = ZLasso::new(
            vec![a(0), a(1), a(0), a(2)],
            vec![],
            vec![a(0), a(1), a(0), a(2)],
            0,
        )
        .unwrap();
        // the shift by 2 relabels 1 <-> 2 and fixes 0
        assert_eq!(anchored_d(&p, 0), 2);
        assert_eq!(anchored_d(&p, 1), 4);
    }

    #[test]
    fn marker_letters_distinct() {
        let h = PointValue::FinSet(vec![]);
        let vals: Vec<PointValue> = (-4..=4).map(|n| marker_value(&h, n)).collect();
        for i in 0..vals.len() {
            for j in 0..i {
                assert_ne!(vals[i], vals[j]);
            }
        }
    }
}
