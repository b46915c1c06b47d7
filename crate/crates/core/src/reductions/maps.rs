use super::{MapKind, Reduction};
use crate::error::{Error, Result};
use crate::lasso::ZLasso;
use crate::relations::lazy::{full_period, periodic_element};
use crate::relations::{EqKind, GroupDesc, PointValue, RelDesc};

/// Reserved letter `a` used as filler.
fn letter_a(tag: u64) -> PointValue {
    PointValue::tagged(tag, PointValue::Atom(0))
}

/// `k`-th element of `0, 2, 5, 9, 14, …`; consecutive gaps grow by one, so
/// no nonzero translate of the set meets it in the same pattern.
pub(crate) fn aperiodic_point(k: u64) -> i64 {
    (k * (k + 3) / 2) as i64
}

/// `0, 1, -1, 2, -2, …`
fn zigzag_position(n: usize) -> i64 {
    let n = n as i64;
    if n % 2 == 1 {
        (n + 1) / 2
    } else {
        -n / 2
    }
}

fn inner_of(r: &RelDesc) -> Result<&RelDesc> {
    match r {
        RelDesc::Jump(e, _) | RelDesc::PowerOmega(e) => Ok(e),
        _ => Err(Error::Schema(format!("{} has no inner relation", r.name()))),
    }
}

pub(super) fn map(r: &Reduction, x: &PointValue) -> Result<PointValue> {
    let src = &r.source;
    match &r.kind {
        MapKind::PowerIntoJump => {
            let PointValue::SeqDefault { entries, .. } = src.canon(x)? else {
                return Err(Error::Schema("expected seqDefault".into()));
            };
            let n = entries.keys().next_back().map_or(1, |k| k + 2);
            let support = (0..n)
                .map(|k| {
                    (
                        vec![aperiodic_point(k)],
                        PointValue::tagged(0, x.seq_at(k).unwrap().clone()),
                    )
                })
                .collect();
            Ok(PointValue::group_map(support, letter_a(1)))
        }
        MapKind::Subgroup => {
            let z = src.int_lasso(x)?;
            let a = PointValue::Atom(0);
            let pad = |w: &[PointValue]| -> Vec<PointValue> {
                w.iter().flat_map(|v| [v.clone(), a.clone()]).collect()
            };
            Ok(PointValue::LassoZ(ZLasso::new(
                pad(&z.left),
                pad(&z.mid),
                pad(&z.right),
                2 * z.origin,
            )?))
        }
        MapKind::Quotient => {
            let cells = (0..3)
                .map(|i| src.eval_at(x, &[i]))
                .collect::<Result<Vec<_>>>()?;
            Ok(PointValue::LassoZ(ZLasso::new(
                cells.clone(),
                Vec::new(),
                cells,
                0,
            )?))
        }
        MapKind::GammaSquare => Ok(PointValue::equivariant(x.clone(), EqKind::GammaSquare)),
        MapKind::AbsorbPower => {
            let z = src.int_lasso(x)?;
            let col = |cell: &PointValue| -> Result<PointValue> {
                let PointValue::SeqDefault { entries, default } = cell else {
                    return Err(Error::Schema(format!(
                        "expected seqDefault, got {}",
                        cell.shape()
                    )));
                };
                let mut cells = vec![(0, letter_a(1))];
                for (k, v) in entries {
                    let k = *k as i64;
                    let beta = if k % 2 == 0 { k / 2 + 1 } else { -(k + 1) / 2 };
                    cells.push((beta, PointValue::tagged(0, v.clone())));
                }
                Ok(PointValue::LassoZ(ZLasso::with_entries(
                    PointValue::tagged(0, (**default).clone()),
                    &cells,
                )))
            };
            Ok(PointValue::LassoZ(z.try_map(col)?))
        }
        MapKind::FreeToPi => {
            if !src.freeness(x)?.free {
                return Err(Error::Precondition("point is not in the free part".into()));
            }
            Ok(PointValue::equivariant(x.clone(), EqKind::Anchored))
        }
        MapKind::ZJumpToFs => {
            let cb = src.canon_base(inner_of(src)?, x)?;
            Ok(match full_period(&cb) {
                Some(k) => {
                    let mut set: Vec<PointValue> =
                        (0..k).map(|i| periodic_element(&cb, i, k)).collect();
                    set.sort();
                    set.dedup();
                    PointValue::FinSet(set)
                }
                None => PointValue::equivariant(PointValue::LassoZ(cb), EqKind::Orbit),
            })
        }
        MapKind::Z2Pi => {
            let cb = src.canon_base(inner_of(src)?, x)?;
            Ok(match full_period(&cb) {
                Some(k) => {
                    let mut rots: Vec<PointValue> = (0..k)
                        .map(|i| PointValue::Tuple(cb.window(i, i + k)))
                        .collect();
                    rots.sort();
                    rots.dedup();
                    PointValue::equivariant(PointValue::FinSet(rots), EqKind::Marker)
                }
                None => PointValue::equivariant(x.clone(), EqKind::Anchored),
            })
        }
        MapKind::LimitToProduct(n) => {
            let PointValue::Tuple(xs) = x else {
                return Err(Error::Schema("expected a tuple".into()));
            };
            let cells: Vec<(i64, PointValue)> = xs
                .iter()
                .enumerate()
                .map(|(i, v)| (zigzag_position(i), PointValue::tagged(i as u64, v.clone())))
                .collect();
            Ok(PointValue::LassoZ(ZLasso::with_entries(
                letter_a(*n as u64),
                &cells,
            )))
        }
        MapKind::DccPhi(n) => {
            let g = GroupDesc::cyclic(2);
            let elems = g.elements().unwrap();
            let vals = elems
                .iter()
                .map(|a| src.eval_at(x, a))
                .collect::<Result<Vec<_>>>()?;
            let mut levels = Vec::with_capacity(*n);
            for k in 1..=*n {
                let support: Vec<_> = elems
                    .iter()
                    .zip(&vals)
                    .map(|(a, v)| match v {
                        PointValue::Tuple(cs) => {
                            Ok((a.clone(), PointValue::Tuple(cs[..k].to_vec())))
                        }
                        _ => Err(Error::Schema("tower values must be tuples".into())),
                    })
                    .collect::<Result<_>>()?;
                let d = support[0].1.clone();
                levels.push(PointValue::group_map(support, d));
            }
            Ok(PointValue::Tuple(levels))
        }
        MapKind::AStep(_) => Ok(PointValue::equivariant(x.clone(), EqKind::Flip)),
    }
}
