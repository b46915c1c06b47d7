use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::{MapKind, Reduction};
use crate::error::Result;
use crate::lasso::ZLasso;
use crate::relations::rel::{thin, words};
use crate::relations::{GroupDesc, PointValue, RelDesc};

fn e0(prefix: &str, period: &str) -> PointValue {
    PointValue::bits(prefix, period).expect("valid bit strings")
}

/// ℤ-lassos over `cells`, each also moved by a small shift.
fn int_lassos(cells: &[PointValue], cap: usize) -> Vec<PointValue> {
    let mut base = Vec::new();
    for left in words(cells, 1, 2) {
        for mid in words(cells, 0, 2) {
            for right in words(cells, 1, 2) {
                base.push(ZLasso {
                    left: left.clone(),
                    mid: mid.clone(),
                    right: right.clone(),
                    origin: 0,
                });
            }
        }
    }
    let base = thin(base, cap / 2);
    let mut out: Vec<PointValue> = base.iter().cloned().map(PointValue::LassoZ).collect();
    out.extend(
        base.iter()
            .enumerate()
            .map(|(i, z)| PointValue::LassoZ(z.shifted(1 + (i % 4) as i64))),
    );
    out
}

/// Cells for the ℤ-jump of `E₀`: two spellings of one class and two more
/// classes.
fn e0_cells() -> Vec<PointValue> {
    vec![e0("", "0"), e0("1", "0"), e0("", "1"), e0("", "01")]
}

fn swap_c2(x: &PointValue) -> PointValue {
    match x {
        PointValue::GroupMap { .. } => {
            let a = x.map_at(&[0]).unwrap().clone();
            let b = x.map_at(&[1]).unwrap().clone();
            PointValue::group_map(vec![(vec![0], b.clone()), (vec![1], a)], b)
        }
        other => other.clone(),
    }
}

/// Tower points over `C2`: random values, their translates, and copies
/// with every coordinate replaced by an equivalent translate.
fn tower_points(r: &Reduction, n: usize, bound: usize) -> Result<Vec<PointValue>> {
    let g = GroupDesc::cyclic(2);
    let pools = (0..n)
        .map(|k| Ok(RelDesc::iterate_jump(RelDesc::delta(2), g.clone(), k)?.enumerate(4)))
        .collect::<Result<Vec<_>>>()?;
    let mut rng = ChaCha8Rng::seed_from_u64(r.seed);
    let mut value = || {
        PointValue::Tuple(
            pools
                .iter()
                .map(|p| p.choose(&mut rng).unwrap().clone())
                .collect(),
        )
    };
    let mut out = Vec::new();
    for _ in 0..6 * bound {
        let a = value();
        let x = PointValue::group_map(vec![(vec![0], a.clone()), (vec![1], value())], a);
        let inner_moved = match &x {
            PointValue::GroupMap { support, .. } => {
                let s: Vec<_> = support
                    .iter()
                    .map(|(a, v)| match v {
                        PointValue::Tuple(cs) => (
                            a.clone(),
                            PointValue::Tuple(cs.iter().map(swap_c2).collect()),
                        ),
                        _ => (a.clone(), v.clone()),
                    })
                    .collect();
                let d = s[0].1.clone();
                PointValue::group_map(s, d)
            }
            _ => unreachable!(),
        };
        out.push(swap_c2(&x));
        out.push(x);
        out.push(inner_moved);
    }
    Ok(out)
}

/// Level-2 sample: defaults and entries from a pool holding complements
/// and several spellings of each class.
fn a2_points() -> Vec<PointValue> {
    let u = [
        e0("", "0"),
        e0("", "1"),
        e0("1", "0"),
        e0("", "01"),
        e0("", "10"),
        e0("0", "1"),
        e0("", "001"),
    ];
    let seq = |d: &PointValue, e0v: Option<&PointValue>, e1v: Option<&PointValue>| {
        let entries = [(0u64, e0v), (1, e1v)]
            .into_iter()
            .filter_map(|(k, v)| v.map(|v| (k, v.clone())));
        PointValue::seq(entries, d.clone())
    };
    let mut out = Vec::new();
    let opts = [None, Some(&u[0]), Some(&u[1]), Some(&u[3]), Some(&u[4])];
    for d in [&u[0], &u[2]] {
        for a in &opts {
            for b in &opts {
                out.push(seq(d, *a, *b));
            }
        }
    }
    for a in [None, Some(&u[0]), Some(&u[3])] {
        for b in [None, Some(&u[6])] {
            out.push(seq(&u[5], a, b));
        }
    }
    for a in [None, Some(&u[4])] {
        out.push(seq(&u[3], a, None));
    }
    out
}

pub(super) fn points(r: &Reduction, bound: usize) -> Result<Vec<PointValue>> {
    let cap = 16 * bound;
    let over_e0 = r.source == RelDesc::jump(RelDesc::e0(), GroupDesc::Int)?;
    Ok(match &r.kind {
        MapKind::FreeToPi => {
            let pool = if over_e0 {
                int_lassos(&e0_cells(), 2 * cap)
            } else {
                r.source.enumerate(2 * bound)
            };
            let mut out = Vec::new();
            for p in pool {
                if r.source.freeness(&p)?.free {
                    out.push(p);
                }
            }
            thin(out, cap)
        }
        MapKind::ZJumpToFs | MapKind::Z2Pi if over_e0 => int_lassos(&e0_cells(), cap),
        MapKind::DccPhi(n) => tower_points(r, *n, bound)?,
        MapKind::AStep(2) => thin(a2_points(), cap),
        _ => r.source.enumerate(bound),
    })
}
