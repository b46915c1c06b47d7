//! Decisions, witnesses and canonical forms for Γ-jumps.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::group::{GroupDesc, GroupElem};
use super::lazy;
use super::point::{EqKind, PointValue};
use super::rel::{finite_normal_form, schema, RelDesc};
use crate::error::{Error, Result};
use crate::lasso::{lcm, ZLasso};

/// Flip witnesses are searched over subsets of `0..N` with `N` at most this.
const MAX_FLIP_COORDS: usize = 20;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct Freeness {
    pub free: bool,
    pub pairwise_inequivalent: bool,
}

/// A ℤ-indexed jump point after replacing cells by class representatives.
enum ZView {
    Lasso(ZLasso<PointValue>),
    /// Non-periodic anchored point over its canonical base.
    Anchored(ZLasso<PointValue>),
    Marker(PointValue),
}

impl RelDesc {
    fn jump_parts(&self) -> Result<(&RelDesc, &GroupDesc)> {
        match self {
            RelDesc::Jump(e, g) | RelDesc::Pow(e, g) => Ok((e, g)),
            _ => Err(schema(format!("{} is not a jump", self.name()))),
        }
    }

    /// Some `γ` with `γ·x E^Γ y`, i.e. `x(γ⁻¹α) E y(α)` for all `α`.
    pub fn witness(&self, x: &PointValue, y: &PointValue) -> Result<Option<GroupElem>> {
        let RelDesc::Jump(e, g) = self else {
            return Err(schema(format!("{} is not a jump", self.name())));
        };
        self.check(x)?;
        self.check(y)?;
        self.jump_witness(e, g, x, y)
    }

    /// Value of a jump or power point at a group element.
    pub fn eval_at(&self, x: &PointValue, a: &[i64]) -> Result<PointValue> {
        let (_, g) = self.jump_parts()?;
        if !g.contains(a) {
            return Err(schema(format!("{a:?} is not an element of {}", g.name())));
        }
        match x {
            PointValue::GroupMap { .. } => Ok(x.map_at(a).unwrap().clone()),
            PointValue::LassoZ(z) if *g == GroupDesc::Int => Ok(z.at(a[0]).clone()),
            PointValue::LassoZ(z) => match z.at(a[0]) {
                PointValue::LassoZ(col) => Ok(col.at(a[1]).clone()),
                _ => Err(schema("grid columns must be lassoZ")),
            },
            PointValue::Equivariant { base, kind } => match kind {
                EqKind::GammaSquare => Ok(lazy::gamma_square(base, g)?.map_at(a).unwrap().clone()),
                EqKind::Flip => lazy::flip_value(base, a),
                EqKind::Anchored => {
                    let cb = self.canon_base(self.anchored_inner()?, base)?;
                    Ok(lazy::anchored_value(&cb, a[0]))
                }
                EqKind::Marker => Ok(lazy::marker_value(base, a[0])),
                EqKind::Orbit => Err(schema("orbit sets are not jump points")),
            },
            other => Err(schema(format!(
                "{} is not a map on {}",
                other.shape(),
                g.name()
            ))),
        }
    }

    /// Cells of a point over a finite group, in `elements()` order.
    fn finite_cells(&self, g: &GroupDesc, x: &PointValue) -> Result<Vec<PointValue>> {
        let x = match x {
            PointValue::Equivariant {
                base,
                kind: EqKind::GammaSquare,
            } => lazy::gamma_square(base, g)?,
            PointValue::GroupMap { .. } => x.clone(),
            other => {
                return Err(schema(format!(
                    "{} is not a map on {}",
                    other.shape(),
                    g.name()
                )))
            }
        };
        Ok(g.elements()
            .unwrap()
            .iter()
            .map(|a| x.map_at(a).unwrap().clone())
            .collect())
    }

    fn z_view(&self, e: &RelDesc, x: &PointValue) -> Result<ZView> {
        match x {
            PointValue::Equivariant {
                base,
                kind: EqKind::Anchored,
            } => {
                let cb = self.canon_base(self.anchored_inner()?, base)?;
                match lazy::full_period(&cb) {
                    Some(p) => {
                        let vals: Vec<PointValue> = (0..p)
                            .map(|n| e.canon_unchecked(&lazy::anchored_value(&cb, n)))
                            .collect::<Result<_>>()?;
                        Ok(ZView::Lasso(
                            ZLasso::new(vals.clone(), Vec::new(), vals, 0)?.normalized(),
                        ))
                    }
                    None => Ok(ZView::Anchored(cb)),
                }
            }
            PointValue::Equivariant {
                base,
                kind: EqKind::Marker,
            } => Ok(ZView::Marker((**base).clone())),
            _ => Ok(ZView::Lasso(
                self.int_lasso(x)?
                    .try_map(|v| e.canon_unchecked(v))?
                    .normalized(),
            )),
        }
    }

    pub(crate) fn jump_witness(
        &self,
        e: &RelDesc,
        g: &GroupDesc,
        x: &PointValue,
        y: &PointValue,
    ) -> Result<Option<GroupElem>> {
        match g {
            GroupDesc::Int => Ok(match (self.z_view(e, x)?, self.z_view(e, y)?) {
                (ZView::Lasso(a), ZView::Lasso(b)) | (ZView::Anchored(a), ZView::Anchored(b)) => {
                    a.find_shift(&b).map(|k| vec![k])
                }
                (ZView::Marker(h), ZView::Marker(k)) => (h == k).then(|| vec![0]),
                _ => None,
            }),
            GroupDesc::IntPower(2) => self.grid_witness(e, x, y),
            g if g.is_finite() => self.finite_witness(e, g, x, y),
            GroupDesc::Z2FinSupp
                if matches!(x, PointValue::Equivariant { .. })
                    || matches!(y, PointValue::Equivariant { .. }) =>
            {
                self.flip_witness(e, x, y)
            }
            _ => self.sparse_witness(e, g, x, y),
        }
    }

    fn finite_witness(
        &self,
        e: &RelDesc,
        g: &GroupDesc,
        x: &PointValue,
        y: &PointValue,
    ) -> Result<Option<GroupElem>> {
        let elems = g.elements().unwrap();
        let index: BTreeMap<&GroupElem, usize> =
            elems.iter().enumerate().map(|(i, a)| (a, i)).collect();
        let mut cx = self.finite_cells(g, x)?;
        let mut cy = self.finite_cells(g, y)?;
        let complete = e.canon_complete();
        if complete {
            cx = cx
                .iter()
                .map(|v| e.canon_unchecked(v))
                .collect::<Result<_>>()?;
            cy = cy
                .iter()
                .map(|v| e.canon_unchecked(v))
                .collect::<Result<_>>()?;
        }
        'gamma: for gamma in &elems {
            let inv = g.inv(gamma);
            for (j, alpha) in elems.iter().enumerate() {
                let i = index[&g.mul(&inv, alpha)];
                let same = if complete {
                    cx[i] == cy[j]
                } else {
                    e.decide_unchecked(&cx[i], &cy[j])?
                };
                if !same {
                    continue 'gamma;
                }
            }
            return Ok(Some(gamma.clone()));
        }
        Ok(None)
    }

    /// Effective support and default with canonical cells.
    fn sparse_canon(
        &self,
        e: &RelDesc,
        x: &PointValue,
    ) -> Result<(Vec<(GroupElem, PointValue)>, PointValue)> {
        let PointValue::GroupMap { support, default } = x else {
            return Err(schema(format!("expected groupMap, got {}", x.shape())));
        };
        let d = e.canon_unchecked(default)?;
        let mut out = Vec::new();
        for (k, v) in support {
            let c = e.canon_unchecked(v)?;
            if c != d {
                out.push((k.clone(), c));
            }
        }
        out.sort();
        Ok((out, d))
    }

    /// Candidates `γ = α β₀⁻¹` aligning a fixed support point of `x` with
    /// each support point of `y`.
    fn sparse_witness(
        &self,
        e: &RelDesc,
        g: &GroupDesc,
        x: &PointValue,
        y: &PointValue,
    ) -> Result<Option<GroupElem>> {
        let (sx, dx) = self.sparse_canon(e, x)?;
        let (sy, dy) = self.sparse_canon(e, y)?;
        if dx != dy || sx.len() != sy.len() {
            return Ok(None);
        }
        if sx.is_empty() {
            return Ok(Some(g.identity()));
        }
        let ymap: BTreeMap<&GroupElem, &PointValue> = sy.iter().map(|(k, v)| (k, v)).collect();
        let b0 = g.inv(&sx[0].0);
        for (alpha, _) in &sy {
            let gamma = g.mul(alpha, &b0);
            if sx
                .iter()
                .all(|(s, v)| ymap.get(&g.mul(&gamma, s)) == Some(&v))
            {
                return Ok(Some(gamma));
            }
        }
        Ok(None)
    }

    fn flip_parts<'a>(&self, x: &'a PointValue) -> Result<&'a PointValue> {
        match x {
            PointValue::Equivariant {
                base,
                kind: EqKind::Flip,
            } => Ok(base),
            _ => Err(Error::Unsupported(format!(
                "comparing flip points with {} points",
                x.shape()
            ))),
        }
    }

    /// Search `γ ⊆ 0..N` with `flip^{γ(n)} x_n E y_n` for all `n`.
    fn flip_witness(
        &self,
        e: &RelDesc,
        x: &PointValue,
        y: &PointValue,
    ) -> Result<Option<GroupElem>> {
        let RelDesc::PowerOmega(inner) = e else {
            return Err(schema("flip points need a countable power inside"));
        };
        let bx = self.flip_parts(x)?;
        let by = self.flip_parts(y)?;
        let (
            PointValue::SeqDefault {
                entries: ex,
                default: dx,
            },
            PointValue::SeqDefault {
                entries: ey,
                default: dy,
            },
        ) = (bx, by)
        else {
            return Err(schema("flip bases must be seqDefault"));
        };
        if !inner.decide_unchecked(dx, dy)? {
            return Ok(None);
        }
        let n = ex
            .keys()
            .chain(ey.keys())
            .map(|k| *k as usize + 1)
            .max()
            .unwrap_or(0);
        if n > MAX_FLIP_COORDS {
            return Err(Error::CapExceeded(format!(
                "flip search over {n} coordinates"
            )));
        }
        let mut same = Vec::with_capacity(n);
        let mut flipped = Vec::with_capacity(n);
        for k in 0..n as u64 {
            let a = bx.seq_at(k).unwrap();
            let b = by.seq_at(k).unwrap();
            same.push(inner.decide_unchecked(a, b)?);
            flipped.push(inner.decide_unchecked(&a.flip()?, b)?);
        }
        for mask in 0u64..1 << n {
            if (0..n).all(|k| {
                if mask >> k & 1 == 1 {
                    flipped[k]
                } else {
                    same[k]
                }
            }) {
                return Ok(Some((0..n as i64).filter(|k| mask >> k & 1 == 1).collect()));
            }
        }
        Ok(None)
    }

    /// Witness `(γ, δ)` on `ℤ²`: try each column shift `δ` that can align
    /// some column of `x` with a fixed column of `y`, then shift the outer
    /// lasso.
    fn grid_witness(
        &self,
        e: &RelDesc,
        x: &PointValue,
        y: &PointValue,
    ) -> Result<Option<GroupElem>> {
        let gx = self.grid_canon_cells(e, x)?;
        let gy = self.grid_canon_cells(e, y)?;
        let cols = |z: &ZLasso<PointValue>| -> Vec<ZLasso<PointValue>> {
            z.cells()
                .map(|c| match c {
                    PointValue::LassoZ(col) => col.clone(),
                    _ => unreachable!("grid cells are lassos"),
                })
                .collect()
        };
        let cx = cols(&gx);
        let cy = cols(&gy);
        let mut deltas: Vec<i64> = Vec::new();
        if let Some(anchor) = cy.iter().find(|c| !c.is_fully_periodic()) {
            for c in &cx {
                if let Some(k) = c.find_shift(anchor) {
                    deltas.push(k);
                }
            }
        } else {
            let period = cx
                .iter()
                .chain(&cy)
                .map(|c| c.normalized().left.len() as u64)
                .fold(1, lcm) as i64;
            deltas.extend(0..period);
        }
        deltas.sort_unstable();
        deltas.dedup();
        for d in deltas {
            let shifted = gx
                .map(|c| match c {
                    PointValue::LassoZ(col) => PointValue::LassoZ(col.shifted(d).normalized()),
                    other => other.clone(),
                })
                .normalized();
            if let Some(k) = shifted.find_shift(&gy) {
                return Ok(Some(vec![k, d]));
            }
        }
        Ok(None)
    }

    pub(crate) fn jump_canon(
        &self,
        e: &RelDesc,
        g: &GroupDesc,
        x: &PointValue,
    ) -> Result<PointValue> {
        match g {
            GroupDesc::Int => Ok(match self.z_view(e, x)? {
                ZView::Lasso(a) => PointValue::LassoZ(a.shift_canon()),
                ZView::Anchored(b) => {
                    PointValue::equivariant(PointValue::LassoZ(b.shift_canon()), EqKind::Anchored)
                }
                ZView::Marker(_) => x.clone(),
            }),
            GroupDesc::IntPower(2) => Ok(PointValue::LassoZ(self.grid_canon_cells(e, x)?)),
            g if g.is_finite() => {
                let elems = g.elements().unwrap();
                let index: BTreeMap<&GroupElem, usize> =
                    elems.iter().enumerate().map(|(i, a)| (a, i)).collect();
                let cells: Vec<PointValue> = self
                    .finite_cells(g, x)?
                    .iter()
                    .map(|v| e.canon_unchecked(v))
                    .collect::<Result<_>>()?;
                let mut best: Option<PointValue> = None;
                for gamma in &elems {
                    let inv = g.inv(gamma);
                    let vals: Vec<PointValue> = elems
                        .iter()
                        .map(|a| cells[index[&g.mul(&inv, a)]].clone())
                        .collect();
                    let nf = finite_normal_form(&elems, &vals);
                    if best.as_ref().is_none_or(|b| nf < *b) {
                        best = Some(nf);
                    }
                }
                Ok(best.unwrap())
            }
            GroupDesc::Z2FinSupp if matches!(x, PointValue::Equivariant { .. }) => {
                let RelDesc::PowerOmega(inner) = e else {
                    return Err(schema("flip points need a countable power inside"));
                };
                let base = self.flip_parts(x)?;
                Ok(PointValue::equivariant(
                    flip_pair_canon(inner, base)?,
                    EqKind::Flip,
                ))
            }
            _ => {
                let (s, d) = self.sparse_canon(e, x)?;
                if s.is_empty() {
                    return Ok(PointValue::group_map(s, d));
                }
                let mut best: Option<PointValue> = None;
                for (alpha, _) in &s {
                    let gamma = g.inv(alpha);
                    let mut moved: Vec<(GroupElem, PointValue)> = s
                        .iter()
                        .map(|(k, v)| (g.mul(&gamma, k), v.clone()))
                        .collect();
                    moved.sort();
                    let nf = PointValue::group_map(moved, d.clone());
                    if best.as_ref().is_none_or(|b| nf < *b) {
                        best = Some(nf);
                    }
                }
                Ok(best.unwrap())
            }
        }
    }

    /// Whether `x` has trivial stabilizer, and whether its coordinates are
    /// pairwise inequivalent.
    pub fn freeness(&self, x: &PointValue) -> Result<Freeness> {
        let RelDesc::Jump(e, g) = self else {
            return Err(schema(format!("{} is not a jump", self.name())));
        };
        self.check(x)?;
        let out = match g {
            GroupDesc::Int => match self.z_view(e, x)? {
                ZView::Lasso(a) => Freeness {
                    free: !a.is_fully_periodic(),
                    pairwise_inequivalent: false,
                },
                ZView::Anchored(_) | ZView::Marker(_) => Freeness {
                    free: true,
                    pairwise_inequivalent: true,
                },
            },
            g if g.is_finite() => {
                let elems = g.elements().unwrap();
                let mut stabilized = false;
                for gamma in elems.iter().skip(1) {
                    let moved = self.translate_finite(g, x, gamma)?;
                    if self
                        .finite_witness(e, g, &moved, x)?
                        .is_some_and(|w| w == g.identity())
                    {
                        stabilized = true;
                        break;
                    }
                }
                let cells = self.finite_cells(g, x)?;
                let mut pi = true;
                'outer: for i in 0..cells.len() {
                    for j in 0..i {
                        if e.decide_unchecked(&cells[i], &cells[j])? {
                            pi = false;
                            break 'outer;
                        }
                    }
                }
                Freeness {
                    free: !stabilized,
                    pairwise_inequivalent: pi,
                }
            }
            GroupDesc::Z2FinSupp if matches!(x, PointValue::Equivariant { .. }) => {
                let RelDesc::PowerOmega(inner) = e.as_ref() else {
                    return Err(schema("flip points need a countable power inside"));
                };
                let PointValue::SeqDefault { entries, default } = self.flip_parts(x)? else {
                    return Err(schema("flip bases must be seqDefault"));
                };
                let mut free = true;
                for v in entries.values().chain(std::iter::once(&**default)) {
                    if inner.decide_unchecked(&v.flip()?, v)? {
                        free = false;
                    }
                }
                Freeness {
                    free,
                    pairwise_inequivalent: free,
                }
            }
            GroupDesc::IntPower(_) => {
                return Err(Error::Unsupported("freeness over Z^2".into()));
            }
            _ => {
                let (s, _) = self.sparse_canon(e, x)?;
                let mut free = !s.is_empty();
                if free {
                    let set: BTreeMap<&GroupElem, &PointValue> =
                        s.iter().map(|(k, v)| (k, v)).collect();
                    let b0 = g.inv(&s[0].0);
                    for (alpha, _) in &s {
                        let gamma = g.mul(alpha, &b0);
                        if gamma != g.identity()
                            && s.iter()
                                .all(|(k, v)| set.get(&g.mul(&gamma, k)) == Some(&v))
                        {
                            free = false;
                        }
                    }
                }
                Freeness {
                    free,
                    pairwise_inequivalent: false,
                }
            }
        };
        debug_assert!(!out.pairwise_inequivalent || out.free);
        Ok(out)
    }

    /// `γ·x` written out over a finite group.
    fn translate_finite(&self, g: &GroupDesc, x: &PointValue, gamma: &[i64]) -> Result<PointValue> {
        let elems = g.elements().unwrap();
        let cells = self.finite_cells(g, x)?;
        let index: BTreeMap<&GroupElem, usize> =
            elems.iter().enumerate().map(|(i, a)| (a, i)).collect();
        let inv = g.inv(gamma);
        let support: Vec<(GroupElem, PointValue)> = elems
            .iter()
            .map(|a| (a.clone(), cells[index[&g.mul(&inv, a)]].clone()))
            .collect();
        let d = support[0].1.clone();
        Ok(PointValue::group_map(support, d))
    }
}

/// Normal form for sequences compared up to complementing coordinates: each
/// entry becomes the least of its class and its complement's class, entries
/// matching the default's pair are dropped, and the default stays exact.
pub(crate) fn flip_pair_canon(e: &RelDesc, x: &PointValue) -> Result<PointValue> {
    let PointValue::SeqDefault { entries, default } = x else {
        return Err(schema(format!("expected seqDefault, got {}", x.shape())));
    };
    let pair = |v: &PointValue| -> Result<PointValue> {
        let a = e.canon_unchecked(v)?;
        let b = e.canon_unchecked(&v.flip()?)?;
        Ok(a.min(b))
    };
    let dp = pair(default)?;
    let mut out = BTreeMap::new();
    for (n, v) in entries {
        let p = pair(v)?;
        if p != dp {
            out.insert(*n, p);
        }
    }
    Ok(PointValue::SeqDefault {
        entries: out,
        default: Box::new(e.canon_unchecked(default)?),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a(n: u64) -> PointValue {
        PointValue::Atom(n)
    }

    fn zl(entries: &[(i64, u64)]) -> PointValue {
        let cells: Vec<(i64, PointValue)> = entries.iter().map(|(p, v)| (*p, a(*v))).collect();
        PointValue::LassoZ(ZLasso::with_entries(a(0), &cells))
    }

    #[test]
    fn int_jump_examples() {
        let j = RelDesc::jump(RelDesc::delta(2), GroupDesc::Int).unwrap();
        let x = zl(&[(0, 1)]);
        let PointValue::LassoZ(z) = &x else {
            unreachable!()
        };
        let y = PointValue::LassoZ(z.shifted(5));
        assert_eq!(j.witness(&x, &y).unwrap(), Some(vec![5]));
        assert!(!j.decide(&x, &zl(&[(0, 1), (1, 1)])).unwrap());
    }

    #[test]
    fn e0_jump_persistent_change() {
        let j = RelDesc::jump(RelDesc::e0(), GroupDesc::Int).unwrap();
        let u = PointValue::bits("", "0").unwrap();
        let v = PointValue::bits("", "01").unwrap();
        let w = PointValue::bits("", "1").unwrap();
        let x = PointValue::lasso_z(
            vec![u.clone()],
            vec![v.clone()],
            vec![u.clone(), v.clone()],
            0,
        )
        .unwrap();
        let y = PointValue::lasso_z(vec![u.clone()], vec![v.clone()], vec![u, w], 3).unwrap();
        assert!(!j.decide(&x, &y).unwrap());
    }

    #[test]
    fn finite_jump_brute_force() {
        let g = GroupDesc::cyclic(3);
        let j = RelDesc::jump(RelDesc::delta(2), g.clone()).unwrap();
        let x = PointValue::group_map(vec![(vec![1], a(1))], a(0));
        let y = PointValue::group_map(vec![(vec![2], a(1))], a(0));
        assert_eq!(j.witness(&x, &y).unwrap(), Some(vec![1]));
        assert_eq!(j.canon(&x).unwrap(), j.canon(&y).unwrap());
        let f = j.freeness(&x).unwrap();
        assert!(f.free && !f.pairwise_inequivalent);
    }

    #[test]
    fn freeness_examples() {
        let j = RelDesc::jump(RelDesc::delta(2), GroupDesc::Int).unwrap();
        let p = PointValue::lasso_z(vec![a(0), a(1)], vec![], vec![a(0), a(1)], 0).unwrap();
        assert!(!j.freeness(&p).unwrap().free);
        let jz = RelDesc::jump(RelDesc::delta(3), GroupDesc::Z2FinSupp).unwrap();
        let x = PointValue::group_map(vec![(vec![0], a(1)), (vec![1], a(2))], a(0));
        let f = jz.freeness(&x).unwrap();
        assert!(f.free && !f.pairwise_inequivalent);
        let sym = PointValue::group_map(vec![(vec![0], a(1)), (vec![1], a(1))], a(0));
        assert!(!jz.freeness(&sym).unwrap().free);
    }

    #[test]
    fn sparse_candidates() {
        let jz = RelDesc::jump(RelDesc::delta(3), GroupDesc::Z2FinSupp).unwrap();
        let x = PointValue::group_map(vec![(vec![0], a(1)), (vec![1], a(2))], a(0));
        let y = PointValue::group_map(vec![(vec![0, 2], a(1)), (vec![1, 2], a(2))], a(0));
        assert_eq!(jz.witness(&x, &y).unwrap(), Some(vec![2]));
        assert_eq!(jz.canon(&x).unwrap(), jz.canon(&y).unwrap());
    }

    #[test]
    fn grid_witness_finds_both_shifts() {
        let j = RelDesc::jump(RelDesc::delta(2), GroupDesc::IntPower(2)).unwrap();
        let x = PointValue::group_map(vec![(vec![0, 0], a(1)), (vec![1, 3], a(1))], a(0));
        let y = PointValue::group_map(vec![(vec![-2, 5], a(1)), (vec![-1, 8], a(1))], a(0));
        assert_eq!(j.witness(&x, &y).unwrap(), Some(vec![-2, 5]));
        let z = PointValue::group_map(vec![(vec![0, 0], a(1)), (vec![1, 4], a(1))], a(0));
        assert!(!j.decide(&x, &z).unwrap());
    }
}
