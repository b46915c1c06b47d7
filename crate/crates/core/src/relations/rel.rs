use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use super::group::{GroupDesc, GroupElem};
use super::lazy;
use super::point::{EqKind, PointValue};
use crate::error::{Error, Result};
use crate::lasso::{lcm, Lasso, ZLasso};

/// Equivalence relation on finitely presented points.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub enum RelDesc {
    /// Equality on `{0, …, n-1}`.
    Delta(u64),
    /// Equality of arbitrary values.
    Identity,
    /// Eventual equality of binary ω-sequences.
    E0,
    Product(Vec<RelDesc>),
    /// Countable power `E^ω`.
    PowerOmega(Box<RelDesc>),
    /// Finite sequences `E^{<ω}`.
    FinSeq(Box<RelDesc>),
    /// Tagged disjoint union.
    DirectSum(Vec<RelDesc>),
    /// Pointwise power `E^Γ`.
    Pow(Box<RelDesc>, GroupDesc),
    /// Γ-jump `E^{[Γ]}`.
    Jump(Box<RelDesc>, GroupDesc),
    /// Friedman–Stanley jump `E⁺`.
    FsJump(Box<RelDesc>),
    /// Louveau jump over the Fréchet filter.
    Louveau(Box<RelDesc>),
    /// `A_k` for `k ≥ 2`; `A_0 = Δ(2)` and `A_1 = E₀`.
    AHier(u32),
}

pub(crate) fn schema(msg: impl Into<String>) -> Error {
    Error::Schema(msg.into())
}

/// Evenly spaced sample of at most `cap` items, first item kept.
pub fn thin<T: Clone>(v: Vec<T>, cap: usize) -> Vec<T> {
    if v.len() <= cap {
        return v;
    }
    if cap == 0 {
        return Vec::new();
    }
    (0..cap).map(|i| v[i * v.len() / cap].clone()).collect()
}

/// All words of length `lo..=hi` over `alphabet`, shortest first.
pub fn words<T: Clone>(alphabet: &[T], lo: usize, hi: usize) -> Vec<Vec<T>> {
    let mut out = Vec::new();
    let mut layer: Vec<Vec<T>> = vec![Vec::new()];
    for len in 0..=hi {
        if len >= lo {
            out.extend(layer.iter().cloned());
        }
        layer = layer
            .iter()
            .flat_map(|w| {
                alphabet.iter().map(move |a| {
                    let mut w = w.clone();
                    w.push(a.clone());
                    w
                })
            })
            .collect();
    }
    out
}

impl RelDesc {
    pub fn delta(n: u64) -> Self {
        RelDesc::Delta(n)
    }

    pub fn e0() -> Self {
        RelDesc::E0
    }

    pub fn product(es: Vec<RelDesc>) -> Self {
        RelDesc::Product(es)
    }

    pub fn power_omega(e: RelDesc) -> Self {
        RelDesc::PowerOmega(Box::new(e))
    }

    pub fn fin_seq(e: RelDesc) -> Self {
        RelDesc::FinSeq(Box::new(e))
    }

    pub fn direct_sum(es: Vec<RelDesc>) -> Self {
        RelDesc::DirectSum(es)
    }

    pub fn pow(e: RelDesc, g: GroupDesc) -> Result<Self> {
        g.validate()?;
        Ok(RelDesc::Pow(Box::new(e), g))
    }

    /// The Γ-jump; infinite groups need an inner relation with complete canon.
    pub fn jump(e: RelDesc, g: GroupDesc) -> Result<Self> {
        g.validate()?;
        if !g.is_finite() && !e.canon_complete() {
            return Err(Error::Unsupported(format!(
                "jump over {} needs complete canon for {}",
                g.name(),
                e.name()
            )));
        }
        match &g {
            GroupDesc::IntPower(k) if *k > 2 => {
                return Err(Error::Representability(format!(
                    "points over Z^{k} have no lasso presentation"
                )));
            }
            GroupDesc::Product(fs) if fs.iter().any(|f| !f.is_finite()) => {
                return Err(Error::Representability(
                    "points over products with infinite factors have no lasso presentation".into(),
                ));
            }
            _ => {}
        }
        Ok(RelDesc::Jump(Box::new(e), g))
    }

    pub fn fs_jump(e: RelDesc) -> Self {
        RelDesc::FsJump(Box::new(e))
    }

    pub fn louveau(e: RelDesc) -> Self {
        RelDesc::Louveau(Box::new(e))
    }

    /// `n`-fold iterated jump.
    pub fn iterate_jump(e: RelDesc, g: GroupDesc, n: usize) -> Result<Self> {
        let mut r = e;
        for _ in 0..n {
            r = RelDesc::jump(r, g.clone())?;
        }
        Ok(r)
    }

    pub fn a_hier(k: u32) -> Self {
        match k {
            0 => RelDesc::Delta(2),
            1 => RelDesc::E0,
            k => RelDesc::AHier(k),
        }
    }

    /// Name in the relation mini-language; parses back to `self`.
    pub fn name(&self) -> String {
        let list = |es: &[RelDesc]| es.iter().map(RelDesc::name).collect::<Vec<_>>().join(",");
        match self {
            RelDesc::Delta(n) => format!("delta({n})"),
            RelDesc::Identity => "id".into(),
            RelDesc::E0 => "e0".into(),
            RelDesc::Product(es) => format!("prod({})", list(es)),
            RelDesc::PowerOmega(e) => format!("pow({})", e.name()),
            RelDesc::FinSeq(e) => format!("seq({})", e.name()),
            RelDesc::DirectSum(es) => format!("sum({})", list(es)),
            RelDesc::Pow(e, g) => format!("powg({},{})", e.name(), g.name()),
            RelDesc::Jump(e, g) => format!("jump({},{})", e.name(), g.name()),
            RelDesc::FsJump(e) => format!("fs({})", e.name()),
            RelDesc::Louveau(e) => format!("louveau({})", e.name()),
            RelDesc::AHier(k) => format!("A{k}"),
        }
    }

    /// Whether `decide(x, y) ⇔ canon(x) = canon(y)`.
    pub fn canon_complete(&self) -> bool {
        match self {
            RelDesc::Delta(_) | RelDesc::Identity | RelDesc::E0 | RelDesc::AHier(_) => true,
            RelDesc::Product(es) | RelDesc::DirectSum(es) => es.iter().all(RelDesc::canon_complete),
            RelDesc::PowerOmega(e)
            | RelDesc::FinSeq(e)
            | RelDesc::FsJump(e)
            | RelDesc::Louveau(e) => e.canon_complete(),
            RelDesc::Pow(e, _) => e.canon_complete(),
            RelDesc::Jump(e, g) => {
                e.canon_complete() && !matches!(g, GroupDesc::IntPower(k) if *k >= 2)
            }
        }
    }

    /// Inner relation of `A_k`.
    pub(crate) fn a_inner(k: u32) -> RelDesc {
        RelDesc::a_hier(k - 1)
    }

    /// Validate `x` against the point schema.
    pub fn check(&self, x: &PointValue) -> Result<()> {
        let bad = || schema(format!("{} is not a point of {}", x.shape(), self.name()));
        match self {
            RelDesc::Delta(n) => match x {
                PointValue::Atom(i) if i < n => Ok(()),
                _ => Err(bad()),
            },
            RelDesc::Identity => Ok(()),
            RelDesc::E0 => match x {
                PointValue::LassoSeq(l)
                    if !l.period.is_empty()
                        && l.prefix
                            .iter()
                            .chain(&l.period)
                            .all(|c| matches!(c, PointValue::Atom(0 | 1))) =>
                {
                    Ok(())
                }
                _ => Err(bad()),
            },
            RelDesc::Product(es) => match x {
                PointValue::Tuple(xs) if xs.len() == es.len() => {
                    es.iter().zip(xs).try_for_each(|(e, v)| e.check(v))
                }
                _ => Err(bad()),
            },
            RelDesc::PowerOmega(e) | RelDesc::Louveau(e) => match x {
                PointValue::SeqDefault { entries, default } => {
                    e.check(default)?;
                    entries.values().try_for_each(|v| e.check(v))
                }
                _ => Err(bad()),
            },
            RelDesc::AHier(k) => match x {
                PointValue::SeqDefault { entries, default } => {
                    let e = RelDesc::a_inner(*k);
                    e.check(default)?;
                    entries.values().try_for_each(|v| e.check(v))
                }
                _ => Err(bad()),
            },
            RelDesc::FinSeq(e) => match x {
                PointValue::Tuple(xs) => xs.iter().try_for_each(|v| e.check(v)),
                _ => Err(bad()),
            },
            RelDesc::DirectSum(es) => match x {
                PointValue::Tuple(xs) if xs.len() == 2 => match xs[0] {
                    PointValue::Atom(t) if (t as usize) < es.len() => es[t as usize].check(&xs[1]),
                    _ => Err(bad()),
                },
                _ => Err(bad()),
            },
            RelDesc::Pow(e, g) => self.check_map(e, g, x, false),
            RelDesc::Jump(e, g) => self.check_map(e, g, x, true),
            RelDesc::FsJump(e) => match x {
                PointValue::FinSet(xs) if !xs.is_empty() => xs.iter().try_for_each(|v| e.check(v)),
                PointValue::Equivariant {
                    base,
                    kind: EqKind::Orbit,
                } => {
                    let inner = self.orbit_inner()?;
                    let z = lazy::as_zlasso(base)?;
                    z.cells().try_for_each(|v| inner.check(v))?;
                    let base = self.canon_base(inner, base)?;
                    e.check(&lazy::orbit_element(&base, 0))
                }
                _ => Err(bad()),
            },
        }
    }

    fn check_map(&self, e: &RelDesc, g: &GroupDesc, x: &PointValue, jump: bool) -> Result<()> {
        let bad = || schema(format!("{} is not a point of {}", x.shape(), self.name()));
        match x {
            PointValue::GroupMap { support, default } => {
                e.check(default)?;
                let mut seen = BTreeSet::new();
                for (k, v) in support {
                    if !g.contains(k) {
                        return Err(schema(format!("{k:?} is not an element of {}", g.name())));
                    }
                    if !seen.insert(k) {
                        return Err(schema(format!("{k:?} listed twice")));
                    }
                    e.check(v)?;
                }
                Ok(())
            }
            PointValue::LassoZ(z) if *g == GroupDesc::Int => z.cells().try_for_each(|v| e.check(v)),
            PointValue::LassoZ(z) if *g == GroupDesc::IntPower(2) => {
                z.cells().try_for_each(|c| match c {
                    PointValue::LassoZ(col) => col.cells().try_for_each(|v| e.check(v)),
                    _ => Err(bad()),
                })
            }
            PointValue::Equivariant { base, kind } if jump => {
                self.check_equivariant(e, g, base, *kind)
            }
            _ => Err(bad()),
        }
    }

    fn check_equivariant(
        &self,
        e: &RelDesc,
        g: &GroupDesc,
        base: &PointValue,
        kind: EqKind,
    ) -> Result<()> {
        let bad = |why: &str| {
            schema(format!(
                "{kind:?} point not valid for {}: {why}",
                self.name()
            ))
        };
        match kind {
            EqKind::GammaSquare => {
                let RelDesc::Jump(inner, g2) = e else {
                    return Err(bad("needs a doubly jumped power"));
                };
                let RelDesc::Pow(base_rel, sq) = inner.as_ref() else {
                    return Err(bad("needs a doubly jumped power"));
                };
                let want = GroupDesc::Product(vec![g.clone(), g.clone()]);
                if g2 != g || *sq != want || !g.is_finite() {
                    return Err(bad("groups do not match"));
                }
                RelDesc::Pow(base_rel.clone(), want).check(base)
            }
            EqKind::Flip => {
                let RelDesc::PowerOmega(inner) = e else {
                    return Err(bad("needs a countable power inside"));
                };
                if *g != GroupDesc::Z2FinSupp {
                    return Err(bad("group must be Z2fin"));
                }
                RelDesc::PowerOmega(inner.clone()).check(base)?;
                base.flip().map(|_| ())
            }
            EqKind::Anchored => {
                let inner = self.anchored_inner()?;
                let z = lazy::as_zlasso(base)?;
                z.cells().try_for_each(|v| inner.check(v))?;
                let cb = self.canon_base(inner, base)?;
                e.check(&lazy::anchored_value(&cb, cb.origin))
            }
            EqKind::Marker => {
                if *g != GroupDesc::Int {
                    return Err(bad("group must be Z"));
                }
                e.check(&lazy::marker_value(base, 0))?;
                e.check(&lazy::marker_value(base, 1))
            }
            EqKind::Orbit => Err(bad("orbit sets are points of FS-jumps")),
        }
    }

    /// `E` in `jump(prod(id, seq(E)), Z)`.
    pub(crate) fn anchored_inner(&self) -> Result<&RelDesc> {
        if let RelDesc::Jump(e, GroupDesc::Int) = self {
            if let RelDesc::Product(es) = e.as_ref() {
                if let [RelDesc::Identity, RelDesc::FinSeq(inner)] = es.as_slice() {
                    return Ok(inner);
                }
            }
        }
        Err(schema(format!(
            "anchored points need jump(prod(id,seq(E)),Z), not {}",
            self.name()
        )))
    }

    /// `E` in `fs(seq(sum(E, id, delta(2))))`.
    pub(crate) fn orbit_inner(&self) -> Result<&RelDesc> {
        if let RelDesc::FsJump(e) = self {
            if let RelDesc::FinSeq(s) = e.as_ref() {
                if let RelDesc::DirectSum(es) = s.as_ref() {
                    if let [inner, RelDesc::Identity, RelDesc::Delta(2)] = es.as_slice() {
                        return Ok(inner);
                    }
                }
            }
        }
        Err(schema(format!(
            "orbit points need fs(seq(sum(E,id,delta(2)))), not {}",
            self.name()
        )))
    }

    /// Base lasso with cells replaced by canonical class representatives.
    pub(crate) fn canon_base(
        &self,
        inner: &RelDesc,
        base: &PointValue,
    ) -> Result<ZLasso<PointValue>> {
        Ok(lazy::as_zlasso(base)?
            .try_map(|v| inner.canon_unchecked(v))?
            .normalized())
    }

    /// Canonical representative of the class of `x`.
    pub fn canon(&self, x: &PointValue) -> Result<PointValue> {
        self.check(x)?;
        self.canon_unchecked(x)
    }

    pub(crate) fn canon_unchecked(&self, x: &PointValue) -> Result<PointValue> {
        match (self, x) {
            (RelDesc::Delta(_) | RelDesc::Identity, _) => Ok(x.clone()),
            (RelDesc::E0, PointValue::LassoSeq(l)) => Ok(e0_canon(l)),
            (RelDesc::Product(es), PointValue::Tuple(xs)) => Ok(PointValue::Tuple(
                es.iter()
                    .zip(xs)
                    .map(|(e, v)| e.canon_unchecked(v))
                    .collect::<Result<_>>()?,
            )),
            (RelDesc::FinSeq(e), PointValue::Tuple(xs)) => Ok(PointValue::Tuple(
                xs.iter()
                    .map(|v| e.canon_unchecked(v))
                    .collect::<Result<_>>()?,
            )),
            (RelDesc::DirectSum(es), PointValue::Tuple(xs)) => {
                let t = xs[0].as_atom().unwrap() as usize;
                Ok(PointValue::tagged(t as u64, es[t].canon_unchecked(&xs[1])?))
            }
            (RelDesc::PowerOmega(e), PointValue::SeqDefault { entries, default }) => {
                let d = e.canon_unchecked(default)?;
                let mut out = BTreeMap::new();
                for (k, v) in entries {
                    let c = e.canon_unchecked(v)?;
                    if c != d {
                        out.insert(*k, c);
                    }
                }
                Ok(PointValue::SeqDefault {
                    entries: out,
                    default: Box::new(d),
                })
            }
            (RelDesc::Louveau(e), PointValue::SeqDefault { default, .. }) => {
                Ok(PointValue::seq([], e.canon_unchecked(default)?))
            }
            (RelDesc::AHier(k), _) => super::jump::flip_pair_canon(&RelDesc::a_inner(*k), x),
            (RelDesc::FsJump(e), PointValue::FinSet(xs)) => {
                let set: BTreeSet<PointValue> = xs
                    .iter()
                    .map(|v| e.canon_unchecked(v))
                    .collect::<Result<_>>()?;
                Ok(PointValue::FinSet(set.into_iter().collect()))
            }
            (RelDesc::FsJump(_), PointValue::Equivariant { base, kind }) => {
                let b = self.canon_base(self.orbit_inner()?, base)?;
                Ok(PointValue::equivariant(
                    PointValue::LassoZ(b.shift_canon()),
                    *kind,
                ))
            }
            (RelDesc::Pow(e, g), _) => self.map_canon(e, g, x),
            (RelDesc::Jump(e, g), _) => self.jump_canon(e, g, x),
            _ => Err(schema(format!(
                "{} is not a point of {}",
                x.shape(),
                self.name()
            ))),
        }
    }

    /// Pointwise normal form of a map on `g`.
    pub(crate) fn map_canon(
        &self,
        e: &RelDesc,
        g: &GroupDesc,
        x: &PointValue,
    ) -> Result<PointValue> {
        match g {
            GroupDesc::Int => Ok(PointValue::LassoZ(
                self.int_lasso(x)?
                    .try_map(|v| e.canon_unchecked(v))?
                    .normalized(),
            )),
            GroupDesc::IntPower(2) => Ok(PointValue::LassoZ(self.grid_canon_cells(e, x)?)),
            g if g.is_finite() => {
                let elems = g.elements().unwrap();
                let vals: Vec<PointValue> = elems
                    .iter()
                    .map(|a| e.canon_unchecked(x.map_at(a).unwrap()))
                    .collect::<Result<_>>()?;
                Ok(finite_normal_form(&elems, &vals))
            }
            _ => {
                let PointValue::GroupMap { support, default } = x else {
                    return Err(schema(format!("expected groupMap over {}", g.name())));
                };
                let d = e.canon_unchecked(default)?;
                let mut out: Vec<(GroupElem, PointValue)> = Vec::new();
                for (k, v) in support {
                    let c = e.canon_unchecked(v)?;
                    if c != d {
                        out.push((k.clone(), c));
                    }
                }
                out.sort();
                Ok(PointValue::group_map(out, d))
            }
        }
    }

    /// A ℤ-indexed point as a lasso.
    pub(crate) fn int_lasso(&self, x: &PointValue) -> Result<ZLasso<PointValue>> {
        match x {
            PointValue::LassoZ(z) => Ok(z.clone()),
            PointValue::GroupMap { support, default } => {
                let cells: Vec<(i64, PointValue)> =
                    support.iter().map(|(k, v)| (k[0], v.clone())).collect();
                Ok(ZLasso::with_entries((**default).clone(), &cells))
            }
            _ => Err(schema(format!("{} is not a Z-indexed map", x.shape()))),
        }
    }

    /// A `ℤ²`-indexed point as a lasso of column lassos with canonical cells.
    pub(crate) fn grid_canon_cells(
        &self,
        e: &RelDesc,
        x: &PointValue,
    ) -> Result<ZLasso<PointValue>> {
        let outer: ZLasso<PointValue> = match x {
            PointValue::LassoZ(z) => z.clone(),
            PointValue::GroupMap { support, default } => {
                let col = |entries: &[(i64, PointValue)]| {
                    PointValue::LassoZ(ZLasso::with_entries((**default).clone(), entries))
                };
                let mut cols: BTreeMap<i64, Vec<(i64, PointValue)>> = BTreeMap::new();
                for (k, v) in support {
                    cols.entry(k[0]).or_default().push((k[1], v.clone()));
                }
                let cells: Vec<(i64, PointValue)> =
                    cols.iter().map(|(a, es)| (*a, col(es))).collect();
                ZLasso::with_entries(col(&[]), &cells)
            }
            _ => return Err(schema(format!("{} is not a Z^2-indexed map", x.shape()))),
        };
        Ok(outer
            .try_map(|c| match c {
                PointValue::LassoZ(col) => Ok(PointValue::LassoZ(
                    col.try_map(|v| e.canon_unchecked(v))?.normalized(),
                )),
                _ => Err(schema("grid columns must be lassoZ")),
            })?
            .normalized())
    }

    /// Whether `x` and `y` are equivalent.
    pub fn decide(&self, x: &PointValue, y: &PointValue) -> Result<bool> {
        self.check(x)?;
        self.check(y)?;
        self.decide_unchecked(x, y)
    }

    pub(crate) fn decide_unchecked(&self, x: &PointValue, y: &PointValue) -> Result<bool> {
        match (self, x, y) {
            (RelDesc::Delta(_) | RelDesc::Identity, _, _) => Ok(x == y),
            (RelDesc::E0, PointValue::LassoSeq(a), PointValue::LassoSeq(b)) => Ok(e0_decide(a, b)),
            (RelDesc::Product(es), PointValue::Tuple(xs), PointValue::Tuple(ys)) => {
                for ((e, a), b) in es.iter().zip(xs).zip(ys) {
                    if !e.decide_unchecked(a, b)? {
                        return Ok(false);
                    }
                }
                Ok(true)
            }
            (RelDesc::FinSeq(e), PointValue::Tuple(xs), PointValue::Tuple(ys)) => {
                if xs.len() != ys.len() {
                    return Ok(false);
                }
                for (a, b) in xs.iter().zip(ys) {
                    if !e.decide_unchecked(a, b)? {
                        return Ok(false);
                    }
                }
                Ok(true)
            }
            (RelDesc::DirectSum(es), PointValue::Tuple(xs), PointValue::Tuple(ys)) => {
                if xs[0] != ys[0] {
                    return Ok(false);
                }
                es[xs[0].as_atom().unwrap() as usize].decide_unchecked(&xs[1], &ys[1])
            }
            (
                RelDesc::PowerOmega(e),
                PointValue::SeqDefault {
                    entries: ex,
                    default: dx,
                },
                PointValue::SeqDefault {
                    entries: ey,
                    default: dy,
                },
            ) => {
                if !e.decide_unchecked(dx, dy)? {
                    return Ok(false);
                }
                for k in ex.keys().chain(ey.keys()) {
                    if !e.decide_unchecked(x.seq_at(*k).unwrap(), y.seq_at(*k).unwrap())? {
                        return Ok(false);
                    }
                }
                Ok(true)
            }
            (
                RelDesc::Louveau(e),
                PointValue::SeqDefault { default: dx, .. },
                PointValue::SeqDefault { default: dy, .. },
            ) => e.decide_unchecked(dx, dy),
            (
                RelDesc::AHier(k),
                PointValue::SeqDefault {
                    entries: ex,
                    default: dx,
                },
                PointValue::SeqDefault {
                    entries: ey,
                    default: dy,
                },
            ) => {
                let e = RelDesc::a_inner(*k);
                if !e.decide_unchecked(dx, dy)? {
                    return Ok(false);
                }
                for n in ex.keys().chain(ey.keys()) {
                    let a = x.seq_at(*n).unwrap();
                    let b = y.seq_at(*n).unwrap();
                    if !e.decide_unchecked(a, b)? && !e.decide_unchecked(&a.flip()?, b)? {
                        return Ok(false);
                    }
                }
                Ok(true)
            }
            (RelDesc::FsJump(e), PointValue::FinSet(xs), PointValue::FinSet(ys)) => {
                for (p, q) in [(xs, ys), (ys, xs)] {
                    for a in p {
                        let mut found = false;
                        for b in q {
                            if e.decide_unchecked(a, b)? {
                                found = true;
                                break;
                            }
                        }
                        if !found {
                            return Ok(false);
                        }
                    }
                }
                Ok(true)
            }
            (
                RelDesc::FsJump(_),
                PointValue::Equivariant { base: bx, .. },
                PointValue::Equivariant { base: by, .. },
            ) => {
                let inner = self.orbit_inner()?;
                let a = self.canon_base(inner, bx)?;
                let b = self.canon_base(inner, by)?;
                Ok(a.find_shift(&b).is_some())
            }
            (RelDesc::FsJump(_), _, _) => Ok(false),
            (RelDesc::Pow(e, g), _, _) => self.map_decide(e, g, x, y),
            (RelDesc::Jump(e, g), _, _) => Ok(self.jump_witness(e, g, x, y)?.is_some()),
            _ => Err(schema(format!(
                "{} / {} are not points of {}",
                x.shape(),
                y.shape(),
                self.name()
            ))),
        }
    }

    fn map_decide(
        &self,
        e: &RelDesc,
        g: &GroupDesc,
        x: &PointValue,
        y: &PointValue,
    ) -> Result<bool> {
        match g {
            GroupDesc::Int | GroupDesc::IntPower(2) => {
                Ok(self.map_canon(e, g, x)? == self.map_canon(e, g, y)?)
            }
            g if g.is_finite() => {
                for a in g.elements().unwrap() {
                    if !e.decide_unchecked(x.map_at(&a).unwrap(), y.map_at(&a).unwrap())? {
                        return Ok(false);
                    }
                }
                Ok(true)
            }
            _ => {
                let (
                    PointValue::GroupMap {
                        support: sx,
                        default: dx,
                    },
                    PointValue::GroupMap {
                        support: sy,
                        default: dy,
                    },
                ) = (x, y)
                else {
                    return Err(schema("expected groupMaps"));
                };
                if !e.decide_unchecked(dx, dy)? {
                    return Ok(false);
                }
                for (k, _) in sx.iter().chain(sy) {
                    if !e.decide_unchecked(x.map_at(k).unwrap(), y.map_at(k).unwrap())? {
                        return Ok(false);
                    }
                }
                Ok(true)
            }
        }
    }

    /// Deterministic sample of points; larger `bound` gives longer words
    /// and bigger samples.
    pub fn enumerate(&self, bound: usize) -> Vec<PointValue> {
        let b = bound.max(1);
        let cap = 16 * b;
        let pool = |e: &RelDesc, k: usize| thin(e.enumerate(b), k);
        match self {
            RelDesc::Delta(n) => (0..*n).map(PointValue::Atom).collect(),
            RelDesc::Identity => (0..=b as u64).map(PointValue::Atom).collect(),
            RelDesc::E0 => {
                let m = b.min(2);
                let bits = [PointValue::Atom(0), PointValue::Atom(1)];
                let mut out = Vec::new();
                for period in words(&bits, 1, m) {
                    for prefix in words(&bits, 0, m) {
                        out.push(PointValue::LassoSeq(Lasso {
                            prefix: prefix.clone(),
                            period: period.clone(),
                        }));
                    }
                }
                thin(out, cap)
            }
            RelDesc::Product(es) => {
                let per = ((cap as f64).powf(1.0 / es.len().max(1) as f64).ceil() as usize).max(2);
                let mut out = vec![Vec::new()];
                for e in es {
                    let p = pool(e, per);
                    out = out
                        .into_iter()
                        .flat_map(|t: Vec<PointValue>| {
                            p.iter().map(move |v| {
                                let mut t = t.clone();
                                t.push(v.clone());
                                t
                            })
                        })
                        .collect();
                }
                thin(out.into_iter().map(PointValue::Tuple).collect(), cap)
            }
            RelDesc::PowerOmega(e) | RelDesc::Louveau(e) => thin(seq_points(&pool(e, 3), 2), cap),
            RelDesc::AHier(k) => thin(seq_points(&pool(&RelDesc::a_inner(*k), 4), 2), cap),
            RelDesc::FinSeq(e) => thin(
                words(&pool(e, 3), 0, 2)
                    .into_iter()
                    .map(PointValue::Tuple)
                    .collect(),
                cap,
            ),
            RelDesc::DirectSum(es) => {
                let per = (cap / es.len().max(1)).max(1);
                let mut out = Vec::new();
                for (t, e) in es.iter().enumerate() {
                    out.extend(
                        pool(e, per)
                            .into_iter()
                            .map(|v| PointValue::tagged(t as u64, v)),
                    );
                }
                out
            }
            RelDesc::FsJump(e) => {
                let p = pool(e, 4);
                let mut out: Vec<PointValue> = words(&p, 1, 2)
                    .into_iter()
                    .map(PointValue::FinSet)
                    .collect();
                out.extend(
                    p.iter()
                        .map(|v| PointValue::FinSet(vec![v.clone(), v.clone(), v.clone()])),
                );
                thin(out, cap)
            }
            RelDesc::Pow(e, g) | RelDesc::Jump(e, g) => map_points(e, g, b, cap),
        }
    }
}

/// `SeqDefault` points with entries at keys below `keys`.
fn seq_points(pool: &[PointValue], keys: u64) -> Vec<PointValue> {
    let mut out = Vec::new();
    for d in pool {
        let mut maps: Vec<BTreeMap<u64, PointValue>> = vec![BTreeMap::new()];
        for k in 0..keys {
            maps = maps
                .into_iter()
                .flat_map(|m| {
                    let mut v = vec![m.clone()];
                    for c in pool {
                        let mut m2 = m.clone();
                        m2.insert(k, c.clone());
                        v.push(m2);
                    }
                    v
                })
                .collect();
        }
        out.extend(maps.into_iter().map(|m| PointValue::SeqDefault {
            entries: m,
            default: Box::new(d.clone()),
        }));
    }
    out
}

fn map_points(e: &RelDesc, g: &GroupDesc, b: usize, cap: usize) -> Vec<PointValue> {
    let inner = e.enumerate(b);
    match g {
        GroupDesc::Int => {
            let cells = thin(inner, 2);
            let mut out = Vec::new();
            for left in words(&cells, 1, 2) {
                for mid in words(&cells, 0, b.min(2)) {
                    for right in words(&cells, 1, 2) {
                        out.push(ZLasso {
                            left: left.clone(),
                            mid: mid.clone(),
                            right: right.clone(),
                            origin: 0,
                        });
                    }
                }
            }
            let base = thin(out, cap / 2);
            let mut pts: Vec<PointValue> = base.iter().cloned().map(PointValue::LassoZ).collect();
            pts.extend(base.iter().map(|z| PointValue::LassoZ(z.shifted(1))));
            pts
        }
        GroupDesc::IntPower(_) => {
            let cells = thin(inner, 2);
            let cols: Vec<PointValue> = [
                ZLasso::constant(cells[0].clone()),
                ZLasso::with_entries(cells[0].clone(), &[(0, cells[cells.len() - 1].clone())]),
                ZLasso::constant(cells[cells.len() - 1].clone()),
            ]
            .into_iter()
            .map(PointValue::LassoZ)
            .collect();
            let mut out = Vec::new();
            for d in &cols {
                for mid in words(&cols, 0, 2) {
                    let z = ZLasso {
                        left: vec![d.clone()],
                        mid,
                        right: vec![d.clone()],
                        origin: 0,
                    };
                    out.push(PointValue::LassoZ(z.clone()));
                    out.push(PointValue::LassoZ(z.shifted(-1)));
                }
            }
            thin(out, cap)
        }
        g if g.is_finite() => {
            let elems = g.elements().unwrap();
            let mut k = inner.len();
            while k > 1 && k.pow(elems.len() as u32) > 4096 {
                k -= 1;
            }
            let vals = thin(inner, k);
            let maps = words(&vals, elems.len(), elems.len());
            let pts: Vec<PointValue> = maps
                .into_iter()
                .map(|vs| {
                    let d = vs[0].clone();
                    PointValue::group_map(elems.iter().cloned().zip(vs).collect(), d)
                })
                .collect();
            thin(pts, cap)
        }
        _ => {
            let vals = thin(inner, 3);
            let spots: Vec<GroupElem> = g.ball(2);
            let mut out = Vec::new();
            for d in &vals {
                out.push(PointValue::group_map(Vec::new(), d.clone()));
                for (i, s) in spots.iter().enumerate() {
                    for v in &vals {
                        out.push(PointValue::group_map(
                            vec![(s.clone(), v.clone())],
                            d.clone(),
                        ));
                        for t in &spots[i + 1..] {
                            for w in &vals {
                                out.push(PointValue::group_map(
                                    vec![(s.clone(), v.clone()), (t.clone(), w.clone())],
                                    d.clone(),
                                ));
                            }
                        }
                    }
                }
            }
            thin(out, cap)
        }
    }
}

/// Most frequent value as default (least on ties), the rest listed.
pub(crate) fn finite_normal_form(elems: &[GroupElem], vals: &[PointValue]) -> PointValue {
    let mut counts: BTreeMap<&PointValue, usize> = BTreeMap::new();
    for v in vals {
        *counts.entry(v).or_default() += 1;
    }
    let best = counts.values().copied().max().unwrap_or(0);
    let d = counts
        .iter()
        .find(|(_, c)| **c == best)
        .map(|(v, _)| (*v).clone())
        .unwrap();
    let mut support: Vec<(GroupElem, PointValue)> = elems
        .iter()
        .zip(vals)
        .filter(|(_, v)| **v != d)
        .map(|(g, v)| (g.clone(), v.clone()))
        .collect();
    support.sort();
    PointValue::group_map(support, d)
}

/// E₀ normal form: empty prefix and a primitive period read at absolute phase.
pub fn e0_canon(l: &Lasso<PointValue>) -> PointValue {
    let n = l.normalized();
    let start = n.prefix.len();
    let p = n.period.len();
    let period = (0..p)
        .map(|j| n.at(start + (j + p - start % p) % p).clone())
        .collect();
    PointValue::LassoSeq(Lasso {
        prefix: Vec::new(),
        period,
    })
}

/// Eventual equality by comparing one common period past both prefixes.
pub fn e0_decide(a: &Lasso<PointValue>, b: &Lasso<PointValue>) -> bool {
    let start = a.prefix.len().max(b.prefix.len());
    let span = lcm(a.period.len() as u64, b.period.len() as u64) as usize;
    (start..start + span).all(|i| a.at(i) == b.at(i))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn e0_examples() {
        let e = RelDesc::e0();
        let x = PointValue::bits("00", "1").unwrap();
        let y = PointValue::bits("", "1").unwrap();
        assert!(e.decide(&x, &y).unwrap());
        let a = PointValue::bits("", "01").unwrap();
        let b = PointValue::bits("", "10").unwrap();
        assert!(!e.decide(&a, &b).unwrap());
        assert_eq!(e.canon(&x).unwrap(), e.canon(&y).unwrap());
        assert_ne!(e.canon(&a).unwrap(), e.canon(&b).unwrap());
    }

    #[test]
    fn e0_canon_matches_decide() {
        let e = RelDesc::e0();
        let pts = e.enumerate(3);
        for x in &pts {
            for y in &pts {
                assert_eq!(
                    e.decide(x, y).unwrap(),
                    e.canon(x).unwrap() == e.canon(y).unwrap(),
                    "{x} {y}"
                );
            }
        }
    }

    #[test]
    fn fs_and_louveau_examples() {
        let fs = RelDesc::fs_jump(RelDesc::delta(3));
        let a = PointValue::FinSet(vec![PointValue::Atom(0), PointValue::Atom(1)]);
        let b = PointValue::FinSet(vec![
            PointValue::Atom(1),
            PointValue::Atom(0),
            PointValue::Atom(0),
        ]);
        assert!(fs.decide(&a, &b).unwrap());
        let l = RelDesc::louveau(RelDesc::delta(2));
        let x = PointValue::seq(
            [(1, PointValue::Atom(1)), (4, PointValue::Atom(1))],
            PointValue::Atom(0),
        );
        let y = PointValue::seq([], PointValue::Atom(0));
        assert!(l.decide(&x, &y).unwrap());
    }

    #[test]
    fn schema_mismatch_is_an_error() {
        let e = RelDesc::delta(2);
        assert!(matches!(
            e.decide(&PointValue::Atom(5), &PointValue::Atom(0)),
            Err(Error::Schema(_))
        ));
        assert!(RelDesc::e0().check(&PointValue::Atom(0)).is_err());
    }

    #[test]
    fn a2_flip_classes() {
        let a2 = RelDesc::a_hier(2);
        let u = PointValue::bits("", "0").unwrap();
        let v = PointValue::bits("", "1").unwrap();
        let x = PointValue::seq([(0, u.clone())], u.clone());
        let y = PointValue::seq([(0, v.clone())], u.clone());
        assert!(a2.decide(&x, &y).unwrap());
        let z = PointValue::seq([], v);
        assert!(!a2.decide(&x, &z).unwrap());
    }
}
