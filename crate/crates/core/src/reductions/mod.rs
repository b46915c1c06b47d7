//! Executable reduction maps between relations, with a harness that checks
//! `x E y ⇔ f(x) F f(y)` on enumerated pairs.

mod maps;
mod points;
pub mod verify;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::relations::{GroupDesc, PointValue, RelDesc};

pub use verify::{verify_reduction, verify_reduction_with, Direction, Failure, VerifyReport};

/// Names accepted by [`catalog_reduction`].
pub const CATALOG: &[&str] = &[
    "r_power_into_jump",
    "r_subgroup",
    "r_quotient",
    "r_gamma_square",
    "r_absorb_power",
    "r_free_to_pi",
    "r_zjump_to_fs",
    "r_z2_pi",
    "r_limit_to_product",
    "r_dcc_phi",
    "r_a_step",
];

/// Enumeration bounds: `default` is used when none is given, larger values
/// than `max` are refused.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Bounds {
    pub default: usize,
    pub max: usize,
}

/// Optional parameters for [`catalog_reduction_with`].
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ReductionParams {
    /// Inner relation where the construction is generic in it.
    pub inner: Option<RelDesc>,
    /// Truncation level or hierarchy index.
    pub levels: Option<usize>,
    /// Seed for sampled point sets.
    pub seed: Option<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) enum MapKind {
    PowerIntoJump,
    Subgroup,
    Quotient,
    GammaSquare,
    AbsorbPower,
    FreeToPi,
    ZJumpToFs,
    Z2Pi,
    LimitToProduct(usize),
    DccPhi(usize),
    AStep(u32),
}

/// Deliberate corruptions used to check that verification can fail.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) enum Mutant {
    /// Send the class of `from` to the image of `to`.
    Merge { from: PointValue, to: PointValue },
    /// Replace the last coordinate of the top level by a constant.
    DropTop(PointValue),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Reduction {
    pub name: String,
    pub summary: String,
    pub source: RelDesc,
    pub target: RelDesc,
    pub bounds: Bounds,
    pub seed: u64,
    pub(crate) kind: MapKind,
    pub(crate) mutant: Option<Mutant>,
}

const DEFAULT_SEED: u64 = 0x5eed;

fn complete_inner(name: &str, e: RelDesc) -> Result<RelDesc> {
    if e.canon_complete() {
        Ok(e)
    } else {
        Err(Error::Unsupported(format!(
            "{name} needs an inner relation with complete canonical forms, {} has none",
            e.name()
        )))
    }
}

fn iterates(e: &RelDesc, g: &GroupDesc, n: usize) -> Result<Vec<RelDesc>> {
    (0..n)
        .map(|k| RelDesc::iterate_jump(e.clone(), g.clone(), k))
        .collect()
}

pub fn catalog_reduction(name: &str) -> Result<Reduction> {
    catalog_reduction_with(name, &ReductionParams::default())
}

pub fn catalog_reduction_with(name: &str, params: &ReductionParams) -> Result<Reduction> {
    let inner = |default: RelDesc| complete_inner(name, params.inner.clone().unwrap_or(default));
    let no_inner = || match &params.inner {
        Some(_) => Err(Error::Unsupported(format!(
            "{name} takes no inner relation"
        ))),
        None => Ok(()),
    };
    let no_levels = || match params.levels {
        Some(_) => Err(Error::Unsupported(format!(
            "{name} takes no level parameter"
        ))),
        None => Ok(()),
    };
    let z = GroupDesc::Int;
    let b = |default, max| Bounds { default, max };
    let (summary, source, target, bounds, kind) = match name {
        "r_power_into_jump" => {
            no_levels()?;
            let e = inner(RelDesc::e0())?;
            (
                "Countable power into the Z-jump: coordinate k goes to the k-th point of a set with growing gaps, a reserved letter fills the rest.",
                RelDesc::power_omega(e.clone()),
                RelDesc::jump(RelDesc::direct_sum(vec![e, RelDesc::delta(1)]), z)?,
                b(4, 8),
                MapKind::PowerIntoJump,
            )
        }
        "r_subgroup" => {
            no_levels()?;
            let e = inner(RelDesc::delta(2))?;
            (
                "Jump over 2Z (as Z) into the jump over Z: values on even positions, a fixed point on odd ones.",
                RelDesc::jump(e.clone(), z.clone())?,
                RelDesc::jump(e, z)?,
                b(4, 8),
                MapKind::Subgroup,
            )
        }
        "r_quotient" => {
            no_levels()?;
            let e = inner(RelDesc::delta(4))?;
            (
                "Jump over C3 into the jump over Z by composing with the quotient map Z -> C3.",
                RelDesc::jump(e.clone(), GroupDesc::cyclic(3))?,
                RelDesc::jump(e, z)?,
                b(4, 8),
                MapKind::Quotient,
            )
        }
        "r_gamma_square" => {
            no_levels()?;
            let e = inner(RelDesc::delta(3))?;
            let g = GroupDesc::cyclic(2);
            let sq = GroupDesc::Product(vec![g.clone(), g.clone()]);
            (
                "Jump over C2 x C2 into the twice iterated C2-jump of the pointwise power: each point is sent to the code of all its translates.",
                RelDesc::jump(e.clone(), sq.clone())?,
                RelDesc::jump(RelDesc::jump(RelDesc::pow(e, sq)?, g.clone())?, g)?,
                b(6, 6),
                MapKind::GammaSquare,
            )
        }
        "r_absorb_power" => {
            no_levels()?;
            let e = inner(RelDesc::delta(2))?;
            (
                "Z-jump of a countable power into the Z^2-jump: each power coordinate becomes a column, with a marker in row 0.",
                RelDesc::jump(RelDesc::power_omega(e.clone()), z)?,
                RelDesc::jump(RelDesc::direct_sum(vec![e, RelDesc::delta(1)]), GroupDesc::IntPower(2))?,
                b(4, 8),
                MapKind::AbsorbPower,
            )
        }
        "r_free_to_pi" | "r_z2_pi" => {
            no_levels()?;
            let e = inner(RelDesc::e0())?;
            let target = RelDesc::jump(
                RelDesc::product(vec![RelDesc::Identity, RelDesc::fin_seq(e.clone())]),
                z.clone(),
            )?;
            if name == "r_free_to_pi" {
                (
                    "Free part of the Z-jump into sequences of pairwise inequivalent values: position n carries the pattern seen from n and a block of values.",
                    RelDesc::jump(e, z)?,
                    target,
                    b(4, 8),
                    MapKind::FreeToPi,
                )
            } else {
                (
                    "Z-jump into sequences of pairwise inequivalent values: free points as in r_free_to_pi, periodic points coded by a single marker.",
                    RelDesc::jump(e, z)?,
                    target,
                    b(4, 8),
                    MapKind::Z2Pi,
                )
            }
        }
        "r_zjump_to_fs" => {
            no_levels()?;
            let e = inner(RelDesc::e0())?;
            (
                "Z-jump into the Friedman-Stanley jump of finite sequences: periodic points go to their set of rotations, the others to the set of adjacent block pairs.",
                RelDesc::jump(e.clone(), z)?,
                RelDesc::fs_jump(RelDesc::fin_seq(RelDesc::direct_sum(vec![
                    e,
                    RelDesc::Identity,
                    RelDesc::delta(2),
                ]))),
                b(4, 8),
                MapKind::ZJumpToFs,
            )
        }
        "r_limit_to_product" => {
            let e = inner(RelDesc::delta(2))?;
            let n = params.levels.unwrap_or(3);
            if !(1..=4).contains(&n) {
                return Err(Error::Unsupported(format!(
                    "{name} supports 1 to 4 levels, not {n}"
                )));
            }
            let js = iterates(&e, &z, n)?;
            let mut parts = js.clone();
            parts.push(RelDesc::delta(1));
            (
                "Product of the first iterated Z-jumps into one Z-jump of their tagged sum, coordinate n sitting at a fixed position.",
                RelDesc::product(js),
                RelDesc::jump(RelDesc::direct_sum(parts), z)?,
                b(5, 6),
                MapKind::LimitToProduct(n),
            )
        }
        "r_dcc_phi" => {
            no_inner()?;
            let n = params.levels.unwrap_or(3);
            if !(1..=3).contains(&n) {
                return Err(Error::Unsupported(format!(
                    "{name} supports 1 to 3 levels, not {n}"
                )));
            }
            let g = GroupDesc::cyclic(2);
            let js = iterates(&RelDesc::delta(2), &g, n)?;
            let levels = (1..=n)
                .map(|k| RelDesc::jump(RelDesc::product(js[..k].to_vec()), g.clone()))
                .collect::<Result<Vec<_>>>()?;
            (
                "Truncated tower over C2: level n of the image records the first n coordinates of every value.",
                RelDesc::jump(RelDesc::product(js), g)?,
                RelDesc::product(levels),
                b(3, 8),
                MapKind::DccPhi(n),
            )
        }
        "r_a_step" => {
            no_inner()?;
            let k = params.levels.unwrap_or(2);
            if !(2..=3).contains(&k) {
                return Err(Error::Unsupported(format!(
                    "{name} supports levels 2 and 3, not {k}"
                )));
            }
            let k = k as u32;
            (
                "A_k into the Z2fin-jump of the countable power of A_(k-1), the group acting by complementing coordinates.",
                RelDesc::a_hier(k),
                RelDesc::jump(RelDesc::power_omega(RelDesc::a_hier(k - 1)), GroupDesc::Z2FinSupp)?,
                b(4, 4),
                MapKind::AStep(k),
            )
        }
        _ => return Err(Error::Unsupported(format!("no reduction named {name:?}"))),
    };
    Ok(Reduction {
        name: name.to_string(),
        summary: summary.to_string(),
        source,
        target,
        bounds,
        seed: params.seed.unwrap_or(DEFAULT_SEED),
        kind,
        mutant: None,
    })
}

impl Reduction {
    /// Sample of source points used by verification.
    pub fn points(&self, bound: usize) -> Result<Vec<PointValue>> {
        if bound == 0 || bound > self.bounds.max {
            return Err(Error::Precondition(format!(
                "bound {bound} outside 1..={} for {}",
                self.bounds.max, self.name
            )));
        }
        points::points(self, bound)
    }

    /// The map itself, without canonicalization.
    pub fn map(&self, x: &PointValue) -> Result<PointValue> {
        match &self.mutant {
            None => maps::map(self, x),
            Some(Mutant::Merge { from, to }) => {
                if self.source.decide(x, from)? {
                    maps::map(self, to)
                } else {
                    maps::map(self, x)
                }
            }
            Some(Mutant::DropTop(filler)) => {
                let PointValue::Tuple(mut levels) = maps::map(self, x)? else {
                    return Err(Error::Schema("tower image must be a tuple".into()));
                };
                if let Some(PointValue::GroupMap { support, default }) = levels.last_mut() {
                    let fix = |v: &mut PointValue| {
                        if let PointValue::Tuple(cs) = v {
                            if let Some(last) = cs.last_mut() {
                                *last = filler.clone();
                            }
                        }
                    };
                    support.iter_mut().for_each(|(_, v)| fix(v));
                    fix(default);
                }
                Ok(PointValue::Tuple(levels))
            }
        }
    }

    pub fn is_corrupted(&self) -> bool {
        self.mutant.is_some()
    }

    /// A deliberately broken copy whose verification must report failures.
    pub fn corrupted(&self) -> Result<Reduction> {
        let mut r = self.clone();
        r.mutant = Some(match self.kind {
            MapKind::DccPhi(n) => {
                let top = RelDesc::iterate_jump(RelDesc::delta(2), GroupDesc::cyclic(2), n - 1)?;
                Mutant::DropTop(top.enumerate(1).remove(0))
            }
            _ => {
                let pts = self.points(self.bounds.default)?;
                let to = pts[0].clone();
                let mut from = None;
                for p in &pts[1..] {
                    if !self.source.decide(&to, p)? {
                        from = Some(p.clone());
                        break;
                    }
                }
                let from =
                    from.ok_or_else(|| Error::Precondition("sample has a single class".into()))?;
                Mutant::Merge { from, to }
            }
        });
        r.summary = format!("{} (corrupted copy)", self.summary);
        Ok(r)
    }
}

/// `r.map(x)` after checking `x`, canonicalized in the target.
pub fn apply_reduction(r: &Reduction, x: &PointValue) -> Result<PointValue> {
    r.source.check(x)?;
    let y = r.map(x)?;
    r.target.canon(&y)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lasso::ZLasso;
    use crate::relations::lazy::{TAG_RESERVED, TAG_VALUE};

    fn e0(prefix: &str, period: &str) -> PointValue {
        PointValue::bits(prefix, period).unwrap()
    }

    #[test]
    fn catalog_verifies_and_mutants_fail() {
        for name in CATALOG {
            let r = catalog_reduction(name).unwrap();
            let rep = verify_reduction(&r, r.bounds.default).unwrap();
            assert!(rep.is_verified(), "{name}: {:?}", rep.failures.first());
            assert!(rep.pairs >= 500, "{name}: {} pairs", rep.pairs);
            assert!(rep.equivalent_pairs > 0, "{name}");
            let m = verify_reduction(&r.corrupted().unwrap(), r.bounds.default).unwrap();
            assert!(!m.failures.is_empty(), "{name}");
        }
    }

    #[test]
    fn parallel_and_serial_reports_agree() {
        let r = catalog_reduction("r_dcc_phi").unwrap().corrupted().unwrap();
        let a = verify_reduction_with(&r, 3, 1).unwrap();
        let b = verify_reduction_with(&r, 3, 5).unwrap();
        assert_eq!(
            serde_json::to_string(&a).unwrap(),
            serde_json::to_string(&b).unwrap()
        );
    }

    #[test]
    fn periodic_fs_image() {
        let r = catalog_reduction("r_zjump_to_fs").unwrap();
        let (c0, c1) = (e0("", "0"), e0("", "1"));
        let x = PointValue::lasso_z(
            vec![c0.clone(), c1.clone()],
            vec![],
            vec![c0.clone(), c1.clone()],
            0,
        )
        .unwrap();
        let a = PointValue::tagged(TAG_RESERVED, PointValue::Atom(0));
        let v = |p: &PointValue| PointValue::tagged(TAG_VALUE, p.clone());
        let mut want = vec![
            PointValue::Tuple(vec![a.clone(), v(&c0), v(&c1)]),
            PointValue::Tuple(vec![a, v(&c1), v(&c0)]),
        ];
        want.sort();
        assert_eq!(apply_reduction(&r, &x).unwrap(), PointValue::FinSet(want));
    }

    #[test]
    fn all_default_power() {
        let r = catalog_reduction("r_power_into_jump").unwrap();
        let d = e0("", "0");
        let x = PointValue::seq([(3, e0("1", "0"))], d.clone());
        let y = r.map(&x).unwrap();
        assert_eq!(y.map_at(&[0]), Some(&PointValue::tagged(0, d)));
        assert_eq!(
            y.map_at(&[1]),
            Some(&PointValue::tagged(1, PointValue::Atom(0)))
        );
    }

    #[test]
    fn subgroup_pads_odd_positions() {
        let r = catalog_reduction("r_subgroup").unwrap();
        let x = PointValue::LassoZ(ZLasso::with_entries(
            PointValue::Atom(1),
            &[(0, PointValue::Atom(0))],
        ));
        let PointValue::LassoZ(y) = r.map(&x).unwrap() else {
            panic!()
        };
        for i in -7..7 {
            let want = u64::from(i % 2 == 0 && i != 0);
            assert_eq!(y.at(i), &PointValue::Atom(want), "{i}");
        }
    }

    #[test]
    fn free_part_images_are_pairwise_inequivalent() {
        let r = catalog_reduction("r_free_to_pi").unwrap();
        let RelDesc::Jump(inner, _) = &r.target else {
            panic!()
        };
        for x in r.points(2).unwrap() {
            let y = r.map(&x).unwrap();
            assert!(r.target.freeness(&y).unwrap().pairwise_inequivalent);
            for n in -4..4 {
                for m in n + 1..5 {
                    let a = r.target.eval_at(&y, &[n]).unwrap();
                    let b = r.target.eval_at(&y, &[m]).unwrap();
                    assert!(!inner.decide(&a, &b).unwrap());
                }
            }
        }
        let periodic = PointValue::LassoZ(ZLasso::constant(e0("", "0")));
        assert!(matches!(r.map(&periodic), Err(Error::Precondition(_))));
    }

    #[test]
    fn a_step_on_constant_input() {
        let r = catalog_reduction("r_a_step").unwrap();
        let x = PointValue::seq([], e0("", "0"));
        let y = r.map(&x).unwrap();
        let v = |s: &[i64]| r.target.eval_at(&y, s).unwrap();
        let RelDesc::Jump(inner, _) = &r.target else {
            panic!()
        };
        assert!(inner
            .decide(&v(&[]), &PointValue::seq([], e0("", "0")))
            .unwrap());
        assert_eq!(v(&[1]), PointValue::seq([(1, e0("", "1"))], e0("", "0")));
    }

    #[test]
    fn parameters() {
        let p = ReductionParams {
            inner: Some(RelDesc::jump(RelDesc::delta(2), GroupDesc::IntPower(2)).unwrap()),
            ..Default::default()
        };
        assert!(matches!(
            catalog_reduction_with("r_zjump_to_fs", &p),
            Err(Error::Unsupported(_))
        ));
        assert!(catalog_reduction("r_nope").is_err());
        let r = catalog_reduction("r_dcc_phi").unwrap();
        assert!(r.points(r.bounds.max + 1).is_err());
        let p = ReductionParams {
            inner: Some(RelDesc::delta(3)),
            ..Default::default()
        };
        let r = catalog_reduction_with("r_subgroup", &p).unwrap();
        assert!(verify_reduction(&r, 2).unwrap().is_verified());
    }
}
