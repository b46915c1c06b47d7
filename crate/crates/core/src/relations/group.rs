use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Group element as a coordinate vector. Finite groups use one index,
/// `ℤ^k` uses `k` integers, `ℤ₂^{<ω}` lists the positions of its nonzero
/// bits in increasing order, and products concatenate their factors.
pub type GroupElem = Vec<i64>;

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub enum GroupDesc {
    /// Multiplication table on `0..n`; `0` is the identity.
    Finite {
        table: Vec<Vec<usize>>,
    },
    Int,
    IntPower(usize),
    Z2FinSupp,
    /// Product of groups with fixed-length elements.
    Product(Vec<GroupDesc>),
}

fn bad(msg: String) -> Error {
    Error::Schema(msg)
}

impl GroupDesc {
    pub fn cyclic(n: usize) -> Self {
        GroupDesc::Finite {
            table: (0..n)
                .map(|a| (0..n).map(|b| (a + b) % n).collect())
                .collect(),
        }
    }

    /// Check the table is a group table with identity `0`, and that
    /// product factors have fixed arity.
    pub fn validate(&self) -> Result<()> {
        match self {
            GroupDesc::Finite { table } => {
                let n = table.len();
                if n == 0
                    || table
                        .iter()
                        .any(|r| r.len() != n || r.iter().any(|&v| v >= n))
                {
                    return Err(bad("multiplication table must be square over 0..n".into()));
                }
                for a in 0..n {
                    if table[0][a] != a || table[a][0] != a {
                        return Err(bad("0 must be the identity".into()));
                    }
                    if !(0..n).any(|b| table[a][b] == 0) {
                        return Err(bad(format!("{a} has no inverse")));
                    }
                    for b in 0..n {
                        for c in 0..n {
                            if table[table[a][b]][c] != table[a][table[b][c]] {
                                return Err(bad("table is not associative".into()));
                            }
                        }
                    }
                }
                Ok(())
            }
            GroupDesc::Product(fs) => {
                if fs.is_empty() {
                    return Err(bad("empty product".into()));
                }
                for f in fs {
                    if f.arity().is_none() {
                        return Err(bad("product factors need fixed-length elements".into()));
                    }
                    f.validate()?;
                }
                Ok(())
            }
            _ => Ok(()),
        }
    }

    /// Element length, `None` when it varies.
    pub fn arity(&self) -> Option<usize> {
        match self {
            GroupDesc::Finite { .. } | GroupDesc::Int => Some(1),
            GroupDesc::IntPower(k) => Some(*k),
            GroupDesc::Z2FinSupp => None,
            GroupDesc::Product(fs) => fs.iter().map(GroupDesc::arity).sum(),
        }
    }

    pub fn order(&self) -> Option<usize> {
        match self {
            GroupDesc::Finite { table } => Some(table.len()),
            GroupDesc::IntPower(0) => Some(1),
            GroupDesc::Product(fs) => fs.iter().map(GroupDesc::order).product(),
            _ => None,
        }
    }

    pub fn is_finite(&self) -> bool {
        self.order().is_some()
    }

    pub fn identity(&self) -> GroupElem {
        match self {
            GroupDesc::Z2FinSupp => Vec::new(),
            g => vec![0; g.arity().unwrap()],
        }
    }

    pub fn contains(&self, g: &[i64]) -> bool {
        match self {
            GroupDesc::Finite { table } => {
                g.len() == 1 && g[0] >= 0 && (g[0] as usize) < table.len()
            }
            GroupDesc::Int => g.len() == 1,
            GroupDesc::IntPower(k) => g.len() == *k,
            GroupDesc::Z2FinSupp => g.iter().all(|&b| b >= 0) && g.windows(2).all(|w| w[0] < w[1]),
            GroupDesc::Product(fs) => {
                let mut rest = g;
                for f in fs {
                    let k = f.arity().unwrap();
                    if rest.len() < k || !f.contains(&rest[..k]) {
                        return false;
                    }
                    rest = &rest[k..];
                }
                rest.is_empty()
            }
        }
    }

    pub fn mul(&self, a: &[i64], b: &[i64]) -> GroupElem {
        match self {
            GroupDesc::Finite { table } => vec![table[a[0] as usize][b[0] as usize] as i64],
            GroupDesc::Int | GroupDesc::IntPower(_) => {
                a.iter().zip(b).map(|(x, y)| x + y).collect()
            }
            GroupDesc::Z2FinSupp => {
                let mut out: Vec<i64> = a.iter().filter(|x| !b.contains(x)).copied().collect();
                out.extend(b.iter().filter(|x| !a.contains(x)));
                out.sort_unstable();
                out
            }
            GroupDesc::Product(fs) => self.split_zip(fs, a, b, |f, x, y| f.mul(x, y)),
        }
    }

    pub fn inv(&self, a: &[i64]) -> GroupElem {
        match self {
            GroupDesc::Finite { table } => {
                let i = a[0] as usize;
                vec![(0..table.len()).find(|&b| table[i][b] == 0).unwrap() as i64]
            }
            GroupDesc::Int | GroupDesc::IntPower(_) => a.iter().map(|x| -x).collect(),
            GroupDesc::Z2FinSupp => a.to_vec(),
            GroupDesc::Product(fs) => {
                let mut out = Vec::new();
                let mut rest = a;
                for f in fs {
                    let k = f.arity().unwrap();
                    out.extend(f.inv(&rest[..k]));
                    rest = &rest[k..];
                }
                out
            }
        }
    }

    fn split_zip(
        &self,
        fs: &[GroupDesc],
        a: &[i64],
        b: &[i64],
        op: impl Fn(&GroupDesc, &[i64], &[i64]) -> GroupElem,
    ) -> GroupElem {
        let mut out = Vec::new();
        let mut i = 0;
        for f in fs {
            let k = f.arity().unwrap();
            out.extend(op(f, &a[i..i + k], &b[i..i + k]));
            i += k;
        }
        out
    }

    /// All elements of a finite group, identity first.
    pub fn elements(&self) -> Option<Vec<GroupElem>> {
        self.is_finite().then(|| self.ball(0))
    }

    /// A finite window of elements: the whole group when finite, the cube
    /// `[-r, r]^k` for `ℤ^k`, and the subsets of `0..r` for `ℤ₂^{<ω}`.
    pub fn ball(&self, r: usize) -> Vec<GroupElem> {
        let r = r as i64;
        match self {
            GroupDesc::Finite { table } => (0..table.len() as i64).map(|i| vec![i]).collect(),
            GroupDesc::Int => int_range(r).map(|i| vec![i]).collect(),
            GroupDesc::IntPower(k) => {
                let mut out = vec![Vec::new()];
                for _ in 0..*k {
                    out = out
                        .into_iter()
                        .flat_map(|v: Vec<i64>| {
                            int_range(r).map(move |i| {
                                let mut w = v.clone();
                                w.push(i);
                                w
                            })
                        })
                        .collect();
                }
                out
            }
            GroupDesc::Z2FinSupp => (0u64..1 << r)
                .map(|m| (0..r).filter(|&i| m >> i & 1 == 1).collect())
                .collect(),
            GroupDesc::Product(fs) => {
                let mut out = vec![Vec::new()];
                for f in fs {
                    let part = f.ball(r as usize);
                    out = out
                        .into_iter()
                        .flat_map(|v: Vec<i64>| {
                            part.iter().map(move |p| {
                                let mut w = v.clone();
                                w.extend(p);
                                w
                            })
                        })
                        .collect();
                }
                out
            }
        }
    }

    /// Name in the relation mini-language.
    pub fn name(&self) -> String {
        match self {
            GroupDesc::Finite { table } if *self == GroupDesc::cyclic(table.len()) => {
                format!("C{}", table.len())
            }
            GroupDesc::Finite { table } => format!("F{}", table.len()),
            GroupDesc::Int => "Z".into(),
            GroupDesc::IntPower(k) => format!("Z^{k}"),
            GroupDesc::Z2FinSupp => "Z2fin".into(),
            GroupDesc::Product(fs) => fs.iter().map(GroupDesc::name).collect::<Vec<_>>().join("*"),
        }
    }
}

/// `0, 1, -1, 2, -2, …` up to magnitude `r`.
fn int_range(r: i64) -> impl Iterator<Item = i64> {
    std::iter::once(0).chain((1..=r).flat_map(|i| [i, -i]))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn group_laws_on_windows() {
        let groups = [
            GroupDesc::cyclic(4),
            GroupDesc::Int,
            GroupDesc::IntPower(2),
            GroupDesc::Z2FinSupp,
            GroupDesc::Product(vec![GroupDesc::cyclic(2), GroupDesc::cyclic(3)]),
        ];
        for g in groups {
            g.validate().unwrap();
            let w = g.ball(2);
            let e = g.identity();
            for a in &w {
                assert!(g.contains(a), "{a:?}");
                assert_eq!(g.mul(a, &g.inv(a)), e);
                assert_eq!(g.mul(&e, a), *a);
                for b in &w {
                    for c in &w {
                        assert_eq!(g.mul(&g.mul(a, b), c), g.mul(a, &g.mul(b, c)));
                    }
                }
            }
        }
    }

    #[test]
    fn finite_orders() {
        assert_eq!(GroupDesc::cyclic(3).elements().unwrap().len(), 3);
        let v = GroupDesc::Product(vec![GroupDesc::cyclic(2), GroupDesc::cyclic(2)]);
        assert_eq!(v.elements().unwrap().len(), 4);
        assert!(!GroupDesc::Int.is_finite());
        let bad = GroupDesc::Finite {
            table: vec![vec![0, 1], vec![1, 1]],
        };
        assert!(bad.validate().is_err());
    }
}
