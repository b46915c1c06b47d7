//! Finite words, primitive roots, least rotations, and eventually periodic
//! sequences indexed by ℕ (`Lasso`) or ℤ (`ZLasso`).

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Length of the primitive root of `w` (the shortest `u` with `w = u^k`).
pub fn primitive_root_len<T: PartialEq>(w: &[T]) -> usize {
    let n = w.len();
    if n == 0 {
        return 0;
    }
    let mut fail = vec![0usize; n];
    let mut k = 0;
    for i in 1..n {
        while k > 0 && w[i] != w[k] {
            k = fail[k - 1];
        }
        if w[i] == w[k] {
            k += 1;
        }
        fail[i] = k;
    }
    let p = n - fail[n - 1];
    if n.is_multiple_of(p) {
        p
    } else {
        n
    }
}

/// Truncate `w` to its primitive root.
pub fn primitive_root<T: PartialEq + Clone>(w: &[T]) -> Vec<T> {
    w[..primitive_root_len(w)].to_vec()
}

/// Start index of the lexicographically least rotation (Booth).
pub fn least_rotation<T: Ord>(w: &[T]) -> usize {
    let n = w.len();
    if n == 0 {
        return 0;
    }
    let mut f: Vec<isize> = vec![-1; 2 * n];
    let mut k = 0usize;
    for j in 1..2 * n {
        let sj = &w[j % n];
        let mut i = f[j - k - 1];
        while i != -1 && *sj != w[(k + i as usize + 1) % n] {
            if *sj < w[(k + i as usize + 1) % n] {
                k = j - i as usize - 1;
            }
            i = f[i as usize];
        }
        if i == -1 && *sj != w[(k + i.wrapping_add(1) as usize) % n] {
            if *sj < w[k % n] {
                k = j;
            }
            f[j - k] = -1;
        } else {
            f[j - k] = i + 1;
        }
    }
    k % n
}

/// `w` rotated left by `k` positions.
pub fn rotate_left<T: Clone>(w: &[T], k: usize) -> Vec<T> {
    if w.is_empty() {
        return Vec::new();
    }
    let k = k % w.len();
    let mut out = Vec::with_capacity(w.len());
    out.extend_from_slice(&w[k..]);
    out.extend_from_slice(&w[..k]);
    out
}

pub fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

pub fn lcm(a: u64, b: u64) -> u64 {
    if a == 0 || b == 0 {
        0
    } else {
        a / gcd(a, b) * b
    }
}

/// One-sided lasso `prefix · period^ω`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Lasso<T> {
    pub prefix: Vec<T>,
    pub period: Vec<T>,
}

impl<T: Clone + PartialEq> Lasso<T> {
    pub fn new(prefix: Vec<T>, period: Vec<T>) -> Result<Self> {
        if period.is_empty() {
            return Err(Error::Schema("lasso period must be nonempty".into()));
        }
        Ok(Lasso { prefix, period })
    }

    pub fn at(&self, i: usize) -> &T {
        if i < self.prefix.len() {
            &self.prefix[i]
        } else {
            &self.period[(i - self.prefix.len()) % self.period.len()]
        }
    }

    /// Primitive period and shortest prefix; denotes the same sequence.
    pub fn normalized(&self) -> Self {
        let mut period = primitive_root(&self.period);
        let mut prefix = self.prefix.clone();
        while let Some(last) = prefix.last() {
            if last != period.last().unwrap() {
                break;
            }
            prefix.pop();
            let p = period.pop().unwrap();
            period.insert(0, p);
        }
        Lasso { prefix, period }
    }

    pub fn map<U, F: FnMut(&T) -> U>(&self, mut f: F) -> Lasso<U> {
        Lasso {
            prefix: self.prefix.iter().map(&mut f).collect(),
            period: self.period.iter().map(&mut f).collect(),
        }
    }
}

/// Eventually periodic ℤ-indexed sequence.
///
/// Position `i` holds `left[(i - origin) mod |left|]` for `i < origin`,
/// `mid[i - origin]` on `[origin, origin + |mid|)`, and
/// `right[(i - origin - |mid|) mod |right|]` beyond.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct ZLasso<T> {
    pub left: Vec<T>,
    pub mid: Vec<T>,
    pub right: Vec<T>,
    pub origin: i64,
}

impl<T: Clone + Ord> ZLasso<T> {
    pub fn new(left: Vec<T>, mid: Vec<T>, right: Vec<T>, origin: i64) -> Result<Self> {
        if left.is_empty() || right.is_empty() {
            return Err(Error::Schema("lasso periods must be nonempty".into()));
        }
        Ok(ZLasso {
            left,
            mid,
            right,
            origin,
        })
    }

    pub fn constant(v: T) -> Self {
        ZLasso {
            left: vec![v.clone()],
            mid: Vec::new(),
            right: vec![v],
            origin: 0,
        }
    }

    /// `base` everywhere except at the listed positions.
    pub fn with_entries(base: T, entries: &[(i64, T)]) -> Self {
        if entries.is_empty() {
            return Self::constant(base);
        }
        let lo = entries.iter().map(|e| e.0).min().unwrap();
        let hi = entries.iter().map(|e| e.0).max().unwrap();
        let mut mid = vec![base.clone(); (hi - lo + 1) as usize];
        for (p, v) in entries {
            mid[(p - lo) as usize] = v.clone();
        }
        ZLasso {
            left: vec![base.clone()],
            mid,
            right: vec![base],
            origin: lo,
        }
        .normalized()
    }

    pub fn at(&self, i: i64) -> &T {
        let o = self.origin;
        let m = self.mid.len() as i64;
        if i < o {
            &self.left[(i - o).rem_euclid(self.left.len() as i64) as usize]
        } else if i < o + m {
            &self.mid[(i - o) as usize]
        } else {
            &self.right[((i - o - m) as usize) % self.right.len()]
        }
    }

    pub fn map<U: Clone + Ord, F: FnMut(&T) -> U>(&self, mut f: F) -> ZLasso<U> {
        ZLasso {
            left: self.left.iter().map(&mut f).collect(),
            mid: self.mid.iter().map(&mut f).collect(),
            right: self.right.iter().map(&mut f).collect(),
            origin: self.origin,
        }
    }

    pub fn try_map<U: Clone + Ord, F: FnMut(&T) -> Result<U>>(
        &self,
        mut f: F,
    ) -> Result<ZLasso<U>> {
        Ok(ZLasso {
            left: self.left.iter().map(&mut f).collect::<Result<_>>()?,
            mid: self.mid.iter().map(&mut f).collect::<Result<_>>()?,
            right: self.right.iter().map(&mut f).collect::<Result<_>>()?,
            origin: self.origin,
        })
    }

    /// The sequence `i ↦ self(i - k)`.
    pub fn shifted(&self, k: i64) -> Self {
        let mut out = self.clone();
        out.origin += k;
        out
    }

    /// Primitive periods, left period pushed as far right as possible, then
    /// minimal middle; a fully periodic sequence is rotated to origin 0.
    /// Positions are preserved, and two lassos denote the
    /// same sequence iff their normal forms are equal.
    pub fn normalized(&self) -> Self {
        let mut left = primitive_root(&self.left);
        let mut right = primitive_root(&self.right);
        let mut mid = self.mid.clone();
        let mut origin = self.origin;
        let mut start = 0usize;
        loop {
            if start < mid.len() {
                if mid[start] != left[0] {
                    break;
                }
                start += 1;
                left.rotate_left(1);
                origin += 1;
            } else {
                if left == right || left[0] != right[0] {
                    break;
                }
                left.rotate_left(1);
                right.rotate_left(1);
                origin += 1;
            }
        }
        mid.drain(..start);
        while let Some(last) = mid.last() {
            if last != right.last().unwrap() {
                break;
            }
            mid.pop();
            right.rotate_right(1);
        }
        if mid.is_empty() && left == right {
            let o = origin.rem_euclid(left.len() as i64) as usize;
            left.rotate_right(o);
            right = left.clone();
            origin = 0;
        }
        ZLasso {
            left,
            mid,
            right,
            origin,
        }
    }

    /// True iff the sequence is periodic on all of ℤ.
    pub fn is_fully_periodic(&self) -> bool {
        let n = self.normalized();
        n.mid.is_empty() && n.left == n.right
    }

    /// Canonical representative of the shift class: equal for two lassos iff
    /// one is a translate of the other.
    pub fn shift_canon(&self) -> Self {
        let mut n = self.normalized();
        if n.mid.is_empty() && n.left == n.right {
            let r = least_rotation(&n.left);
            n.left = rotate_left(&n.left, r);
            n.right = n.left.clone();
        }
        n.origin = 0;
        n
    }

    /// Least-magnitude `k` (ties broken toward positive) with
    /// `other(i) = self(i - k)` for all `i`.
    pub fn find_shift(&self, other: &Self) -> Option<i64> {
        let a = self.normalized();
        let b = other.normalized();
        let periodic_a = a.mid.is_empty() && a.left == a.right;
        let periodic_b = b.mid.is_empty() && b.left == b.right;
        if periodic_a != periodic_b {
            return None;
        }
        if !periodic_a {
            if a.left == b.left && a.mid == b.mid && a.right == b.right {
                return Some(b.origin - a.origin);
            }
            return None;
        }
        let p = a.left.len();
        if b.left.len() != p {
            return None;
        }
        // b.left[j] = a.left[(j + r) mod p]
        let r = (0..p).find(|&r| (0..p).all(|j| b.left[j] == a.left[(j + r) % p]))? as i64;
        let p = p as i64;
        let k = (b.origin - a.origin - r).rem_euclid(p);
        Some(if k <= p - k { k } else { k - p })
    }

    /// Window `[lo, hi)` of the sequence.
    pub fn window(&self, lo: i64, hi: i64) -> Vec<T> {
        (lo..hi).map(|i| self.at(i).clone()).collect()
    }

    /// All cells occurring anywhere in the sequence.
    pub fn cells(&self) -> impl Iterator<Item = &T> {
        self.left
            .iter()
            .chain(self.mid.iter())
            .chain(self.right.iter())
    }

    /// Positions outside which the sequence is purely periodic on each side.
    pub fn core_span(&self) -> (i64, i64) {
        (self.origin, self.origin + self.mid.len() as i64)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primitive_roots() {
        assert_eq!(primitive_root_len(&[1, 2, 1, 2]), 2);
        assert_eq!(primitive_root_len(&[1, 2, 1]), 3);
        assert_eq!(primitive_root_len(&[7, 7, 7]), 1);
        assert_eq!(primitive_root_len::<u8>(&[]), 0);
    }

    #[test]
    fn booth_matches_naive() {
        let words: Vec<Vec<u8>> = vec![
            vec![3, 1, 2],
            vec![1, 0, 1, 0, 0],
            vec![2, 2, 2],
            vec![0, 1, 0, 1],
            vec![5, 4, 3, 2, 1, 0],
            vec![1, 1, 0, 1, 1, 0, 0],
        ];
        for w in words {
            let k = least_rotation(&w);
            let best = (0..w.len()).map(|r| rotate_left(&w, r)).min().unwrap();
            assert_eq!(rotate_left(&w, k), best, "{w:?}");
        }
    }

    #[test]
    fn lasso_normalize() {
        let l = Lasso::new(vec![0, 0, 1], vec![0, 1]).unwrap();
        let n = l.normalized();
        assert_eq!(n.prefix, vec![0]);
        assert_eq!(n.period, vec![0, 1]);
        for i in 0..20 {
            assert_eq!(l.at(i), n.at(i));
        }
    }

    #[test]
    fn zlasso_normalize_preserves_positions() {
        let z = ZLasso::new(vec![0, 1], vec![0, 1, 1, 1], vec![1, 1], 3).unwrap();
        let n = z.normalized();
        for i in -20..20 {
            assert_eq!(z.at(i), n.at(i), "at {i}");
        }
        assert_eq!(n.right, vec![1]);
    }

    #[test]
    fn zlasso_shift_detection() {
        let a = ZLasso::with_entries(0, &[(0, 1)]);
        let b = a.shifted(7);
        assert_eq!(a.find_shift(&b), Some(7));
        assert_eq!(a.shift_canon(), b.shift_canon());
        let c = ZLasso::with_entries(0, &[(0, 1), (1, 1)]);
        assert_eq!(a.find_shift(&c), None);
        let p = ZLasso::new(vec![0, 1], vec![], vec![0, 1], 0).unwrap();
        let q = ZLasso::new(vec![1, 0], vec![], vec![1, 0], 0).unwrap();
        assert_eq!(p.find_shift(&q), Some(1));
        assert!(p.is_fully_periodic());
    }
}
