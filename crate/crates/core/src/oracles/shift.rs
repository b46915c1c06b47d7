use crate::lasso::{lcm, ZLasso};

/// Scan bound on `|k|` used by [`brute_shift_equiv`].
///
/// Besides middles and periods it includes the origin distance, since two
/// translates of the same lasso can sit arbitrarily far apart.
pub fn shift_bound<T>(x: &ZLasso<T>, y: &ZLasso<T>) -> i64 {
    let l = periods_lcm(x, y);
    (x.mid.len() + y.mid.len()) as i64 + 2 * l + (x.origin - y.origin).abs()
}

fn periods_lcm<T>(x: &ZLasso<T>, y: &ZLasso<T>) -> i64 {
    [x.left.len(), x.right.len(), y.left.len(), y.right.len()]
        .iter()
        .fold(1u64, |acc, &n| lcm(acc, n as u64)) as i64
}

/// True iff `y(i) = x(i - k)` for every `i`.
///
/// Outside both cores each side is periodic, so one common period past the
/// cores settles the rest.
pub fn shift_matches<T: Clone + Ord>(x: &ZLasso<T>, y: &ZLasso<T>, k: i64) -> bool {
    let l = periods_lcm(x, y);
    let (xs, xe) = x.core_span();
    let (ys, ye) = y.core_span();
    let lo = (xs + k).min(ys) - l;
    let hi = (xe + k).max(ye) + l;
    (lo..hi).all(|i| y.at(i) == x.at(i - k))
}

/// Least-magnitude shift `k` (positive first on ties) with `y = x` moved
/// right by `k`, found by exhaustive scan.
pub fn brute_shift_equiv<T: Clone + Ord>(x: &ZLasso<T>, y: &ZLasso<T>) -> Option<i64> {
    let bound = shift_bound(x, y);
    (0..=bound)
        .flat_map(|m| if m == 0 { vec![0] } else { vec![m, -m] })
        .find(|&k| shift_matches(x, y, k))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(left: &[u8], mid: &[u8], right: &[u8], origin: i64) -> ZLasso<u8> {
        ZLasso::new(left.to_vec(), mid.to_vec(), right.to_vec(), origin).unwrap()
    }

    #[test]
    fn examples() {
        let x = z(&[0], &[1], &[0], 0);
        assert_eq!(brute_shift_equiv(&x, &x.shifted(7)), Some(7));
        let p = z(&[0, 1], &[], &[0, 1], 0);
        let q = z(&[1, 0], &[], &[1, 0], 0);
        assert_eq!(brute_shift_equiv(&p, &q), Some(1));
        assert_eq!(brute_shift_equiv(&x, &z(&[0], &[1, 1], &[0], 0)), None);
    }

    #[test]
    fn far_translates() {
        let x = z(&[0], &[1, 2], &[3], -40);
        assert_eq!(brute_shift_equiv(&x, &x.shifted(95)), Some(95));
        assert_eq!(brute_shift_equiv(&x.shifted(95), &x), Some(-95));
    }
}
