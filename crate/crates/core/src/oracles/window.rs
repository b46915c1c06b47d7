use crate::error::{Error, Result};
use crate::relations::{GroupDesc, GroupElem, PointValue, RelDesc};

/// Bounded evaluation of a relation with every jump and power quantifier
/// over `g` restricted to `window`.
///
/// Jumps nested over the same group reuse the window; anything else is
/// decided exactly.
pub fn window_eval(
    r: &RelDesc,
    x: &PointValue,
    y: &PointValue,
    window: &[GroupElem],
) -> Result<bool> {
    r.check(x)?;
    r.check(y)?;
    let g = outer_group(r)
        .ok_or_else(|| Error::Schema(format!("{} has no group quantifier", r.name())))?;
    if let Some(bad) = window.iter().find(|a| !g.contains(a)) {
        return Err(Error::Schema(format!(
            "window element {bad:?} is not in {}",
            g.name()
        )));
    }
    eval(r, g, x, y, window)
}

fn outer_group(r: &RelDesc) -> Option<&GroupDesc> {
    match r {
        RelDesc::Jump(_, g) | RelDesc::Pow(_, g) => Some(g),
        RelDesc::Product(es) => es.iter().find_map(outer_group),
        _ => None,
    }
}

fn eval(
    r: &RelDesc,
    g: &GroupDesc,
    x: &PointValue,
    y: &PointValue,
    w: &[GroupElem],
) -> Result<bool> {
    match r {
        RelDesc::Jump(e, h) if h == g => {
            for gamma in w {
                let gi = g.inv(gamma);
                let mut ok = true;
                for alpha in w {
                    let xv = r.eval_at(x, &g.mul(&gi, alpha))?;
                    let yv = r.eval_at(y, alpha)?;
                    if !eval(e, g, &xv, &yv, w)? {
                        ok = false;
                        break;
                    }
                }
                if ok {
                    return Ok(true);
                }
            }
            Ok(false)
        }
        RelDesc::Pow(e, h) if h == g => {
            for alpha in w {
                if !eval(e, g, &r.eval_at(x, alpha)?, &r.eval_at(y, alpha)?, w)? {
                    return Ok(false);
                }
            }
            Ok(true)
        }
        RelDesc::Product(es) => {
            let (PointValue::Tuple(xs), PointValue::Tuple(ys)) = (x, y) else {
                return Err(Error::Schema("product points must be tuples".into()));
            };
            for ((e, a), b) in es.iter().zip(xs).zip(ys) {
                if !eval(e, g, a, b, w)? {
                    return Ok(false);
                }
            }
            Ok(true)
        }
        _ => r.decide(x, y),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::relations::make_relation;

    #[test]
    fn reflexive_and_refuting() {
        let r = make_relation("jump(delta(2),Z)").unwrap();
        let x = PointValue::lasso_z(
            vec![PointValue::Atom(0)],
            vec![PointValue::Atom(1)],
            vec![PointValue::Atom(0)],
            0,
        )
        .unwrap();
        let y = PointValue::lasso_z(
            vec![PointValue::Atom(0)],
            vec![PointValue::Atom(1)],
            vec![PointValue::Atom(0)],
            5,
        )
        .unwrap();
        let w = GroupDesc::Int.ball(3);
        assert!(window_eval(&r, &x, &x, &w).unwrap());
        assert!(!window_eval(&r, &x, &y, &w).unwrap());
        assert!(window_eval(&r, &x, &y, &GroupDesc::Int.ball(6)).unwrap());
        assert!(r.decide(&x, &y).unwrap());
    }

    #[test]
    fn rejects_foreign_window() {
        let r = make_relation("jump(delta(2),C2)").unwrap();
        let x = PointValue::group_map(vec![], PointValue::Atom(0));
        assert!(window_eval(&r, &x, &x, &[vec![5]]).is_err());
    }
}
