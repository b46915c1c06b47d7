use std::sync::OnceLock;

use ordjump::lasso::lcm;
use ordjump::{brute_shift_equiv, make_relation, Lasso, PointValue, RelDesc, ZLasso};
use proptest::prelude::*;
use proptest::sample::Index;

const SPECS: &[&str] = &[
    "delta(3)",
    "e0",
    "prod(delta2,e0)",
    "pow(delta2)",
    "seq(e0)",
    "sum(e0,id,delta(2))",
    "fs(delta(3))",
    "louveau(delta2)",
    "A2",
    "powg(delta2,C3)",
    "jump(delta2,C3)",
    "jump(delta2,Z)",
    "jump(e0,Z)",
    "jump(delta2,Z^2)",
    "jump(pow(e0),Z2fin)",
    "iter(delta2,Z,2)",
    "jump(jump(delta2,C2),C2)",
];

struct Case {
    rel: RelDesc,
    pts: Vec<PointValue>,
}

fn cases() -> &'static [Case] {
    static CASES: OnceLock<Vec<Case>> = OnceLock::new();
    CASES.get_or_init(|| {
        SPECS
            .iter()
            .map(|s| {
                let rel = make_relation(s).unwrap();
                let pts = rel.enumerate(2);
                assert!(!pts.is_empty(), "{s} enumerates nothing");
                Case { rel, pts }
            })
            .collect()
    })
}

fn bits(v: &[u8]) -> Vec<PointValue> {
    v.iter().map(|&b| PointValue::Atom(b as u64)).collect()
}

fn bit_word(lo: usize, hi: usize) -> impl Strategy<Value = Vec<u8>> {
    prop::collection::vec(0u8..2, lo..=hi)
}

fn bit_lasso() -> impl Strategy<Value = ZLasso<PointValue>> {
    (bit_word(1, 3), bit_word(0, 3), bit_word(1, 3), -4i64..4)
        .prop_map(|(l, m, r, o)| ZLasso::new(bits(&l), bits(&m), bits(&r), o).unwrap())
}

/// Same sequence, spelled with unrolled and repeated periods.
fn respell(z: &ZLasso<PointValue>, unroll: usize, reps: usize) -> ZLasso<PointValue> {
    let mut mid = z.mid.clone();
    for i in 0..unroll {
        mid.push(z.right[i % z.right.len()].clone());
    }
    let repeat = |w: &[PointValue]| {
        w.iter()
            .cycle()
            .take(w.len() * reps)
            .cloned()
            .collect::<Vec<_>>()
    };
    let right = repeat(&ordjump::lasso::rotate_left(
        &z.right,
        unroll % z.right.len(),
    ));
    let left = repeat(&z.left);
    ZLasso::new(left, mid, right, z.origin).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn decide_is_an_equivalence(c in any::<Index>(), i in any::<Index>(), j in any::<Index>(), k in any::<Index>()) {
        let Case { rel, pts } = &cases()[c.index(SPECS.len())];
        let (x, y, z) = (i.get(pts), j.get(pts), k.get(pts));
        prop_assert!(rel.decide(x, x).unwrap());
        let xy = rel.decide(x, y).unwrap();
        prop_assert_eq!(xy, rel.decide(y, x).unwrap());
        if xy && rel.decide(y, z).unwrap() {
            prop_assert!(rel.decide(x, z).unwrap());
        }
    }

    #[test]
    fn complete_canon_decides(c in any::<Index>(), i in any::<Index>(), j in any::<Index>()) {
        let Case { rel, pts } = &cases()[c.index(SPECS.len())];
        prop_assume!(rel.canon_complete());
        let (x, y) = (i.get(pts), j.get(pts));
        prop_assert_eq!(rel.decide(x, y).unwrap(), rel.canon(x).unwrap() == rel.canon(y).unwrap());
    }

    #[test]
    fn jump_witness_is_sound(c in any::<Index>(), i in any::<Index>(), j in any::<Index>()) {
        let Case { rel, pts } = &cases()[c.index(SPECS.len())];
        let RelDesc::Jump(inner, g) = rel else { return Ok(()) };
        let (x, y) = (i.get(pts), j.get(pts));
        let w = rel.witness(x, y).unwrap();
        prop_assert_eq!(w.is_some(), rel.decide(x, y).unwrap());
        if let Some(gamma) = w {
            let back = g.inv(&gamma);
            let window = g.elements().unwrap_or_else(|| g.ball(4));
            for a in &window {
                let xa = rel.eval_at(x, &g.mul(&back, a)).unwrap();
                let ya = rel.eval_at(y, a).unwrap();
                prop_assert!(inner.decide(&xa, &ya).unwrap(), "witness {:?} fails at {:?}", gamma, a);
            }
        }
    }

    #[test]
    fn louveau_matches_tail_comparison(i in any::<Index>(), j in any::<Index>()) {
        let rel = make_relation("louveau(delta2)").unwrap();
        let pts = rel.enumerate(3);
        let (x, y) = (i.get(&pts), j.get(&pts));
        let last = [x, y]
            .iter()
            .filter_map(|p| match p {
                PointValue::SeqDefault { entries, .. } => entries.keys().next_back().copied(),
                _ => None,
            })
            .max()
            .map_or(0, |k| k + 1);
        let tail_agrees = (last..last + 8).all(|n| x.seq_at(n) == y.seq_at(n));
        prop_assert_eq!(rel.decide(x, y).unwrap(), tail_agrees);
    }

    #[test]
    fn e0_matches_unrolled_tails(pa in bit_word(0, 4), qa in bit_word(1, 4), pb in bit_word(0, 4), qb in bit_word(1, 4)) {
        let a = Lasso::new(bits(&pa), bits(&qa)).unwrap();
        let b = Lasso::new(bits(&pb), bits(&qb)).unwrap();
        let start = pa.len().max(pb.len());
        let span = 4 * lcm(qa.len() as u64, qb.len() as u64) as usize;
        let brute = (start..start + span).all(|n| a.at(n) == b.at(n));
        let e0 = RelDesc::e0();
        let (x, y) = (PointValue::LassoSeq(a), PointValue::LassoSeq(b));
        prop_assert_eq!(e0.decide(&x, &y).unwrap(), brute);
        prop_assert_eq!(e0.canon(&x).unwrap() == e0.canon(&y).unwrap(), brute);
    }

    #[test]
    fn zlasso_normal_form_is_unique(z in bit_lasso(), unroll in 0usize..4, reps in 1usize..3) {
        let w = respell(&z, unroll, reps);
        prop_assert_eq!(z.window(-30, 30), w.window(-30, 30));
        prop_assert_eq!(z.normalized(), w.normalized());
        prop_assert_eq!(z.shifted(5).shift_canon(), w.shift_canon());
    }

    #[test]
    fn zlasso_normal_form_separates(a in bit_lasso(), b in bit_lasso()) {
        let same = a.window(-40, 40) == b.window(-40, 40);
        prop_assert_eq!(a.normalized() == b.normalized(), same);
    }

    #[test]
    fn shift_oracle_matches_decision(a in bit_lasso(), b in bit_lasso(), k in -6i64..6) {
        let rel = RelDesc::jump(RelDesc::delta(2), ordjump::GroupDesc::Int).unwrap();
        for (x, y) in [(&a, &b), (&a, &a.shifted(k))] {
            let brute = brute_shift_equiv(x, y).is_some();
            let d = rel
                .decide(&PointValue::LassoZ(x.clone()), &PointValue::LassoZ(y.clone()))
                .unwrap();
            prop_assert_eq!(d, brute);
        }
    }
}
