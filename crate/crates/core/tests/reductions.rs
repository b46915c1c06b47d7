use ordjump::reductions::verify::verify_reduction_with;
use ordjump::reductions::CATALOG;
use ordjump::{apply_reduction, catalog_reduction, PointValue};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[test]
fn decisions_do_not_depend_on_point_order() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for name in CATALOG {
        let r = catalog_reduction(name).unwrap();
        let mut pts = r.points(r.bounds.default).unwrap();
        pts.shuffle(&mut rng);
        pts.truncate(24);
        let images: Vec<PointValue> = pts.iter().map(|x| r.map(x).unwrap()).collect();
        for i in 0..pts.len() {
            for j in 0..pts.len() {
                let src = r.source.decide(&pts[i], &pts[j]).unwrap();
                let tgt = r.target.decide(&images[i], &images[j]).unwrap();
                assert_eq!(src, tgt, "{name}: pair {i}, {j}");
                assert_eq!(
                    tgt,
                    r.target.decide(&images[j], &images[i]).unwrap(),
                    "{name}: symmetry"
                );
            }
        }
    }
}

#[test]
fn applied_images_are_canonical() {
    for name in CATALOG {
        let r = catalog_reduction(name).unwrap();
        let pts = r.points(1).unwrap();
        for x in pts.iter().take(8) {
            let y = apply_reduction(&r, x).unwrap();
            if r.target.canon_complete() {
                assert_eq!(r.target.canon(&y).unwrap(), y, "{name}");
            }
            assert!(r.target.decide(&y, &r.map(x).unwrap()).unwrap(), "{name}");
        }
    }
}

#[test]
fn reports_are_reproducible() {
    for name in ["r_zjump_to_fs", "r_dcc_phi", "r_gamma_square"] {
        let r = catalog_reduction(name).unwrap();
        let a = verify_reduction_with(&r, r.bounds.default, 1).unwrap();
        let b = verify_reduction_with(&r, r.bounds.default, 4).unwrap();
        assert_eq!(
            serde_json::to_string(&a).unwrap(),
            serde_json::to_string(&b).unwrap()
        );
        assert!(a.is_verified(), "{name}");
    }
}
