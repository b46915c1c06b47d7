use ordjump::order_terms::{
    apply_rule, complete_hull, derivative, derivative_chain, redexes, IsoVerdict,
};
use ordjump::{canonicalize, invariant_signature, is_complete, iso_terms, rank, OrderTerm, Term};
use proptest::prelude::*;

fn term() -> impl Strategy<Value = OrderTerm> {
    let leaf = prop_oneof![Just(Term::unit()), (2u64..4).prop_map(Term::fin)];
    leaf.prop_recursive(3, 10, 3, |inner| {
        prop_oneof![
            prop::collection::vec(inner.clone(), 2..4).prop_map(Term::sum),
            inner.clone().prop_map(Term::omega),
            inner.clone().prop_map(Term::omega_star),
            inner.prop_map(Term::zeta),
        ]
    })
}

fn finite_term() -> impl Strategy<Value = (OrderTerm, u64)> {
    prop::collection::vec(1u64..4, 1..5).prop_map(|ns| {
        let total = ns.iter().sum();
        (Term::sum(ns.into_iter().map(Term::fin)), total)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn canonicalize_is_idempotent(t in term()) {
        let c = canonicalize(&t);
        prop_assert_eq!(canonicalize(&c), c);
    }

    #[test]
    fn rank_and_end_flags_are_canon_invariant(t in term()) {
        let c = canonicalize(&t);
        prop_assert_eq!(rank(&c).unwrap(), rank(&t).unwrap());
        prop_assert_eq!(c.end_flags(), t.end_flags());
    }

    #[test]
    fn derivative_commutes_with_canon(t in term()) {
        let verdict = iso_terms(&derivative(&canonicalize(&t)), &derivative(&t));
        prop_assert!(!matches!(verdict, IsoVerdict::NonIsomorphic(_)));
    }

    #[test]
    fn derivative_chain_is_short(t in term()) {
        let chain = derivative_chain(&t).unwrap();
        prop_assert_eq!(canonicalize(chain.last().unwrap()), Term::unit());
        prop_assert!(chain.len() as u64 - 1 <= t.size());
        prop_assert!(rank(&t).unwrap() as u64 <= t.size());
    }

    #[test]
    fn signature_agrees_with_canonical_form(t in term()) {
        let c = canonicalize(&t);
        prop_assert!(iso_terms(&t, &c).is_isomorphic());
        prop_assert_eq!(invariant_signature(&t).unwrap(), invariant_signature(&c).unwrap());
    }

    #[test]
    fn rewrites_preserve_signature(t in term(), pick in any::<prop::sample::Index>()) {
        let rs = redexes(&t);
        prop_assume!(!rs.is_empty());
        let (path, rule) = &rs[pick.index(rs.len())];
        let u = apply_rule(&t, path, *rule).unwrap();
        prop_assert!(iso_terms(&t, &u).is_isomorphic());
        prop_assert_eq!(invariant_signature(&t).unwrap(), invariant_signature(&u).unwrap());
    }

    #[test]
    fn isomorphic_pairs_share_signature(a in term(), b in term()) {
        if iso_terms(&a, &b).is_isomorphic() {
            prop_assert_eq!(invariant_signature(&a).unwrap(), invariant_signature(&b).unwrap());
        }
    }

    #[test]
    fn finite_iso_is_cardinality((a, m) in finite_term(), (b, n) in finite_term()) {
        prop_assert_eq!(iso_terms(&a, &b).is_isomorphic(), m == n);
    }

    #[test]
    fn hull_is_complete(t in term()) {
        prop_assert_eq!(is_complete(&complete_hull(&t)).unwrap(), true);
    }
}
