mod common;

use fhier::forest::{canonical, equiv_h, leq_h, op_oplus, op_p, op_plus, swap_dual, Forest, Label, Tree};
use fhier::ordinal::CnfOrdinal;
use proptest::prelude::*;

fn ordinal() -> impl Strategy<Value = CnfOrdinal> {
    let leaf = (0u32..5).prop_map(CnfOrdinal::finite);
    leaf.prop_recursive(2, 12, 3, |inner| {
        prop::collection::vec((inner, 1u32..4), 1..4).prop_map(|parts| {
            parts
                .into_iter()
                .fold(CnfOrdinal::zero(), |acc, (e, c)| acc.add(&CnfOrdinal::monomial(e, c)))
        })
    })
}

fn tree(k: u32) -> impl Strategy<Value = Tree> {
    let leaf = (0..k).prop_map(Tree::color);
    leaf.prop_recursive(3, 6, 2, move |inner| {
        ((0..k), prop::collection::vec(inner, 1..3))
            .prop_map(|(c, kids)| Tree::new(Label::Base(c), kids))
    })
}

fn forest(k: u32) -> impl Strategy<Value = Forest> {
    prop::collection::vec(tree(k), 1..3).prop_map(Forest::new)
}

fn small_forest(k: u32) -> impl Strategy<Value = Forest> {
    forest(k).prop_filter("brute force budget", |f| f.size() <= 7)
}

proptest! {
    #[test]
    fn ordinal_add_mul_associate(a in ordinal(), b in ordinal(), c in ordinal()) {
        prop_assert_eq!(a.add(&b).add(&c), a.add(&b.add(&c)));
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
    }

    #[test]
    fn ordinal_left_distributes(a in ordinal(), b in ordinal(), c in ordinal()) {
        prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
    }

    #[test]
    fn ordinal_identities_and_bounds(a in ordinal(), b in ordinal()) {
        let (zero, one) = (CnfOrdinal::zero(), CnfOrdinal::one());
        prop_assert_eq!(a.add(&zero), a.clone());
        prop_assert_eq!(zero.add(&a), a.clone());
        prop_assert_eq!(a.mul(&one), a.clone());
        prop_assert_eq!(one.mul(&a), a.clone());
        prop_assert!(a <= a.add(&b));
        prop_assert!(b <= a.add(&b));
        prop_assert_eq!(a.natural_add(&b), b.natural_add(&a));
        prop_assert!(a.add(&b) <= a.natural_add(&b));
    }

    #[test]
    fn ordinal_add_is_right_monotone(a in ordinal(), b in ordinal(), c in ordinal()) {
        let (lo, hi) = if b <= c { (b, c) } else { (c, b) };
        if lo < hi {
            prop_assert!(a.add(&lo) < a.add(&hi));
        }
        prop_assert!(lo.add(&a) <= hi.add(&a));
    }

    #[test]
    fn ordinal_pow_laws(a in ordinal(), b in ordinal(), c in ordinal()) {
        let (Ok(ab), Ok(ac), Ok(abc)) = (a.pow(&b), a.pow(&c), a.pow(&b.add(&c))) else {
            return Err(TestCaseError::reject("resource limit"));
        };
        prop_assert_eq!(abc, ab.mul(&ac));
        if let (Ok(l), Ok(r)) = (ab.pow(&c), a.pow(&b.mul(&c))) {
            prop_assert_eq!(l, r);
        }
    }

    #[test]
    fn ordinal_finite_agrees_with_integers(x in 0u64..40, y in 0u64..40, e in 0u64..5) {
        let (a, b) = (CnfOrdinal::finite(x), CnfOrdinal::finite(y));
        prop_assert_eq!(a.add(&b), CnfOrdinal::finite(x + y));
        prop_assert_eq!(a.mul(&b), CnfOrdinal::finite(x * y));
        prop_assert_eq!(a.pow(&CnfOrdinal::finite(e)).unwrap(), CnfOrdinal::finite(x.pow(e as u32)));
        prop_assert_eq!(a.cmp(&b), x.cmp(&y));
    }

    #[test]
    fn ordinal_text_round_trips(a in ordinal()) {
        prop_assert_eq!(a.to_string().parse::<CnfOrdinal>().unwrap(), a);
    }

    #[test]
    fn forest_order_matches_brute_force(f in small_forest(3), g in small_forest(3)) {
        prop_assert_eq!(leq_h(&f, &g).unwrap(), common::brute_leq(&f.trees, &g.trees));
    }

    #[test]
    fn forest_text_round_trips(f in forest(3)) {
        prop_assert_eq!(f.to_string().parse::<Forest>().unwrap(), f);
    }

    #[test]
    fn canonical_is_an_idempotent_representative(f in forest(3)) {
        let c = canonical(&f);
        prop_assert!(equiv_h(&c, &f).unwrap());
        prop_assert_eq!(canonical(&c), c.clone());
        prop_assert!(c.size() <= f.size());
    }

    #[test]
    fn sums_bound_their_parts(f in forest(3), g in forest(3)) {
        let union = op_oplus(&f, &g).unwrap();
        prop_assert!(leq_h(&f, &union).unwrap());
        prop_assert!(leq_h(&g, &union).unwrap());
        let sum = op_plus(&f, &g).unwrap();
        prop_assert!(leq_h(&f, &sum).unwrap());
        prop_assert!(leq_h(&g, &sum).unwrap());
    }

    #[test]
    fn operations_are_monotone(f in forest(3), g in forest(3), h in forest(3), i in 0u32..3) {
        if leq_h(&f, &g).unwrap() {
            let pf = Forest::single(op_p(i, &f).unwrap());
            let pg = Forest::single(op_p(i, &g).unwrap());
            prop_assert!(leq_h(&pf, &pg).unwrap());
            prop_assert!(leq_h(&op_oplus(&f, &h).unwrap(), &op_oplus(&g, &h).unwrap()).unwrap());
            prop_assert!(leq_h(&op_plus(&h, &f).unwrap(), &op_plus(&h, &g).unwrap()).unwrap());
        }
    }

    #[test]
    fn duality_is_an_order_automorphism(f in forest(2), g in forest(2)) {
        prop_assert_eq!(swap_dual(&swap_dual(&f)), f.clone());
        prop_assert_eq!(
            leq_h(&swap_dual(&f), &swap_dual(&g)).unwrap(),
            leq_h(&f, &g).unwrap()
        );
    }

    #[test]
    fn leq_is_transitive(f in forest(2), g in forest(2), h in forest(2)) {
        if leq_h(&f, &g).unwrap() && leq_h(&g, &h).unwrap() {
            prop_assert!(leq_h(&f, &h).unwrap());
        }
    }
}
