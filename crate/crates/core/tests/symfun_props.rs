use flowseries::exactcoeff::{rat, Rational};
use flowseries::symfun::{groupring_multiply, groupring_oracle, RibbonElement};
use flowseries::trees::Word;
use proptest::prelude::*;

fn ribbon(n: usize, c: &[i64]) -> RibbonElement<Rational> {
    let mut x = RibbonElement::zero(n);
    for (w, v) in Word::all(n - 1).into_iter().zip(c) {
        x.set(w, rat(*v)).unwrap();
    }
    x
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn internal_product_matches_group_ring(
        n in 1usize..=5,
        a in prop::collection::vec(-2i64..=2, 16),
        b in prop::collection::vec(-2i64..=2, 16),
    ) {
        let (x, y) = (ribbon(n, &a), ribbon(n, &b));
        let ribbon_side = groupring_oracle(&x.internal_product(&y).unwrap()).unwrap();
        let group_side = groupring_multiply(&groupring_oracle(&x).unwrap(), &groupring_oracle(&y).unwrap()).unwrap();
        prop_assert_eq!(ribbon_side.first_difference(&group_side), None);
        prop_assert_eq!(group_side.to_ribbon(), Some(x.internal_product(&y).unwrap()));
    }

    #[test]
    fn internal_product_is_associative(
        n in 1usize..=4,
        a in prop::collection::vec(-2i64..=2, 8),
        b in prop::collection::vec(-2i64..=2, 8),
        c in prop::collection::vec(-2i64..=2, 8),
    ) {
        let (x, y, z) = (ribbon(n, &a), ribbon(n, &b), ribbon(n, &c));
        let l = x.internal_product(&y).unwrap().internal_product(&z).unwrap();
        let r = x.internal_product(&y.internal_product(&z).unwrap()).unwrap();
        prop_assert_eq!(l, r);
    }
}
