use std::collections::BTreeSet;

use orthocat::roots::{
    enumerate_simples, j_tensor, quantum_group_levelset, transpose, weyl_group, CatSpec, Family, Weight,
};
use proptest::prelude::*;

fn spec_strategy(max_sum: usize) -> impl Strategy<Value = CatSpec> {
    (prop_oneof![Just(Family::B), Just(Family::D)], 1usize..=4, 1usize..=4)
        .prop_filter("within envelope", move |&(f, n, k)| n + k <= max_sum && (f == Family::B || n >= 2))
        .prop_map(|(f, n, k)| CatSpec::new(f, n, k).unwrap())
}

fn factorial(n: usize) -> usize {
    (1..=n).product()
}

#[test]
fn weyl_group_orders_and_sign_sums() {
    for n in 1..=4 {
        let w = weyl_group(&CatSpec::b(n, 1).unwrap()).unwrap();
        assert_eq!(w.len(), (1 << n) * factorial(n));
        assert_eq!(w.iter().map(|x| i64::from(x.sn())).sum::<i64>(), 0);
    }
    for n in 2..=4 {
        let w = weyl_group(&CatSpec::d(n, 1).unwrap()).unwrap();
        assert_eq!(w.len(), (1 << (n - 1)) * factorial(n));
        assert_eq!(w.iter().map(|x| i64::from(x.sn())).sum::<i64>(), 0);
    }
}

#[test]
fn known_simple_counts() {
    let cases = [
        (CatSpec::b(1, 1), 7),
        (CatSpec::b(2, 1), 10),
        (CatSpec::b(2, 2), 21),
        (CatSpec::b(3, 1), 13),
        (CatSpec::b(3, 2), 34),
        (CatSpec::d(2, 2), 25),
        (CatSpec::d(2, 3), 49),
        (CatSpec::d(3, 2), 35),
        (CatSpec::d(3, 3), 84),
    ];
    for (spec, count) in cases {
        assert_eq!(enumerate_simples(&spec.unwrap()).unwrap().len(), count);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn simples_are_canonically_ordered(spec in spec_strategy(6)) {
        let set = enumerate_simples(&spec).unwrap();
        prop_assert!(set.items().windows(2).all(|p| p[0] < p[1]));
        prop_assert_eq!(set.get(set.empty_index()), &Weight::empty(spec.n()));
        for (i, w) in set.items().iter().enumerate() {
            prop_assert_eq!(set.position(w), Some(i));
        }
    }

    #[test]
    fn j_tensor_is_an_involution_fixing_gamma1(spec in spec_strategy(6)) {
        let set = enumerate_simples(&spec).unwrap();
        let gamma1: BTreeSet<usize> = set.gamma1().iter().copied().collect();
        for (i, w) in set.items().iter().enumerate() {
            let image = j_tensor(&set, w).unwrap();
            prop_assert!(set.contains(&image));
            prop_assert_eq!(image.grade(), w.grade());
            prop_assert_eq!(&j_tensor(&set, &image).unwrap(), w);
            prop_assert_eq!(&image == w, gamma1.contains(&i), "{}", w);
        }
    }

    #[test]
    fn level_set_equals_simple_set(spec in spec_strategy(6)) {
        let a: BTreeSet<Weight> = quantum_group_levelset(&spec).unwrap().into_iter().collect();
        let b: BTreeSet<Weight> = enumerate_simples(&spec).unwrap().items().iter().cloned().collect();
        prop_assert_eq!(a, b);
    }

    #[test]
    fn transpose_is_an_involution(n in 1usize..=4, k in 1usize..=3, raw in prop::collection::vec(0i64..=7, 4)) {
        let width = 2 * k as i64 + 1;
        let mut parts: Vec<i64> = raw.into_iter().take(n).map(|p| p % (width + 1)).collect();
        parts.sort_unstable_by(|a, b| b.cmp(a));
        let w = Weight::from_parts(&parts, n).unwrap();
        let once = transpose(&w).unwrap();
        prop_assert!(once.len() <= width as usize);
        let back = transpose(&Weight::from_parts(&once, width as usize).unwrap()).unwrap();
        let trimmed: Vec<i64> = parts.iter().copied().filter(|&p| p > 0).collect();
        prop_assert_eq!(back.into_iter().filter(|&p| p > 0).collect::<Vec<_>>(), trimmed);
    }

    #[test]
    fn weights_round_trip_through_json(spec in spec_strategy(5)) {
        for w in enumerate_simples(&spec).unwrap().items() {
            let text = serde_json::to_string(w).unwrap();
            prop_assert_eq!(&serde_json::from_str::<Weight>(&text).unwrap(), w);
        }
        let text = serde_json::to_string(&spec).unwrap();
        prop_assert_eq!(serde_json::from_str::<CatSpec>(&text).unwrap(), spec);
    }
}

#[test]
fn rejects_out_of_range_specs() {
    assert!(CatSpec::b(9, 1).unwrap_err().is_guard_rail());
    assert!(!CatSpec::d(1, 1).unwrap_err().is_guard_rail());
    assert!(CatSpec::b(1, 0).is_err());
    let set = enumerate_simples(&CatSpec::b(1, 1).unwrap()).unwrap();
    let outside = Weight::new(vec![40], orthocat::roots::Sign::Plus).unwrap();
    assert!(j_tensor(&set, &outside).is_err());
}
