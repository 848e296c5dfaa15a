use bcinv::ideal::{left_annihilator, right_annihilator, subset_intersection, subset_sum, Subset};
use bcinv::RingHandle;
use proptest::prelude::*;

const SPECS: [&str; 6] = [
    "zn:6",
    "zn:8",
    "zn:12",
    "mat:2:zn:2",
    "prod:zn:2,zn:4",
    "prod:zn:3,mat:2:zn:2",
];

fn ring_and_sets() -> impl Strategy<Value = (RingHandle, Vec<u32>, Vec<u32>)> {
    let sets = || proptest::collection::vec(any::<u32>(), 0..6);
    (0..SPECS.len(), sets(), sets()).prop_map(|(i, xs, ys)| {
        let ring = RingHandle::parse(SPECS[i]).unwrap();
        let n = ring.order();
        let reduce = |v: Vec<u32>| v.into_iter().map(|x| x % n).collect();
        (ring, reduce(xs), reduce(ys))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn literals_round_trip((ring, xs, _) in ring_and_sets()) {
        for x in xs {
            let text = ring.format_ix(x);
            prop_assert_eq!(ring.parse_element(&text).unwrap().index(), x);
        }
    }

    #[test]
    fn annihilators_reverse_inclusion((ring, xs, ys) in ring_and_sets()) {
        let small = Subset::from_indices(&ring, xs.iter().copied());
        let large = Subset::from_indices(&ring, xs.iter().chain(&ys).copied());
        prop_assert!(small.is_subset_of(&large));
        let (ls, ll) = (left_annihilator(&ring, &small).unwrap(), left_annihilator(&ring, &large).unwrap());
        let (rs, rl) = (right_annihilator(&ring, &small).unwrap(), right_annihilator(&ring, &large).unwrap());
        prop_assert!(ll.is_subset_of(&ls));
        prop_assert!(rl.is_subset_of(&rs));
        // S ⊆ r(l(S)) and S ⊆ l(r(S)).
        prop_assert!(small.is_subset_of(&right_annihilator(&ring, &ls).unwrap()));
        prop_assert!(small.is_subset_of(&left_annihilator(&ring, &rs).unwrap()));
    }

    #[test]
    fn set_operations_commute((ring, xs, ys) in ring_and_sets()) {
        let s = Subset::from_indices(&ring, xs);
        let t = Subset::from_indices(&ring, ys);
        prop_assert_eq!(subset_sum(&ring, &s, &t).unwrap(), subset_sum(&ring, &t, &s).unwrap());
        let meet = subset_intersection(&s, &t).unwrap();
        prop_assert_eq!(&meet, &subset_intersection(&t, &s).unwrap());
        prop_assert!(meet.is_subset_of(&s) && meet.is_subset_of(&t));
    }

    #[test]
    fn units_have_two_sided_inverses((ring, xs, _) in ring_and_sets()) {
        for x in xs {
            match ring.unit_inverse_ix(x) {
                Some(u) => {
                    prop_assert_eq!(ring.mul_ix(x, u), ring.one_ix());
                    prop_assert_eq!(ring.mul_ix(u, x), ring.one_ix());
                }
                None => prop_assert!(!ring.is_unit_ix(x)),
            }
        }
    }
}
