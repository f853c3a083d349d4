//! Randomized invariants: subset-mask algebra, cyclic-group sanity across a
//! range of orders, and closure soundness.

use proptest::prelude::*;

use gyro::{axioms, subgyro, GyroTable, SubsetMask};

fn cyclic(n: usize) -> GyroTable {
    let rows = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
    GyroTable::from_rows(rows).unwrap()
}

fn arb_mask(n: usize) -> impl Strategy<Value = SubsetMask> {
    prop::collection::vec(0..n, 0..=n).prop_map(move |v| SubsetMask::from_elems(n, &v))
}

proptest! {
    #[test]
    fn mask_set_algebra(a in arb_mask(12), b in arb_mask(12)) {
        let union = a.union(&b);
        let inter = a.intersect(&b);
        prop_assert!(a.is_subset(&union) && b.is_subset(&union));
        prop_assert!(inter.is_subset(&a) && inter.is_subset(&b));
        // De Morgan: complement of the union is the intersection of complements.
        prop_assert_eq!(union.complement(), a.complement().intersect(&b.complement()));
        prop_assert_eq!(union.len() + inter.len(), a.len() + b.len());
    }

    #[test]
    fn mask_bits_round_trip(a in arb_mask(12)) {
        let back = SubsetMask::from_bits(12, a.bits());
        prop_assert_eq!(&back, &a);
        prop_assert_eq!(a.iter().collect::<Vec<_>>(), a.elems());
    }

    #[test]
    fn cyclic_groups_are_trivially_gyro(n in 1usize..=12) {
        let g = cyclic(n);
        prop_assert!(axioms::verify_axioms(&g).all_ok());
        prop_assert!(axioms::is_group(&g));
        prop_assert_eq!(axioms::right_cancellation_witness(&g), None);
        // Trivial gyrations make coaddition coincide with the operation.
        for a in 0..n {
            for b in 0..n {
                prop_assert_eq!(g.coop(a, b), g.op(a, b));
            }
        }
    }

    #[test]
    fn closure_is_always_a_subgyrogroup(n in 1usize..=12, seed in prop::collection::vec(0usize..12, 0..4)) {
        let g = cyclic(n);
        let mut elems: Vec<usize> = seed.into_iter().filter(|&e| e < n).collect();
        if elems.is_empty() {
            elems.push(0); // the closure generator rejects empty seed sets
        }
        let mask = SubsetMask::from_elems(n, &elems);
        let closure = subgyro::generate_closure(&g, &mask).unwrap();
        prop_assert!(mask.is_subset(&closure));
        prop_assert!(subgyro::subgyrogroup_violation(&g, &closure).unwrap().is_none());
        // In Z_n the closure of {x} is generated by gcd(x, n).
        if let [x] = elems[..] {
            let d = gcd(x, n);
            let expected: Vec<usize> = (0..n).filter(|e| e % d == 0).collect();
            prop_assert_eq!(closure.elems(), expected);
        }
    }
}

fn gcd(a: usize, b: usize) -> usize {
    if a == 0 { b } else { gcd(b % a, a) }
}
