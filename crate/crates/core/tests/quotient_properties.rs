use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use proptest::prelude::*;

use k3lat_core::lattice::{span_index, standard, GramLattice};
use k3lat_core::matrix::IMatrix;
use k3lat_core::quotient::build_quotient_maps;

fn ints(n: usize, r: i64) -> impl Strategy<Value = Vec<BigInt>> {
    prop::collection::vec(-r..=r, n).prop_map(|v| v.into_iter().map(BigInt::from).collect())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn projection_formula(x in ints(22, 5), y in ints(142, 5)) {
        let (push, pull) = build_quotient_maps();
        let lhs = push.source.pairing(&pull.matrix.mul_vec(&x).unwrap(), &y).unwrap();
        let rhs = push.target.pairing(&x, &push.matrix.mul_vec(&y).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
        let back = push.matrix.mul_vec(&pull.matrix.mul_vec(&x).unwrap()).unwrap();
        prop_assert_eq!(back, x.iter().map(|a| a * 16).collect::<Vec<_>>());
    }

    #[test]
    fn sublattice_index(entries in ints(64, 3)) {
        let e8 = standard::e8(-1);
        let m = IMatrix::from_rows(entries.chunks(8).map(|r| r.to_vec()).collect()).unwrap();
        let i = m.det().abs();
        prop_assume!(!i.is_zero());
        let sub = GramLattice::with_prefix("S", "s", e8.gram().congruence(&m).unwrap()).unwrap();
        prop_assert_eq!(sub.det().abs(), e8.det().abs() * &i * &i);
        prop_assert_eq!(span_index(&e8, &(0..8).map(|j| m.col(j)).collect::<Vec<_>>()).unwrap(), Some(i));
    }
}
