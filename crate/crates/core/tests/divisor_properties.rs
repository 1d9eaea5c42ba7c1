use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

use k3lat_core::divisor::{ample_up_to_weyl, h_minus_curves, h_minus_half_sum};
use k3lat_core::kummer;
use k3lat_core::lattice::{FramedLattice, GramLattice};
use k3lat_core::matrix::IMatrix;

fn unimodular(n: usize, ops: &[(usize, usize, i64)]) -> IMatrix {
    let mut m = IMatrix::identity(n);
    for &(i, j, k) in ops {
        let (i, j) = (i % n, j % n);
        if i == j {
            continue;
        }
        for r in 0..n {
            let v = m.get(r, j) + m.get(r, i) * BigInt::from(k);
            m.set(r, j, v);
        }
    }
    m
}

fn integral(x: Vec<BigInt>) -> Vec<BigRational> {
    x.into_iter().map(BigRational::from_integer).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(8))]

    #[test]
    fn ampleness_is_basis_invariant(
        d in 2u64..=4,
        r in 0usize..=16,
        half: bool,
        ops in prop::collection::vec((0usize..17, 0usize..17, -1i64..=1), 0..10),
    ) {
        let l = kummer::k4d_prime(d).unwrap();
        let candidate = if half { h_minus_half_sum(&l).unwrap() } else { h_minus_curves(&l, r).unwrap() };
        let before = ample_up_to_weyl(&l, &candidate).unwrap();

        let c = l.coords_required(&candidate).unwrap();
        let p = unimodular(l.rank(), &ops);
        let gram = l.lattice.gram().congruence(&p).unwrap();
        let moved = FramedLattice::trivial(GramLattice::with_prefix("moved", "b", gram).unwrap());
        let c2 = p.unimodular_inverse().unwrap().mul_vec(&c).unwrap();
        let after = ample_up_to_weyl(&moved, &integral(c2)).unwrap();

        prop_assert_eq!(before.status, after.status);
        prop_assert_eq!(before.norm, after.norm);
        prop_assert_eq!(before.root_type, after.root_type);
        prop_assert_eq!(before.roots.len(), after.roots.len());
    }
}
