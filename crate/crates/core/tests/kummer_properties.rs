use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;

use k3lat_core::divisor;
use k3lat_core::kummer::{self, k_label, AffineSubspace};
use k3lat_core::lattice::saturation;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(8))]

    #[test]
    fn family_determinants(d in 1u64..=8) {
        let k4d = kummer::k4d_prime(d).unwrap();
        prop_assert_eq!(k4d.lattice.det().abs(), BigInt::from(64 * d));
        let (nsy, _) = kummer::nsy_lattice(d, false).unwrap();
        prop_assert_eq!(nsy.lattice.det().abs(), BigInt::from(64 * d));
        prop_assert!(nsy.lattice.is_even());
        prop_assert_eq!(nsy.lattice.signature(), (1, 15));
    }

    #[test]
    fn kummer_is_primitive_in_k4d(d in 1u64..=8) {
        let k4d = kummer::k4d_prime(d).unwrap();
        let k = kummer::kummer_lattice().unwrap();
        // K sits in the frame coordinates after H; take its basis rows there
        let vectors: Vec<Vec<BigInt>> = (0..k.rank())
            .map(|i| {
                let mut x = vec![BigRational::zero()];
                x.extend(k.basis.row(i));
                k4d.coords_required(&x).unwrap()
            })
            .collect();
        let (_, index) = saturation(&k4d.lattice, &vectors).unwrap();
        prop_assert!(index.is_one());
    }
}

#[test]
fn kummer_even_sets_are_the_affine_hyperplanes() {
    let l = kummer::k4d_prime(2).unwrap();
    let labels = &l.frame.labels[1..];
    let curves = divisor::curve_classes(&l, labels).unwrap();
    let r = divisor::even_sets(&l, &curves).unwrap();
    let octads: BTreeSet<BTreeSet<String>> = r
        .elements
        .iter()
        .filter(|e| e.len() == 8)
        .map(|e| e.iter().map(|&i| labels[i].clone()).collect())
        .collect();
    let planes: BTreeSet<BTreeSet<String>> = AffineSubspace::hyperplanes()
        .iter()
        .map(|h| h.points().into_iter().map(k_label).collect())
        .collect();
    assert_eq!(planes.len(), 30);
    assert_eq!(octads, planes);
}

#[test]
fn mg_orbits_partition_the_discriminant_group() {
    let rows = kummer::mg_discriminant_orbits().unwrap();
    let total: u64 = rows.iter().map(|r| r.count).sum();
    assert_eq!(total, 128);
    assert!(rows.iter().all(|r| r.consistent && r.in_dual));
    let tags: BTreeSet<&str> = rows.iter().map(|r| r.tag).collect();
    assert_eq!(tags.len(), rows.len());
}
