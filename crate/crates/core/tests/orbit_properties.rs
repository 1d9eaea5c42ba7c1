use num_bigint::BigInt;
use proptest::prelude::*;

use k3lat_core::lattice::is_primitive;
use k3lat_core::orbit::{classify_t2p, is_isometry, orbit_invariants, random_isometry, t2p_gram, t2p_lattice};

fn vector() -> impl Strategy<Value = Vec<BigInt>> {
    prop::collection::vec(-9i64..=9, 5).prop_map(|v| v.into_iter().map(BigInt::from).collect())
}

fn usable(p: i64, v: &[BigInt]) -> bool {
    is_primitive(v) && t2p_lattice(p).norm(v).map(|n| n != BigInt::from(0)).unwrap_or(false)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn form_is_an_orbit_invariant(p in prop::sample::select(vec![2i64, 3, 5, 7]), v in vector(), seed: u64) {
        prop_assume!(usable(p, &v));
        let g = random_isometry(p, seed, 12);
        prop_assert!(is_isometry(&g, &t2p_gram(p)));
        let gv = g.mul_vec(&v).unwrap();
        prop_assert_eq!(classify_t2p(p, &v).unwrap().form, classify_t2p(p, &gv).unwrap().form);
    }

    #[test]
    fn witness_reaches_the_representative(p in prop::sample::select(vec![2i64, 3, 5, 7]), v in vector()) {
        prop_assume!(usable(p, &v));
        let c = classify_t2p(p, &v).unwrap();
        prop_assert!(is_isometry(&c.witness, &t2p_gram(p)));
        let image: Vec<String> = c.witness.mul_vec(&v).unwrap().iter().map(|x| x.to_string()).collect();
        prop_assert_eq!(&image, &c.representative);
        prop_assert!(c.form.is_canonical(p));
        let rep: Vec<String> = c.form.vector(p).iter().map(|x| x.to_string()).collect();
        prop_assert_eq!(rep, c.representative);
    }

    #[test]
    fn invariants_match_the_form(p in prop::sample::select(vec![2i64, 3, 5, 7]), v in vector()) {
        prop_assume!(usable(p, &v));
        let c = classify_t2p(p, &v).unwrap();
        let inv = orbit_invariants(p, &v).unwrap();
        prop_assert_eq!(inv.norm, c.form.norm(p));
        prop_assert_eq!(inv.det_complement, c.form.complement_det(p));
    }
}
