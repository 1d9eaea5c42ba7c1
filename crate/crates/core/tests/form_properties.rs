use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

use k3lat_core::arith::rat_mod;
use k3lat_core::finite_form::{cyclic, discriminant_form, forms_isomorphic, q2, FiniteQuadraticForm};
use k3lat_core::kummer;
use k3lat_core::lattice::{discriminant_group, standard, GramLattice};

fn q_of(l: &GramLattice, x: &[BigRational]) -> BigRational {
    l.pairing_q(x, x).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn q_is_independent_of_the_lift(which in 0usize..3, coeffs in prop::collection::vec(0i64..8, 7), shift in prop::collection::vec(-3i64..=3, 17)) {
        let l = match which {
            0 => kummer::kummer_lattice().unwrap().lattice,
            1 => kummer::mg_lattice().unwrap().lattice,
            _ => kummer::k4d_prime(3).unwrap().lattice,
        };
        let (_, group) = discriminant_form(&l).unwrap();
        let n = l.rank();
        let mut x = vec![BigRational::from_integer(0.into()); n];
        for (c, lift) in coeffs.iter().zip(&group.lifts) {
            for i in 0..n {
                x[i] += BigRational::from_integer((*c).into()) * &lift[i];
            }
        }
        let y: Vec<BigRational> = x.iter().zip(&shift).map(|(a, s)| a + BigRational::from_integer((*s).into())).collect();
        prop_assert_eq!(rat_mod(&q_of(&l, &x), 2), rat_mod(&q_of(&l, &y), 2));
    }

    #[test]
    fn census_is_an_isomorphism_invariant(pieces in prop::collection::vec(0usize..4, 1..4)) {
        let piece = |k: usize| -> FiniteQuadraticForm {
            match k {
                0 => q2(),
                1 => cyclic(2, BigRational::new(1.into(), 2.into())).unwrap(),
                2 => cyclic(4, BigRational::new(3.into(), 4.into())).unwrap(),
                _ => cyclic(3, BigRational::new(2.into(), 3.into())).unwrap(),
            }
        };
        let forward = pieces.iter().skip(1).fold(piece(pieces[0]), |acc, &k| acc.direct_sum(&piece(k)));
        let mut rev = pieces.clone();
        rev.reverse();
        let backward = rev.iter().skip(1).fold(piece(rev[0]), |acc, &k| acc.direct_sum(&piece(k)));
        prop_assert!(forms_isomorphic(&forward, &backward).unwrap().is_some());
        prop_assert_eq!(forward.q_census().unwrap(), backward.q_census().unwrap());
    }
}

#[test]
fn doubling_a_unimodular_lattice() {
    let e8 = standard::e8(-1);
    let u = standard::u();
    let ue8 = GramLattice::direct_sum("U+E8", &[&u, &e8]);
    for l in [e8, u, ue8] {
        let l2 = l.scaled(2, "L(2)");
        let order = discriminant_group(&l2).unwrap().order();
        assert_eq!(order, BigInt::from(2).pow(l.rank() as u32));
        let (form, _) = discriminant_form(&l2).unwrap();
        assert_eq!(form.invariant_factors(), vec![2; l.rank()]);
    }
}
