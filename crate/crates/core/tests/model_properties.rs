use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

use k3lat_core::matrix::QMatrix;
use k3lat_core::models::{
    even_sign_generators, heisenberg_generators, invariant_space, span_rank, Polynomial,
};

fn poly(vars: usize) -> impl Strategy<Value = Polynomial> {
    prop::collection::vec((prop::collection::vec(0u32..3, vars), -5i64..=5), 0..5).prop_map(move |terms| {
        let mut p = Polynomial::zero(vars);
        for (e, c) in terms {
            p.add_term(e, BigRational::from_integer(BigInt::from(c)));
        }
        p
    })
}

fn matrix(n: usize) -> impl Strategy<Value = QMatrix> {
    prop::collection::vec((-3i64..=3, 1i64..=2), n * n).prop_map(move |xs| {
        let rows = xs
            .chunks(n)
            .map(|r| r.iter().map(|&(a, b)| BigRational::new(a.into(), b.into())).collect())
            .collect();
        QMatrix::from_rows(rows).unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn substitution_is_a_ring_homomorphism(p in poly(3), q in poly(3), m in matrix(3)) {
        let sum = p.add(&q).unwrap().substitute(&m).unwrap();
        prop_assert_eq!(sum, p.substitute(&m).unwrap().add(&q.substitute(&m).unwrap()).unwrap());
        let prod = p.mul(&q).unwrap().substitute(&m).unwrap();
        prop_assert_eq!(prod, p.substitute(&m).unwrap().mul(&q.substitute(&m).unwrap()).unwrap());
    }

    #[test]
    fn substitution_composes(p in poly(3), m in matrix(3), n in matrix(3)) {
        let twice = p.substitute(&m).unwrap().substitute(&n).unwrap();
        prop_assert_eq!(twice, p.substitute(&m.mul(&n).unwrap()).unwrap());
    }

    #[test]
    fn evaluation_agrees_with_composition(p in poly(3), m in matrix(3), x in prop::collection::vec(-4i64..=4, 3)) {
        let x: Vec<BigRational> = x.into_iter().map(|a| BigRational::from_integer(a.into())).collect();
        let mx = m.mul_vec(&x).unwrap();
        prop_assert_eq!(p.substitute(&m).unwrap().eval(&x).unwrap(), p.eval(&mx).unwrap());
    }

    #[test]
    fn invariant_spaces_are_fixed(degree in 1u32..=6, even_sign: bool) {
        let (gens, vars) = if even_sign { (even_sign_generators(), 6) } else { (heisenberg_generators(), 4) };
        prop_assume!(!even_sign || degree <= 4);
        let basis = invariant_space(&gens, vars, degree).unwrap();
        prop_assert_eq!(span_rank(&basis).unwrap(), basis.len());
        for f in &basis {
            prop_assert!(f.is_homogeneous());
            prop_assert_eq!(f.degree(), Some(degree));
            for g in &gens {
                prop_assert_eq!(&g.apply(f).unwrap(), f);
            }
        }
    }
}
