use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;

use k3lat_core::lattice::io::LatticeFile;
use k3lat_core::lattice::{
    canonical_sign, discriminant_group, enumerate_vectors, orthogonal_complement, overlattice, saturation, standard,
    GramLattice,
};
use k3lat_core::matrix::IMatrix;

/// Product of elementary column operations `col_j += k col_i`.
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

fn ops() -> impl Strategy<Value = Vec<(usize, usize, i64)>> {
    prop::collection::vec((0usize..8, 0usize..8, -2i64..=2), 0..12)
}

/// Negative definite by diagonal dominance.
fn random_definite() -> impl Strategy<Value = IMatrix> {
    (2usize..6).prop_flat_map(|n| {
        prop::collection::vec(-2i64..=2, n * n).prop_map(move |xs| {
            let mut m = IMatrix::zeros(n, n);
            for i in 0..n {
                for j in i + 1..n {
                    m.set(i, j, BigInt::from(xs[i * n + j]));
                    m.set(j, i, BigInt::from(xs[i * n + j]));
                }
            }
            for i in 0..n {
                let off: i64 = (0..n).filter(|&j| j != i).map(|j| xs[(i * n + j).min(j * n + i)].abs()).sum();
                m.set(i, i, BigInt::from(-2 * (off + 1) - (xs[i * n + i] & 1)));
            }
            m
        })
    })
}

fn roots_set(l: &GramLattice, norm: i64) -> BTreeSet<Vec<BigInt>> {
    enumerate_vectors(l, norm).unwrap().into_iter().collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn enumeration_is_basis_invariant(which in 0usize..3, ops in ops()) {
        let l = match which {
            0 => standard::d_n(4, -1),
            1 => standard::a_n(5, -1),
            _ => standard::e_n(6, -1),
        };
        let p = unimodular(l.rank(), &ops);
        let moved = GramLattice::with_prefix("moved", "b", l.gram().congruence(&p).unwrap()).unwrap();
        let original = roots_set(&l, -2);
        let mapped: BTreeSet<Vec<BigInt>> = roots_set(&moved, -2)
            .into_iter()
            .map(|v| {
                let mut w = p.mul_vec(&v).unwrap();
                canonical_sign(&mut w);
                w
            })
            .collect();
        prop_assert_eq!(original, mapped);
    }

    #[test]
    fn discriminant_order_is_abs_det(g in random_definite()) {
        let l = GramLattice::with_prefix("L", "e", g).unwrap();
        prop_assert_eq!(discriminant_group(&l).unwrap().order(), l.det().abs());
    }

    #[test]
    fn overlattice_det_identity(masks in prop::collection::vec(1u32..(1 << 12), 1..4)) {
        let frame = standard::diagonal(&[-2; 12], "k");
        let glue: Vec<Vec<BigRational>> = masks
            .iter()
            .map(|m| (0..12).map(|i| if m >> i & 1 == 1 { BigRational::new(1.into(), 2.into()) } else { BigRational::zero() }).collect())
            .collect();
        if let Ok(m) = overlattice(&frame, &glue, "M") {
            prop_assert_eq!(m.lattice.det() * &m.index * &m.index, frame.det());
        }
    }

    #[test]
    fn saturation_is_idempotent(v in prop::collection::vec(-4i64..=4, 8), w in prop::collection::vec(-4i64..=4, 8), k in 1i64..4) {
        let e8 = standard::e8(-1);
        let a: Vec<BigInt> = v.iter().map(|&x| BigInt::from(x * k)).collect();
        let b: Vec<BigInt> = w.iter().map(|&x| BigInt::from(x)).collect();
        if let Ok((sat, _)) = saturation(&e8, &[a, b]) {
            let (again, index) = saturation(&e8, &sat.basis()).unwrap();
            prop_assert!(index.is_one());
            prop_assert_eq!(again.sub.det(), sat.sub.det());
        }
    }

    #[test]
    fn double_complement_of_primitive_vector(v in prop::collection::vec(-3i64..=3, 8)) {
        let e8 = standard::e8(-1);
        let v: Vec<BigInt> = v.iter().map(|&x| BigInt::from(x)).collect();
        prop_assume!(v.iter().any(|x| !x.is_zero()) && k3lat_core::lattice::is_primitive(&v));
        let c = orthogonal_complement(&e8, std::slice::from_ref(&v)).unwrap();
        let cc = orthogonal_complement(&e8, &c.basis()).unwrap();
        prop_assert_eq!(cc.sub.rank(), 1);
        let mut back = cc.basis()[0].clone();
        let mut vv = v.clone();
        canonical_sign(&mut back);
        canonical_sign(&mut vv);
        prop_assert_eq!(back, vv);
    }

    #[test]
    fn lattice_file_roundtrip(g in random_definite(), halves in prop::collection::vec(0i64..4, 0..6)) {
        let l = GramLattice::with_prefix("L \"q\"", "e", g).unwrap();
        let n = l.rank();
        let glue: Vec<Vec<BigRational>> = halves
            .chunks(1)
            .map(|c| (0..n).map(|i| BigRational::new(BigInt::from((c[0] + i as i64) % 3 - 1), BigInt::from(2 + c[0]))).collect())
            .collect();
        let f = LatticeFile { lattice: l, glue };
        let text = f.to_text();
        let back = LatticeFile::parse(&text).unwrap();
        prop_assert_eq!(&back, &f);
        prop_assert_eq!(back.to_text(), text);
    }
}
