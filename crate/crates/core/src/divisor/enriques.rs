//! Enriques embedding certificates and discriminant length obstructions.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::Zero;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::lattice::{enumerate_vectors, orthogonal_complement, standard, GramLattice, LatticeVector};
use crate::matrix::IMatrix;
use crate::snf::smith;

/// The three rank two lattices `Q` attached to the transcendental lattices
/// `(U^2 + Q)(2)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum EnriquesShape {
    /// `<-4> + <-2t>`
    T(i64),
    /// `[[-4, 2], [2, -2s]]`
    S(i64),
    /// `[[-4, 1], [1, -2u]]`
    U(i64),
}

impl EnriquesShape {
    /// Parses `t=1`, `s=2`, `u=3`.
    pub fn parse(s: &str) -> Result<EnriquesShape> {
        let (k, v) = s.split_once('=').ok_or_else(|| Error::Parse(format!("expected t=N, s=N or u=N, got {s}")))?;
        let n: i64 = v.trim().parse().map_err(|_| Error::Parse(s.into()))?;
        if !(1..=10).contains(&n) {
            return Err(Error::Precondition("parameter must be in 1..=10".into()));
        }
        match k.trim() {
            "t" => Ok(EnriquesShape::T(n)),
            "s" => Ok(EnriquesShape::S(n)),
            "u" => Ok(EnriquesShape::U(n)),
            _ => Err(Error::Parse(s.into())),
        }
    }

    pub fn gram(self) -> [[i64; 2]; 2] {
        match self {
            EnriquesShape::T(t) => [[-4, 0], [0, -2 * t]],
            EnriquesShape::S(s) => [[-4, 2], [2, -2 * s]],
            EnriquesShape::U(u) => [[-4, 1], [1, -2 * u]],
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct EnriquesCertificate {
    pub shape: EnriquesShape,
    /// `c_1, c_2, c_3` in `E_8(-1)` with Gram `<-2> + Q`.
    pub e8_vectors: Vec<Vec<i64>>,
    /// `e, e + 2f + b_1, b_2, b_3` in `U + E_8(-2)`.
    pub embedding: Vec<Vec<i64>>,
    pub induced_gram: Vec<Vec<i64>>,
    pub expected_gram: Vec<Vec<i64>>,
    pub elementary_divisors: Vec<String>,
    pub complement_rank: usize,
    pub complement_det: String,
    pub complement_roots: usize,
    pub candidates_tried: usize,
}

impl EnriquesCertificate {
    pub fn valid(&self) -> bool {
        self.induced_gram == self.expected_gram
            && self.elementary_divisors.iter().all(|d| d == "1")
            && self.complement_roots == 0
    }
}

fn small(v: &[BigInt]) -> Vec<i64> {
    v.iter().map(|x| i64::try_from(x).expect("small coordinate")).collect()
}

fn signed(list: &[LatticeVector]) -> Vec<LatticeVector> {
    list.iter().flat_map(|v| [v.clone(), v.iter().map(|x| -x).collect()]).collect()
}

const MAX_CANDIDATES: usize = 20_000;

/// Searches `E_8(-1)` for `<-2> + Q` and certifies the induced embedding of
/// `U(2) + Q(2)` into `U + E_8(-2)`: Gram, primitivity and no `-2` vector in
/// the complement. Deterministic: the first certified triple in enumeration
/// order.
pub fn enriques_embedding(shape: EnriquesShape) -> Result<EnriquesCertificate> {
    let e8 = standard::e8(-1);
    let q = shape.gram();
    let roots = enumerate_vectors(&e8, -2)?;
    let second = signed(&enumerate_vectors(&e8, q[0][0])?);
    let third = signed(&enumerate_vectors(&e8, q[1][1])?);
    let ambient = GramLattice::direct_sum("U+E8(-2)", &[&standard::u(), &e8.scaled(2, "E8(-2)")]);
    let mut tried = 0;
    let c1 = &roots[0];
    for c2 in second.iter().filter(|c| e8.pairing(c1, c).map(|x| x.is_zero()).unwrap_or(false)) {
        for c3 in &third {
            if !e8.pairing(c1, c3)?.is_zero() || e8.pairing(c2, c3)? != BigInt::from(q[0][1]) {
                continue;
            }
            tried += 1;
            if tried > MAX_CANDIDATES {
                return Err(Error::SearchExhausted(format!("no certificate among {MAX_CANDIDATES} candidates")));
            }
            let cert = certify(shape, &ambient, [c1, c2, c3], tried)?;
            if cert.valid() {
                return Ok(cert);
            }
        }
    }
    Err(Error::SearchExhausted(format!("no certificate after {tried} candidates")))
}

fn certify(shape: EnriquesShape, ambient: &GramLattice, c: [&LatticeVector; 3], tried: usize) -> Result<EnriquesCertificate> {
    let pad = |head: [i64; 2], v: Option<&LatticeVector>| -> LatticeVector {
        let mut out = vec![BigInt::from(head[0]), BigInt::from(head[1])];
        out.extend(v.cloned().unwrap_or_else(|| vec![BigInt::zero(); 8]));
        out
    };
    let vectors = vec![pad([1, 0], None), pad([1, 2], Some(c[0])), pad([0, 0], Some(c[1])), pad([0, 0], Some(c[2]))];
    let mut induced = vec![vec![0i64; 4]; 4];
    for i in 0..4 {
        for j in 0..4 {
            induced[i][j] = i64::try_from(ambient.pairing(&vectors[i], &vectors[j])?).map_err(|_| Error::Overflow("gram"))?;
        }
    }
    let q = shape.gram();
    let expected = vec![
        vec![0, 2, 0, 0],
        vec![2, 0, 0, 0],
        vec![0, 0, 2 * q[0][0], 2 * q[0][1]],
        vec![0, 0, 2 * q[1][0], 2 * q[1][1]],
    ];
    let s = smith(&IMatrix::from_cols(&vectors, 10)?);
    let elementary_divisors: Vec<String> = s.diag.iter().take(4).map(|d| d.to_string()).collect();
    let comp = orthogonal_complement(ambient, &vectors)?;
    let complement_roots = if comp.sub.is_negative_definite() { enumerate_vectors(&comp.sub, -2)?.len() } else { usize::MAX };
    Ok(EnriquesCertificate {
        shape,
        e8_vectors: c.iter().map(|v| small(v)).collect(),
        embedding: vectors.iter().map(|v| small(v)).collect(),
        induced_gram: induced,
        expected_gram: expected,
        elementary_divisors,
        complement_rank: comp.sub.rank(),
        complement_det: comp.sub.det().to_string(),
        complement_roots,
        candidates_tried: tried,
    })
}

/// Number of cyclic factors of each prime order in a group given by
/// invariant factors.
pub fn prime_lengths(factors: &[i64]) -> BTreeMap<i64, usize> {
    let mut out = BTreeMap::new();
    for &f in factors {
        let mut n = f.abs();
        let mut p = 2;
        while n > 1 {
            if n % p == 0 {
                *out.entry(p).or_insert(0) += 1;
                while n % p == 0 {
                    n /= p;
                }
            }
            p += 1;
        }
    }
    out
}

#[derive(Clone, Debug, Serialize)]
pub struct LengthReport {
    pub feasible: bool,
    /// Cyclic `p`-factors of `A_Omega` that no gluing with a rank `r`
    /// lattice can remove.
    pub surviving: BTreeMap<i64, usize>,
    pub target: BTreeMap<i64, usize>,
    pub obstructing_primes: Vec<i64>,
}

/// Gluing `Omega` to a lattice of rank `rank_r` cancels at most `rank_r`
/// cyclic factors per prime; an overlattice is ruled out when more `p`-factors
/// survive than the target group has.
pub fn length_obstruction(rank_r: usize, disc_omega: &[i64], target: &[i64]) -> LengthReport {
    let omega = prime_lengths(disc_omega);
    let target = prime_lengths(target);
    let surviving: BTreeMap<i64, usize> =
        omega.iter().map(|(&p, &l)| (p, l.saturating_sub(rank_r))).filter(|(_, l)| *l > 0).collect();
    let obstructing_primes: Vec<i64> =
        surviving.iter().filter(|(p, l)| **l > target.get(p).copied().unwrap_or(0)).map(|(p, _)| *p).collect();
    LengthReport { feasible: obstructing_primes.is_empty(), surviving, target, obstructing_primes }
}

/// For `T = T_B(2)` of rank `rank_t` the classes `e_i / 2` are independent
/// in `A_T`, so `l(A_T) >= rank_t`; infeasible when this exceeds the bound.
pub fn scaled_length_obstruction(rank_t: usize, max_length: usize) -> LengthReport {
    let surviving = BTreeMap::from([(2, rank_t)]);
    let target = BTreeMap::from([(2, max_length)]);
    let obstructing_primes = if rank_t > max_length { vec![2] } else { Vec::new() };
    LengthReport { feasible: obstructing_primes.is_empty(), surviving, target, obstructing_primes }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lengths() {
        assert_eq!(prime_lengths(&[3, 3, 3, 6, 6]), BTreeMap::from([(2, 2), (3, 5)]));
        assert_eq!(prime_lengths(&[1]), BTreeMap::new());
    }

    #[test]
    fn dihedral_case_is_obstructed() {
        for d in 1..=6 {
            let r = length_obstruction(3, &[3, 3, 3, 6, 6], &[2, 2, 2, 2, 2 * d]);
            assert!(!r.feasible);
            assert_eq!(r.surviving[&3], 2);
            assert_eq!(r.obstructing_primes, vec![3]);
        }
    }

    #[test]
    fn trivial_omega_is_feasible() {
        assert!(length_obstruction(3, &[], &[2, 2, 6]).feasible);
        assert!(!scaled_length_obstruction(4, 2).feasible);
        assert!(!scaled_length_obstruction(5, 2).feasible);
        assert!(scaled_length_obstruction(2, 2).feasible);
    }

    #[test]
    fn shapes_parse() {
        assert_eq!(EnriquesShape::parse("t=1").unwrap(), EnriquesShape::T(1));
        assert_eq!(EnriquesShape::parse("u=3").unwrap().gram(), [[-4, 1], [1, -6]]);
        assert!(EnriquesShape::parse("x=1").is_err());
        assert!(EnriquesShape::parse("t=11").is_err());
    }
}
