//! Integral lattices given by Gram matrices, with exact invariants,
//! complements, saturation, overlattices, discriminant groups and
//! short-vector enumeration.

mod disc;
mod enumerate;
pub mod io;
mod overlattice;
pub mod standard;

pub use disc::{discriminant_group, DiscriminantGroup};
pub use enumerate::{enumerate_vectors, enumerate_vectors_with, guard_from_env, DEFAULT_GUARD};
pub use overlattice::{format_combination, overlattice, FramedLattice};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::matrix::{IMatrix, QMatrix};
use crate::snf::smith;

pub type LatticeVector = Vec<BigInt>;
pub type RationalVector = Vec<BigRational>;

/// A free Z-module with a symmetric integral bilinear form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GramLattice {
    pub name: String,
    pub labels: Vec<String>,
    gram: IMatrix,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Invariants {
    pub rank: usize,
    pub det: String,
    pub signature: (usize, usize),
    pub even: bool,
    pub discriminant_group: Vec<String>,
}

impl GramLattice {
    pub fn new(name: impl Into<String>, labels: Vec<String>, gram: IMatrix) -> Result<Self> {
        if !gram.is_symmetric() {
            return Err(Error::DimensionMismatch("Gram matrix must be square symmetric".into()));
        }
        if labels.len() != gram.rows() {
            return Err(Error::DimensionMismatch("one label per basis vector".into()));
        }
        Ok(GramLattice { name: name.into(), labels, gram })
    }

    /// Labels `prefix0, prefix1, ...`.
    pub fn with_prefix(name: impl Into<String>, prefix: &str, gram: IMatrix) -> Result<Self> {
        let labels = (0..gram.rows()).map(|i| format!("{prefix}{i}")).collect();
        Self::new(name, labels, gram)
    }

    pub fn gram(&self) -> &IMatrix {
        &self.gram
    }

    pub fn rank(&self) -> usize {
        self.gram.rows()
    }

    pub fn det(&self) -> BigInt {
        self.gram.det()
    }

    pub fn is_even(&self) -> bool {
        (0..self.rank()).all(|i| self.gram.get(i, i).is_even())
    }

    pub fn is_unimodular(&self) -> bool {
        self.det().abs().is_one()
    }

    pub fn pairing(&self, x: &[BigInt], y: &[BigInt]) -> Result<BigInt> {
        self.check_dim(x)?;
        self.check_dim(y)?;
        self.gram.bilinear(x, y)
    }

    pub fn norm(&self, x: &[BigInt]) -> Result<BigInt> {
        self.pairing(x, x)
    }

    /// Pairing extended to rational coordinates.
    pub fn pairing_q(&self, x: &[BigRational], y: &[BigRational]) -> Result<BigRational> {
        if x.len() != self.rank() || y.len() != self.rank() {
            return Err(Error::DimensionMismatch("rational vector length".into()));
        }
        self.gram.to_q().bilinear(x, y)
    }

    fn check_dim(&self, x: &[BigInt]) -> Result<()> {
        if x.len() != self.rank() {
            return Err(Error::DimensionMismatch(format!(
                "vector of length {} in lattice of rank {}",
                x.len(),
                self.rank()
            )));
        }
        Ok(())
    }

    /// `(n_+, n_-)`; degenerate directions are not counted.
    pub fn signature(&self) -> (usize, usize) {
        let d = diagonalize(&self.gram.to_q());
        let pos = d.iter().filter(|x| x.is_positive()).count();
        let neg = d.iter().filter(|x| x.is_negative()).count();
        (pos, neg)
    }

    pub fn is_negative_definite(&self) -> bool {
        self.signature() == (0, self.rank())
    }

    pub fn invariants(&self) -> Invariants {
        let s = smith(&self.gram);
        let disc = s
            .diag
            .iter()
            .filter(|x| !x.is_one())
            .map(|x| if x.is_zero() { "Z".to_string() } else { format!("Z/{x}") })
            .collect();
        Invariants {
            rank: self.rank(),
            det: self.det().to_string(),
            signature: self.signature(),
            even: self.is_even(),
            discriminant_group: disc,
        }
    }

    pub fn scaled(&self, k: i64, name: impl Into<String>) -> GramLattice {
        GramLattice {
            name: name.into(),
            labels: self.labels.clone(),
            gram: self.gram.scale(&BigInt::from(k)),
        }
    }

    pub fn negated(&self) -> GramLattice {
        self.scaled(-1, format!("{}(-1)", self.name))
    }

    pub fn direct_sum(name: impl Into<String>, parts: &[&GramLattice]) -> GramLattice {
        let grams: Vec<&IMatrix> = parts.iter().map(|p| &p.gram).collect();
        GramLattice {
            name: name.into(),
            labels: parts.iter().flat_map(|p| p.labels.iter().cloned()).collect(),
            gram: IMatrix::block_diag(&grams),
        }
    }

    pub fn label_index(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    /// Standard basis vector for `label`.
    pub fn unit(&self, label: &str) -> Result<LatticeVector> {
        let i = self
            .label_index(label)
            .ok_or_else(|| Error::Precondition(format!("no basis vector labelled {label}")))?;
        let mut v = vec![BigInt::zero(); self.rank()];
        v[i] = BigInt::one();
        Ok(v)
    }

    /// Whether `y` (rational coordinates) lies in the dual lattice.
    pub fn in_dual(&self, y: &[BigRational]) -> Result<bool> {
        if y.len() != self.rank() {
            return Err(Error::DimensionMismatch("dual membership".into()));
        }
        Ok(self.gram.to_q().mul_vec(y)?.iter().all(|x| x.is_integer()))
    }
}

/// Diagonal of a rational congruence diagonalization of a symmetric matrix.
pub fn diagonalize(m: &QMatrix) -> Vec<BigRational> {
    let mut a = m.clone();
    let n = a.rows();
    let mut out = Vec::with_capacity(n);
    let mut k = 0;
    while k < n {
        if a.get(k, k).is_zero() {
            if let Some(j) = (k + 1..n).find(|&j| !a.get(j, j).is_zero()) {
                a.swap_rows(k, j);
                a.swap_cols(k, j);
            } else if let Some(j) = (k + 1..n).find(|&j| !a.get(k, j).is_zero()) {
                // e_k <- e_k + e_j makes the diagonal entry 2 a_kj
                for c in 0..n {
                    let v = a.get(k, c) + a.get(j, c);
                    a.set(k, c, v);
                }
                for r in 0..n {
                    let v = a.get(r, k) + a.get(r, j);
                    a.set(r, k, v);
                }
            } else {
                out.push(BigRational::zero());
                k += 1;
                continue;
            }
        }
        let p = a.get(k, k).clone();
        for i in k + 1..n {
            if a.get(i, k).is_zero() {
                continue;
            }
            let f = a.get(i, k) / &p;
            for c in k..n {
                let v = a.get(i, c) - &f * a.get(k, c);
                a.set(i, c, v);
            }
            for r in k..n {
                let v = a.get(r, i) - &f * a.get(r, k);
                a.set(r, i, v);
            }
        }
        out.push(p);
        k += 1;
    }
    out
}

/// A sublattice given by the images of its basis vectors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Embedding {
    /// Columns are the basis vectors of `sub` in ambient coordinates.
    pub matrix: IMatrix,
    pub sub: GramLattice,
}

impl Embedding {
    pub fn new(ambient: &GramLattice, name: &str, vectors: &[LatticeVector]) -> Result<Embedding> {
        for v in vectors {
            ambient.check_dim(v)?;
        }
        let matrix = IMatrix::from_cols(vectors, ambient.rank())?;
        let gram = ambient.gram.congruence(&matrix)?;
        let labels = vectors.iter().map(|v| format_combination_int(&ambient.labels, v)).collect();
        Ok(Embedding { matrix, sub: GramLattice::new(name, labels, gram)? })
    }

    pub fn basis(&self) -> Vec<LatticeVector> {
        (0..self.matrix.cols()).map(|j| self.matrix.col(j)).collect()
    }

    /// Image of a vector given in sub coordinates.
    pub fn image(&self, x: &[BigInt]) -> Result<LatticeVector> {
        self.matrix.mul_vec(x)
    }
}

fn format_combination_int(labels: &[String], v: &[BigInt]) -> String {
    let q: Vec<BigRational> = v.iter().map(|x| BigRational::from_integer(x.clone())).collect();
    format_combination(labels, &q)
}

/// Orthogonal complement of the span of `vectors` in `ambient`.
/// The result is primitive. Errors if the sublattice or its complement is
/// degenerate.
pub fn orthogonal_complement(ambient: &GramLattice, vectors: &[LatticeVector]) -> Result<Embedding> {
    let sub = Embedding::new(ambient, "sub", vectors)?;
    if sub.sub.det().is_zero() {
        return Err(Error::Degenerate("sublattice has a degenerate form".into()));
    }
    let a = sub.matrix.transpose().mul(&ambient.gram)?;
    let kernel = a.integer_kernel();
    let name = format!("{}^perp", ambient.name);
    let comp = Embedding::new(ambient, &name, &kernel)?;
    if comp.sub.det().is_zero() {
        return Err(Error::IsotropicComplement);
    }
    Ok(comp)
}

/// Saturation `(span ⊗ Q) ∩ ambient` of the span of `vectors`, together with
/// the index of the span in it. The vectors must be linearly independent.
pub fn saturation(ambient: &GramLattice, vectors: &[LatticeVector]) -> Result<(Embedding, BigInt)> {
    let m = IMatrix::from_cols(vectors, ambient.rank())?;
    let s = smith(&m);
    let r = s.rank();
    if r < vectors.len() {
        return Err(Error::Degenerate("vectors are linearly dependent".into()));
    }
    let uinv = s.u.unimodular_inverse()?;
    let basis: Vec<LatticeVector> = (0..r).map(|j| uinv.col(j)).collect();
    let index: BigInt = s.diag[..r].iter().product();
    let name = format!("sat({})", ambient.name);
    Ok((Embedding::new(ambient, &name, &basis)?, index))
}

/// Index of the span of `vectors` inside the full lattice; `None` when the
/// span has smaller rank.
pub fn span_index(ambient: &GramLattice, vectors: &[LatticeVector]) -> Result<Option<BigInt>> {
    let rows = IMatrix::from_cols(vectors, ambient.rank())?.transpose();
    let basis = rows.row_span_basis();
    if basis.rows() < ambient.rank() {
        return Ok(None);
    }
    Ok(Some(basis.det().abs()))
}

/// Canonical sign: first nonzero coordinate positive.
pub fn canonical_sign(v: &mut [BigInt]) {
    if let Some(x) = v.iter().find(|x| !x.is_zero()) {
        if x.is_negative() {
            for c in v.iter_mut() {
                *c = -&*c;
            }
        }
    }
}

pub fn is_primitive(v: &[BigInt]) -> bool {
    v.iter().fold(BigInt::zero(), |g, x| g.gcd(x)).is_one()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::standard;

    #[test]
    fn signature_of_hyperbolic_plane() {
        assert_eq!(standard::u().signature(), (1, 1));
        assert_eq!(standard::e8(-1).signature(), (0, 8));
    }

    #[test]
    fn complement_in_u_plus_a1() {
        let l = GramLattice::direct_sum("L", &[&standard::u(), &standard::a1(-1)]);
        let c = orthogonal_complement(&l, &[vec![1.into(), 1.into(), 0.into()]]).unwrap();
        assert_eq!(c.sub.rank(), 2);
        assert_eq!(c.sub.det(), BigInt::from(4));
    }

    #[test]
    fn saturation_index() {
        let l = standard::diagonal(&[-2, -2], "K");
        let (sat, idx) = saturation(&l, &[vec![2.into(), 4.into()]]).unwrap();
        assert_eq!(idx, BigInt::from(2));
        assert_eq!(sat.basis()[0].iter().map(|x| x.abs()).collect::<Vec<_>>(),
                   vec![BigInt::from(1), BigInt::from(2)]);
    }

    #[test]
    fn degenerate_complement_rejected() {
        let u = standard::u();
        let err = orthogonal_complement(&u, &[vec![1.into(), 0.into()]]).unwrap_err();
        assert!(matches!(err, Error::Degenerate(_)));
    }
}
