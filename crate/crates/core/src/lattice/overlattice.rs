use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::arith::{fmt_rat, lcm_all};
use crate::error::{Error, Result};
use crate::lattice::{GramLattice, LatticeVector, RationalVector};
use crate::matrix::{IMatrix, QMatrix};

/// An overlattice `M` of a frame lattice `F`, with `M` carried in its own
/// Z-basis and every basis vector known in frame coordinates.
#[derive(Clone, Debug)]
pub struct FramedLattice {
    pub frame: GramLattice,
    pub lattice: GramLattice,
    /// Rows: basis of `lattice` in frame coordinates.
    pub basis: QMatrix,
    inverse: QMatrix,
    /// `[M : F]`.
    pub index: BigInt,
}

impl FramedLattice {
    /// The frame viewed as a framed lattice over itself.
    pub fn trivial(frame: GramLattice) -> FramedLattice {
        let n = frame.rank();
        FramedLattice {
            lattice: frame.clone(),
            frame,
            basis: QMatrix::identity(n),
            inverse: QMatrix::identity(n),
            index: BigInt::one(),
        }
    }

    pub fn rank(&self) -> usize {
        self.frame.rank()
    }

    /// Lattice coordinates of a frame vector, `None` if it is not in `M`.
    pub fn coords(&self, x: &[BigRational]) -> Result<Option<LatticeVector>> {
        Ok(self.coords_q(x)?.into_iter().map(|c| c.is_integer().then(|| c.to_integer())).collect())
    }

    /// Rational lattice coordinates of any frame vector.
    pub fn coords_q(&self, x: &[BigRational]) -> Result<RationalVector> {
        if x.len() != self.rank() {
            return Err(Error::DimensionMismatch("frame vector length".into()));
        }
        // x = c * basis  =>  c = x * basis^-1
        self.inverse.transpose().mul_vec(x)
    }

    pub fn coords_required(&self, x: &[BigRational]) -> Result<LatticeVector> {
        self.coords(x)?.ok_or_else(|| {
            Error::Precondition(format!(
                "{} is not in {}",
                format_combination(&self.frame.labels, x),
                self.lattice.name
            ))
        })
    }

    pub fn contains(&self, x: &[BigRational]) -> Result<bool> {
        Ok(self.coords(x)?.is_some())
    }

    /// Frame coordinates of a lattice vector.
    pub fn to_frame(&self, c: &[BigInt]) -> Result<RationalVector> {
        let cq: Vec<BigRational> = c.iter().map(|x| BigRational::from_integer(x.clone())).collect();
        self.basis.transpose().mul_vec(&cq)
    }

    /// Whether a frame vector pairs integrally with all of `M`.
    pub fn in_dual(&self, x: &[BigRational]) -> Result<bool> {
        let gx = self.frame.gram().to_q().mul_vec(x)?;
        Ok(self.basis.mul_vec(&gx)?.iter().all(|v| v.is_integer()))
    }

    pub fn pairing_frame(&self, x: &[BigRational], y: &[BigRational]) -> Result<BigRational> {
        self.frame.pairing_q(x, y)
    }

    /// Frame vector `sum coeff * label`.
    pub fn class(&self, terms: &[(&str, BigRational)]) -> Result<RationalVector> {
        let mut v = vec![BigRational::zero(); self.rank()];
        for (label, c) in terms {
            let i = self
                .frame
                .label_index(label)
                .ok_or_else(|| Error::Precondition(format!("no frame vector {label}")))?;
            v[i] += c;
        }
        Ok(v)
    }

    /// `(1/2) * sum of the labelled frame vectors`.
    pub fn half_sum(&self, labels: &[String]) -> Result<RationalVector> {
        let half = BigRational::new(1.into(), 2.into());
        let terms: Vec<(&str, BigRational)> = labels.iter().map(|l| (l.as_str(), half.clone())).collect();
        self.class(&terms)
    }
}

/// Overlattice of `l` generated by `l` and the glue vectors (rational
/// coordinates in the basis of `l`). Glue must pair integrally with `l` and
/// with each other; self-pairings must be even when `l` is even.
pub fn overlattice(l: &GramLattice, glue: &[RationalVector], name: &str) -> Result<FramedLattice> {
    let n = l.rank();
    let gq = l.gram().to_q();
    for (k, g) in glue.iter().enumerate() {
        if g.len() != n {
            return Err(Error::DimensionMismatch(format!("glue vector {k}")));
        }
        if !gq.mul_vec(g)?.iter().all(|x| x.is_integer()) {
            return Err(Error::NonIntegralGlue(k));
        }
        for h in glue.iter().take(k) {
            if !gq.bilinear(g, h)?.is_integer() {
                return Err(Error::NonIntegralGlue(k));
            }
        }
        let self_pair = gq.bilinear(g, g)?;
        if !self_pair.is_integer() {
            return Err(Error::NonIntegralGlue(k));
        }
        if l.is_even() && !(self_pair.to_integer() % BigInt::from(2)).is_zero() {
            return Err(Error::OddGlue(k));
        }
    }
    let den = lcm_all(glue.iter().flatten().map(|x| x.denom()));
    let mut rows: Vec<Vec<BigInt>> = (0..n)
        .map(|i| (0..n).map(|j| if i == j { den.clone() } else { BigInt::zero() }).collect())
        .collect();
    for g in glue {
        rows.push(g.iter().map(|x| (x * BigRational::from_integer(den.clone())).to_integer()).collect());
    }
    let span = IMatrix::from_rows(rows)?.row_span_basis();
    let dq = BigRational::from_integer(den.clone());
    let mut basis = span.to_q();
    for i in 0..n {
        for j in 0..n {
            let v = basis.get(i, j) / &dq;
            basis.set(i, j, v);
        }
    }
    let inverse = basis.inverse().ok_or_else(|| Error::Degenerate("overlattice basis".into()))?;
    let gram_q = basis.mul(&gq)?.mul(&basis.transpose())?;
    let gram = gram_q.to_integer().ok_or(Error::NonIntegralGlue(glue.len()))?;
    let idx_q = basis.det().abs().recip();
    if !idx_q.is_integer() {
        return Err(Error::Degenerate("overlattice index is not integral".into()));
    }
    let labels = (0..n).map(|i| format_combination(&l.labels, &basis.row(i))).collect();
    let lattice = GramLattice::new(name, labels, gram)?;
    if l.is_even() && !lattice.is_even() {
        return Err(Error::OddGlue(glue.len()));
    }
    Ok(FramedLattice { frame: l.clone(), lattice, basis, inverse, index: idx_q.to_integer() })
}

/// Renders `sum c_i label_i`, pulling out a common denominator:
/// `K0000`, `H-K0001`, `1/2(K0000+K0001)`.
pub fn format_combination(labels: &[String], c: &[BigRational]) -> String {
    let den = lcm_all(c.iter().map(|x| x.denom()));
    let mut s = String::new();
    for (l, x) in labels.iter().zip(c) {
        if x.is_zero() {
            continue;
        }
        let k = (x * BigRational::from_integer(den.clone())).to_integer();
        let sign = if k.is_negative() { "-" } else if s.is_empty() { "" } else { "+" };
        let mag = k.abs();
        if mag.is_one() {
            s.push_str(&format!("{sign}{l}"));
        } else {
            s.push_str(&format!("{sign}{mag}{l}"));
        }
    }
    if s.is_empty() {
        return "0".into();
    }
    if den.is_one() {
        s
    } else {
        format!("{}({s})", fmt_rat(&BigRational::new(BigInt::one(), den)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;
    use crate::lattice::standard;

    #[test]
    fn d4_from_a1_four() {
        // <-2>^4 + (1/2)(sum) is D4(-1)
        let l = standard::diagonal(&[-2, -2, -2, -2], "k");
        let g = vec![rat(1, 2); 4];
        let m = overlattice(&l, std::slice::from_ref(&g), "D4").unwrap();
        assert_eq!(m.index, BigInt::from(2));
        assert_eq!(m.lattice.det(), BigInt::from(4));
        assert!(m.contains(&g).unwrap());
        assert!(!m.contains(&[rat(1, 2), rat(1, 2), rat(0, 1), rat(0, 1)]).unwrap());
    }

    #[test]
    fn odd_glue_rejected() {
        let l = standard::diagonal(&[-2, -2], "k");
        let err = overlattice(&l, &[vec![rat(1, 2), rat(1, 2)]], "x").unwrap_err();
        assert_eq!(err, Error::OddGlue(0));
    }

    #[test]
    fn non_integral_glue_rejected() {
        let l = standard::diagonal(&[-2], "k");
        let err = overlattice(&l, &[vec![rat(1, 4)]], "x").unwrap_err();
        assert_eq!(err, Error::NonIntegralGlue(0));
    }

    #[test]
    fn labels_render() {
        let labels: Vec<String> = vec!["H".into(), "K1".into(), "K2".into()];
        assert_eq!(format_combination(&labels, &[rat(1, 2), rat(-1, 2), rat(0, 1)]), "1/2(H-K1)");
        assert_eq!(format_combination(&labels, &[rat(0, 1), rat(1, 1), rat(0, 1)]), "K1");
    }
}
