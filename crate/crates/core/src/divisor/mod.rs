//! Lattice-side checks of divisor statements: positivity up to the Weyl
//! group, even sets of nodes, line bases, elliptic fibrations and Enriques
//! embeddings.

mod enriques;
mod fibration;
mod roots;

pub use enriques::{
    enriques_embedding, length_obstruction, prime_lengths, scaled_length_obstruction, EnriquesCertificate,
    EnriquesShape, LengthReport,
};
pub use fibration::{
    fibration_check, k8_fibration, labelled_units, shioda_inose_basis, shioda_tate_discriminant, FibrationReport, ShiodaInoseCase,
};
pub use roots::{root_decomposition, root_type_of, simple_roots, Ade, RootType};

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::arith::{fmt_rat, rat};
use crate::error::{Error, Result};
use crate::gf2;
use crate::kummer::{self, half_class, k4d_prime, F2Point};
use crate::lattice::{enumerate_vectors, orthogonal_complement, FramedLattice, RationalVector};
use crate::matrix::IMatrix;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum AmpleStatus {
    AmpleUpToWeyl,
    BigNefWithRoots,
    IsotropicNefCandidate,
    NotPositive,
}

/// Positivity of a class up to the Weyl group and sign: a chamber-interior
/// test, with no claim about which chamber is the effective one.
#[derive(Clone, Debug, Serialize)]
pub struct AmplenessVerdict {
    pub status: AmpleStatus,
    pub norm: String,
    /// The `-2` classes orthogonal to the candidate, up to sign, in frame
    /// coordinates.
    #[serde(serialize_with = "ser_vectors")]
    pub roots: Vec<RationalVector>,
    pub root_type: String,
}

pub(crate) fn ser_vectors<S: serde::Serializer>(v: &[RationalVector], s: S) -> std::result::Result<S::Ok, S::Error> {
    let strs: Vec<Vec<String>> = v.iter().map(|x| x.iter().map(fmt_rat).collect()).collect();
    strs.serialize(s)
}

/// Classifies a frame vector of `ns` by its square and the roots in its
/// orthogonal complement.
pub fn ample_up_to_weyl(ns: &FramedLattice, candidate: &[BigRational]) -> Result<AmplenessVerdict> {
    let c = ns.coords_required(candidate)?;
    let norm = ns.lattice.norm(&c)?;
    let verdict = |status, roots, root_type: &RootType| AmplenessVerdict {
        status,
        norm: norm.to_string(),
        roots,
        root_type: root_type.to_string(),
    };
    if norm.is_zero() {
        return Ok(verdict(AmpleStatus::IsotropicNefCandidate, Vec::new(), &RootType::default()));
    }
    if norm.is_negative() {
        return Ok(verdict(AmpleStatus::NotPositive, Vec::new(), &RootType::default()));
    }
    let comp = orthogonal_complement(&ns.lattice, &[c])?;
    let local = enumerate_vectors(&comp.sub, -2)?;
    let root_type = root_type_of(comp.sub.gram(), &local)?;
    let roots = local
        .iter()
        .map(|r| ns.to_frame(&comp.image(r)?))
        .collect::<Result<Vec<_>>>()?;
    let status = if roots.is_empty() { AmpleStatus::AmpleUpToWeyl } else { AmpleStatus::BigNefWithRoots };
    Ok(verdict(status, roots, &root_type))
}

/// `H - (1/2) sum_p K_p` in `K'_4d`.
pub fn h_minus_half_sum(l: &FramedLattice) -> Result<RationalVector> {
    let all: Vec<F2Point> = F2Point::all().collect();
    let mut v = half_class(l, &all, BigRational::zero())?;
    for x in v.iter_mut() {
        *x = -&*x;
    }
    v[0] = rat(1, 1);
    Ok(v)
}

/// `H - K_1 - ... - K_r` in `K'_4d`, with the `K_p` in frame order.
pub fn h_minus_curves(l: &FramedLattice, r: usize) -> Result<RationalVector> {
    if r > 16 {
        return Err(Error::Precondition("at most 16 curves".into()));
    }
    let mut v = vec![BigRational::zero(); l.rank()];
    v[0] = rat(1, 1);
    for x in v.iter_mut().skip(1).take(r) {
        *x = rat(-1, 1);
    }
    Ok(v)
}

#[derive(Clone, Debug, Serialize)]
pub struct EvenSetReport {
    pub curves: usize,
    pub kernel_dim: usize,
    pub weights: BTreeMap<u32, u64>,
    /// Nonzero kernel elements as sorted index sets into the curve list.
    pub elements: Vec<Vec<usize>>,
}

/// Subsets of pairwise disjoint `-2` curves whose half-sum lies in `ns`.
pub fn even_sets(ns: &FramedLattice, curves: &[RationalVector]) -> Result<EvenSetReport> {
    if curves.len() > 64 || ns.rank() > 64 {
        return Err(Error::Precondition("at most 64 curves and rank 64".into()));
    }
    let coords = curves.iter().map(|c| ns.coords_required(c)).collect::<Result<Vec<_>>>()?;
    for (i, a) in coords.iter().enumerate() {
        if ns.lattice.norm(a)? != BigInt::from(-2) {
            return Err(Error::Precondition(format!("curve {i} is not a -2 class")));
        }
        for (j, b) in coords.iter().enumerate().skip(i + 1) {
            if !ns.lattice.pairing(a, b)?.is_zero() {
                return Err(Error::Precondition(format!("curves {i} and {j} meet")));
            }
        }
    }
    let two = BigInt::from(2);
    let columns: Vec<u64> = coords
        .iter()
        .map(|c| c.iter().enumerate().filter(|(_, x)| !(*x % &two).is_zero()).fold(0u64, |m, (i, _)| m | 1 << i))
        .collect();
    let code = gf2::BinaryCode::span(curves.len(), &gf2::kernel(&columns));
    let mut elements: Vec<Vec<usize>> = code
        .codewords()
        .into_iter()
        .filter(|&w| w != 0)
        .map(|w| (0..curves.len()).filter(|i| w >> i & 1 == 1).collect())
        .collect();
    elements.sort();
    let mut weights = code.weight_census();
    weights.remove(&0);
    Ok(EvenSetReport { curves: curves.len(), kernel_dim: code.dim(), weights, elements })
}

/// Frame vectors of the labelled `-2` curves.
pub fn curve_classes(l: &FramedLattice, labels: &[String]) -> Result<Vec<RationalVector>> {
    labels.iter().map(|s| l.class(&[(s.as_str(), rat(1, 1))])).collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct LineBasisReport {
    pub is_basis: bool,
    pub det: String,
    pub degrees: Vec<String>,
    pub self_intersections: Vec<String>,
    pub d_norm: String,
}

/// Whether `classes` form a basis of `ns`, with their `D`-degrees and squares.
pub fn line_basis_check(ns: &FramedLattice, classes: &[RationalVector], d: &[BigRational]) -> Result<LineBasisReport> {
    if classes.len() != ns.rank() {
        return Err(Error::DimensionMismatch(format!("{} classes for rank {}", classes.len(), ns.rank())));
    }
    let coords = classes.iter().map(|c| ns.coords_required(c)).collect::<Result<Vec<_>>>()?;
    let det = IMatrix::from_rows(coords)?.det();
    let degrees = classes
        .iter()
        .map(|c| ns.pairing_frame(c, d).map(|x| fmt_rat(&x)))
        .collect::<Result<Vec<_>>>()?;
    let self_intersections = classes
        .iter()
        .map(|c| ns.pairing_frame(c, c).map(|x| fmt_rat(&x)))
        .collect::<Result<Vec<_>>>()?;
    Ok(LineBasisReport {
        is_basis: det.abs() == BigInt::from(1),
        det: det.to_string(),
        degrees,
        self_intersections,
        d_norm: fmt_rat(&ns.pairing_frame(d, d)?),
    })
}

fn minus_half(l: &FramedLattice, pts: &[F2Point], h: BigRational) -> Result<RationalVector> {
    let mut v = half_class(l, pts, BigRational::zero())?;
    for x in v.iter_mut() {
        *x = -&*x;
    }
    v[0] = h;
    Ok(v)
}

/// The seventeen classes of the line basis of the genus 2 Jacobian Kummer
/// (`d = 1`): six tropes `e_1..e_6` and eleven nodes, together with
/// `D = 2H - (1/2) sum K_p`.
pub fn jacobian_line_set() -> Result<(FramedLattice, Vec<RationalVector>, RationalVector)> {
    let l = k4d_prime(1)?;
    let half = rat(1, 2);
    let tropes: [&[&str]; 5] = [
        &["0000", "1000", "0101", "0110", "1100", "0111"],
        &["0000", "0100", "1100", "1010", "1001", "1011"],
        &["0000", "0010", "0011", "1001", "0101", "1101"],
        &["0000", "0001", "0011", "1010", "1110", "0110"],
        &["0000", "1000", "0100", "1101", "1110", "1111"],
    ];
    let mut classes = vec![minus_half(&l, &kummer::v4d_support(1), half.clone())?];
    for t in tropes {
        classes.push(minus_half(&l, &kummer::points(t), half.clone())?);
    }
    for bits in ["0000", "1000", "0100", "0010", "0001", "0011", "0101", "1001", "0110", "1010", "1100"] {
        classes.push(l.class(&[(kummer::k_label(F2Point::parse(bits).expect("bits")).as_str(), rat(1, 1))])?);
    }
    let mut d = h_minus_half_sum(&l)?;
    d[0] = rat(2, 1);
    Ok((l, classes, d))
}

/// The classes `u_J = (1/2)(H - sum_J K_p)` of `K'_4d` with `|J| = size`.
pub fn u_classes(l: &FramedLattice, d: u64, size: u32) -> Result<Vec<RationalVector>> {
    let census = kummer::divisible_class_census(d)?;
    census
        .supports
        .iter()
        .filter(|s| s.len() == size as usize)
        .map(|s| {
            let pts: Vec<F2Point> = s.iter().map(|x| F2Point::parse(x).expect("label")).collect();
            minus_half(l, &pts, rat(1, 2))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kummer::k_label;

    #[test]
    fn h_is_big_nef_with_sixteen_roots() {
        let l = k4d_prime(2).unwrap();
        let mut h = vec![BigRational::zero(); 17];
        h[0] = rat(1, 1);
        let v = ample_up_to_weyl(&l, &h).unwrap();
        assert_eq!(v.status, AmpleStatus::BigNefWithRoots);
        assert_eq!(v.root_type, "16A1");
        assert_eq!(v.roots.len(), 16);
    }

    #[test]
    fn half_sum_polarization() {
        let l = k4d_prime(2).unwrap();
        let v = ample_up_to_weyl(&l, &h_minus_half_sum(&l).unwrap()).unwrap();
        assert_eq!(v.status, AmpleStatus::IsotropicNefCandidate);
        let l = k4d_prime(3).unwrap();
        let v = ample_up_to_weyl(&l, &h_minus_half_sum(&l).unwrap()).unwrap();
        assert_eq!(v.status, AmpleStatus::AmpleUpToWeyl);
        assert!(v.roots.is_empty());
    }

    #[test]
    fn nikulin_even_set() {
        let n = kummer::nikulin_lattice().unwrap();
        let curves = curve_classes(&n, &n.frame.labels).unwrap();
        let r = even_sets(&n, &curves).unwrap();
        assert_eq!(r.kernel_dim, 1);
        assert_eq!(r.weights, BTreeMap::from([(8, 1)]));
    }

    #[test]
    fn even_sets_rejects_meeting_curves() {
        let l = k4d_prime(1).unwrap();
        let a = l.class(&[(k_label(F2Point(0)).as_str(), rat(1, 1))]).unwrap();
        assert!(even_sets(&l, &[a.clone(), a]).is_err());
    }
}
