//! Elliptic fibration classes: isotropy, section and component pairings,
//! and the root type of the frame lattice `F^perp / F`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use super::roots::{root_type_of, RootType};
use crate::arith::{fmt_rat, rat};
use crate::error::{Error, Result};
use crate::kummer::{half_class, k4d_prime, k_label, F2Point};
use crate::lattice::{enumerate_vectors, overlattice, standard, Embedding, FramedLattice, GramLattice, RationalVector};
use crate::matrix::IMatrix;

#[derive(Clone, Debug, Serialize)]
pub struct FibrationReport {
    pub isotropic: bool,
    pub f_norm: String,
    pub section_pairings: Vec<(String, String)>,
    pub component_pairings: Vec<(String, String)>,
    /// Label of the vector `z` with `F.z = 1` used to split off `F`.
    pub splitting_vector: Option<String>,
    pub frame_rank: Option<usize>,
    pub root_type: Option<String>,
    #[serde(skip)]
    pub roots: Option<RootType>,
}

impl FibrationReport {
    /// Whether `F^2 = 0`, every section meets `F` once and every component
    /// is orthogonal to `F`.
    pub fn consistent(&self) -> bool {
        self.isotropic
            && self.section_pairings.iter().all(|(_, x)| x == "1")
            && self.component_pairings.iter().all(|(_, x)| x == "0")
    }
}

/// Checks a fibration class. The frame lattice is realized as
/// `{v : v.F = 0, v.z = 0}` where `z` is the first listed section meeting `F`
/// once, or else an integral solution of `F.z = 1`.
pub fn fibration_check(
    ns: &FramedLattice,
    f: &[BigRational],
    sections: &[(String, RationalVector)],
    components: &[(String, RationalVector)],
) -> Result<FibrationReport> {
    let fc = ns.coords_required(f)?;
    let f_norm = ns.lattice.norm(&fc)?;
    let pairings = |list: &[(String, RationalVector)]| -> Result<Vec<(String, String)>> {
        list.iter().map(|(name, v)| Ok((name.clone(), fmt_rat(&ns.pairing_frame(f, v)?)))).collect()
    };
    let mut report = FibrationReport {
        isotropic: f_norm.is_zero(),
        f_norm: f_norm.to_string(),
        section_pairings: pairings(sections)?,
        component_pairings: pairings(components)?,
        splitting_vector: None,
        frame_rank: None,
        root_type: None,
        roots: None,
    };
    if !report.isotropic {
        return Ok(report);
    }
    let gf = ns.lattice.gram().mul_vec(&fc)?;
    let mut z = None;
    for (name, v) in sections {
        if ns.pairing_frame(f, v)?.is_one() {
            z = Some((name.clone(), ns.coords_required(v)?));
            break;
        }
    }
    let (name, zc) = match z {
        Some(found) => found,
        None => ("ext-gcd".to_string(), unit_pairing_vector(&gf)?),
    };
    let gz = ns.lattice.gram().mul_vec(&zc)?;
    let constraints = IMatrix::from_rows(vec![gf, gz])?;
    let w = Embedding::new(&ns.lattice, "frame", &constraints.integer_kernel())?;
    if !w.sub.is_negative_definite() {
        return Err(Error::NotNegativeDefinite);
    }
    let roots = root_type_of(w.sub.gram(), &enumerate_vectors(&w.sub, -2)?)?;
    report.splitting_vector = Some(name);
    report.frame_rank = Some(w.sub.rank());
    report.root_type = Some(roots.to_string());
    report.roots = Some(roots);
    Ok(report)
}

/// Integer `x` with `a.x = 1`.
fn unit_pairing_vector(a: &[BigInt]) -> Result<Vec<BigInt>> {
    let mut x = vec![BigInt::zero(); a.len()];
    let mut g = BigInt::zero();
    for (i, ai) in a.iter().enumerate() {
        let e = g.extended_gcd(ai);
        for xi in x.iter_mut() {
            *xi *= &e.x;
        }
        x[i] += &e.y;
        g = e.gcd;
    }
    if !g.is_one() {
        return Err(Error::Precondition(format!("F pairs with the lattice in {g}Z, no section class")));
    }
    Ok(x)
}

/// `|det|` of a rank zero Mordell-Weil elliptic K3 from its fibers:
/// `prod(dets) / |torsion|^2`.
pub fn shioda_tate_discriminant(fiber_root_dets: &[u64], torsion_order: u64) -> Result<BigRational> {
    if torsion_order == 0 {
        return Err(Error::Precondition("torsion order must be positive".into()));
    }
    let prod: BigInt = fiber_root_dets.iter().map(|&x| BigInt::from(x)).product();
    Ok(BigRational::new(prod, BigInt::from(torsion_order).pow(2)))
}

/// The three Kummer surfaces with an explicit Shioda-Inose basis
/// `Q, N_1..N_8, E_1..E_8`, `Q^2 = 4d`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum ShiodaInoseCase {
    D1,
    D2,
    D3,
}

impl ShiodaInoseCase {
    pub fn all() -> [ShiodaInoseCase; 3] {
        [ShiodaInoseCase::D1, ShiodaInoseCase::D2, ShiodaInoseCase::D3]
    }

    pub fn d(self) -> i64 {
        match self {
            ShiodaInoseCase::D1 => 1,
            ShiodaInoseCase::D2 => 2,
            ShiodaInoseCase::D3 => 3,
        }
    }

    /// Coefficients of `E_1..E_8` in the fiber class `F = Q - sum c_i E_i`.
    pub fn fiber_coefficients(self) -> [i64; 8] {
        match self {
            ShiodaInoseCase::D1 => [4, 7, 10, 8, 6, 4, 2, 5],
            ShiodaInoseCase::D2 => [5, 10, 15, 12, 9, 6, 3, 8],
            ShiodaInoseCase::D3 => [6, 12, 18, 15, 12, 8, 4, 9],
        }
    }

    fn q_glue(self) -> usize {
        match self {
            ShiodaInoseCase::D2 => 4,
            _ => 2,
        }
    }
}

/// NS of the Kummer surface as an overlattice of `<4d> + N + E_8(-1)`,
/// together with the fiber class `F`.
pub fn shioda_inose_basis(case: ShiodaInoseCase) -> Result<(FramedLattice, RationalVector)> {
    let q = standard::diagonal_labelled("Q", &[4 * case.d()], vec!["Q".into()]);
    let n = standard::diagonal_labelled("N", &[-2; 8], (1..=8).map(|i| format!("N{i}")).collect());
    let e = standard::e8(-1);
    let frame = GramLattice::direct_sum(format!("<{}>+N+E8(-1)", 4 * case.d()), &[&q, &n, &e]);
    let trivial = FramedLattice::trivial(frame.clone());
    let all_n: Vec<String> = (1..=8).map(|i| format!("N{i}")).collect();
    let mut with_q = vec!["Q".to_string()];
    with_q.extend(all_n.iter().take(case.q_glue()).cloned());
    let glue = vec![trivial.half_sum(&all_n)?, trivial.half_sum(&with_q)?];
    let ns = overlattice(&frame, &glue, &format!("NS(Km) d={}", case.d()))?;
    let mut terms = vec![("Q".to_string(), rat(1, 1))];
    for (i, c) in case.fiber_coefficients().iter().enumerate() {
        terms.push((format!("E{}", i + 1), rat(-c, 1)));
    }
    let refs: Vec<(&str, BigRational)> = terms.iter().map(|(a, b)| (a.as_str(), b.clone())).collect();
    let f = ns.class(&refs)?;
    Ok((ns, f))
}

/// Labelled unit frame vectors.
pub fn labelled_units(ns: &FramedLattice, labels: &[String]) -> Result<Vec<(String, RationalVector)>> {
    labels.iter().map(|s| Ok((s.clone(), ns.class(&[(s.as_str(), rat(1, 1))])?))).collect()
}

/// The fibration `F = (1/2)(H - sum_{J_4} K_p)` on `K'_8` with the first
/// four-point divisible support: sections are the `K_p` with `p` in `J_4`,
/// components the other twelve.
pub fn k8_fibration() -> Result<(FramedLattice, RationalVector, Vec<(String, RationalVector)>, Vec<(String, RationalVector)>)> {
    let l = k4d_prime(2)?;
    let census = crate::kummer::divisible_class_census(2)?;
    let j4 = census
        .supports
        .iter()
        .find(|s| s.len() == 4)
        .ok_or_else(|| Error::SearchExhausted("no four-point divisible support".into()))?;
    let pts: Vec<F2Point> = j4.iter().map(|s| F2Point::parse(s).expect("label")).collect();
    let mut f = half_class(&l, &pts, BigRational::zero())?;
    for x in f.iter_mut() {
        *x = -&*x;
    }
    f[0] = rat(1, 2);
    let (sec, comp): (Vec<F2Point>, Vec<F2Point>) = F2Point::all().partition(|p| pts.contains(p));
    let labels = |ps: &[F2Point]| ps.iter().map(|&p| k_label(p)).collect::<Vec<_>>();
    let sections = labelled_units(&l, &labels(&sec))?;
    let components = labelled_units(&l, &labels(&comp))?;
    Ok((l, f, sections, components))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shioda_tate_values() {
        assert_eq!(shioda_tate_discriminant(&[4, 2], 2).unwrap(), rat(2, 1));
        assert_eq!(shioda_tate_discriminant(&[4, 3, 2, 2, 2, 2, 2, 2], 2).unwrap(), rat(192, 1));
        assert_eq!(shioda_tate_discriminant(&[], 1).unwrap(), rat(1, 1));
        assert!(shioda_tate_discriminant(&[2], 0).is_err());
    }

    #[test]
    fn unit_pairing() {
        let a: Vec<BigInt> = [6, 10, 15].iter().map(|&x| BigInt::from(x)).collect();
        let x = unit_pairing_vector(&a).unwrap();
        assert_eq!(a.iter().zip(&x).map(|(p, q)| p * q).sum::<BigInt>(), BigInt::one());
        assert!(unit_pairing_vector(&[BigInt::from(2), BigInt::from(4)]).is_err());
    }

    #[test]
    fn bases_are_index_two() {
        for case in ShiodaInoseCase::all() {
            let (ns, f) = shioda_inose_basis(case).unwrap();
            assert_eq!(ns.index, BigInt::from(4));
            assert_eq!(ns.lattice.det().magnitude().clone(), BigInt::from(64 * case.d()).magnitude().clone());
            assert!(ns.pairing_frame(&f, &f).unwrap().is_zero());
        }
    }
}
