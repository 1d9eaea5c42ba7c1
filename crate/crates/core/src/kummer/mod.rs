//! The named lattices of Kummer surfaces and of K3 surfaces with a
//! symplectic `(Z/2Z)^4` action.

mod f2;

pub use f2::{points, AffineSubspace, F2Point};

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::arith::{fmt_rat, rat};
use crate::error::{Error, Result};
use crate::finite_form::{discriminant_form, forms_isomorphic, q2, FiniteQuadraticForm};
use crate::gf2::BinaryCode;
use crate::lattice::{
    orthogonal_complement, overlattice, saturation, standard, Embedding, FramedLattice, GramLattice,
    LatticeVector, RationalVector,
};
use crate::matrix::IMatrix;

pub fn k_label(p: F2Point) -> String {
    format!("K{}", p.bits())
}

pub fn m_label(p: F2Point) -> String {
    format!("M{}", p.bits())
}

fn k_labels(ps: &[F2Point]) -> Vec<String> {
    ps.iter().map(|&p| k_label(p)).collect()
}

fn m_labels(ps: &[F2Point]) -> Vec<String> {
    ps.iter().map(|&p| m_label(p)).collect()
}

fn all_points() -> Vec<F2Point> {
    F2Point::all().collect()
}

/// `W_i = {a_i = 0}`.
pub fn w_hyperplane(i: usize) -> Vec<F2Point> {
    F2Point::all().filter(|p| p.a(i) == 0).collect()
}

/// The five Kummer glue supports: everything, then `W_1..W_4`.
pub fn kummer_glue_supports() -> Vec<Vec<F2Point>> {
    let mut out = vec![all_points()];
    out.extend((1..=4).map(w_hyperplane));
    out
}

fn frame_with(prefix_parts: &[(&str, i64)], curves: &[String], name: &str) -> GramLattice {
    let mut entries: Vec<i64> = prefix_parts.iter().map(|&(_, v)| v).collect();
    entries.extend(std::iter::repeat_n(-2, curves.len()));
    let mut labels: Vec<String> = prefix_parts.iter().map(|&(l, _)| l.to_string()).collect();
    labels.extend(curves.iter().cloned());
    standard::diagonal_labelled(name, &entries, labels)
}

fn half_sums(frame: &GramLattice, supports: &[Vec<String>]) -> Result<Vec<RationalVector>> {
    let f = FramedLattice::trivial(frame.clone());
    supports.iter().map(|s| f.half_sum(s)).collect()
}

/// `K`: `<-2>^16` glued by the five half-sums.
pub fn kummer_lattice() -> Result<FramedLattice> {
    let frame = frame_with(&[], &k_labels(&all_points()), "<-2>^16");
    let glue = half_sums(&frame, &kummer_glue_supports().iter().map(|s| k_labels(s)).collect::<Vec<_>>())?;
    overlattice(&frame, &glue, "K")
}

/// `N`: `<-2>^8` glued by the half-sum of all eight.
pub fn nikulin_lattice() -> Result<FramedLattice> {
    let labels: Vec<String> = (1..=8).map(|i| format!("N{i}")).collect();
    let frame = frame_with(&[], &labels, "<-2>^8");
    let glue = half_sums(&frame, &[labels])?;
    overlattice(&frame, &glue, "N")
}

/// Supports `{a_i = 1}` of the `M_G` glue.
pub fn mg_glue_supports() -> Vec<Vec<F2Point>> {
    (1..=4).map(|i| F2Point::all().filter(|p| p.a(i) == 1).collect()).collect()
}

/// `M_G`: `<-2>^15` on the nonzero points glued over the hyperplanes
/// `{a_i = 1}`.
pub fn mg_lattice() -> Result<FramedLattice> {
    let nz: Vec<F2Point> = F2Point::nonzero().collect();
    let frame = frame_with(&[], &m_labels(&nz), "<-2>^15");
    let glue = half_sums(&frame, &mg_glue_supports().iter().map(|s| m_labels(s)).collect::<Vec<_>>())?;
    overlattice(&frame, &glue, "M_G")
}

/// `M_G` as the complement of `K_0000` inside `K`, in K coordinates.
pub fn mg_as_complement() -> Result<(FramedLattice, Embedding)> {
    let k = kummer_lattice()?;
    let k0 = k.coords_required(&k.class(&[("K0000", BigRational::one())])?)?;
    let comp = orthogonal_complement(&k.lattice, &[k0])?;
    Ok((k, comp))
}

#[derive(Clone, Debug, Serialize)]
pub struct MgComparison {
    pub isometric: bool,
    /// Rows: complement basis vectors in the basis of the glued `M_G`.
    pub witness: Vec<Vec<String>>,
}

/// Compares the two constructions of `M_G` by identifying `K_p` with `M_p`.
pub fn mg_constructions_agree() -> Result<MgComparison> {
    let (k, comp) = mg_as_complement()?;
    let mg = mg_lattice()?;
    let mut rows = Vec::new();
    for b in comp.basis() {
        let f = k.to_frame(&b)?;
        if !f[0].is_zero() {
            return Ok(MgComparison { isometric: false, witness: vec![] });
        }
        match mg.coords(&f[1..])? {
            Some(c) => rows.push(c),
            None => return Ok(MgComparison { isometric: false, witness: vec![] }),
        }
    }
    let t = IMatrix::from_rows(rows)?;
    let unimodular = t.det().abs().is_one();
    let gram_ok = t.mul(mg.lattice.gram())?.mul(&t.transpose())? == *comp.sub.gram();
    let witness = t.to_rows().iter().map(|r| r.iter().map(|x| x.to_string()).collect()).collect();
    Ok(MgComparison { isometric: unimodular && gram_ok, witness })
}

/// The support of `v_4d`: `V_{1,2}` when `d` is even, `V_{1,2} * V_{3,4}`
/// when `d` is odd.
pub fn v4d_support(d: u64) -> Vec<F2Point> {
    if d.is_multiple_of(2) {
        points(&["0000", "1000", "0100", "1100"])
    } else {
        points(&["0001", "0010", "0011", "1000", "0100", "1100"])
    }
}

fn check_d(d: u64) -> Result<()> {
    if d == 0 {
        return Err(Error::Precondition("d must be positive".into()));
    }
    Ok(())
}

/// `K'_4d`: `<4d> + K` glued by `(H + v_4d)/2`. Frame labels: `H`, then
/// the sixteen `K_p`.
pub fn k4d_prime(d: u64) -> Result<FramedLattice> {
    check_d(d)?;
    k4d_with_glue(d, &v4d_support(d))
}

fn k4d_frame(d: u64) -> GramLattice {
    frame_with(&[("H", 4 * d as i64)], &k_labels(&all_points()), &format!("<{}>+<-2>^16", 4 * d))
}

fn k4d_with_glue(d: u64, support: &[F2Point]) -> Result<FramedLattice> {
    let frame = k4d_frame(d);
    let mut supports: Vec<Vec<String>> = kummer_glue_supports().iter().map(|s| k_labels(s)).collect();
    let mut extra = vec!["H".to_string()];
    extra.extend(k_labels(support));
    supports.push(extra);
    let glue = half_sums(&frame, &supports)?;
    overlattice(&frame, &glue, &format!("K'_{}", 4 * d))
}

/// Frame vector `(1/2) sum_{p in ps} K_p` (+ `H/2` when `with_h`).
pub fn half_class(l: &FramedLattice, ps: &[F2Point], h_coeff: BigRational) -> Result<RationalVector> {
    let mut terms: Vec<(String, BigRational)> = ps.iter().map(|&p| (k_label(p), rat(1, 2))).collect();
    if !h_coeff.is_zero() {
        terms.push(("H".into(), h_coeff));
    }
    let refs: Vec<(&str, BigRational)> = terms.iter().map(|(a, b)| (a.as_str(), b.clone())).collect();
    l.class(&refs)
}

/// Whether the five classes of the remark on `A_{K'_4d}` lie in the dual and
/// generate the discriminant group.
pub fn k4d_remark_generators(d: u64) -> Result<bool> {
    let l = k4d_prime(d)?;
    let h4d = rat(1, 4 * d as i64);
    let pts = |b: &[&str]| points(b);
    let v34 = pts(&["0000", "0001", "0010", "0011"]);
    let mut gens: Vec<RationalVector> = Vec::new();
    let first = {
        let mut v = half_class(&l, &v34, BigRational::zero())?;
        v[0] = h4d.clone();
        v
    };
    gens.push(first);
    for set in [
        vec!["0000", "0001", "1000", "1001"],
        vec!["0000", "0010", "1000", "1010"],
        vec!["0000", "0001", "0100", "0101"],
        vec!["0000", "0010", "0100", "0110"],
    ] {
        gens.push(half_class(&l, &pts(&set), BigRational::zero())?);
    }
    let (form, group) = discriminant_form(&l.lattice)?;
    let mut coords = Vec::new();
    for g in &gens {
        let c = l.coords_q(g)?;
        if !l.lattice.in_dual(&c)? {
            return Ok(false);
        }
        coords.push(group.coords(&c)?);
    }
    Ok(generates(&coords, &group.orders) && form.order() == group.order().try_into().unwrap_or(0))
}

/// Whether the given elements generate `sum Z/orders`.
fn generates(elems: &[Vec<BigInt>], orders: &[BigInt]) -> bool {
    let k = orders.len();
    let mut rows: Vec<Vec<BigInt>> = elems.to_vec();
    for (i, o) in orders.iter().enumerate() {
        let mut r = vec![BigInt::zero(); k];
        r[i] = o.clone();
        rows.push(r);
    }
    if rows.is_empty() || k == 0 {
        return true;
    }
    let m = IMatrix::from_rows(rows).expect("rectangular");
    let basis = m.row_span_basis();
    basis.rows() == k && basis.det().abs().is_one()
}

#[derive(Clone, Debug, Serialize)]
pub struct DivisibleCensus {
    pub d: u64,
    /// Support size to number of classes `(H - sum_J K_p)/2` in `K'_4d`.
    pub census: BTreeMap<u32, u64>,
    pub total: u64,
    pub supports: Vec<Vec<String>>,
}

/// All `J` with `(H - sum_J K_p)/2` in `K'_4d`, read off the binary code
/// `K'_4d / frame` inside `F_2^17`.
pub fn divisible_class_census(d: u64) -> Result<DivisibleCensus> {
    let l = k4d_prime(d)?;
    let code = lattice_code(&l)?;
    let mut census = BTreeMap::new();
    let mut supports = Vec::new();
    for w in code.codewords() {
        if w & 1 == 1 {
            let j = w >> 1;
            *census.entry(j.count_ones()).or_insert(0) += 1;
            supports.push(
                (0..16).filter(|i| j >> i & 1 == 1).map(|i| k_label(F2Point(i as u8))).collect(),
            );
        }
    }
    supports.sort();
    let total = census.values().sum();
    Ok(DivisibleCensus { d, census, total, supports })
}

/// The code `M / F` of an overlattice contained in `(1/2) F`: bit `i` is the
/// `i`-th frame coordinate of twice a lattice vector, mod 2.
pub fn lattice_code(l: &FramedLattice) -> Result<BinaryCode> {
    let n = l.rank();
    let mut gens = Vec::new();
    for i in 0..n {
        let row = l.basis.row(i);
        let mut w = 0u64;
        for (j, x) in row.iter().enumerate() {
            let twice = x * BigRational::from_integer(2.into());
            if !twice.is_integer() {
                return Err(Error::Precondition("overlattice is not inside frame/2".into()));
            }
            if (twice.to_integer() % BigInt::from(2)) != BigInt::zero() {
                w |= 1 << j;
            }
        }
        gens.push(w);
    }
    Ok(BinaryCode::span(n, &gens))
}

/// Cases of the NS(Y) theorem, by `d mod 4` (case iv only on request).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum NsyCase {
    I,
    II,
    III,
    IV,
    V,
}

impl NsyCase {
    pub fn for_d(d: u64, case_iv: bool) -> Result<NsyCase> {
        check_d(d)?;
        match (d % 4, case_iv) {
            (3, true) => Ok(NsyCase::IV),
            (_, true) => Err(Error::IllegalCase(format!("case iv requires d = 3 mod 4, got d = {d}"))),
            (1, _) => Ok(NsyCase::I),
            (2, _) => Ok(NsyCase::II),
            (3, _) => Ok(NsyCase::III),
            _ => Ok(NsyCase::V),
        }
    }

    pub fn support(self) -> Vec<F2Point> {
        match self {
            NsyCase::I => points(&["1101", "1110", "1111", "1000", "0100"]),
            NsyCase::II => points(&["0001", "0010", "0011", "1000", "0100", "1100"]),
            NsyCase::III => points(&["0001", "0010", "0011"]),
            NsyCase::IV => F2Point::nonzero().collect(),
            NsyCase::V => points(&["1100", "1110", "1101", "1111"]),
        }
    }
}

/// `NS(Y)`: `<2d> + M_G` glued by `(L + sum_W M_p)/2`. Frame labels: `L`,
/// then `M_p` for the fifteen nonzero points.
pub fn nsy_lattice(d: u64, case_iv: bool) -> Result<(FramedLattice, NsyCase)> {
    let case = NsyCase::for_d(d, case_iv)?;
    let nz: Vec<F2Point> = F2Point::nonzero().collect();
    let frame = frame_with(&[("L", 2 * d as i64)], &m_labels(&nz), &format!("<{}>+<-2>^15", 2 * d));
    let mut supports: Vec<Vec<String>> = mg_glue_supports().iter().map(|s| m_labels(s)).collect();
    let mut extra = vec!["L".to_string()];
    extra.extend(m_labels(&case.support()));
    supports.push(extra);
    let glue = half_sums(&frame, &supports)?;
    Ok((overlattice(&frame, &glue, &format!("NS(Y)_{d}"))?, case))
}

/// The stated form of case iv: `q2 + q2 + [[0, 1/2], [1/2, (-d-1)/2d]]` on
/// `(Z/2)^4 + Z/2 + Z/2d`.
pub fn case_iv_stated_form(d: u64) -> Result<FiniteQuadraticForm> {
    let d = d as i64;
    let block = FiniteQuadraticForm::from_parts(
        &[2.into(), (2 * d).into()],
        &[vec![rat(0, 1), rat(1, 2)], vec![rat(1, 2), rat(-d - 1, 2 * d)]],
    )?;
    Ok(q2().direct_sum(&q2()).direct_sum(&block))
}

/// Orbit tags of `A_{M_G}` by the minimum support size of a half-sum
/// representative.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub enum MgOrbit {
    #[serde(rename = "2a")]
    Trivial,
    #[serde(rename = "3b")]
    PlaneThroughZero,
    #[serde(rename = "3a")]
    PlaneAvoidingZero,
    #[serde(rename = "4b")]
    StarThroughZero,
    #[serde(rename = "4a")]
    StarAvoidingZero,
    #[serde(rename = "1-2b")]
    Everything,
}

impl MgOrbit {
    pub fn tag(self) -> &'static str {
        match self {
            MgOrbit::Trivial => "2a",
            MgOrbit::PlaneThroughZero => "3b",
            MgOrbit::PlaneAvoidingZero => "3a",
            MgOrbit::StarThroughZero => "4b",
            MgOrbit::StarAvoidingZero => "4a",
            MgOrbit::Everything => "1-2b",
        }
    }

    fn from_min_weight(w: u32) -> Option<MgOrbit> {
        Some(match w {
            0 => MgOrbit::Trivial,
            3 => MgOrbit::PlaneThroughZero,
            4 => MgOrbit::PlaneAvoidingZero,
            5 => MgOrbit::StarThroughZero,
            6 => MgOrbit::StarAvoidingZero,
            7 => MgOrbit::Everything,
            _ => return None,
        })
    }

    /// Representative support from the subspace recipes.
    pub fn representative(self) -> Vec<F2Point> {
        match self {
            // a hyperplane avoiding 0 gives the trivial class
            MgOrbit::Trivial => mg_glue_supports()[0].clone(),
            // plane through 0, minus 0
            MgOrbit::PlaneThroughZero => points(&["0001", "0010", "0011"]),
            MgOrbit::PlaneAvoidingZero => points(&["1100", "1101", "1110", "1111"]),
            // V * V' containing 0, minus 0
            MgOrbit::StarThroughZero => points(&["1101", "1110", "1111", "1000", "0100"]),
            // V * V' avoiding 0
            MgOrbit::StarAvoidingZero => points(&["0001", "0010", "0011", "1000", "0100", "1100"]),
            MgOrbit::Everything => F2Point::nonzero().collect(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct MgOrbitRow {
    pub tag: &'static str,
    pub representative: Vec<String>,
    pub in_dual: bool,
    pub q: String,
    /// Elements of `A_{M_G}` with this tag.
    pub count: u64,
    /// Whether every element with this tag has the representative's `q`.
    pub consistent: bool,
}

/// Classifies all 128 elements of `A_{M_G}`.
pub fn mg_discriminant_orbits() -> Result<Vec<MgOrbitRow>> {
    let mg = mg_lattice()?;
    let (form, group) = discriminant_form(&mg.lattice)?;
    let code = lattice_code(&mg)?;
    let orders: Vec<i64> = form.orders();
    let total = form.order() as usize;
    let mut per_tag: BTreeMap<MgOrbit, (u64, Vec<BigRational>)> = BTreeMap::new();
    for idx in 0..total {
        let mut c = Vec::with_capacity(orders.len());
        let mut rest = idx;
        for &o in &orders {
            c.push((rest % o as usize) as i64);
            rest /= o as usize;
        }
        let lift: RationalVector = (0..mg.rank())
            .map(|t| {
                c.iter()
                    .zip(&group.lifts)
                    .map(|(&ci, l)| BigRational::from_integer(ci.into()) * &l[t])
                    .sum()
            })
            .collect();
        let f = mg.to_frame_q(&lift)?;
        let mut w = 0u64;
        for (j, x) in f.iter().enumerate() {
            let t = x * BigRational::from_integer(2.into());
            if !t.is_integer() {
                return Err(Error::Precondition("dual vector outside frame/2".into()));
            }
            if t.to_integer() % BigInt::from(2) != BigInt::zero() {
                w |= 1 << j;
            }
        }
        let tag = MgOrbit::from_min_weight(code.coset_min_weight(w))
            .ok_or_else(|| Error::Precondition("unexpected coset weight".into()))?;
        let e = per_tag.entry(tag).or_insert((0, Vec::new()));
        e.0 += 1;
        e.1.push(form.q_value(&c));
    }
    let nz: Vec<F2Point> = F2Point::nonzero().collect();
    let mut rows = Vec::new();
    for tag in [
        MgOrbit::Everything,
        MgOrbit::Trivial,
        MgOrbit::PlaneAvoidingZero,
        MgOrbit::PlaneThroughZero,
        MgOrbit::StarAvoidingZero,
        MgOrbit::StarThroughZero,
    ] {
        let rep = tag.representative();
        let v = mg.half_sum(&m_labels(&rep))?;
        let coords = mg.coords_q(&v)?;
        let in_dual = mg.lattice.in_dual(&coords)?;
        let q = crate::arith::rat_mod(&mg.lattice.pairing_q(&coords, &coords)?, 2);
        let (count, qs) = per_tag.get(&tag).cloned().unwrap_or((0, vec![]));
        rows.push(MgOrbitRow {
            tag: tag.tag(),
            representative: rep.iter().map(|p| p.bits()).collect(),
            in_dual,
            consistent: qs.iter().all(|x| *x == q),
            q: fmt_rat(&q),
            count,
        });
    }
    let _ = nz;
    Ok(rows)
}

impl FramedLattice {
    /// Frame coordinates of a rational lattice-coordinate vector.
    pub fn to_frame_q(&self, c: &[BigRational]) -> Result<RationalVector> {
        self.basis.transpose().mul_vec(c)
    }
}

/// The three `U(2)` pairs `(w12, w34) | (w13, w24) | (w14, w23)`.
pub const OMEGA_LABELS: [&str; 6] = ["w12", "w34", "w13", "w24", "w14", "w23"];

/// `Lambda_K3` as `U(2)^3 + <-2>^16` glued by the Kummer half-sums and the
/// six `u_ij = (w_ij + sum_{a_i = a_j = 0} K_p)/2`.
pub fn k3_lattice_glued() -> Result<FramedLattice> {
    let (frame, glue) = k3_frame_and_glue()?;
    overlattice(&frame, &glue, "Lambda_K3")
}

pub fn k3_frame_and_glue() -> Result<(GramLattice, Vec<RationalVector>)> {
    let u2 = standard::u_scaled(2);
    let mut blocks: Vec<GramLattice> = Vec::new();
    for k in 0..3 {
        let mut b = u2.clone();
        b.labels = vec![OMEGA_LABELS[2 * k].into(), OMEGA_LABELS[2 * k + 1].into()];
        blocks.push(b);
    }
    let kf = frame_with(&[], &k_labels(&all_points()), "<-2>^16");
    let parts: Vec<&GramLattice> = blocks.iter().chain(std::iter::once(&kf)).collect();
    let frame = GramLattice::direct_sum("U(2)^3+<-2>^16", &parts);
    let f = FramedLattice::trivial(frame.clone());
    let mut glue = Vec::new();
    for s in kummer_glue_supports() {
        glue.push(f.half_sum(&k_labels(&s))?);
    }
    for label in OMEGA_LABELS {
        let i = (label.as_bytes()[1] - b'0') as usize;
        let j = (label.as_bytes()[2] - b'0') as usize;
        let s: Vec<F2Point> = F2Point::all().filter(|p| p.a(i) == 0 && p.a(j) == 0).collect();
        let mut labels = k_labels(&s);
        labels.push(label.to_string());
        glue.push(f.half_sum(&labels)?);
    }
    Ok((frame, glue))
}

/// Saturation index of the span of `K` (curves plus Kummer glue) in
/// `Lambda_K3`.
pub fn kummer_saturation_in_k3() -> Result<BigInt> {
    let l = k3_lattice_glued()?;
    let k = kummer_lattice()?;
    let mut vecs = Vec::new();
    for i in 0..16 {
        let kf = k.to_frame(&k.lattice.unit(&k.lattice.labels[i].clone())?)?;
        let mut full = vec![BigRational::zero(); 6];
        full.extend(kf);
        vecs.push(l.coords_required(&full)?);
    }
    Ok(saturation(&l.lattice, &vecs)?.1)
}

/// `Omega_G`: complement of `<H, (1/2) sum K_p>` in `K'_4d`.
pub fn omega_g(d: u64) -> Result<(FramedLattice, Embedding)> {
    let l = k4d_prime(d)?;
    let h = l.coords_required(&l.class(&[("H", BigRational::one())])?)?;
    let s = l.coords_required(&half_class(&l, &all_points(), BigRational::zero())?)?;
    let comp = orthogonal_complement(&l.lattice, &[h, s])?;
    Ok((l, comp))
}

/// `L^{4d}`: complement of `(1/2) sum K_p` in `K'_4d` (rank 16).
pub fn l_lattice(d: u64) -> Result<(FramedLattice, Embedding)> {
    let l = k4d_prime(d)?;
    let s = l.coords_required(&half_class(&l, &all_points(), BigRational::zero())?)?;
    let comp = orthogonal_complement(&l.lattice, &[s])?;
    Ok((l, comp))
}

/// Complement of `Omega_G` inside `L^{4d}`: returned as the complement of
/// `Omega_G + <(1/2) sum K_p>` in `K'_4d`.
pub fn omega_complement_in_l(d: u64) -> Result<Embedding> {
    let (l, omega) = omega_g(d)?;
    let s = l.coords_required(&half_class(&l, &all_points(), BigRational::zero())?)?;
    let mut vecs: Vec<LatticeVector> = omega.basis();
    vecs.push(s);
    orthogonal_complement(&l.lattice, &vecs)
}

/// Transcendental lattice families.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "family", content = "param")]
pub enum Transcendental {
    Kummer(i64),
    XCase1(i64),
    XCase2(i64),
    XCase3(i64),
    Y(i64),
}

impl Transcendental {
    pub fn parse(family: &str, param: i64) -> Result<Transcendental> {
        Ok(match family {
            "kummer" => Transcendental::Kummer(param),
            "x1" | "X_case1" => Transcendental::XCase1(param),
            "x2" | "X_case2" => Transcendental::XCase2(param),
            "x3" | "X_case3" => Transcendental::XCase3(param),
            "y" | "Y" => Transcendental::Y(param),
            other => return Err(Error::UnknownLattice(format!("transcendental family {other}"))),
        })
    }

    /// The stated Gram matrix.
    pub fn lattice(self) -> GramLattice {
        let u2a = standard::u_scaled(2);
        let u2 = GramLattice::direct_sum("U(2)^2", &[&u2a, &u2a]);
        let (name, head) = match self {
            Transcendental::Kummer(d) => (format!("T_Km({d})"), IMatrix::from_i64(&[vec![-4 * d]])),
            Transcendental::XCase1(t) => {
                (format!("T_X1({t})"), IMatrix::from_i64(&[vec![-8, 0], vec![0, -4 * t]]))
            }
            Transcendental::XCase2(s) => {
                (format!("T_X2({s})"), IMatrix::from_i64(&[vec![-8, 4], vec![4, -4 * s]]))
            }
            Transcendental::XCase3(u) => {
                (format!("T_X3({u})"), IMatrix::from_i64(&[vec![-8, 2], vec![2, -4 * u]]))
            }
            Transcendental::Y(d) => {
                let tail = IMatrix::from_i64(&[vec![-2, 0], vec![0, -2 * d]]);
                let g = IMatrix::block_diag(&[u2.gram(), &tail]);
                return GramLattice::with_prefix(format!("T_Y({d})"), "t", g).expect("valid");
            }
        };
        let g = IMatrix::block_diag(&[&head, u2.gram()]);
        GramLattice::with_prefix(name, "t", g).expect("valid")
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct TranscendentalCheck {
    pub family: Transcendental,
    pub t_rank: usize,
    pub t_signature: (usize, usize),
    pub partner: String,
    pub partner_rank: usize,
    pub abs_det_match: bool,
    /// `q_T` isomorphic to `-q_partner` (NS side) or to `q_partner`
    /// (complement inside a common lattice, see `partner_is_ns`).
    pub forms_match: bool,
    pub partner_is_ns: bool,
}

fn omega_perp() -> GramLattice {
    let u2 = standard::u_scaled(2);
    GramLattice::direct_sum(
        "<-8>+U(2)^3",
        &[&standard::diagonal(&[-8], "o"), &u2, &u2, &u2],
    )
}

/// Cross-checks a stated transcendental lattice against its partner:
/// the NS lattice built here (forms must be opposite) or, for the X cases
/// with non-diagonal blocks, the complement of `w` in `<-8> + U(2)^3`
/// (forms must agree).
pub fn transcendental_cross_check(family: Transcendental) -> Result<TranscendentalCheck> {
    let t = family.lattice();
    let param = match family {
        Transcendental::Kummer(x)
        | Transcendental::XCase1(x)
        | Transcendental::XCase2(x)
        | Transcendental::XCase3(x)
        | Transcendental::Y(x) => x,
    };
    if param < 1 {
        return Err(Error::Precondition("parameter must be positive".into()));
    }
    let p = param as u64;
    let (partner, is_ns) = match family {
        Transcendental::Kummer(_) => (k4d_prime(p)?.lattice, true),
        Transcendental::XCase1(_) => (l_lattice(p)?.1.sub, true),
        Transcendental::Y(_) => (nsy_lattice(p, false)?.0.lattice, true),
        Transcendental::XCase2(s) => {
            let w = [1, 2, 2 * s, 0, 0, 0, 0];
            let w: Vec<BigInt> = w.iter().map(|&x| x.into()).collect();
            (orthogonal_complement(&omega_perp(), &[w])?.sub, false)
        }
        Transcendental::XCase3(u) => {
            let w = [1, 4, 4 * u, 0, 0, 0, 0];
            let w: Vec<BigInt> = w.iter().map(|&x| x.into()).collect();
            (orthogonal_complement(&omega_perp(), &[w])?.sub, false)
        }
    };
    let (qt, _) = discriminant_form(&t)?;
    let (qp, _) = discriminant_form(&partner)?;
    let target = if is_ns { qp.negate() } else { qp };
    let forms_match = forms_isomorphic(&qt, &target)?.is_some();
    Ok(TranscendentalCheck {
        family,
        t_rank: t.rank(),
        t_signature: t.signature(),
        partner: partner.name.clone(),
        partner_rank: partner.rank(),
        abs_det_match: t.det().abs() == partner.det().abs(),
        forms_match,
        partner_is_ns: is_ns,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct UniquenessCheck {
    pub d: u64,
    /// Order-2 classes `H/2 + k` (k != 0) that are isotropic.
    pub candidates: usize,
    /// Candidates whose overlattice has a form isomorphic to `K'_4d`.
    pub isomorphic: usize,
    pub k_primitive_in_all: bool,
}

/// Exhausts the isotropic order-2 glue classes `H/2 + k`, `k` a nonzero
/// element of `A_K`, and compares every resulting overlattice of
/// `<4d> + K` with `K'_4d` by discriminant form. Even indefinite lattices
/// of rank 17 with discriminant length at most 7 are unique in their genus,
/// so matching forms and signatures means isometric.
pub fn k4d_uniqueness_check(d: u64) -> Result<UniquenessCheck> {
    check_d(d)?;
    let reference = discriminant_form(&k4d_prime(d)?.lattice)?.0;
    let k = kummer_lattice()?;
    let (_, kgroup) = discriminant_form(&k.lattice)?;
    let orders: Vec<i64> = kgroup.orders.iter().map(|o| o.try_into().unwrap()).collect();
    let total: i64 = orders.iter().product();
    let frame = k4d_frame(d);
    let base_glue = half_sums(&frame, &kummer_glue_supports().iter().map(|s| k_labels(s)).collect::<Vec<_>>())?;
    let mut candidates = 0;
    let mut isomorphic = 0;
    let mut primitive = true;
    for idx in 1..total {
        let mut rest = idx;
        let mut lift = vec![BigRational::zero(); 16];
        for (o, l) in orders.iter().zip(&kgroup.lifts) {
            let c = rest % o;
            rest /= o;
            for t in 0..16 {
                lift[t] += BigRational::from_integer(c.into()) * &l[t];
            }
        }
        let kf = k.to_frame_q(&lift)?;
        let mut g = vec![rat(1, 2)];
        g.extend(kf);
        let norm = frame.pairing_q(&g, &g)?;
        if !norm.is_integer() || norm.to_integer() % BigInt::from(2) != BigInt::zero() {
            continue;
        }
        candidates += 1;
        let mut glue = base_glue.clone();
        glue.push(g);
        let m = overlattice(&frame, &glue, "candidate")?;
        let kvecs: Vec<LatticeVector> = (0..16)
            .map(|i| {
                let mut v = vec![BigRational::zero(); 17];
                v[1 + i] = BigRational::one();
                m.coords_required(&v)
            })
            .collect::<Result<_>>()?;
        let glue_k: Vec<LatticeVector> = base_glue.iter().map(|g| m.coords_required(g)).collect::<Result<_>>()?;
        let mut all = kvecs.clone();
        all.extend(glue_k);
        let span = IMatrix::from_cols(&all, 17)?.transpose().row_span_basis();
        let span_vecs: Vec<LatticeVector> = span.to_rows();
        if saturation(&m.lattice, &span_vecs)?.1 != BigInt::one() {
            primitive = false;
        }
        let f = discriminant_form(&m.lattice)?.0;
        if forms_isomorphic(&f, &reference)?.is_some() {
            isomorphic += 1;
        }
    }
    Ok(UniquenessCheck { d, candidates, isomorphic, k_primitive_in_all: primitive })
}

/// Expected data for a named lattice and the flags computed against it.
#[derive(Clone, Debug, Serialize)]
pub struct NamedLatticeReport {
    pub name: String,
    pub rank: usize,
    pub signature: (usize, usize),
    pub det: String,
    pub even: bool,
    pub discriminant_group: Vec<i64>,
    pub q_census: BTreeMap<String, u64>,
    pub expected_rank: usize,
    pub expected_abs_det: String,
    pub expected_discriminant_group: Vec<i64>,
    pub verified: BTreeMap<String, bool>,
}

impl NamedLatticeReport {
    pub fn new(l: &GramLattice, rank: usize, abs_det: BigInt, disc: Vec<i64>) -> Result<Self> {
        let (form, _) = discriminant_form(l)?;
        let group = form.invariant_factors();
        let census = form.q_census_strings()?;
        let mut verified = BTreeMap::new();
        verified.insert("rank".into(), l.rank() == rank);
        verified.insert("abs_det".into(), l.det().abs() == abs_det);
        verified.insert("discriminant_group".into(), group == disc);
        verified.insert("even".into(), l.is_even());
        Ok(NamedLatticeReport {
            name: l.name.clone(),
            rank: l.rank(),
            signature: l.signature(),
            det: l.det().to_string(),
            even: l.is_even(),
            discriminant_group: group,
            q_census: census,
            expected_rank: rank,
            expected_abs_det: abs_det.to_string(),
            expected_discriminant_group: disc,
            verified,
        })
    }

    pub fn all_verified(&self) -> bool {
        self.verified.values().all(|&v| v)
    }
}

/// `(Z/2)^k` as an invariant factor list.
fn twos(k: usize) -> Vec<i64> {
    vec![2; k]
}

/// Invariant factors of `(Z/2)^5 + Z/2d`.
pub fn nsy_expected_group(d: u64) -> Vec<i64> {
    let mut orders = vec![2i64; 5];
    orders.push(2 * d as i64);
    crate::finite_form::invariant_factors_of(&orders)
}

/// Builds the named lattice `name` with its expectations.
pub fn named_report(name: &str, d: u64, case_iv: bool) -> Result<(GramLattice, NamedLatticeReport)> {
    let d64 = d as i64;
    let (l, rank, det, disc): (GramLattice, usize, BigInt, Vec<i64>) = match name {
        "K" => (kummer_lattice()?.lattice, 16, 64.into(), twos(6)),
        "N" => (nikulin_lattice()?.lattice, 8, 64.into(), twos(6)),
        "MG" => (mg_lattice()?.lattice, 15, 128.into(), twos(7)),
        "K4d" => {
            let l = k4d_prime(d)?.lattice;
            let group = discriminant_form(&l)?.0.invariant_factors();
            (l, 17, (64 * d64).into(), group)
        }
        "NSY" => (nsy_lattice(d, case_iv)?.0.lattice, 16, (64 * d64).into(), nsy_expected_group(d)),
        "Lambda" => (k3_lattice_glued()?.lattice, 22, 1.into(), vec![]),
        "Omega" => {
            let l = omega_g(d)?.1.sub;
            let group = omega_perp_group();
            (l, 15, 512.into(), group)
        }
        other => return Err(Error::UnknownLattice(other.into())),
    };
    let report = NamedLatticeReport::new(&l, rank, det, disc)?;
    Ok((l, report))
}

fn omega_perp_group() -> Vec<i64> {
    discriminant_form(&omega_perp()).map(|f| f.0.invariant_factors()).unwrap_or_default()
}

/// `<-8> + U(2)^3`, the stated complement of `Omega_G` in `Lambda_K3`.
pub fn omega_perp_lattice() -> GramLattice {
    omega_perp()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kummer_invariants() {
        let k = kummer_lattice().unwrap();
        assert_eq!(k.lattice.rank(), 16);
        assert_eq!(k.lattice.det(), BigInt::from(64));
        assert!(k.lattice.is_even());
        assert_eq!(k.index, BigInt::from(32));
    }

    #[test]
    fn hyperplanes_in_kummer() {
        let k = kummer_lattice().unwrap();
        for h in AffineSubspace::hyperplanes() {
            let v = k.half_sum(&k_labels(&h.points())).unwrap();
            assert!(k.contains(&v).unwrap());
        }
    }

    #[test]
    fn planes_through_zero_in_dual_only() {
        let k = kummer_lattice().unwrap();
        let linear: Vec<Vec<F2Point>> =
            AffineSubspace::planes().into_iter().filter(|p| p.contains(&F2Point(0))).collect();
        assert_eq!(linear.len(), 35);
        for p in linear {
            let v = k.half_sum(&k_labels(&p)).unwrap();
            assert!(!k.contains(&v).unwrap());
            assert!(k.in_dual(&v).unwrap());
        }
    }

    #[test]
    fn glue_parity_follows_d() {
        assert_eq!(v4d_support(2).len(), 4);
        assert_eq!(v4d_support(1).len(), 6);
        for d in 1..=4 {
            let l = k4d_prime(d).unwrap();
            assert_eq!(l.lattice.det().abs(), BigInt::from(64 * d));
        }
    }

    #[test]
    fn case_iv_only_for_three_mod_four() {
        assert!(matches!(nsy_lattice(2, true), Err(Error::IllegalCase(_))));
        assert_eq!(nsy_lattice(3, true).unwrap().1, NsyCase::IV);
        assert_eq!(nsy_lattice(3, false).unwrap().1, NsyCase::III);
    }

    #[test]
    fn transcendental_grams() {
        let t = Transcendental::Kummer(1).lattice();
        assert_eq!(t.det(), BigInt::from(-64));
        let y = Transcendental::Y(1).lattice();
        assert_eq!(y.gram().get(4, 4), &BigInt::from(-2));
        assert_eq!(y.gram().get(5, 5), &BigInt::from(-2));
    }
}
