//! Orbits of primitive vectors in `T_2p = <-2p> + U + U` under its isometry
//! group: Smith-form reduction in `U + U`, reflection walks in `<-2d> + U`,
//! and a classifier into the five normal forms.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::lattice::{is_primitive, orthogonal_complement, GramLattice};
use crate::matrix::IMatrix;
use crate::parallel::Execution;
use crate::snf::smith;

const LOOP_GUARD: usize = 1_000_000;

fn b(x: i64) -> BigInt {
    BigInt::from(x)
}

pub fn is_prime(p: i64) -> bool {
    p >= 2 && (2..).take_while(|k| k * k <= p).all(|k| p % k != 0)
}

fn check_prime(p: i64) -> Result<()> {
    if !is_prime(p) {
        return Err(Error::Precondition(format!("{p} is not prime")));
    }
    Ok(())
}

/// Gram of `<-2d> + U + U` with coordinates `(a0, a1, a2, a3, a4)`.
pub fn t2p_gram(p: i64) -> IMatrix {
    IMatrix::from_i64(&[
        vec![-2 * p, 0, 0, 0, 0],
        vec![0, 0, 1, 0, 0],
        vec![0, 1, 0, 0, 0],
        vec![0, 0, 0, 0, 1],
        vec![0, 0, 0, 1, 0],
    ])
}

pub fn t2p_lattice(p: i64) -> GramLattice {
    GramLattice::new(
        format!("T_{}", 2 * p),
        ["g", "e1", "f1", "e2", "f2"].iter().map(|s| s.to_string()).collect(),
        t2p_gram(p),
    )
    .expect("valid")
}

/// Gram of `<-2d> + U`.
pub fn a2d_gram(d: i64) -> IMatrix {
    IMatrix::from_i64(&[vec![-2 * d, 0, 0], vec![0, 0, 1], vec![0, 1, 0]])
}

pub fn is_isometry(m: &IMatrix, gram: &IMatrix) -> bool {
    gram.congruence(m).map(|g| g == *gram).unwrap_or(false) && m.det().abs().is_one()
}

/// Result of the `U + U` reduction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UuReduction {
    pub d: BigInt,
    pub e: BigInt,
    /// `(d, d e, 0, 0)`.
    pub image: Vec<BigInt>,
    /// 4x4 isometry of `U + U` with `witness * v = image`.
    pub witness: IMatrix,
}

fn uu_coords(y: &IMatrix) -> Vec<BigInt> {
    vec![y.get(0, 0).clone(), y.get(1, 1).clone(), -y.get(0, 1), y.get(1, 0).clone()]
}

fn uu_matrix(v: &[BigInt]) -> IMatrix {
    IMatrix::from_rows(vec![vec![v[0].clone(), -&v[2]], vec![v[3].clone(), v[1].clone()]]).expect("2x2")
}

/// The `U + U` isometry `X -> A X B` for `det A det B = 1`.
fn uu_action(a: &IMatrix, bm: &IMatrix) -> IMatrix {
    let mut cols = Vec::new();
    for k in 0..4 {
        let mut e = vec![BigInt::zero(); 4];
        e[k] = BigInt::one();
        let y = a.mul(&uu_matrix(&e)).unwrap().mul(bm).unwrap();
        cols.push(uu_coords(&y));
    }
    IMatrix::from_cols(&cols, 4).expect("4x4")
}

/// Sends `v` in `U + U` to `(d, d e, 0, 0)` through the Smith form of
/// `[[a1, -a3], [a4, a2]]`.
pub fn uu_reduce(v: &[BigInt]) -> Result<UuReduction> {
    if v.len() != 4 {
        return Err(Error::DimensionMismatch("U+U vector has 4 coordinates".into()));
    }
    if v.iter().all(|x| x.is_zero()) {
        return Err(Error::ZeroVector);
    }
    let s = smith(&uu_matrix(v));
    let mut u = s.u.clone();
    if (s.u.det() * s.v.det()).is_negative() {
        for j in 0..2 {
            let x = -u.get(1, j);
            u.set(1, j, x);
        }
    }
    let witness = uu_action(&u, &s.v);
    let image = witness.mul_vec(v)?;
    let d = image[0].clone();
    let e = &image[1] / &d;
    Ok(UuReduction { d, e, image, witness })
}

/// `w - 2 (w.v)/(v.v) v`.
pub fn reflect(gram: &IMatrix, axis: &[BigInt], w: &[BigInt]) -> Result<Vec<BigInt>> {
    let vv = gram.bilinear(axis, axis)?;
    if vv.is_zero() {
        return Err(Error::ZeroVector);
    }
    let wv = gram.bilinear(w, axis)?;
    let num: BigInt = &wv * 2;
    if !(&num % &vv).is_zero() {
        return Err(Error::NonIntegralReflection);
    }
    let k = num / vv;
    Ok(w.iter().zip(axis).map(|(a, c)| a - &k * c).collect())
}

/// Matrix of the reflection in `axis` (columns are images of basis vectors).
pub fn reflection_matrix(gram: &IMatrix, axis: &[BigInt]) -> Result<IMatrix> {
    let n = gram.rows();
    let cols = (0..n)
        .map(|k| {
            let mut e = vec![BigInt::zero(); n];
            e[k] = BigInt::one();
            reflect(gram, axis, &e)
        })
        .collect::<Result<Vec<_>>>()?;
    IMatrix::from_cols(&cols, n)
}

/// `(x, y, z) -> (x - k y, y, z - 2 d k x + d k^2 y)`, the `k`-th power of
/// `D o R_v` with `v = (1, 0, d)`.
fn shift3(d: &BigInt, k: &BigInt) -> IMatrix {
    let mut m = IMatrix::identity(3);
    m.set(0, 1, -k);
    m.set(2, 0, -(d * k * BigInt::from(2)));
    m.set(2, 1, d * k * k);
    m
}

fn d3() -> IMatrix {
    let mut m = IMatrix::identity(3);
    m.set(0, 0, b(-1));
    m
}

/// Reduction in `<-2d> + U` of `(x, w, z)` with `w >= 1` by powers of
/// `D o R_v` and `D`, bringing `x` into `[0, w/2]`. For `w = 1` the result
/// is `(0, 1, r)`.
pub fn reduce_a2d(d: i64, v: &[BigInt]) -> Result<(Vec<BigInt>, IMatrix)> {
    if v.len() != 3 {
        return Err(Error::DimensionMismatch("<-2d>+U vector has 3 coordinates".into()));
    }
    if d < 1 || !v[1].is_positive() {
        return Err(Error::IllegalCase("expected (a, w, c) with w >= 1".into()));
    }
    let w = &v[1];
    let k = v[0].div_floor(w);
    let mut m = shift3(&b(d), &k);
    let mut cur = m.mul_vec(v)?;
    if (&cur[0] * 2) > *w {
        let step = d3().mul(&shift3(&b(d), &BigInt::one()))?;
        cur = step.mul_vec(&cur)?;
        m = step.mul(&m)?;
    }
    Ok((cur, m))
}

/// The five normal forms.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(tag = "tag")]
pub enum NormalForm {
    #[serde(rename = "v0")]
    V0,
    #[serde(rename = "v1")]
    V1 { r: i64 },
    #[serde(rename = "v2")]
    V2 { s: i64 },
    #[serde(rename = "vp")]
    Vp { l: i64, t: i64 },
    #[serde(rename = "v2p")]
    V2p { j: i64, u: i64 },
}

impl NormalForm {
    pub fn tag(&self) -> &'static str {
        match self {
            NormalForm::V0 => "v0",
            NormalForm::V1 { .. } => "v1",
            NormalForm::V2 { .. } => "v2",
            NormalForm::Vp { .. } => "vp",
            NormalForm::V2p { .. } => "v2p",
        }
    }

    pub fn vector(&self, p: i64) -> Vec<BigInt> {
        let v = match *self {
            NormalForm::V0 => [1, 0, 0, 0, 0],
            NormalForm::V1 { r } => [0, 1, r, 0, 0],
            NormalForm::V2 { s } => [1, 2, 2 * s, 0, 0],
            NormalForm::Vp { l, t } => [l, p, p * t, 0, 0],
            NormalForm::V2p { j, u } => [j, 2 * p, 2 * p * u, 0, 0],
        };
        v.iter().map(|&x| b(x)).collect()
    }

    /// Whether the parameters are in canonical range for `p`.
    pub fn is_canonical(&self, p: i64) -> bool {
        match *self {
            NormalForm::V0 | NormalForm::V1 { .. } | NormalForm::V2 { .. } => true,
            NormalForm::Vp { l, .. } => p > 2 && 0 < l && l <= p / 2,
            NormalForm::V2p { j, u } => 0 < j && j < p.max(2) && j % 2 == 1 && !(j == 1 && u == 0),
        }
    }

    /// `v^2` from the normal form.
    pub fn norm(&self, p: i64) -> i64 {
        match *self {
            NormalForm::V0 => -2 * p,
            NormalForm::V1 { r } => 2 * r,
            NormalForm::V2 { s } => -2 * p + 8 * s,
            NormalForm::Vp { l, t } => -2 * p * l * l + 2 * p * p * t,
            NormalForm::V2p { j, u } => -2 * p * j * j + 8 * p * p * u,
        }
    }

    /// Signed determinant of `v^perp` from the table.
    pub fn complement_det(&self, p: i64) -> i64 {
        match *self {
            NormalForm::V0 => 1,
            NormalForm::V1 { r } => -4 * p * r,
            NormalForm::V2 { s } => -p * (4 * s - p),
            NormalForm::Vp { l, t } => -4 * (p * t - l * l),
            NormalForm::V2p { j, u } => -4 * p * u + j * j,
        }
    }

    /// Name of the matching shape in the `p = 2` family `w1, w2, w3`.
    pub fn p2_alias(&self, p: i64) -> Option<&'static str> {
        if p != 2 {
            return None;
        }
        match self {
            NormalForm::V1 { .. } => Some("w1"),
            NormalForm::V2 { .. } => Some("w2"),
            NormalForm::V2p { .. } => Some("w3"),
            _ => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Classification {
    pub p: i64,
    pub input: Vec<String>,
    pub form: NormalForm,
    pub representative: Vec<String>,
    pub alias: Option<&'static str>,
    /// 5x5 isometry of `T_2p` with `witness * input = representative`.
    #[serde(serialize_with = "ser_matrix")]
    pub witness: IMatrix,
}

fn ser_matrix<S: serde::Serializer>(m: &IMatrix, s: S) -> std::result::Result<S::Ok, S::Error> {
    use serde::Serialize;
    let rows: Vec<Vec<String>> = m.to_rows().iter().map(|r| r.iter().map(|x| x.to_string()).collect()).collect();
    rows.serialize(s)
}

fn embed_uu(m: &IMatrix) -> IMatrix {
    let mut out = IMatrix::identity(5);
    for i in 0..4 {
        for j in 0..4 {
            out.set(i + 1, j + 1, m.get(i, j).clone());
        }
    }
    out
}

fn embed_a2d(m: &IMatrix) -> IMatrix {
    let mut out = IMatrix::identity(5);
    for i in 0..3 {
        for j in 0..3 {
            out.set(i, j, m.get(i, j).clone());
        }
    }
    out
}

/// `D`: `a0 -> -a0`.
pub fn d_matrix() -> IMatrix {
    let mut m = IMatrix::identity(5);
    m.set(0, 0, b(-1));
    m
}

/// Eichler transvection sending `g + 2p e1` to `g`:
/// `x -> x - (x.e1) g + (x.g) e1 + p (x.e1) e1`.
pub fn eichler_matrix(p: i64) -> IMatrix {
    let mut m = IMatrix::identity(5);
    m.set(0, 2, b(-1));
    m.set(1, 0, b(-2 * p));
    m.set(1, 2, b(p));
    m
}

fn to_i64(x: &BigInt) -> Result<i64> {
    x.to_i64().ok_or(Error::Overflow("normal form parameter"))
}

/// Classifies a primitive vector of `T_2p` into its normal form.
pub fn classify_t2p(p: i64, v: &[BigInt]) -> Result<Classification> {
    check_prime(p)?;
    if v.len() != 5 {
        return Err(Error::DimensionMismatch("T_2p vector has 5 coordinates".into()));
    }
    if v.iter().all(|x| x.is_zero()) {
        return Err(Error::ZeroVector);
    }
    if !is_primitive(v) {
        return Err(Error::NonPrimitive);
    }
    let gram = t2p_gram(p);
    let pb = b(p);
    let two_p = b(2 * p);
    let mut w = IMatrix::identity(5);
    let mut cur = v.to_vec();
    let apply = |m: &IMatrix, w: &mut IMatrix, cur: &mut Vec<BigInt>| -> Result<()> {
        *cur = m.mul_vec(cur)?;
        *w = m.mul(w)?;
        Ok(())
    };

    let axis: Vec<BigInt> = [1, 0, p, 0, 0].iter().map(|&x| b(x)).collect();
    let refl = reflection_matrix(&gram, &axis)?;
    let mut steps = 0;
    loop {
        steps += 1;
        if steps > LOOP_GUARD {
            return Err(Error::LoopGuard);
        }
        if cur[1..].iter().all(|x| x.is_zero()) {
            if cur[0].is_negative() {
                apply(&d_matrix(), &mut w, &mut cur)?;
            }
            return finish(p, v, NormalForm::V0, w);
        }
        let r = uu_reduce(&cur[1..])?;
        apply(&embed_uu(&r.witness), &mut w, &mut cur)?;
        if cur[0].is_negative() {
            apply(&d_matrix(), &mut w, &mut cur)?;
        }
        if (&two_p % &cur[1]).is_zero() {
            break;
        }
        apply(&refl, &mut w, &mut cur)?;
    }

    // cur = (n, b, b f, 0, 0) with b | 2p
    let bb = cur[1].clone();
    let k = cur[0].div_floor(&bb);
    apply(&embed_a2d(&shift3(&pb, &k)), &mut w, &mut cur)?;
    if (&cur[0] * 2) > bb {
        apply(&embed_a2d(&shift3(&pb, &BigInt::one())), &mut w, &mut cur)?;
        apply(&d_matrix(), &mut w, &mut cur)?;
    }
    let x = to_i64(&cur[0])?;
    let z = &cur[2];
    let bi = to_i64(&bb)?;
    let form = if bi == 1 {
        NormalForm::V1 { r: to_i64(z)? }
    } else if bi == 2 {
        NormalForm::V2 { s: to_i64(&(z / 2))? }
    } else if bi == p {
        NormalForm::Vp { l: x, t: to_i64(&(z / &pb))? }
    } else {
        let u = to_i64(&(z / &two_p))?;
        if x == 1 && u == 0 {
            apply(&eichler_matrix(p), &mut w, &mut cur)?;
            NormalForm::V0
        } else {
            NormalForm::V2p { j: x, u }
        }
    };
    finish(p, v, form, w)
}

fn finish(p: i64, v: &[BigInt], form: NormalForm, w: IMatrix) -> Result<Classification> {
    let rep = form.vector(p);
    if w.mul_vec(v)? != rep || !is_isometry(&w, &t2p_gram(p)) {
        return Err(Error::Precondition("classifier produced an invalid witness".into()));
    }
    Ok(Classification {
        p,
        input: v.iter().map(|x| x.to_string()).collect(),
        alias: form.p2_alias(p),
        representative: rep.iter().map(|x| x.to_string()).collect(),
        form,
        witness: w,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OrbitInvariants {
    pub norm: i64,
    pub det_complement: i64,
    #[serde(skip)]
    pub complement: GramLattice,
}

/// `(v^2, det(v^perp))` with the complement computed in `T_2p`.
pub fn orbit_invariants(p: i64, v: &[BigInt]) -> Result<OrbitInvariants> {
    check_prime(p)?;
    if !is_primitive(v) {
        return Err(Error::NonPrimitive);
    }
    let l = t2p_lattice(p);
    let norm = l.norm(v)?;
    if norm.is_zero() {
        return Err(Error::IsotropicComplement);
    }
    let comp = orthogonal_complement(&l, &[v.to_vec()])?;
    Ok(OrbitInvariants {
        norm: to_i64(&norm)?,
        det_complement: to_i64(&comp.sub.det())?,
        complement: comp.sub,
    })
}

/// Generators for random words.
fn generator(p: i64, which: usize) -> IMatrix {
    let e = |rows: &[Vec<i64>]| IMatrix::from_i64(rows);
    let id2 = e(&[vec![1, 0], vec![0, 1]]);
    match which {
        0 => {
            let axis: Vec<BigInt> = [1, 0, p, 0, 0].iter().map(|&x| b(x)).collect();
            reflection_matrix(&t2p_gram(p), &axis).expect("integral reflection")
        }
        1 => d_matrix(),
        2 => IMatrix::identity(5).scale(&b(-1)),
        3 => {
            // swap the two U blocks
            let mut m = IMatrix::zeros(5, 5);
            for (i, j) in [(0, 0), (1, 3), (2, 4), (3, 1), (4, 2)] {
                m.set(i, j, BigInt::one());
            }
            m
        }
        4 => {
            // swap e1 and f1
            let mut m = IMatrix::zeros(5, 5);
            for (i, j) in [(0, 0), (1, 2), (2, 1), (3, 3), (4, 4)] {
                m.set(i, j, BigInt::one());
            }
            m
        }
        5 => embed_uu(&uu_action(&e(&[vec![1, 1], vec![0, 1]]), &id2)),
        6 => embed_uu(&uu_action(&e(&[vec![1, -1], vec![0, 1]]), &id2)),
        7 => embed_uu(&uu_action(&id2, &e(&[vec![1, 0], vec![1, 1]]))),
        8 => embed_uu(&uu_action(&id2, &e(&[vec![1, 0], vec![-1, 1]]))),
        _ => eichler_matrix(p),
    }
}

pub const GENERATOR_COUNT: usize = 10;

/// Product of a word of the given length in the generators.
pub fn isometry_from_word(p: i64, word: &[usize]) -> IMatrix {
    word.iter().fold(IMatrix::identity(5), |acc, &g| generator(p, g).mul(&acc).expect("5x5"))
}

/// A random isometry of `T_2p`: a word of length at most `max_len`.
pub fn random_isometry(p: i64, seed: u64, max_len: usize) -> IMatrix {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let len = rng.gen_range(0..=max_len);
    let word: Vec<usize> = (0..len).map(|_| rng.gen_range(0..GENERATOR_COUNT)).collect();
    let m = isometry_from_word(p, &word);
    assert!(is_isometry(&m, &t2p_gram(p)), "random word is not an isometry");
    m
}

/// Canonical normal forms for `p` with parameters in `[-bound, bound]`,
/// excluding isotropic `v1(0)` and the `v2p(1, 0)` shape, which lies in the
/// orbit of `v0`. For `p = 2` the `vp` family coincides with `v2` and is
/// skipped.
pub fn normal_form_domain(p: i64, bound: i64) -> Vec<NormalForm> {
    let mut out = vec![NormalForm::V0];
    for r in -bound..=bound {
        if r != 0 {
            out.push(NormalForm::V1 { r });
        }
    }
    for s in -bound..=bound {
        out.push(NormalForm::V2 { s });
    }
    if p > 2 {
        for l in 1..=p / 2 {
            for t in -bound..=bound {
                out.push(NormalForm::Vp { l, t });
            }
        }
    }
    for j in (1..p.max(2)).filter(|j| j % 2 == 1) {
        for u in -bound..=bound {
            if !(j == 1 && u == 0) {
                out.push(NormalForm::V2p { j, u });
            }
        }
    }
    out
}

/// One random-image check of the orbit corpus.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SweepFailure {
    pub source: NormalForm,
    pub seed: u64,
    pub got: Option<NormalForm>,
    pub invariants_match: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct SweepReport {
    pub p: i64,
    pub forms: usize,
    pub samples: usize,
    pub failures: Vec<SweepFailure>,
}

/// Classifies `samples` random images of each form and compares the result
/// and the invariant pair against the table.
pub fn orbit_sweep(p: i64, forms: &[NormalForm], samples: usize, seed: u64, exec: Execution) -> SweepReport {
    let jobs: Vec<(NormalForm, u64)> = forms
        .iter()
        .enumerate()
        .flat_map(|(i, f)| (0..samples as u64).map(move |k| (f.clone(), seed ^ ((i as u64) << 32) ^ k)))
        .collect();
    let results = crate::parallel::map(exec, &jobs, |(f, s)| {
        let g = random_isometry(p, *s, 12);
        let image = g.mul_vec(&f.vector(p)).expect("5x5");
        let got = classify_t2p(p, &image).ok().map(|c| c.form);
        let invariants_match = orbit_invariants(p, &image)
            .map(|inv| (inv.norm, inv.det_complement) == (f.norm(p), f.complement_det(p)))
            .unwrap_or(false);
        if got.as_ref() == Some(f) && invariants_match {
            None
        } else {
            Some(SweepFailure { source: f.clone(), seed: *s, got, invariants_match })
        }
    });
    SweepReport { p, forms: forms.len(), samples: jobs.len(), failures: results.into_iter().flatten().collect() }
}

/// Two normal forms of different tags sharing `(v^2, d(v^perp))`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Collision {
    pub p: i64,
    pub a: NormalForm,
    pub b: NormalForm,
    pub norm: i64,
    pub det: i64,
}

/// Computes the invariant pair of every form in the domain through the
/// lattice complement and reports pairs of distinct tags that agree. Also
/// reports any form whose computed pair differs from the table as a
/// collision with itself.
pub fn disjointness_sweep(primes: &[i64], bound: i64, exec: Execution) -> Result<Vec<Collision>> {
    let mut out = Vec::new();
    for &p in primes {
        check_prime(p)?;
        let forms = normal_form_domain(p, bound);
        let pairs = crate::parallel::map(exec, &forms, |f| orbit_invariants(p, &f.vector(p)).map(|i| (i.norm, i.det_complement)));
        let mut seen: std::collections::HashMap<(i64, i64), NormalForm> = std::collections::HashMap::new();
        for (f, pair) in forms.iter().zip(pairs) {
            let pair = pair?;
            if pair != (f.norm(p), f.complement_det(p)) {
                out.push(Collision { p, a: f.clone(), b: f.clone(), norm: pair.0, det: pair.1 });
            }
            match seen.get(&pair) {
                Some(prev) if prev.tag() != f.tag() => {
                    out.push(Collision { p, a: prev.clone(), b: f.clone(), norm: pair.0, det: pair.1 })
                }
                Some(_) => {}
                None => {
                    seen.insert(pair, f.clone());
                }
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(xs: &[i64]) -> Vec<BigInt> {
        xs.iter().map(|&x| b(x)).collect()
    }

    #[test]
    fn uu_reduce_example() {
        let r = uu_reduce(&v(&[2, 4, 6, 8])).unwrap();
        assert_eq!(r.image, v(&[2, 28, 0, 0]));
        let uu = IMatrix::from_i64(&[vec![0, 1, 0, 0], vec![1, 0, 0, 0], vec![0, 0, 0, 1], vec![0, 0, 1, 0]]);
        assert!(is_isometry(&r.witness, &uu));
    }

    #[test]
    fn uu_reduce_gcd() {
        let r = uu_reduce(&v(&[6, 4, 0, 0])).unwrap();
        assert_eq!((r.d.clone(), r.e.clone()), (b(2), b(6)));
        assert_eq!(uu_reduce(&v(&[1, 0, 0, 0])).unwrap().image, v(&[1, 0, 0, 0]));
        assert_eq!(uu_reduce(&v(&[0, 0, 0, 0])).unwrap_err(), Error::ZeroVector);
    }

    #[test]
    fn reflection_step() {
        // D o R_v on <-4> + U with v = (1, 0, 2)
        let g = a2d_gram(2);
        let r = reflect(&g, &v(&[1, 0, 2]), &v(&[1, 1, 3])).unwrap();
        assert_eq!(vec![-&r[0], r[1].clone(), r[2].clone()], v(&[0, 1, 1]));
        let axis = v(&[1, 0, 2]);
        assert_eq!(reflect(&g, &axis, &axis).unwrap(), v(&[-1, 0, -2]));
        let m = reflection_matrix(&g, &axis).unwrap();
        assert_eq!(m.mul(&m).unwrap(), IMatrix::identity(3));
    }

    #[test]
    fn reduce_a2d_examples() {
        let (r, m) = reduce_a2d(2, &v(&[3, 1, 10])).unwrap();
        assert_eq!(r, v(&[0, 1, -8]));
        assert!(is_isometry(&m, &a2d_gram(2)));
        let (r, _) = reduce_a2d(3, &v(&[3, 2, 10])).unwrap();
        assert_eq!(r, v(&[1, 2, -2]));
        assert_eq!(reduce_a2d(3, &v(&[0, 1, 7])).unwrap().0, v(&[0, 1, 7]));
    }

    #[test]
    fn shift_is_power_of_d_r() {
        let g = a2d_gram(3);
        let dr = d3().mul(&reflection_matrix(&g, &v(&[1, 0, 3])).unwrap()).unwrap();
        let mut acc = IMatrix::identity(3);
        for k in 0..5 {
            assert_eq!(acc, shift3(&b(3), &b(k)));
            acc = dr.mul(&acc).unwrap();
        }
    }

    #[test]
    fn classify_examples() {
        let c = classify_t2p(2, &v(&[1, 1, 1, 0, 0])).unwrap();
        assert_eq!(c.form, NormalForm::V1 { r: -1 });
        let c = classify_t2p(2, &v(&[1, 2, 2, 0, 0])).unwrap();
        assert_eq!(c.form, NormalForm::V2 { s: 1 });
        let c = classify_t2p(2, &v(&[1, 4, 4, 0, 0])).unwrap();
        assert_eq!(c.form, NormalForm::V2p { j: 1, u: 1 });
        assert_eq!(c.alias, Some("w3"));
        assert_eq!(NormalForm::V2p { j: 1, u: 1 }.norm(2), 28);
    }

    #[test]
    fn p2_shapes_double_into_reticoli_norms() {
        // w1, w2, w3 live in T_4(2), so their squares are twice the T_4 norms
        for k in -5..=5 {
            assert_eq!(2 * NormalForm::V1 { r: k }.norm(2), 4 * k);
            assert_eq!(2 * NormalForm::V2 { s: k }.norm(2), 8 * (2 * k - 1));
            assert_eq!(2 * NormalForm::V2p { j: 1, u: k }.norm(2), 8 * (8 * k - 1));
        }
    }

    #[test]
    fn collision_shape_joins_v0() {
        for p in [2, 3, 5, 7] {
            let c = classify_t2p(p, &NormalForm::V2p { j: 1, u: 0 }.vector(p)).unwrap();
            assert_eq!(c.form, NormalForm::V0);
            let e = eichler_matrix(p);
            assert!(is_isometry(&e, &t2p_gram(p)));
            assert_eq!(e.mul_vec(&v(&[1, 2 * p, 0, 0, 0])).unwrap(), v(&[1, 0, 0, 0, 0]));
        }
    }

    #[test]
    fn rejects_bad_input() {
        assert_eq!(classify_t2p(3, &v(&[2, 4, 0, 0, 0])).unwrap_err(), Error::NonPrimitive);
        assert!(matches!(classify_t2p(4, &v(&[1, 0, 0, 0, 0])), Err(Error::Precondition(_))));
        assert_eq!(orbit_invariants(3, &v(&[0, 1, 0, 0, 0])).unwrap_err(), Error::IsotropicComplement);
    }

    #[test]
    fn table_values() {
        let inv = orbit_invariants(3, &v(&[1, 0, 0, 0, 0])).unwrap();
        assert_eq!(inv.det_complement, 1);
        for nf in [NormalForm::V1 { r: 2 }, NormalForm::V2 { s: -1 }, NormalForm::Vp { l: 1, t: 3 }, NormalForm::V2p { j: 1, u: 2 }] {
            let inv = orbit_invariants(3, &nf.vector(3)).unwrap();
            assert_eq!((inv.norm, inv.det_complement), (nf.norm(3), nf.complement_det(3)));
        }
    }

    #[test]
    fn empty_word_is_identity() {
        assert_eq!(isometry_from_word(3, &[]), IMatrix::identity(5));
        let d = d_matrix();
        assert_eq!(d.mul(&d).unwrap(), IMatrix::identity(5));
        for g in 0..GENERATOR_COUNT {
            assert!(is_isometry(&generator(5, g), &t2p_gram(5)), "generator {g}");
        }
    }
}
