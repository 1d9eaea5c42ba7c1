//! The push-forward and pull-back along the `(Z/2Z)^4` quotient as integer
//! maps between the explicit lattices, and the index chain from
//! `<-2>^16 + U(32)^3` up to `Lambda_K3`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::arith::rat;
use crate::error::Result;
use crate::kummer::k3_frame_and_glue;
use crate::lattice::{overlattice, standard, GramLattice};
use crate::matrix::IMatrix;

/// An integer map; `matrix` has one column per source basis vector.
#[derive(Clone, Debug)]
pub struct LatticeMap {
    pub matrix: IMatrix,
    pub source: GramLattice,
    pub target: GramLattice,
}

const K: usize = 16;
const U: usize = 6;
const ORBITS: usize = 15;
const ORBIT_LEN: usize = 8;

fn u_block(scale: i64) -> GramLattice {
    let blocks: Vec<GramLattice> = (0..3)
        .map(|k| {
            let mut b = standard::u_scaled(scale);
            b.labels = vec![format!("e{}", k + 1), format!("f{}", k + 1)];
            b
        })
        .collect();
    let refs: Vec<&GramLattice> = blocks.iter().collect();
    GramLattice::direct_sum(format!("U({scale})^3"), &refs)
}

/// `<-2>^16 + U(2)^3 + (<-1>^8)^15`, basis `k_1..k_16, e_1, f_1, .., n_{i,j}`.
pub fn source_lattice() -> GramLattice {
    let k = standard::diagonal_labelled("<-2>^16", &[-2; K], (1..=K).map(|i| format!("k{i}")).collect());
    let n_labels: Vec<String> =
        (1..=ORBITS).flat_map(|i| (1..=ORBIT_LEN).map(move |j| format!("n{i}_{j}"))).collect();
    let n = standard::diagonal_labelled("(<-1>^8)^15", &[-1; ORBITS * ORBIT_LEN], n_labels);
    GramLattice::direct_sum("H2(X~)", &[&k, &u_block(2), &n])
}

/// `<-2> + U(32)^3 + <-2>^15`, basis `k, e_1, f_1, .., m_1..m_15`.
pub fn target_lattice() -> GramLattice {
    let k = standard::diagonal_labelled("<-2>", &[-2], vec!["k".into()]);
    let m = standard::diagonal_labelled("<-2>^15", &[-2; ORBITS], (1..=ORBITS).map(|i| format!("m{i}")).collect());
    GramLattice::direct_sum("H2(Y)", &[&k, &u_block(32), &m])
}

fn n_index(i: usize, j: usize) -> usize {
    K + U + i * ORBIT_LEN + j
}

fn m_index(i: usize) -> usize {
    1 + U + i
}

/// `(pi_*, pi^*)`.
pub fn build_quotient_maps() -> (LatticeMap, LatticeMap) {
    let source = source_lattice();
    let target = target_lattice();
    let (ns, nt) = (source.rank(), target.rank());
    let mut push = IMatrix::zeros(nt, ns);
    let mut pull = IMatrix::zeros(ns, nt);
    for i in 0..K {
        push.set(0, i, BigInt::one());
        pull.set(i, 0, BigInt::one());
    }
    for u in 0..U {
        push.set(1 + u, K + u, BigInt::one());
        pull.set(K + u, 1 + u, BigInt::from(16));
    }
    for i in 0..ORBITS {
        for j in 0..ORBIT_LEN {
            push.set(m_index(i), n_index(i, j), BigInt::one());
            pull.set(n_index(i, j), m_index(i), BigInt::from(2));
        }
    }
    (
        LatticeMap { matrix: push, source: source.clone(), target: target.clone() },
        LatticeMap { matrix: pull, source: target, target: source },
    )
}

#[derive(Clone, Debug, Serialize)]
pub struct Identity {
    pub name: String,
    pub pass: bool,
    /// First failing basis pair `(i, j)` with labels, if any.
    pub counterexample: Option<String>,
}

fn first_mismatch(a: &IMatrix, b: &IMatrix, rows: &[String], cols: &[String]) -> Option<String> {
    for i in 0..a.rows() {
        for j in 0..a.cols() {
            if a.get(i, j) != b.get(i, j) {
                return Some(format!("({}, {}): {} vs {}", rows[i], cols[j], a.get(i, j), b.get(i, j)));
            }
        }
    }
    None
}

fn identity(name: &str, a: &IMatrix, b: &IMatrix, rows: &[String], cols: &[String]) -> Identity {
    let counterexample = first_mismatch(a, b, rows, cols);
    Identity { name: name.into(), pass: counterexample.is_none(), counterexample }
}

/// All identities of the quotient maps, checked as full matrix equalities.
pub fn verify_quotient_identities() -> Result<Vec<Identity>> {
    let (push, pull) = build_quotient_maps();
    let gs = push.source.gram();
    let gt = push.target.gram();
    let a = &push.matrix;
    let b = &pull.matrix;
    let sl = &push.source.labels;
    let tl = &push.target.labels;
    let mut out = Vec::new();

    // (pi^* x, y) = (x, pi_* y) for all basis pairs: B^T G_s = G_t A
    out.push(identity("projection formula", &b.transpose().mul(gs)?, &gt.mul(a)?, tl, sl));

    let u_idx: Vec<usize> = (K..K + U).collect();
    let au = a.submatrix(&(0..a.rows()).collect::<Vec<_>>(), &u_idx);
    let gsu = gs.submatrix(&u_idx, &u_idx);
    let ul: Vec<String> = u_idx.iter().map(|&i| sl[i].clone()).collect();
    out.push(identity("(pi_* x, pi_* y) = 16 (x, y) on U(2)^3", &gt.congruence(&au)?, &gsu.scale(&BigInt::from(16)), &ul, &ul));

    let bu = b.mul(&au)?;
    let mut expect = IMatrix::zeros(b.rows(), U);
    for (c, &i) in u_idx.iter().enumerate() {
        expect.set(i, c, BigInt::from(16));
    }
    out.push(identity("pi^* pi_* = 16 on U(2)^3", &bu, &expect, sl, &ul));

    let n_cols: Vec<usize> = (K + U..gs.rows()).collect();
    let an = a.submatrix(&(0..a.rows()).collect::<Vec<_>>(), &n_cols);
    let diag = gt.congruence(&an)?;
    let nl: Vec<String> = n_cols.iter().map(|&i| sl[i].clone()).collect();
    let minus_two: Vec<(usize, BigInt)> = (0..n_cols.len()).map(|i| (i, diag.get(i, i).clone())).collect();
    let bad = minus_two.iter().find(|(_, x)| *x != BigInt::from(-2));
    out.push(Identity {
        name: "(pi_* n_ij, pi_* n_ij) = -2".into(),
        pass: bad.is_none(),
        counterexample: bad.map(|(i, x)| format!("{}: {x}", nl[*i])),
    });

    // (pi^* m_i, n_hj) = -2 delta_ih and (pi^* m_i, k) = (pi^* m_i, u) = 0
    let m_cols: Vec<usize> = (0..ORBITS).map(m_index).collect();
    let bm = b.submatrix(&(0..b.rows()).collect::<Vec<_>>(), &m_cols);
    let pairings = bm.transpose().mul(gs)?;
    let mut expect = IMatrix::zeros(ORBITS, gs.rows());
    for i in 0..ORBITS {
        for j in 0..ORBIT_LEN {
            expect.set(i, n_index(i, j), BigInt::from(-2));
        }
    }
    let ml: Vec<String> = m_cols.iter().map(|&i| tl[i].clone()).collect();
    out.push(identity("(pi^* m_i, x) = -2 delta on n, 0 on k and u", &pairings, &expect, &ml, sl));

    out.push(identity(
        "pi_* pi^* = 16",
        &a.mul(b)?,
        &IMatrix::identity(gt.rows()).scale(&BigInt::from(16)),
        tl,
        tl,
    ));
    Ok(out)
}

#[derive(Clone, Debug, Serialize)]
pub struct ChainReport {
    pub det_r: String,
    pub total_index: String,
    pub total_index_log2: u64,
    /// Index of `<-2>^16 + U(32)^3` in its overlattice by `e_i/4, f_i/4`.
    pub quarter_step_index: String,
    pub quarter_step_is_u2: bool,
    /// Index of `<-2>^16 + U(2)^3` in `Lambda_K3`.
    pub glue_step_index: String,
    /// Both steps glued at once over `R`.
    pub combined_index: String,
    pub combined_unimodular: bool,
    pub closes: bool,
}

fn index_from_dets(sub: &BigInt, sup: &BigInt) -> Option<BigInt> {
    let (q, r) = (sub.abs() / sup.abs(), sub.abs() % sup.abs());
    if !r.is_zero() {
        return None;
    }
    let s = q.sqrt();
    (&s * &s == q).then_some(s)
}

/// Index bookkeeping `2^23 = 2^12 * 2^11` from `R = <-2>^16 + U(32)^3`
/// to `Lambda_K3`.
pub fn overlattice_chain_check() -> Result<ChainReport> {
    let (k3_frame, k3_glue) = k3_frame_and_glue()?;
    let mut g = k3_frame.gram().clone();
    for i in 0..U {
        for j in 0..U {
            g.set(i, j, k3_frame.gram().get(i, j) * BigInt::from(16));
        }
    }
    let r = GramLattice::new("R", k3_frame.labels.clone(), g)?;
    let det_r = r.det();
    let total_index = index_from_dets(&det_r, &BigInt::one()).unwrap_or_default();

    let quarter: Vec<Vec<BigRational>> = (0..U)
        .map(|i| {
            let mut v = vec![BigRational::zero(); r.rank()];
            v[i] = rat(1, 4);
            v
        })
        .collect();
    let step1 = overlattice(&r, &quarter, "R+quarters")?;
    let quarter_step_is_u2 = step1.lattice.det().abs() == k3_frame.det().abs()
        && (0..U).all(|i| step1.coords(&quarter[i]).map(|c| c.is_some()).unwrap_or(false));

    let step2 = overlattice(&k3_frame, &k3_glue, "Lambda_K3")?;

    // the same glue expressed over R: a U(2) coordinate c is c/4 over U(32)
    let mut glue = quarter.clone();
    for g in &k3_glue {
        let mut v = g.clone();
        for x in v.iter_mut().take(U) {
            *x = &*x / BigRational::from_integer(BigInt::from(4));
        }
        glue.push(v);
    }
    let combined = overlattice(&r, &glue, "Lambda_K3 over R")?;
    let combined_unimodular = combined.lattice.is_unimodular();
    let closes = &step1.index * &step2.index == combined.index && combined.index == total_index && combined_unimodular;
    Ok(ChainReport {
        det_r: det_r.to_string(),
        total_index_log2: total_index.bits() - 1,
        total_index: total_index.to_string(),
        quarter_step_index: step1.index.to_string(),
        quarter_step_is_u2,
        glue_step_index: step2.index.to_string(),
        combined_index: combined.index.to_string(),
        combined_unimodular,
        closes,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shapes() {
        let (push, pull) = build_quotient_maps();
        assert_eq!((push.matrix.rows(), push.matrix.cols()), (22, 142));
        assert_eq!((pull.matrix.rows(), pull.matrix.cols()), (142, 22));
        assert!(!push.source.is_even());
        assert!(push.target.is_even());
    }

    #[test]
    fn examples() {
        let (push, pull) = build_quotient_maps();
        assert_eq!(push.matrix.col(0), push.matrix.col(1));
        assert_eq!(push.matrix.col(0)[0], BigInt::one());
        let m3 = pull.matrix.col(m_index(2));
        for j in 0..ORBIT_LEN {
            assert_eq!(m3[n_index(2, j)], BigInt::from(2));
        }
        assert_eq!(m3.iter().filter(|x| !x.is_zero()).count(), ORBIT_LEN);
        // (pi_* e, pi_* f) = 32 for an e, f pair of U(2)
        let e = push.matrix.col(K);
        let f = push.matrix.col(K + 1);
        assert_eq!(push.target.pairing(&e, &f).unwrap(), BigInt::from(32));
    }

    #[test]
    fn all_identities_hold() {
        for id in verify_quotient_identities().unwrap() {
            assert!(id.pass, "{}: {:?}", id.name, id.counterexample);
        }
    }

    #[test]
    fn chain() {
        let c = overlattice_chain_check().unwrap();
        assert_eq!(c.total_index_log2, 23);
        assert_eq!(c.quarter_step_index, (1u64 << 12).to_string());
        assert_eq!(c.glue_step_index, (1u64 << 11).to_string());
        assert!(c.quarter_step_is_u2);
        assert!(c.closes);
    }
}
