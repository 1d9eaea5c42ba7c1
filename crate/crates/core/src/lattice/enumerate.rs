//! Exact Fincke-Pohst enumeration of vectors of a fixed norm in a negative
//! definite lattice. Everything runs over checked `i128` rationals; the final
//! filter re-evaluates the norm with the integer Gram matrix.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::{BigRational, Ratio};
use num_traits::{CheckedMul, CheckedSub, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::lattice::{canonical_sign, GramLattice, LatticeVector};
use crate::matrix::IMatrix;
use crate::parallel::{self, Execution};

pub const DEFAULT_GUARD: i64 = 100;

type Q = Ratio<i128>;

/// Norm guard: `K3LAT_GUARD` if set, else [`DEFAULT_GUARD`].
pub fn guard_from_env() -> i64 {
    std::env::var("K3LAT_GUARD").ok().and_then(|s| s.parse().ok()).unwrap_or(DEFAULT_GUARD)
}

/// All vectors of the given norm up to sign, canonically signed and sorted.
pub fn enumerate_vectors(l: &GramLattice, norm: i64) -> Result<Vec<LatticeVector>> {
    enumerate_vectors_with(l, norm, Execution::default(), guard_from_env())
}

pub fn enumerate_vectors_with(
    l: &GramLattice,
    norm: i64,
    exec: Execution,
    guard: i64,
) -> Result<Vec<LatticeVector>> {
    if norm.abs() > guard {
        return Err(Error::NormGuardExceeded { norm, guard });
    }
    if !l.is_negative_definite() {
        return Err(Error::NotNegativeDefinite);
    }
    if norm >= 0 {
        return Ok(Vec::new());
    }
    let n = l.rank();
    if n == 0 {
        return Ok(Vec::new());
    }
    let target = -norm;
    // Q = -G, size reduced: columns of t are the reduced basis
    let (t, q) = size_reduce(&l.gram().scale(&BigInt::from(-1)));
    let (diag, mu) = ldl(&q)?;
    let bound = Q::from_integer(target as i128);

    let top = n - 1;
    let first = level_values(&diag, &mu, top, &vec![0; n], &bound)?;
    let tasks: Vec<(i128, Q)> = first;
    let results: Vec<Result<Vec<Vec<i128>>>> = parallel::map(exec, &tasks, |(x, rem)| {
        let mut out = Vec::new();
        let mut coords = vec![0i128; n];
        coords[top] = *x;
        search(&diag, &mu, top, &mut coords, *rem, &mut out)?;
        Ok(out)
    });

    let mut found = Vec::new();
    let ti = t;
    for r in results {
        for c in r? {
            let cb: Vec<BigInt> = c.iter().map(|&x| BigInt::from(x)).collect();
            let mut v = ti.mul_vec(&cb)?;
            if l.norm(&v)? != BigInt::from(norm) {
                continue;
            }
            canonical_sign(&mut v);
            found.push(v);
        }
    }
    found.sort();
    found.dedup();
    Ok(found)
}

/// Depth-first search below `level`, whose coordinate is already set;
/// `rem` is the remaining budget after that level.
fn search(
    diag: &[Q],
    mu: &[Vec<Q>],
    level: usize,
    coords: &mut Vec<i128>,
    rem: Q,
    out: &mut Vec<Vec<i128>>,
) -> Result<()> {
    if level == 0 {
        if rem.is_zero() {
            out.push(coords.clone());
        }
        return Ok(());
    }
    let next = level - 1;
    for (x, r) in level_values(diag, mu, next, coords, &rem)? {
        coords[next] = x;
        search(diag, mu, next, coords, r, out)?;
    }
    coords[next] = 0;
    Ok(())
}

/// Feasible values at `level` given coordinates above it, with the budget
/// left after each.
fn level_values(
    diag: &[Q],
    mu: &[Vec<Q>],
    level: usize,
    coords: &[i128],
    budget: &Q,
) -> Result<Vec<(i128, Q)>> {
    let ovf = || Error::Overflow("enumeration");
    // center c = -sum_{j > level} mu[level][j] x_j
    let mut c = Q::zero();
    for j in level + 1..coords.len() {
        if coords[j] != 0 {
            let t = mu[level][j].checked_mul(&Q::from_integer(coords[j])).ok_or_else(ovf)?;
            c = c.checked_sub(&t).ok_or_else(ovf)?;
        }
    }
    let d = &diag[level];
    let cost = |x: i128| -> Result<Option<Q>> {
        let y = Q::from_integer(x).checked_sub(&c).ok_or_else(ovf)?;
        let used = d.checked_mul(&y.checked_mul(&y).ok_or_else(ovf)?).ok_or_else(ovf)?;
        let left = budget.checked_sub(&used).ok_or_else(ovf)?;
        Ok((left >= Q::zero()).then_some(left))
    };
    let x0 = (c + Q::new(1, 2)).floor().to_integer();
    let mut vals = Vec::new();
    let Some(r0) = cost(x0)? else { return Ok(vals) };
    vals.push((x0, r0));
    let mut x = x0 + 1;
    while let Some(r) = cost(x)? {
        vals.push((x, r));
        x += 1;
    }
    let mut x = x0 - 1;
    while let Some(r) = cost(x)? {
        vals.push((x, r));
        x -= 1;
    }
    Ok(vals)
}

/// Pairwise size reduction of a positive definite form. Returns `(T, Q')`
/// with `Q' = T^T Q T`.
fn size_reduce(q: &IMatrix) -> (IMatrix, IMatrix) {
    let n = q.rows();
    let mut t = IMatrix::identity(n);
    let mut g = q.clone();
    loop {
        let mut changed = false;
        for i in 0..n {
            for j in 0..n {
                if i == j {
                    continue;
                }
                let gij = g.get(i, j).clone();
                let gjj = g.get(j, j).clone();
                if (&gij * 2i32).magnitude() <= gjj.magnitude() {
                    continue;
                }
                // b_i -= k b_j with k = round(gij / gjj)
                let k = (&gij * 2i32 + &gjj).div_floor(&(&gjj * 2i32));
                if k.is_zero() {
                    continue;
                }
                for r in 0..n {
                    let v = t.get(r, i) - &k * t.get(r, j);
                    t.set(r, i, v);
                }
                let new_ii = g.get(i, i) - &k * &gij * 2i32 + &k * &k * &gjj;
                for r in 0..n {
                    if r == i {
                        continue;
                    }
                    let v = g.get(r, i) - &k * g.get(r, j);
                    g.set(r, i, v.clone());
                    g.set(i, r, v);
                }
                g.set(i, i, new_ii);
                changed = true;
            }
        }
        if !changed {
            return (t, g);
        }
    }
}

/// `Q(x) = sum_i d_i (x_i + sum_{j>i} mu_ij x_j)^2`.
fn ldl(q: &IMatrix) -> Result<(Vec<Q>, Vec<Vec<Q>>)> {
    let n = q.rows();
    let qq = q.to_q();
    let mut d: Vec<BigRational> = Vec::with_capacity(n);
    let mut mu = vec![vec![BigRational::zero(); n]; n];
    for i in 0..n {
        let mut di = qq.get(i, i).clone();
        for k in 0..i {
            di -= &mu[k][i] * &mu[k][i] * &d[k];
        }
        if di <= BigRational::zero() {
            return Err(Error::NotNegativeDefinite);
        }
        for j in i + 1..n {
            let mut v = qq.get(i, j).clone();
            for k in 0..i {
                v -= &mu[k][i] * &mu[k][j] * &d[k];
            }
            mu[i][j] = v / &di;
        }
        d.push(di);
    }
    let small = |x: &BigRational| -> Result<Q> {
        let n = x.numer().to_i128().ok_or(Error::Overflow("ldl"))?;
        let m = x.denom().to_i128().ok_or(Error::Overflow("ldl"))?;
        Ok(Q::new(n, m))
    };
    let diag = d.iter().map(small).collect::<Result<Vec<_>>>()?;
    let mu = mu
        .iter()
        .map(|r| r.iter().map(small).collect::<Result<Vec<_>>>())
        .collect::<Result<Vec<_>>>()?;
    Ok((diag, mu))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::standard;

    #[test]
    fn e8_root_count() {
        let v = enumerate_vectors(&standard::e8(-1), -2).unwrap();
        assert_eq!(v.len(), 120);
    }

    #[test]
    fn a1_sum_norm_four() {
        // <-2>^3: vectors of norm -4 are +-e_i +-e_j, 12 of them, 6 up to sign
        let v = enumerate_vectors(&standard::diagonal(&[-2, -2, -2], "k"), -4).unwrap();
        assert_eq!(v.len(), 6);
    }

    #[test]
    fn indefinite_rejected() {
        assert_eq!(enumerate_vectors(&standard::u(), -2).unwrap_err(), Error::NotNegativeDefinite);
    }

    #[test]
    fn guard_enforced() {
        let err = enumerate_vectors_with(&standard::e8(-1), -200, Execution::Sequential, 100).unwrap_err();
        assert!(matches!(err, Error::NormGuardExceeded { .. }));
    }

    #[test]
    fn sequential_and_parallel_agree() {
        let l = standard::e8(-1);
        let a = enumerate_vectors_with(&l, -4, Execution::Sequential, 100).unwrap();
        let b = enumerate_vectors_with(&l, -4, Execution::Parallel, 100).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.len(), 1080);
    }
}
