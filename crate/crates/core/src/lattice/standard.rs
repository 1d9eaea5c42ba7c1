//! Standard lattices.

use crate::lattice::GramLattice;
use crate::matrix::IMatrix;

/// Hyperbolic plane `U` with basis `e, f`.
pub fn u() -> GramLattice {
    u_scaled(1)
}

/// `U(n)`.
pub fn u_scaled(n: i64) -> GramLattice {
    let name = if n == 1 { "U".to_string() } else { format!("U({n})") };
    GramLattice::new(name, vec!["e".into(), "f".into()], IMatrix::from_i64(&[vec![0, n], vec![n, 0]]))
        .expect("valid")
}

/// `<s*2>`, labelled `a`.
pub fn a1(sign: i64) -> GramLattice {
    diagonal(&[2 * sign], "a")
}

/// Diagonal lattice with labels `prefix0, prefix1, ...`.
pub fn diagonal(entries: &[i64], prefix: &str) -> GramLattice {
    let n = entries.len();
    let mut rows = vec![vec![0i64; n]; n];
    for (i, &x) in entries.iter().enumerate() {
        rows[i][i] = x;
    }
    let name = format!("diag{entries:?}");
    GramLattice::with_prefix(name, prefix, IMatrix::from_i64(&rows)).expect("valid")
}

/// Diagonal lattice with explicit labels.
pub fn diagonal_labelled(name: &str, entries: &[i64], labels: Vec<String>) -> GramLattice {
    let n = entries.len();
    let mut rows = vec![vec![0i64; n]; n];
    for (i, &x) in entries.iter().enumerate() {
        rows[i][i] = x;
    }
    GramLattice::new(name, labels, IMatrix::from_i64(&rows)).expect("valid")
}

/// Lattice from a Dynkin graph: diagonal `2s`, edges `-s`.
fn dynkin(name: String, n: usize, edges: &[(usize, usize)], sign: i64, prefix: &str) -> GramLattice {
    let mut rows = vec![vec![0i64; n]; n];
    for (i, r) in rows.iter_mut().enumerate() {
        r[i] = 2 * sign;
    }
    for &(a, b) in edges {
        rows[a][b] = -sign;
        rows[b][a] = -sign;
    }
    GramLattice::with_prefix(name, prefix, IMatrix::from_i64(&rows)).expect("valid")
}

fn scale_suffix(sign: i64) -> String {
    if sign == 1 { String::new() } else { format!("({sign})") }
}

pub fn a_n(n: usize, sign: i64) -> GramLattice {
    let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
    dynkin(format!("A{n}{}", scale_suffix(sign)), n, &edges, sign, "a")
}

/// `D_n`, `n >= 4`: chain of `n-1` nodes with the last node attached to the
/// node before the end of the chain.
pub fn d_n(n: usize, sign: i64) -> GramLattice {
    let mut edges: Vec<_> = (1..n - 1).map(|i| (i - 1, i)).collect();
    edges.push((n - 3, n - 1));
    dynkin(format!("D{n}{}", scale_suffix(sign)), n, &edges, sign, "d")
}

/// `E_n` for n = 6, 7, 8: chain `0..n-1` with node `n-1` attached to node 2.
pub fn e_n(n: usize, sign: i64) -> GramLattice {
    assert!((6..=8).contains(&n));
    let mut edges: Vec<_> = (1..n - 1).map(|i| (i - 1, i)).collect();
    edges.push((2, n - 1));
    dynkin(format!("E{n}{}", scale_suffix(sign)), n, &edges, sign, "e")
}

/// `E8(sign)` with basis `E1..E8`: `E1..E7` form an A7 chain and `E8` is
/// attached to `E3`.
pub fn e8(sign: i64) -> GramLattice {
    let mut l = e_n(8, sign);
    l.labels = (1..=8).map(|i| format!("E{i}")).collect();
    l
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    #[test]
    fn root_lattice_determinants() {
        assert_eq!(e8(-1).det(), BigInt::from(1));
        assert_eq!(e_n(7, 1).det(), BigInt::from(2));
        assert_eq!(e_n(6, 1).det(), BigInt::from(3));
        assert_eq!(d_n(6, 1).det(), BigInt::from(4));
        assert_eq!(a_n(5, 1).det(), BigInt::from(6));
        assert_eq!(u_scaled(2).det(), BigInt::from(-4));
    }
}
