//! ADE decomposition of root systems of negative definite lattices.

use std::collections::{BTreeMap, HashSet};
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::lattice::{enumerate_vectors, GramLattice, LatticeVector};
use crate::matrix::IMatrix;

/// Irreducible simply laced root system.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Ade {
    E(usize),
    D(usize),
    A(usize),
}

impl Ade {
    pub fn rank(self) -> usize {
        match self {
            Ade::A(n) | Ade::D(n) | Ade::E(n) => n,
        }
    }

    pub fn positive_roots(self) -> usize {
        match self {
            Ade::A(n) => n * (n + 1) / 2,
            Ade::D(n) => n * (n - 1),
            Ade::E(6) => 36,
            Ade::E(7) => 63,
            Ade::E(_) => 120,
        }
    }

    /// `|det|` of the root lattice.
    pub fn det(self) -> u64 {
        match self {
            Ade::A(n) => n as u64 + 1,
            Ade::D(_) => 4,
            Ade::E(6) => 3,
            Ade::E(7) => 2,
            Ade::E(_) => 1,
        }
    }
}

impl fmt::Display for Ade {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Ade::A(n) => write!(f, "A{n}"),
            Ade::D(n) => write!(f, "D{n}"),
            Ade::E(n) => write!(f, "E{n}"),
        }
    }
}

/// Multiset of ADE components, printed like `D7+A2+6A1`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct RootType(pub BTreeMap<Ade, usize>);

impl RootType {
    pub fn rank(&self) -> usize {
        self.0.iter().map(|(a, n)| a.rank() * n).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Product of the component determinants.
    pub fn det(&self) -> u64 {
        self.0.iter().map(|(a, &n)| a.det().pow(n as u32)).product()
    }

    /// Component determinants, one per component.
    pub fn component_dets(&self) -> Vec<u64> {
        self.0.iter().flat_map(|(a, &n)| std::iter::repeat_n(a.det(), n)).collect()
    }

    pub fn parse(s: &str) -> Result<RootType> {
        let mut out = BTreeMap::new();
        if s.trim().is_empty() || s.trim() == "0" {
            return Ok(RootType(out));
        }
        for part in s.split('+') {
            let part = part.trim();
            let split = part.find(|c: char| c.is_ascii_alphabetic()).ok_or_else(|| Error::Parse(part.into()))?;
            let count: usize = if split == 0 { 1 } else { part[..split].parse().map_err(|_| Error::Parse(part.into()))? };
            let n: usize = part[split + 1..].parse().map_err(|_| Error::Parse(part.into()))?;
            let ade = match &part[split..=split] {
                "A" => Ade::A(n),
                "D" => Ade::D(n),
                "E" => Ade::E(n),
                _ => return Err(Error::Parse(part.into())),
            };
            *out.entry(ade).or_insert(0) += count;
        }
        Ok(RootType(out))
    }
}

impl fmt::Display for RootType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "0");
        }
        let mut items: Vec<(Ade, usize)> = self.0.iter().map(|(a, n)| (*a, *n)).collect();
        items.sort_by(|x, y| {
            let key = |a: Ade| match a {
                Ade::E(n) => (0, std::cmp::Reverse(n)),
                Ade::D(n) => (1, std::cmp::Reverse(n)),
                Ade::A(n) => (2, std::cmp::Reverse(n)),
            };
            key(x.0).cmp(&key(y.0))
        });
        let parts: Vec<String> =
            items.iter().map(|(a, n)| if *n == 1 { a.to_string() } else { format!("{n}{a}") }).collect();
        write!(f, "{}", parts.join("+"))
    }
}

/// Root type of a negative definite lattice from its `-2` vectors.
pub fn root_decomposition(l: &GramLattice) -> Result<RootType> {
    if !l.is_negative_definite() {
        return Err(Error::NotNegativeDefinite);
    }
    let roots = enumerate_vectors(l, -2)?;
    root_type_of(l.gram(), &roots)
}

fn functional(n: usize, attempt: u64) -> Vec<BigInt> {
    // distinct, rapidly growing weights; a later attempt perturbs them
    (0..n).map(|i| BigInt::from(1_000_003u64 + attempt).pow(i as u32) + BigInt::from(attempt * 7 + i as u64)).collect()
}

fn dot(a: &[BigInt], b: &[BigInt]) -> BigInt {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Simple roots of the system spanned by `roots` (one of each `+-` pair),
/// for the positive system cut out by a generic linear functional.
pub fn simple_roots(roots: &[LatticeVector]) -> Vec<LatticeVector> {
    if roots.is_empty() {
        return Vec::new();
    }
    let n = roots[0].len();
    let mut attempt = 0;
    let positive: Vec<LatticeVector> = loop {
        let f = functional(n, attempt);
        let vals: Vec<BigInt> = roots.iter().map(|r| dot(r, &f)).collect();
        if vals.iter().all(|v| !v.is_zero()) {
            break roots
                .iter()
                .zip(vals)
                .map(|(r, v)| if v.is_negative() { r.iter().map(|x| -x).collect() } else { r.clone() })
                .collect();
        }
        attempt += 1;
    };
    let set: HashSet<&LatticeVector> = positive.iter().collect();
    positive
        .iter()
        .filter(|r| {
            !positive.iter().any(|s| {
                let diff: LatticeVector = r.iter().zip(s.iter()).map(|(a, b)| a - b).collect();
                set.contains(&diff)
            })
        })
        .cloned()
        .collect()
}

/// Root type from a list of roots (up to sign) of a negative definite form.
pub fn root_type_of(gram: &IMatrix, roots: &[LatticeVector]) -> Result<RootType> {
    let simple = simple_roots(roots);
    let k = simple.len();
    let mut adj = vec![Vec::new(); k];
    for i in 0..k {
        for j in i + 1..k {
            let b = gram.bilinear(&simple[i], &simple[j])?;
            if b.is_one() {
                adj[i].push(j);
                adj[j].push(i);
            } else if !b.is_zero() {
                return Err(Error::Precondition(format!("simple roots pair to {b}")));
            }
        }
    }
    let mut seen = vec![false; k];
    let mut out: BTreeMap<Ade, usize> = BTreeMap::new();
    for start in 0..k {
        if seen[start] {
            continue;
        }
        let mut comp = vec![start];
        seen[start] = true;
        let mut i = 0;
        while i < comp.len() {
            for &j in &adj[comp[i]] {
                if !seen[j] {
                    seen[j] = true;
                    comp.push(j);
                }
            }
            i += 1;
        }
        *out.entry(classify_diagram(&comp, &adj)?).or_insert(0) += 1;
    }
    let t = RootType(out);
    let expected: usize = t.0.iter().map(|(a, n)| a.positive_roots() * n).sum();
    if expected != roots.len() {
        return Err(Error::Precondition(format!("{} roots do not form the system {t}", roots.len())));
    }
    Ok(t)
}

fn classify_diagram(comp: &[usize], adj: &[Vec<usize>]) -> Result<Ade> {
    let n = comp.len();
    let edges: usize = comp.iter().map(|&v| adj[v].len()).sum::<usize>() / 2;
    if edges + 1 != n {
        return Err(Error::Precondition("Dynkin diagram has a cycle".into()));
    }
    let branch: Vec<usize> = comp.iter().copied().filter(|&v| adj[v].len() > 2).collect();
    match branch.as_slice() {
        [] => Ok(Ade::A(n)),
        [c] if adj[*c].len() == 3 => {
            let mut arms: Vec<usize> = adj[*c]
                .iter()
                .map(|&first| {
                    let (mut prev, mut cur, mut len) = (*c, first, 1);
                    while let Some(&next) = adj[cur].iter().find(|&&x| x != prev) {
                        prev = cur;
                        cur = next;
                        len += 1;
                    }
                    len
                })
                .collect();
            arms.sort();
            match arms.as_slice() {
                [1, 1, k] => Ok(Ade::D(k + 3)),
                [1, 2, 2] => Ok(Ade::E(6)),
                [1, 2, 3] => Ok(Ade::E(7)),
                [1, 2, 4] => Ok(Ade::E(8)),
                _ => Err(Error::Precondition(format!("non-ADE diagram with arms {arms:?}"))),
            }
        }
        _ => Err(Error::Precondition("non-ADE diagram".into())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::standard;

    #[test]
    fn standard_types() {
        assert_eq!(root_decomposition(&standard::e8(-1)).unwrap().to_string(), "E8");
        assert_eq!(root_decomposition(&standard::e_n(7, -1)).unwrap().to_string(), "E7");
        assert_eq!(root_decomposition(&standard::d_n(5, -1)).unwrap().to_string(), "D5");
        assert_eq!(root_decomposition(&standard::a_n(4, -1)).unwrap().to_string(), "A4");
        let sum = GramLattice::direct_sum("x", &[&standard::d_n(4, -1), &standard::a1(-1), &standard::a1(-1), &standard::a_n(2, -1)]);
        assert_eq!(root_decomposition(&sum).unwrap().to_string(), "D4+A2+2A1");
        let none = standard::diagonal(&[-4, -6], "x");
        assert!(root_decomposition(&none).unwrap().is_empty());
    }

    #[test]
    fn parse_round_trip() {
        for s in ["D9+6A1", "A7+8A1", "D7+A2+6A1", "16A1", "E8"] {
            assert_eq!(RootType::parse(s).unwrap().to_string(), s);
        }
        assert_eq!(RootType::parse("D7+A2+6A1").unwrap().det(), 4 * 3 * 64);
    }
}
