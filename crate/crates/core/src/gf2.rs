//! Binary linear codes of length at most 64, words stored as bitmasks.

use std::collections::BTreeMap;

/// A binary linear code in echelon form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BinaryCode {
    pub length: usize,
    /// Echelon basis; `pivots[i]` is the leading bit of `basis[i]`.
    basis: Vec<u64>,
    pivots: Vec<u32>,
}

impl BinaryCode {
    pub fn span(length: usize, generators: &[u64]) -> BinaryCode {
        assert!(length <= 64);
        let mut code = BinaryCode { length, basis: Vec::new(), pivots: Vec::new() };
        for &g in generators {
            code.insert(g);
        }
        code
    }

    fn reduce(&self, mut w: u64) -> u64 {
        for (b, &p) in self.basis.iter().zip(&self.pivots) {
            if w >> p & 1 == 1 {
                w ^= b;
            }
        }
        w
    }

    fn insert(&mut self, w: u64) -> bool {
        let r = self.reduce(w);
        if r == 0 {
            return false;
        }
        let p = 63 - r.leading_zeros();
        for b in self.basis.iter_mut() {
            if *b >> p & 1 == 1 {
                *b ^= r;
            }
        }
        self.basis.push(r);
        self.pivots.push(p);
        true
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[u64] {
        &self.basis
    }

    pub fn contains(&self, w: u64) -> bool {
        self.reduce(w) == 0
    }

    /// All `2^dim` codewords in a fixed order.
    pub fn codewords(&self) -> Vec<u64> {
        let k = self.dim();
        assert!(k <= 30, "code too large to enumerate");
        (0u64..1 << k)
            .map(|m| {
                (0..k).filter(|i| m >> i & 1 == 1).fold(0u64, |acc, i| acc ^ self.basis[i])
            })
            .collect()
    }

    pub fn weight_census(&self) -> BTreeMap<u32, u64> {
        let mut out = BTreeMap::new();
        for w in self.codewords() {
            *out.entry(w.count_ones()).or_insert(0) += 1;
        }
        out
    }

    /// Minimum weight in the coset `w + C`.
    pub fn coset_min_weight(&self, w: u64) -> u32 {
        self.codewords().iter().map(|c| (c ^ w).count_ones()).min().unwrap_or(w.count_ones())
    }

    /// Dual code with respect to the standard dot product.
    pub fn dual(&self) -> BinaryCode {
        let n = self.length;
        let mut gens = Vec::new();
        // x is in the dual iff x.b = 0 for all basis words
        let cols: Vec<u64> = (0..n)
            .map(|j| {
                self.basis.iter().enumerate().fold(0u64, |acc, (i, b)| acc | ((b >> j & 1) << i))
            })
            .collect();
        for w in kernel(&cols) {
            gens.push(w);
        }
        BinaryCode::span(n, &gens)
    }
}

/// Basis of `{s : sum_{i in s} columns[i] = 0}` over GF(2).
pub fn kernel(columns: &[u64]) -> Vec<u64> {
    assert!(columns.len() <= 64);
    let mut rows: Vec<(u64, u64)> = columns.iter().enumerate().map(|(i, &c)| (c, 1u64 << i)).collect();
    let mut out = Vec::new();
    let mut reduced: Vec<(u64, u64, u32)> = Vec::new();
    for (mut c, mut tag) in rows.drain(..) {
        for &(rc, rt, p) in &reduced {
            if c >> p & 1 == 1 {
                c ^= rc;
                tag ^= rt;
            }
        }
        if c == 0 {
            out.push(tag);
        } else {
            let p = 63 - c.leading_zeros();
            reduced.push((c, tag, p));
        }
    }
    out
}

pub fn bit(i: usize) -> u64 {
    1u64 << i
}

pub fn mask_of(indices: impl IntoIterator<Item = usize>) -> u64 {
    indices.into_iter().fold(0, |m, i| m | 1 << i)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hamming_code() {
        // [7,4] Hamming code as the kernel of the 3x7 check matrix
        let cols: Vec<u64> = (1..=7u64).collect();
        let k = kernel(&cols);
        let code = BinaryCode::span(7, &k);
        assert_eq!(code.dim(), 4);
        let census = code.weight_census();
        assert_eq!(census.get(&3), Some(&7));
        assert_eq!(census.get(&7), Some(&1));
        assert_eq!(code.dual().dim(), 3);
    }
}
