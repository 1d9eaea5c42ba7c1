//! Points and affine subspaces of F_2^4.

use std::fmt;

/// A point `(a1, a2, a3, a4)` of F_2^4, stored as `8 a1 + 4 a2 + 2 a3 + a4`
/// so the natural order is lexicographic `0000 < 0001 < ... < 1111`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct F2Point(pub u8);

impl F2Point {
    pub fn all() -> impl Iterator<Item = F2Point> {
        (0..16).map(F2Point)
    }

    pub fn nonzero() -> impl Iterator<Item = F2Point> {
        (1..16).map(F2Point)
    }

    /// Coordinate `a_i`, `i` in 1..=4.
    pub fn a(self, i: usize) -> u8 {
        (self.0 >> (4 - i)) & 1
    }

    pub fn parse(s: &str) -> Option<F2Point> {
        let s = s.trim().trim_start_matches(['K', 'M']);
        if s.len() != 4 || !s.chars().all(|c| c == '0' || c == '1') {
            return None;
        }
        u8::from_str_radix(s, 2).ok().map(F2Point)
    }

    pub fn bits(self) -> String {
        format!("{:04b}", self.0)
    }

    pub fn add(self, other: F2Point) -> F2Point {
        F2Point(self.0 ^ other.0)
    }

    /// `sum a_i b_i mod 2`.
    pub fn dot(self, other: F2Point) -> u8 {
        (self.0 & other.0).count_ones() as u8 & 1
    }
}

impl fmt::Display for F2Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.bits())
    }
}

/// Points from bit strings; panics on malformed literals.
pub fn points(bits: &[&str]) -> Vec<F2Point> {
    bits.iter().map(|b| F2Point::parse(b).expect("point literal")).collect()
}

/// An affine subspace `{x : alpha_k . x = eps_k}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineSubspace {
    pub equations: Vec<(F2Point, u8)>,
}

impl AffineSubspace {
    pub fn points(&self) -> Vec<F2Point> {
        F2Point::all().filter(|x| self.equations.iter().all(|&(a, e)| a.dot(*x) == e)).collect()
    }

    /// The 30 affine hyperplanes, ordered by `(alpha, eps)`.
    pub fn hyperplanes() -> Vec<AffineSubspace> {
        F2Point::nonzero()
            .flat_map(|a| (0..2).map(move |e| AffineSubspace { equations: vec![(a, e)] }))
            .collect()
    }

    /// All affine planes (2-dimensional), deduplicated, in a fixed order.
    pub fn planes() -> Vec<Vec<F2Point>> {
        let mut out: Vec<Vec<F2Point>> = Vec::new();
        for a in F2Point::nonzero() {
            for b in F2Point::nonzero().filter(|b| b.0 > a.0) {
                for ea in 0..2 {
                    for eb in 0..2 {
                        let s = AffineSubspace { equations: vec![(a, ea), (b, eb)] }.points();
                        if !out.contains(&s) {
                            out.push(s);
                        }
                    }
                }
            }
        }
        out.sort();
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts() {
        assert_eq!(AffineSubspace::hyperplanes().len(), 30);
        assert!(AffineSubspace::hyperplanes().iter().all(|h| h.points().len() == 8));
        assert_eq!(AffineSubspace::planes().len(), 140);
    }

    #[test]
    fn ordering_and_parse() {
        assert_eq!(F2Point::parse("K1000"), Some(F2Point(8)));
        assert_eq!(F2Point(8).a(1), 1);
        assert_eq!(F2Point(1).a(4), 1);
        assert!(F2Point(1) < F2Point(2));
    }
}
