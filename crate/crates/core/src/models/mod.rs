//! Invariant polynomials of the `(Z/2Z)^4` actions on `P^3` and `P^5`, the
//! Igusa quartic relation, and exact evaluation of explicit models.

mod poly;

pub use poly::{format_monomial, monomials, Monomial, Polynomial, PolynomialFile};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::arith::{fmt_rat, rat};
use crate::error::{Error, Result};
use crate::matrix::QMatrix;

const DEGREE_GUARD: u32 = 8;

/// `x -> M x` with `M` invertible.
#[derive(Clone, Debug, PartialEq)]
pub struct ProjectiveTransform {
    pub matrix: QMatrix,
}

impl ProjectiveTransform {
    pub fn new(matrix: QMatrix) -> Result<Self> {
        if matrix.rows() != matrix.cols() || matrix.det().is_zero() {
            return Err(Error::Degenerate("transform must be square and invertible".into()));
        }
        Ok(ProjectiveTransform { matrix })
    }

    /// `x_i -> sign_i x_{perm_i}`.
    pub fn signed_permutation(perm: &[usize], signs: &[i64]) -> Result<Self> {
        let n = perm.len();
        let mut m = QMatrix::zeros(n, n);
        for (i, (&p, &s)) in perm.iter().zip(signs).enumerate() {
            m.set(i, p, rat(s, 1));
        }
        Self::new(m)
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    pub fn apply(&self, p: &Polynomial) -> Result<Polynomial> {
        p.substitute(&self.matrix)
    }
}

/// The four generators of the `(Z/2Z)^4` action on `P^3`.
pub fn heisenberg_generators() -> Vec<ProjectiveTransform> {
    let id = [0, 1, 2, 3];
    vec![
        ProjectiveTransform::signed_permutation(&id, &[1, -1, 1, -1]),
        ProjectiveTransform::signed_permutation(&id, &[1, -1, -1, 1]),
        ProjectiveTransform::signed_permutation(&[1, 0, 3, 2], &[1; 4]),
        ProjectiveTransform::signed_permutation(&[3, 2, 1, 0], &[1; 4]),
    ]
    .into_iter()
    .map(|t| t.expect("signed permutation"))
    .collect()
}

/// `p_0, .., p_4`.
pub fn heisenberg_invariants() -> Vec<Polynomial> {
    let p = |terms: &[(&[u32], i64)]| Polynomial::from_terms(4, terms).expect("4 variables");
    vec![
        p(&[(&[4, 0, 0, 0], 1), (&[0, 4, 0, 0], 1), (&[0, 0, 4, 0], 1), (&[0, 0, 0, 4], 1)]),
        p(&[(&[2, 2, 0, 0], 1), (&[0, 0, 2, 2], 1)]),
        p(&[(&[2, 0, 2, 0], 1), (&[0, 2, 0, 2], 1)]),
        p(&[(&[2, 0, 0, 2], 1), (&[0, 2, 2, 0], 1)]),
        p(&[(&[1, 1, 1, 1], 1)]),
    ]
}

/// Basis of the polynomials of the given degree fixed by every generator:
/// the kernel of the stacked `T^* - id` on the monomial space.
pub fn invariant_space(generators: &[ProjectiveTransform], vars: usize, degree: u32) -> Result<Vec<Polynomial>> {
    if degree > DEGREE_GUARD {
        return Err(Error::Precondition(format!("degree {degree} exceeds the guard {DEGREE_GUARD}")));
    }
    if generators.iter().any(|g| g.dim() != vars) {
        return Err(Error::DimensionMismatch("transform size".into()));
    }
    let basis = monomials(vars, degree);
    let index: std::collections::HashMap<&Monomial, usize> = basis.iter().enumerate().map(|(i, m)| (m, i)).collect();
    let n = basis.len();
    let mut rows: Vec<Vec<BigRational>> = Vec::new();
    for g in generators {
        let mut block = vec![vec![BigRational::zero(); n]; n];
        for (j, m) in basis.iter().enumerate() {
            let image = g.apply(&Polynomial::monomial(m.0.clone(), BigRational::one()))?;
            for (mm, c) in image.terms() {
                block[index[mm]][j] += c;
            }
            block[j][j] -= BigRational::one();
        }
        rows.extend(block);
    }
    if rows.is_empty() {
        rows.push(vec![BigRational::zero(); n]);
    }
    let kernel = QMatrix::from_rows(rows)?.kernel();
    Ok(kernel
        .into_iter()
        .map(|v| {
            let mut p = Polynomial::zero(vars);
            for (c, m) in v.into_iter().zip(&basis) {
                p.add_term(m.0.clone(), c);
            }
            p
        })
        .collect())
}

/// Rank of the span of homogeneous polynomials of one degree.
pub fn span_rank(polys: &[Polynomial]) -> Result<usize> {
    let Some(first) = polys.first() else { return Ok(0) };
    let degree = first.degree().unwrap_or(0);
    let basis = monomials(first.vars(), degree);
    let rows: Vec<Vec<BigRational>> = polys.iter().map(|p| basis.iter().map(|m| p.coefficient(&m.0)).collect()).collect();
    Ok(QMatrix::from_rows(rows)?.rank())
}

/// The quartic relation among `p_0..p_4` as a polynomial in five variables,
/// with the leading coefficient as a parameter (16 in the true relation).
pub fn igusa_relation(leading: i64) -> Polynomial {
    let terms: &[(&[u32], i64)] = &[
        (&[0, 0, 0, 0, 4], leading),
        (&[2, 0, 0, 0, 2], 1),
        (&[0, 2, 2, 0, 0], 1),
        (&[0, 2, 0, 2, 0], 1),
        (&[0, 0, 2, 2, 0], 1),
        (&[0, 2, 0, 0, 2], -4),
        (&[0, 0, 2, 0, 2], -4),
        (&[0, 0, 0, 2, 2], -4),
        (&[1, 1, 1, 1, 0], -1),
    ];
    Polynomial::from_terms(5, terms).expect("5 variables")
}

#[derive(Clone, Debug, Serialize)]
pub struct IdentityCheck {
    pub holds: bool,
    pub degree: Option<u32>,
    /// Leading nonzero term when the identity fails.
    pub witness: Option<String>,
}

fn check_zero(p: &Polynomial, names: &[String]) -> IdentityCheck {
    let witness = p.leading_term().map(|(m, c)| format!("{}*{}", fmt_rat(c), format_monomial(m, names)));
    IdentityCheck { holds: p.is_zero(), degree: p.degree(), witness }
}

/// Substitutes `p_i(x)` into the relation with the given leading coefficient.
pub fn igusa_check_with(leading: i64) -> Result<IdentityCheck> {
    let composed = igusa_relation(leading).compose(&heisenberg_invariants())?;
    let names: Vec<String> = (0..4).map(|i| format!("x{i}")).collect();
    Ok(check_zero(&composed, &names))
}

pub fn igusa_relation_check() -> Result<IdentityCheck> {
    igusa_check_with(16)
}

/// Value of the relation at `p(x)` for a rational point `x` of `P^3`.
pub fn igusa_at(point: &[BigRational]) -> Result<BigRational> {
    let values = heisenberg_invariants().iter().map(|p| p.eval(point)).collect::<Result<Vec<_>>>()?;
    igusa_relation(16).eval(&values)
}

/// The sign changes of `P^5` with an even number of `-1`.
pub fn even_sign_group() -> Vec<ProjectiveTransform> {
    let perm: Vec<usize> = (0..6).collect();
    (0u32..64)
        .filter(|m| m.count_ones() % 2 == 0)
        .map(|m| {
            let signs: Vec<i64> = (0..6).map(|i| if m >> i & 1 == 1 { -1 } else { 1 }).collect();
            ProjectiveTransform::signed_permutation(&perm, &signs).expect("signed permutation")
        })
        .collect()
}

/// Flips of `(z_0, z_i)`, which generate the even sign group.
pub fn even_sign_generators() -> Vec<ProjectiveTransform> {
    let perm: Vec<usize> = (0..6).collect();
    (1..6)
        .map(|i| {
            let mut signs = vec![1; 6];
            signs[0] = -1;
            signs[i] = -1;
            ProjectiveTransform::signed_permutation(&perm, &signs).expect("signed permutation")
        })
        .collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct EvenSignReport {
    pub squares_invariant: bool,
    pub product_invariant: bool,
    pub degree2_dimension: usize,
    pub degree2_is_squares: bool,
    pub degree6_contains_product: bool,
    pub relation: IdentityCheck,
}

impl EvenSignReport {
    pub fn all_pass(&self) -> bool {
        self.squares_invariant
            && self.product_invariant
            && self.degree2_dimension == 6
            && self.degree2_is_squares
            && self.degree6_contains_product
            && self.relation.holds
    }
}

pub fn even_sign_invariants_check() -> Result<EvenSignReport> {
    let group = even_sign_group();
    let z = |i| Polynomial::var(6, i);
    let squares: Vec<Polynomial> = (0..6).map(|i| z(i).pow(2)).collect();
    let product = (0..6).fold(Polynomial::constant(6, BigRational::one()), |acc, i| acc.mul(&z(i)).expect("6 vars"));
    let fixed = |p: &Polynomial| -> Result<bool> {
        for g in &group {
            if g.apply(p)? != *p {
                return Ok(false);
            }
        }
        Ok(true)
    };
    let mut squares_invariant = true;
    for s in &squares {
        squares_invariant &= fixed(s)?;
    }
    let product_invariant = fixed(&product)?;
    let deg2 = invariant_space(&group, 6, 2)?;
    let mut joint = deg2.clone();
    joint.extend(squares.iter().cloned());
    let degree2_is_squares = span_rank(&joint)? == deg2.len() && span_rank(&squares)? == deg2.len();
    // t^2 - prod y_i with t = prod z_i and y_i = z_i^2, in variables (y_0..y_5, t)
    let mut rel = Polynomial::zero(7);
    rel.add_term(vec![0, 0, 0, 0, 0, 0, 2], BigRational::one());
    rel.add_term(vec![1, 1, 1, 1, 1, 1, 0], -BigRational::one());
    let mut subs = squares.clone();
    subs.push(product.clone());
    let names: Vec<String> = (0..6).map(|i| format!("z{i}")).collect();
    let relation = check_zero(&rel.compose(&subs)?, &names);
    let space = invariant_space(&even_sign_generators(), 6, 6)?;
    let mut joint = space.clone();
    joint.push(product);
    let degree6_contains_product = span_rank(&joint)? == space.len();
    Ok(EvenSignReport {
        squares_invariant,
        product_invariant,
        degree2_dimension: deg2.len(),
        degree2_is_squares,
        degree6_contains_product,
        relation,
    })
}

/// The three quadrics `sum s_i^k z_i^2`, `k = 0, 1, 2`, at explicit `s_i`.
pub fn genus2_quadrics(s: &[BigRational]) -> Result<Vec<Polynomial>> {
    if s.len() != 6 {
        return Err(Error::DimensionMismatch("six parameters s_0..s_5".into()));
    }
    for i in 0..6 {
        for j in i + 1..6 {
            if s[i] == s[j] {
                return Err(Error::Precondition("the s_i must be distinct".into()));
            }
        }
    }
    Ok((0..3)
        .map(|k| {
            let mut q = Polynomial::zero(6);
            for (i, si) in s.iter().enumerate() {
                let mut e = vec![0; 6];
                e[i] = 2;
                q.add_term(e, num_traits::pow(si.clone(), k));
            }
            q
        })
        .collect())
}

/// `sum a_i p_i`.
pub fn invariant_quartic(a: &[BigRational]) -> Result<Polynomial> {
    if a.len() != 5 {
        return Err(Error::DimensionMismatch("five coefficients a_0..a_4".into()));
    }
    let mut out = Polynomial::zero(4);
    for (c, p) in a.iter().zip(heisenberg_invariants()) {
        out = out.add(&p.scale(c))?;
    }
    Ok(out)
}

pub fn int_point(xs: &[i64]) -> Vec<BigRational> {
    xs.iter().map(|&x| BigRational::from_integer(BigInt::from(x))).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generators_fix_the_p_i() {
        for g in heisenberg_generators() {
            for p in heisenberg_invariants() {
                assert_eq!(g.apply(&p).unwrap(), p);
            }
        }
    }

    #[test]
    fn quartic_invariants() {
        let space = invariant_space(&heisenberg_generators(), 4, 4).unwrap();
        assert_eq!(space.len(), 5);
        let mut joint = space.clone();
        joint.extend(heisenberg_invariants());
        assert_eq!(span_rank(&joint).unwrap(), 5);
        assert!(invariant_space(&heisenberg_generators(), 4, 1).unwrap().is_empty());
        assert_eq!(invariant_space(&[], 4, 4).unwrap().len(), 35);
        assert!(invariant_space(&heisenberg_generators(), 4, 9).is_err());
    }

    #[test]
    fn igusa() {
        let ok = igusa_relation_check().unwrap();
        assert!(ok.holds, "{:?}", ok.witness);
        let bad = igusa_check_with(17).unwrap();
        assert!(!bad.holds);
        assert_eq!(bad.witness.as_deref(), Some("1*x0^4*x1^4*x2^4*x3^4"));
        assert_eq!(igusa_at(&int_point(&[1, 2, 3, 5])).unwrap(), BigRational::zero());
    }

    #[test]
    fn even_signs() {
        let r = even_sign_invariants_check().unwrap();
        assert!(r.all_pass(), "{r:?}");
    }

    #[test]
    fn substitution_examples() {
        let p4 = &heisenberg_invariants()[4];
        let flip = ProjectiveTransform::signed_permutation(&[0, 1, 2, 3], &[-1, -1, 1, 1]).unwrap();
        assert_eq!(flip.apply(p4).unwrap(), *p4);
        let c = Polynomial::constant(4, rat(7, 3));
        assert_eq!(flip.apply(&c).unwrap(), c);
        let g = p4.gradient_at(&int_point(&[0, 1, 1, 1])).unwrap();
        assert_eq!(g, int_point(&[1, 0, 0, 0]));
    }

    #[test]
    fn quadrics() {
        let s = int_point(&[0, 1, 2, 3, 4, 5]);
        let q = genus2_quadrics(&s).unwrap();
        assert_eq!(q[2].coefficient(&[0, 0, 0, 0, 0, 2]), rat(25, 1));
        for g in even_sign_group() {
            assert_eq!(g.apply(&q[1]).unwrap(), q[1]);
        }
        assert!(genus2_quadrics(&int_point(&[0, 0, 2, 3, 4, 5])).is_err());
    }
}
