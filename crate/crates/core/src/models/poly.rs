//! Sparse multivariate polynomials with exact rational coefficients.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::{fmt_rat, parse_rat};
use crate::error::{Error, Result};
use crate::matrix::QMatrix;

/// Exponent vector ordered graded-lex with `x_0 > x_1 > ...`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Polynomial {
    vars: usize,
    terms: BTreeMap<Monomial, BigRational>,
}

impl Polynomial {
    pub fn zero(vars: usize) -> Self {
        Polynomial { vars, terms: BTreeMap::new() }
    }

    pub fn constant(vars: usize, c: BigRational) -> Self {
        let mut p = Self::zero(vars);
        p.add_term(vec![0; vars], c);
        p
    }

    pub fn var(vars: usize, i: usize) -> Self {
        let mut e = vec![0; vars];
        e[i] = 1;
        Self::monomial(e, BigRational::one())
    }

    pub fn monomial(exps: Vec<u32>, c: BigRational) -> Self {
        let mut p = Self::zero(exps.len());
        p.add_term(exps, c);
        p
    }

    /// Builds from `(exponents, coefficient)` pairs with integer coefficients.
    pub fn from_terms(vars: usize, terms: &[(&[u32], i64)]) -> Result<Self> {
        let mut p = Self::zero(vars);
        for (e, c) in terms {
            if e.len() != vars {
                return Err(Error::DimensionMismatch("exponent length".into()));
            }
            p.add_term(e.to_vec(), BigRational::from_integer(BigInt::from(*c)));
        }
        Ok(p)
    }

    pub fn vars(&self) -> usize {
        self.vars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().next_back().map(|m| m.degree())
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(|m| m.degree());
        match degs.next() {
            Some(d) => degs.all(|x| x == d),
            None => true,
        }
    }

    /// Terms from the leading one down.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigRational)> {
        self.terms.iter().rev()
    }

    pub fn leading_term(&self) -> Option<(&Monomial, &BigRational)> {
        self.terms.iter().next_back()
    }

    pub fn coefficient(&self, exps: &[u32]) -> BigRational {
        self.terms.get(&Monomial(exps.to_vec())).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn add_term(&mut self, exps: Vec<u32>, c: BigRational) {
        debug_assert_eq!(exps.len(), self.vars);
        let key = Monomial(exps);
        let v = self.terms.entry(key.clone()).or_insert_with(BigRational::zero);
        *v += c;
        if v.is_zero() {
            self.terms.remove(&key);
        }
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.vars != other.vars {
            return Err(Error::DimensionMismatch(format!("{} vs {} variables", self.vars, other.vars)));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.0.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(&-BigRational::one()))
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return Self::zero(self.vars);
        }
        Polynomial { vars: self.vars, terms: self.terms.iter().map(|(m, x)| (m.clone(), x * c)).collect() }
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let mut out = Self::zero(self.vars);
        for (a, x) in &self.terms {
            for (b, y) in &other.terms {
                let e = a.0.iter().zip(&b.0).map(|(i, j)| i + j).collect();
                out.add_term(e, x * y);
            }
        }
        Ok(out)
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut out = Self::constant(self.vars, BigRational::one());
        for _ in 0..k {
            out = out.mul(self).expect("same ring");
        }
        out
    }

    pub fn eval(&self, point: &[BigRational]) -> Result<BigRational> {
        if point.len() != self.vars {
            return Err(Error::DimensionMismatch(format!("point has {} coordinates", point.len())));
        }
        Ok(self
            .terms
            .iter()
            .map(|(m, c)| m.0.iter().zip(point).fold(c.clone(), |acc, (&e, x)| acc * num_traits::pow(x.clone(), e as usize)))
            .sum())
    }

    /// `p(q_0, .., q_{n-1})` for polynomials `q_i` in a common ring.
    pub fn compose(&self, subs: &[Polynomial]) -> Result<Polynomial> {
        if subs.len() != self.vars {
            return Err(Error::DimensionMismatch(format!("{} substitutions for {} variables", subs.len(), self.vars)));
        }
        let vars = subs.first().map(|q| q.vars).unwrap_or(0);
        let mut out = Polynomial::zero(vars);
        let mut cache: BTreeMap<(usize, u32), Polynomial> = BTreeMap::new();
        for (m, c) in &self.terms {
            let mut t = Polynomial::constant(vars, c.clone());
            for (i, &e) in m.0.iter().enumerate() {
                if e > 0 {
                    let pw = cache.entry((i, e)).or_insert_with(|| subs[i].pow(e)).clone();
                    t = t.mul(&pw)?;
                }
            }
            out = out.add(&t)?;
        }
        Ok(out)
    }

    /// `p(M x)`.
    pub fn substitute(&self, m: &QMatrix) -> Result<Polynomial> {
        if m.rows() != self.vars || m.cols() != self.vars {
            return Err(Error::DimensionMismatch("transform size".into()));
        }
        let subs: Vec<Polynomial> = (0..self.vars)
            .map(|i| {
                let mut q = Polynomial::zero(self.vars);
                for j in 0..self.vars {
                    let mut e = vec![0; self.vars];
                    e[j] = 1;
                    q.add_term(e, m.get(i, j).clone());
                }
                q
            })
            .collect();
        self.compose(&subs)
    }

    pub fn derivative(&self, i: usize) -> Polynomial {
        let mut out = Polynomial::zero(self.vars);
        for (m, c) in &self.terms {
            if m.0[i] > 0 {
                let mut e = m.0.clone();
                e[i] -= 1;
                out.add_term(e, c * BigRational::from_integer(BigInt::from(m.0[i])));
            }
        }
        out
    }

    pub fn gradient_at(&self, point: &[BigRational]) -> Result<Vec<BigRational>> {
        (0..self.vars).map(|i| self.derivative(i).eval(point)).collect()
    }

    pub fn to_file(&self) -> PolynomialFile {
        PolynomialFile {
            vars: self.vars,
            terms: self.terms().map(|(m, c)| (m.0.clone(), fmt_rat(c))).collect(),
        }
    }

    pub fn from_file(f: &PolynomialFile) -> Result<Polynomial> {
        let mut p = Polynomial::zero(f.vars);
        for (e, c) in &f.terms {
            if e.len() != f.vars {
                return Err(Error::Parse(format!("exponent tuple {e:?} for {} variables", f.vars)));
            }
            p.add_term(e.clone(), parse_rat(c)?);
        }
        Ok(p)
    }
}

/// On-disk form: `{"vars": n, "terms": [[[e_0, ..], "a/b"], ..]}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PolynomialFile {
    pub vars: usize,
    pub terms: Vec<(Vec<u32>, String)>,
}

impl PolynomialFile {
    pub fn parse(text: &str) -> Result<PolynomialFile> {
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
    }
}

pub fn format_monomial(m: &Monomial, names: &[String]) -> String {
    let parts: Vec<String> = m
        .0
        .iter()
        .enumerate()
        .filter(|(_, &e)| e > 0)
        .map(|(i, &e)| if e == 1 { names[i].clone() } else { format!("{}^{e}", names[i]) })
        .collect();
    if parts.is_empty() {
        "1".into()
    } else {
        parts.join("*")
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let names: Vec<String> = (0..self.vars).map(|i| format!("x{i}")).collect();
        let parts: Vec<String> =
            self.terms().map(|(m, c)| format!("({})*{}", fmt_rat(c), format_monomial(m, &names))).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// All monomials of the given degree in `vars` variables, ascending.
pub fn monomials(vars: usize, degree: u32) -> Vec<Monomial> {
    fn rec(vars: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        if cur.len() + 1 == vars {
            cur.push(left);
            out.push(Monomial(cur.clone()));
            cur.pop();
            return;
        }
        for e in 0..=left {
            cur.push(e);
            rec(vars, left - e, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if vars == 0 {
        if degree == 0 {
            out.push(Monomial(Vec::new()));
        }
        return out;
    }
    rec(vars, degree, &mut Vec::new(), &mut out);
    out.sort();
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;

    #[test]
    fn arithmetic() {
        let x = Polynomial::var(2, 0);
        let y = Polynomial::var(2, 1);
        let s = x.add(&y).unwrap();
        let sq = s.mul(&s).unwrap();
        assert_eq!(sq.coefficient(&[1, 1]), rat(2, 1));
        assert_eq!(sq.sub(&sq).unwrap(), Polynomial::zero(2));
        assert_eq!(sq.eval(&[rat(1, 2), rat(1, 3)]).unwrap(), rat(25, 36));
        assert_eq!(sq.leading_term().unwrap().0, &Monomial(vec![2, 0]));
    }

    #[test]
    fn monomial_counts() {
        assert_eq!(monomials(4, 4).len(), 35);
        assert_eq!(monomials(6, 2).len(), 21);
        assert_eq!(monomials(3, 0).len(), 1);
    }

    #[test]
    fn gradient() {
        let p = Polynomial::from_terms(4, &[(&[2, 0, 0, 0], 1)]).unwrap();
        let g = p.gradient_at(&[rat(1, 1), rat(0, 1), rat(0, 1), rat(0, 1)]).unwrap();
        assert_eq!(g, vec![rat(2, 1), rat(0, 1), rat(0, 1), rat(0, 1)]);
    }

    #[test]
    fn file_round_trip() {
        let p = Polynomial::from_terms(3, &[(&[1, 2, 0], 3), (&[0, 0, 1], -1)]).unwrap();
        let text = serde_json::to_string(&p.to_file()).unwrap();
        assert_eq!(Polynomial::from_file(&PolynomialFile::parse(&text).unwrap()).unwrap(), p);
        assert!(PolynomialFile::parse("{\"vars\": 2, \"terms\": [[[1], \"1\"]]}").and_then(|f| Polynomial::from_file(&f)).is_err());
    }
}
