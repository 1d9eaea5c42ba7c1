//! Finite quadratic forms `q : A -> Q/2Z` on finite abelian groups, with
//! value censuses and an exact isomorphism search.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use serde::Serialize;

use crate::arith::{fmt_rat, rat_mod};
use crate::error::{Error, Result};
use crate::lattice::{discriminant_group, DiscriminantGroup, GramLattice};
use crate::parallel::{self, Execution};

/// Default guard on the number of group elements visited.
pub const ELEMENT_GUARD: u128 = 1 << 20;

/// `A = sum Z/orders[i]` with `q(g_i) = q[i]/E mod 2` and
/// `b(g_i, g_j) = b[i][j]/E mod 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteQuadraticForm {
    orders: Vec<i128>,
    denom: i128,
    q: Vec<i128>,
    b: Vec<Vec<i128>>,
}

/// Generator images of an isometry between two forms.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FormIsometry {
    /// `images[i]` are the coordinates of the image of generator `i`.
    pub images: Vec<Vec<i64>>,
}

fn small(x: &BigInt, what: &'static str) -> Result<i128> {
    x.to_i128().ok_or(Error::Overflow(what))
}

impl FiniteQuadraticForm {
    /// Builds a form from generator orders and a matrix with `q(g_i)` on the
    /// diagonal and `b(g_i, g_j)` off it.
    pub fn from_parts(orders: &[BigInt], matrix: &[Vec<BigRational>]) -> Result<Self> {
        let k = orders.len();
        if matrix.len() != k || matrix.iter().any(|r| r.len() != k) {
            return Err(Error::IllFormedForm("matrix size does not match generators".into()));
        }
        for i in 0..k {
            for j in 0..i {
                if !(&matrix[i][j] - &matrix[j][i]).is_integer() {
                    return Err(Error::IllFormedForm("bilinear part is not symmetric".into()));
                }
            }
        }
        let denom = orders
            .iter()
            .chain(matrix.iter().flatten().map(|x| x.denom()))
            .fold(BigInt::from(1), |a, b| a.lcm(b));
        let e = small(&denom, "form denominator")?;
        let scaled = |x: &BigRational, m: i128| -> Result<i128> {
            let v = x * BigRational::from_integer(denom.clone());
            Ok(small(&v.to_integer(), "form entry")?.rem_euclid(m))
        };
        let q = (0..k).map(|i| scaled(&matrix[i][i], 2 * e)).collect::<Result<Vec<_>>>()?;
        let b = (0..k)
            .map(|i| (0..k).map(|j| scaled(&matrix[i][j], e)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        let orders = orders.iter().map(|o| small(o, "order")).collect::<Result<Vec<_>>>()?;
        if orders.iter().any(|&o| o < 1) {
            return Err(Error::IllFormedForm("orders must be positive".into()));
        }
        let form = FiniteQuadraticForm { orders, denom: e, q, b };
        form.validate()?;
        Ok(form)
    }

    /// Builds a form from a matrix alone; each generator's order is the
    /// smallest `m` with `m * b(g_i, g_j)` integral for all `j`.
    pub fn from_q_matrix(matrix: &[Vec<BigRational>]) -> Result<Self> {
        let orders: Vec<BigInt> = (0..matrix.len())
            .map(|i| matrix[i].iter().fold(BigInt::from(1), |a, x| a.lcm(x.denom())))
            .collect();
        Self::from_parts(&orders, matrix)
    }

    fn validate(&self) -> Result<()> {
        let e = self.denom;
        for i in 0..self.rank() {
            let m = self.orders[i];
            for j in 0..self.rank() {
                if (m * self.b[i][j]).rem_euclid(e) != 0 {
                    return Err(Error::IllFormedForm(format!("generator {i} has order not dividing {m}")));
                }
            }
            if (m * m * self.q[i]).rem_euclid(2 * e) != 0 {
                return Err(Error::IllFormedForm(format!("q is not well defined on generator {i}")));
            }
            if (self.q[i] - self.b[i][i]).rem_euclid(e) != 0 {
                return Err(Error::IllFormedForm(format!("q and b disagree on generator {i}")));
            }
        }
        Ok(())
    }

    pub fn rank(&self) -> usize {
        self.orders.len()
    }

    pub fn orders(&self) -> Vec<i64> {
        self.orders.iter().map(|&o| o as i64).collect()
    }

    pub fn order(&self) -> u128 {
        self.orders.iter().map(|&o| o as u128).product()
    }

    fn value(&self, num: i128, modulus: i64) -> BigRational {
        rat_mod(&BigRational::new(num.into(), self.denom.into()), modulus)
    }

    fn q_raw(&self, x: &[i128]) -> i128 {
        let e2 = 2 * self.denom;
        let mut acc = 0i128;
        for i in 0..x.len() {
            if x[i] == 0 {
                continue;
            }
            acc = (acc + x[i] * x[i] % e2 * self.q[i]) % e2;
            for j in i + 1..x.len() {
                if x[j] != 0 {
                    acc = (acc + 2 * (x[i] * x[j] % e2) * self.b[i][j]) % e2;
                }
            }
        }
        acc.rem_euclid(e2)
    }

    fn b_raw(&self, x: &[i128], y: &[i128]) -> i128 {
        let e = self.denom;
        let mut acc = 0i128;
        for i in 0..x.len() {
            if x[i] == 0 {
                continue;
            }
            for j in 0..y.len() {
                acc = (acc + x[i] * y[j] % e * self.b[i][j]) % e;
            }
        }
        acc.rem_euclid(e)
    }

    /// `q(x)` in `[0, 2)` for coordinates `x`.
    pub fn q_value(&self, x: &[i64]) -> BigRational {
        let xi: Vec<i128> = x.iter().map(|&v| v as i128).collect();
        self.value(self.q_raw(&xi), 2)
    }

    /// `b(x, y)` in `[0, 1)`.
    pub fn b_value(&self, x: &[i64], y: &[i64]) -> BigRational {
        let xi: Vec<i128> = x.iter().map(|&v| v as i128).collect();
        let yi: Vec<i128> = y.iter().map(|&v| v as i128).collect();
        self.value(self.b_raw(&xi, &yi), 1)
    }

    pub fn negate(&self) -> Self {
        FiniteQuadraticForm {
            orders: self.orders.clone(),
            denom: self.denom,
            q: self.q.iter().map(|&v| (-v).rem_euclid(2 * self.denom)).collect(),
            b: self.b.iter().map(|r| r.iter().map(|&v| (-v).rem_euclid(self.denom)).collect()).collect(),
        }
    }

    pub fn direct_sum(&self, other: &Self) -> Self {
        let e = self.denom.lcm(&other.denom);
        let (s1, s2) = (e / self.denom, e / other.denom);
        let k = self.rank() + other.rank();
        let mut b = vec![vec![0; k]; k];
        for i in 0..self.rank() {
            for j in 0..self.rank() {
                b[i][j] = self.b[i][j] * s1;
            }
        }
        for i in 0..other.rank() {
            for j in 0..other.rank() {
                b[self.rank() + i][self.rank() + j] = other.b[i][j] * s2;
            }
        }
        let q = self.q.iter().map(|v| v * s1).chain(other.q.iter().map(|v| v * s2)).collect();
        FiniteQuadraticForm {
            orders: self.orders.iter().chain(&other.orders).copied().collect(),
            denom: e,
            q,
            b,
        }
    }

    fn check_guard(&self) -> Result<()> {
        if self.order() > ELEMENT_GUARD {
            return Err(Error::GroupTooLarge { order: self.order(), guard: ELEMENT_GUARD });
        }
        Ok(())
    }

    /// Coordinates of the element with mixed-radix index `idx`.
    fn element(&self, mut idx: u128) -> Vec<i128> {
        self.orders
            .iter()
            .map(|&o| {
                let c = (idx % o as u128) as i128;
                idx /= o as u128;
                c
            })
            .collect()
    }

    fn element_order(&self, x: &[i128]) -> i128 {
        x.iter()
            .zip(&self.orders)
            .map(|(&c, &o)| o / c.gcd(&o))
            .fold(1, |a, b| a.lcm(&b))
    }

    /// Counts of each value of `q` over the whole group.
    pub fn q_census(&self) -> Result<BTreeMap<BigRational, u64>> {
        self.q_census_with(Execution::default())
    }

    pub fn q_census_with(&self, exec: Execution) -> Result<BTreeMap<BigRational, u64>> {
        self.check_guard()?;
        let n = self.order() as usize;
        let chunk = 4096usize;
        let parts = parallel::map_range(exec, n.div_ceil(chunk), |c| {
            let mut m: BTreeMap<i128, u64> = BTreeMap::new();
            for idx in c * chunk..((c + 1) * chunk).min(n) {
                *m.entry(self.q_raw(&self.element(idx as u128))).or_insert(0) += 1;
            }
            m
        });
        let mut out = BTreeMap::new();
        for part in parts {
            for (k, v) in part {
                *out.entry(self.value(k, 2)).or_insert(0) += v;
            }
        }
        Ok(out)
    }

    /// Census with rational keys rendered as strings.
    pub fn q_census_strings(&self) -> Result<BTreeMap<String, u64>> {
        Ok(self.q_census()?.into_iter().map(|(k, v)| (fmt_rat(&k), v)).collect())
    }

    /// Invariant factor decomposition of the underlying group.
    pub fn invariant_factors(&self) -> Vec<i64> {
        invariant_factors_of(&self.orders())
    }

    /// Census over the nonzero elements only.
    pub fn q_census_nonzero(&self) -> Result<BTreeMap<String, u64>> {
        let mut c = self.q_census()?;
        if let Some(z) = c.get_mut(&BigRational::zero()) {
            *z -= 1;
            if *z == 0 {
                c.remove(&BigRational::zero());
            }
        }
        Ok(c.into_iter().map(|(k, v)| (fmt_rat(&k), v)).collect())
    }
}

/// Invariant factors (all > 1) of `sum Z/orders[i]`.
pub fn invariant_factors_of(orders: &[i64]) -> Vec<i64> {
    let k = orders.len();
    let diag: Vec<Vec<i64>> =
        (0..k).map(|i| (0..k).map(|j| if i == j { orders[i] } else { 0 }).collect()).collect();
    crate::snf::smith(&crate::matrix::IMatrix::from_i64(&diag))
        .diag
        .iter()
        .filter_map(|x| x.to_i64())
        .filter(|&x| x != 1)
        .collect()
}

/// Discriminant form of an even nondegenerate lattice, with the group data
/// used to build it.
pub fn discriminant_form(l: &GramLattice) -> Result<(FiniteQuadraticForm, DiscriminantGroup)> {
    if !l.is_even() {
        return Err(Error::OddLattice);
    }
    let g = discriminant_group(l)?;
    let k = g.orders.len();
    let mut m = vec![vec![BigRational::zero(); k]; k];
    for i in 0..k {
        for j in 0..k {
            m[i][j] = l.pairing_q(&g.lifts[i], &g.lifts[j])?;
        }
    }
    Ok((FiniteQuadraticForm::from_parts(&g.orders, &m)?, g))
}

/// Searches for an isometry `a -> b`. Returns `None` when none exists.
pub fn forms_isomorphic(a: &FiniteQuadraticForm, b: &FiniteQuadraticForm) -> Result<Option<FormIsometry>> {
    a.check_guard()?;
    b.check_guard()?;
    if a.order() != b.order() || a.invariant_factors() != b.invariant_factors() {
        return Ok(None);
    }
    if a.q_census()? != b.q_census()? {
        return Ok(None);
    }
    let (ea, eb) = (a.denom, b.denom);
    let same_q = |qa: i128, qb: i128| (qa * eb - qb * ea).rem_euclid(2 * ea * eb) == 0;
    let same_b = |ba: i128, bb: i128| (ba * eb - bb * ea).rem_euclid(ea * eb) == 0;

    let elems: Vec<Vec<i128>> = (0..b.order()).map(|i| b.element(i)).collect();
    let candidates: Vec<Vec<usize>> = (0..a.rank())
        .map(|i| {
            (0..elems.len())
                .filter(|&h| b.element_order(&elems[h]) == a.orders[i] && same_q(a.q[i], b.q_raw(&elems[h])))
                .collect()
        })
        .collect();

    let mut chosen: Vec<usize> = Vec::new();
    fn go(
        i: usize,
        a: &FiniteQuadraticForm,
        b: &FiniteQuadraticForm,
        elems: &[Vec<i128>],
        cands: &[Vec<usize>],
        chosen: &mut Vec<usize>,
        same_b: &dyn Fn(i128, i128) -> bool,
    ) -> bool {
        if i == a.rank() {
            return injective(a, b, elems, chosen);
        }
        for &h in &cands[i] {
            let ok = (0..i).all(|j| same_b(a.b[i][j], b.b_raw(&elems[h], &elems[chosen[j]])));
            if !ok {
                continue;
            }
            chosen.push(h);
            if go(i + 1, a, b, elems, cands, chosen, same_b) {
                return true;
            }
            chosen.pop();
        }
        false
    }
    if go(0, a, b, &elems, &candidates, &mut chosen, &same_b) {
        let images = chosen.iter().map(|&h| elems[h].iter().map(|&c| c as i64).collect()).collect();
        Ok(Some(FormIsometry { images }))
    } else {
        Ok(None)
    }
}

fn injective(a: &FiniteQuadraticForm, b: &FiniteQuadraticForm, elems: &[Vec<i128>], chosen: &[usize]) -> bool {
    let n = a.order() as usize;
    let mut seen = vec![false; n];
    for idx in 0..n {
        let x = a.element(idx as u128);
        let img: Vec<i128> = (0..b.rank())
            .map(|t| {
                let s: i128 = x.iter().zip(chosen).map(|(c, &h)| c * elems[h][t]).sum();
                s.rem_euclid(b.orders[t])
            })
            .collect();
        let mut pos = 0usize;
        for t in (0..b.rank()).rev() {
            pos = pos * b.orders[t] as usize + img[t] as usize;
        }
        if seen[pos] {
            return false;
        }
        seen[pos] = true;
    }
    true
}

/// Checks that `iso` maps generators of `a` to elements of `b` preserving
/// `q` and `b` and is bijective.
pub fn verify_isometry(a: &FiniteQuadraticForm, b: &FiniteQuadraticForm, iso: &FormIsometry) -> bool {
    if iso.images.len() != a.rank() || a.order() != b.order() {
        return false;
    }
    let imgs: Vec<Vec<i64>> = iso.images.clone();
    for i in 0..a.rank() {
        let mut gi = vec![0i64; a.rank()];
        gi[i] = 1;
        if a.q_value(&gi) != b.q_value(&imgs[i]) {
            return false;
        }
        for j in 0..i {
            let mut gj = vec![0i64; a.rank()];
            gj[j] = 1;
            if a.b_value(&gi, &gj) != b.b_value(&imgs[i], &imgs[j]) {
                return false;
            }
        }
    }
    let elems: Vec<Vec<i128>> = (0..b.order()).map(|i| b.element(i)).collect();
    let chosen: Vec<usize> = imgs
        .iter()
        .map(|c| {
            let mut pos = 0usize;
            for t in (0..b.rank()).rev() {
                pos = pos * b.orders[t] as usize + c[t].rem_euclid(b.orders[t] as i64) as usize;
            }
            pos
        })
        .collect();
    injective(a, b, &elems, &chosen)
}

/// Finite form of `U(2)`: `[[0, 1/2], [1/2, 0]]`.
pub fn q2() -> FiniteQuadraticForm {
    let h = BigRational::new(1.into(), 2.into());
    let z = BigRational::zero();
    FiniteQuadraticForm::from_parts(&[2.into(), 2.into()], &[vec![z.clone(), h.clone()], vec![h, z]])
        .expect("valid")
}

/// Cyclic form `<value>` on `Z/order`.
pub fn cyclic(order: i64, value: BigRational) -> Result<FiniteQuadraticForm> {
    FiniteQuadraticForm::from_parts(&[order.into()], &[vec![value]])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;
    use crate::lattice::standard;

    #[test]
    fn u2_form_is_q2() {
        let (f, _) = discriminant_form(&standard::u_scaled(2)).unwrap();
        let iso = forms_isomorphic(&f, &q2()).unwrap().expect("isomorphic");
        assert!(verify_isometry(&f, &q2(), &iso));
    }

    #[test]
    fn e8_has_trivial_form() {
        let (f, _) = discriminant_form(&standard::e8(-1)).unwrap();
        assert_eq!(f.order(), 1);
    }

    #[test]
    fn a1_census() {
        let (f, _) = discriminant_form(&standard::a1(-1)).unwrap();
        let c = f.q_census().unwrap();
        assert_eq!(c.get(&rat(3, 2)), Some(&1));
        assert_eq!(c.get(&rat(0, 1)), Some(&1));
    }

    #[test]
    fn sign_matters() {
        let plus = cyclic(2, rat(1, 2)).unwrap();
        assert!(forms_isomorphic(&plus, &plus.negate()).unwrap().is_none());
        let four = cyclic(4, rat(1, 4)).unwrap();
        // <1/4> and <-1/4> differ: 1/4 * 9 = 9/4 = 1/4 mod 2 only for odd squares
        assert!(forms_isomorphic(&four, &four.negate()).unwrap().is_none());
    }

    #[test]
    fn odd_lattice_rejected() {
        let l = standard::diagonal(&[-1], "x");
        assert_eq!(discriminant_form(&l).unwrap_err(), Error::OddLattice);
    }

    #[test]
    fn ill_formed_rejected() {
        let err = FiniteQuadraticForm::from_parts(&[2.into()], &[vec![rat(1, 3)]]).unwrap_err();
        assert!(matches!(err, Error::IllFormedForm(_)));
    }
}
