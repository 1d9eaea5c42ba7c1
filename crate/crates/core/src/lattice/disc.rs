use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::lattice::{GramLattice, RationalVector};
use crate::matrix::IMatrix;
use crate::snf::smith;

/// `L^dual / L` as a direct sum of cyclic groups with explicit lifts.
#[derive(Clone, Debug)]
pub struct DiscriminantGroup {
    /// Orders of the cyclic factors (all > 1).
    pub orders: Vec<BigInt>,
    /// Lifts of the generators to `L^dual`, in lattice coordinates.
    pub lifts: Vec<RationalVector>,
    /// Rows of `V^-1` selecting the factor coordinates.
    vinv_rows: Vec<Vec<BigInt>>,
}

impl DiscriminantGroup {
    pub fn order(&self) -> BigInt {
        self.orders.iter().product()
    }

    /// Coordinates of a dual vector on the generators, reduced mod the orders.
    pub fn coords(&self, y: &[BigRational]) -> Result<Vec<BigInt>> {
        self.orders
            .iter()
            .zip(&self.vinv_rows)
            .map(|(d, row)| {
                let c: BigRational = row
                    .iter()
                    .zip(y)
                    .map(|(a, b)| BigRational::from_integer(a.clone()) * b)
                    .sum::<BigRational>()
                    * BigRational::from_integer(d.clone());
                if !c.is_integer() {
                    return Err(Error::Precondition("vector is not in the dual lattice".into()));
                }
                Ok(c.to_integer().mod_floor(d))
            })
            .collect()
    }
}

pub fn discriminant_group(l: &GramLattice) -> Result<DiscriminantGroup> {
    if l.det().is_zero() {
        return Err(Error::Degenerate("discriminant group of a degenerate lattice".into()));
    }
    let s = smith(l.gram());
    let vinv: IMatrix = s.v.unimodular_inverse()?;
    let mut orders = Vec::new();
    let mut lifts = Vec::new();
    let mut vinv_rows = Vec::new();
    for (i, d) in s.diag.iter().enumerate() {
        if d.is_one() {
            continue;
        }
        let dq = BigRational::from_integer(d.clone());
        lifts.push(s.v.col(i).into_iter().map(|x| BigRational::from_integer(x) / &dq).collect());
        vinv_rows.push(vinv.row(i));
        orders.push(d.clone());
    }
    Ok(DiscriminantGroup { orders, lifts, vinv_rows })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::standard;

    #[test]
    fn a1_plus_a1() {
        let l = standard::diagonal(&[-2, -2], "k");
        let g = discriminant_group(&l).unwrap();
        assert_eq!(g.orders, vec![BigInt::from(2), BigInt::from(2)]);
        for (i, lift) in g.lifts.iter().enumerate() {
            assert!(l.in_dual(lift).unwrap());
            let c = g.coords(lift).unwrap();
            for (j, x) in c.iter().enumerate() {
                assert_eq!(x.is_one(), i == j);
            }
        }
    }
}
