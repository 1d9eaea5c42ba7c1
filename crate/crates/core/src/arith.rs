//! Small helpers around `BigInt` and `BigRational`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub fn int(v: i64) -> BigInt {
    BigInt::from(v)
}

pub fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn rat_int(v: &BigInt) -> BigRational {
    BigRational::from_integer(v.clone())
}

/// Formats a rational as `a` or `a/b`.
pub fn fmt_rat(q: &BigRational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Parses `a`, `-a`, or `a/b`.
pub fn parse_rat(s: &str) -> Result<BigRational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("not a rational: {s:?}"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(BigRational::new(n, d))
        }
        None => Ok(BigRational::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

/// Parses a comma separated list of integers.
pub fn parse_int_list(s: &str) -> Result<Vec<BigInt>> {
    s.split(',')
        .filter(|t| !t.trim().is_empty())
        .map(|t| {
            t.trim()
                .parse::<BigInt>()
                .map_err(|_| Error::Parse(format!("not an integer: {t:?}")))
        })
        .collect()
}

/// Parses a comma separated list of rationals.
pub fn parse_rat_list(s: &str) -> Result<Vec<BigRational>> {
    s.split(',')
        .filter(|t| !t.trim().is_empty())
        .map(parse_rat)
        .collect()
}

/// Reduces `q` into `[0, m)`.
pub fn rat_mod(q: &BigRational, m: i64) -> BigRational {
    let m = rat(m, 1);
    let k = (q / &m).floor();
    q - k * m
}

pub fn lcm_all<'a>(xs: impl IntoIterator<Item = &'a BigInt>) -> BigInt {
    xs.into_iter().fold(BigInt::one(), |a, b| a.lcm(b))
}

pub fn gcd_all<'a>(xs: impl IntoIterator<Item = &'a BigInt>) -> BigInt {
    xs.into_iter().fold(BigInt::zero(), |a, b| a.gcd(b))
}

/// Nearest integer, ties toward positive infinity.
pub fn round_rat(q: &BigRational) -> BigInt {
    (q + rat(1, 2)).floor().to_integer()
}

pub fn to_i64(v: &BigInt, what: &'static str) -> Result<i64> {
    v.to_i64().ok_or(Error::Overflow(what))
}

pub fn is_integral(q: &BigRational) -> bool {
    q.denom().is_one()
}

pub fn abs_int(v: &BigInt) -> BigInt {
    v.abs()
}
