//! Exact rational scalars and small integer-vector helpers.

use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Q = BigRational;

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn q_frac(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

/// Parses `"p/q"`, `"p"` or a decimal-free integer string.
pub fn parse_q(s: &str) -> Result<Q> {
    let s = s.trim();
    let bad = || Error::InvalidInput(format!("not a rational: {s:?}"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n = BigInt::from_str(n.trim()).map_err(|_| bad())?;
            let d = BigInt::from_str(d.trim()).map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(Q::new(n, d))
        }
        None => Ok(Q::from_integer(BigInt::from_str(s).map_err(|_| bad())?)),
    }
}

pub fn to_i64(x: &BigInt) -> Result<i64> {
    x.to_i64().ok_or_else(|| Error::Overflow(x.to_string()))
}

/// Integer value of `x`, if it has one.
pub fn as_integer(x: &Q) -> Option<i64> {
    if x.is_integer() {
        x.to_integer().to_i64()
    } else {
        None
    }
}

pub fn floor_i64(x: &Q) -> Result<i64> {
    to_i64(&x.floor().to_integer())
}

pub fn ceil_i64(x: &Q) -> Result<i64> {
    to_i64(&x.ceil().to_integer())
}

pub fn qvec(v: &[i64]) -> Vec<Q> {
    v.iter().map(|&x| q(x)).collect()
}

pub fn dot_iq(a: &[i64], p: &[Q]) -> Q {
    a.iter()
        .zip(p)
        .filter(|(a, _)| **a != 0)
        .fold(Q::zero(), |acc, (a, p)| acc + p * BigInt::from(*a))
}

pub fn dot_qq(a: &[Q], p: &[Q]) -> Q {
    a.iter().zip(p).fold(Q::zero(), |acc, (a, p)| acc + a * p)
}

pub fn dot_ii(a: &[i64], p: &[i64]) -> i64 {
    a.iter().zip(p).map(|(a, p)| a * p).sum()
}

pub fn gcd_all(v: &[i64]) -> i64 {
    v.iter().fold(0i64, |g, &x| g.gcd(&x))
}

/// Scales a nonzero rational vector to the primitive integer vector on the
/// same ray.
pub fn primitive_integer(v: &[Q]) -> Result<Vec<i64>> {
    let lcm = v
        .iter()
        .fold(BigInt::one(), |l, x| l.lcm(x.denom()));
    let ints: Vec<BigInt> = v.iter().map(|x| (x * &lcm).to_integer()).collect();
    let g = ints.iter().fold(BigInt::zero(), |g, x| g.gcd(x));
    if g.is_zero() {
        return Err(Error::InvalidInput("zero vector has no primitive direction".into()));
    }
    ints.iter().map(|x| to_i64(&(x / &g))).collect()
}

pub fn fmt_q(x: &Q) -> String {
    x.to_string()
}

pub fn fmt_qvec(v: &[Q]) -> Vec<String> {
    v.iter().map(fmt_q).collect()
}

pub fn abs_q(x: &Q) -> Q {
    x.abs()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_rationals() {
        assert_eq!(parse_q("5/2").unwrap(), q_frac(5, 2));
        assert_eq!(parse_q(" -3 ").unwrap(), q(-3));
        assert_eq!(parse_q("4/2").unwrap(), q(2));
        assert!(parse_q("1/0").is_err());
        assert!(parse_q("1.5").is_err());
    }

    #[test]
    fn integer_strings_have_no_denominator() {
        assert_eq!(fmt_q(&q(2)), "2");
        assert_eq!(fmt_q(&q_frac(-6, 4)), "-3/2");
    }

    #[test]
    fn primitive_vectors() {
        assert_eq!(primitive_integer(&[q_frac(1, 2), q(-1)]).unwrap(), vec![1, -2]);
        assert_eq!(primitive_integer(&[q(0), q(6)]).unwrap(), vec![0, 1]);
        assert!(primitive_integer(&[q(0), q(0)]).is_err());
    }
}
