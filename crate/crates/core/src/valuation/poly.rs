use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::rational::Q;

/// Polynomial in `u_1, …, u_n` with rational coefficients.
///
/// Terms are kept in a `BTreeMap` keyed by exponent vector, so the first key
/// is the lexicographically smallest exponent (first coordinate most
/// significant).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UPolynomial {
    n: usize,
    terms: BTreeMap<Vec<u32>, Q>,
}

impl UPolynomial {
    pub fn zero(n: usize) -> Self {
        UPolynomial { n, terms: BTreeMap::new() }
    }

    pub fn one(n: usize) -> Self {
        Self::monomial(vec![0; n], Q::one())
    }

    pub fn monomial(exp: Vec<u32>, coef: Q) -> Self {
        let mut p = Self::zero(exp.len());
        p.add_term(exp, coef);
        p
    }

    pub fn from_terms(n: usize, terms: impl IntoIterator<Item = (Vec<u32>, Q)>) -> Result<Self> {
        let mut p = Self::zero(n);
        for (e, c) in terms {
            if e.len() != n {
                return Err(Error::DimensionMismatch { expected: n, got: e.len() });
            }
            p.add_term(e, c);
        }
        Ok(p)
    }

    fn add_term(&mut self, exp: Vec<u32>, coef: Q) {
        if coef.is_zero() {
            return;
        }
        let entry = self.terms.entry(exp);
        match entry {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(coef);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += coef;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn nvars(&self) -> usize {
        self.n
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> &BTreeMap<Vec<u32>, Q> {
        &self.terms
    }

    pub fn coefficient(&self, exp: &[u32]) -> Q {
        self.terms.get(exp).cloned().unwrap_or_else(Q::zero)
    }

    /// Lowest term `(exponent, coefficient)`.
    pub fn lowest(&self) -> Option<(&Vec<u32>, &Q)> {
        self.terms.iter().next()
    }

    pub fn scale(&self, c: &Q) -> Self {
        if c.is_zero() {
            return Self::zero(self.n);
        }
        UPolynomial { n: self.n, terms: self.terms.iter().map(|(e, x)| (e.clone(), x * c)).collect() }
    }
}

impl Add for &UPolynomial {
    type Output = UPolynomial;

    fn add(self, rhs: &UPolynomial) -> UPolynomial {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }
}

impl Neg for &UPolynomial {
    type Output = UPolynomial;

    fn neg(self) -> UPolynomial {
        UPolynomial { n: self.n, terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect() }
    }
}

impl Sub for &UPolynomial {
    type Output = UPolynomial;

    fn sub(self, rhs: &UPolynomial) -> UPolynomial {
        self + &(-rhs)
    }
}

impl Mul for &UPolynomial {
    type Output = UPolynomial;

    #[allow(clippy::suspicious_arithmetic_impl)]
    fn mul(self, rhs: &UPolynomial) -> UPolynomial {
        let mut out = UPolynomial::zero(self.n);
        for (a, x) in &self.terms {
            for (b, y) in &rhs.terms {
                let e = a.iter().zip(b).map(|(i, j)| i + j).collect();
                out.add_term(e, x * y);
            }
        }
        out
    }
}

impl fmt::Display for UPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (idx, (e, c)) in self.terms.iter().enumerate() {
            if idx > 0 {
                write!(f, " + ")?;
            }
            let mono: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &p)| p > 0)
                .map(|(i, &p)| if p == 1 { format!("u{}", i + 1) } else { format!("u{}^{}", i + 1, p) })
                .collect();
            if mono.is_empty() {
                write!(f, "{c}")?;
            } else if c.is_one() {
                write!(f, "{}", mono.join("*"))?;
            } else {
                write!(f, "{c}*{}", mono.join("*"))?;
            }
        }
        Ok(())
    }
}
