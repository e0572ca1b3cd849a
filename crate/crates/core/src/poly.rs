//! Sparse Laurent polynomials in one variable `a` with integer coefficients.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use thiserror::Error;

use crate::error::{Error, Result};

#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct LaurentPoly {
    terms: BTreeMap<i32, i64>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(1, 0)
    }

    /// `c * a^e`.
    pub fn monomial(c: i64, e: i32) -> Self {
        let mut p = Self::zero();
        p.add_term(c, e);
        p
    }

    /// The loop value `d = -a^2 - a^-2`.
    pub fn loop_value() -> Self {
        let mut p = Self::monomial(-1, 2);
        p.add_term(-1, -2);
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, e: i32) -> i64 {
        self.terms.get(&e).copied().unwrap_or(0)
    }

    /// Nonzero `(exponent, coefficient)` pairs, ascending by exponent.
    pub fn terms(&self) -> impl Iterator<Item = (i32, i64)> + '_ {
        self.terms.iter().map(|(&e, &c)| (e, c))
    }

    pub fn add_term(&mut self, c: i64, e: i32) {
        if c == 0 {
            return;
        }
        let slot = self.terms.entry(e).or_insert(0);
        *slot += c;
        if *slot == 0 {
            self.terms.remove(&e);
        }
    }

    pub fn min_degree(&self) -> Option<i32> {
        self.terms.keys().next().copied()
    }

    pub fn max_degree(&self) -> Option<i32> {
        self.terms.keys().next_back().copied()
    }

    /// Leading minus lowest degree.
    pub fn span(&self) -> Result<u32> {
        match (self.min_degree(), self.max_degree()) {
            (Some(lo), Some(hi)) => Ok((hi - lo) as u32),
            _ => Err(Error::ZeroPolynomial),
        }
    }

    pub fn pow(&self, k: u32) -> Self {
        (0..k).fold(Self::one(), |acc, _| &acc * self)
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (e, c) in rhs.terms() {
            out.add_term(c, e);
        }
        out
    }
}

impl Add for LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: LaurentPoly) -> LaurentPoly {
        &self + &rhs
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            terms: self.terms.iter().map(|(&e, &c)| (e, -c)).collect(),
        }
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        self + &(-rhs)
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (e1, c1) in self.terms() {
            for (e2, c2) in rhs.terms() {
                out.add_term(c1 * c2, e1 + e2);
            }
        }
        out
    }
}

impl Mul for LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: LaurentPoly) -> LaurentPoly {
        &self * &rhs
    }
}

/// `c*a^e` terms joined by ` + `, ascending exponents; a constant term is
/// written bare and the zero polynomial as `0`.
impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (k, (e, c)) in self.terms().enumerate() {
            if k > 0 {
                f.write_str(" + ")?;
            }
            if e == 0 {
                write!(f, "{c}")?;
            } else {
                write!(f, "{c}*a^{e}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentPoly({self})")
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("malformed polynomial term `{0}`")]
pub struct PolyParseError(pub String);

impl FromStr for LaurentPoly {
    type Err = PolyParseError;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        let s = s.trim();
        let mut p = LaurentPoly::zero();
        if s == "0" {
            return Ok(p);
        }
        for term in s.split(" + ") {
            let bad = || PolyParseError(term.to_string());
            let (c, e) = match term.split_once("*a^") {
                Some((c, e)) => (c.parse::<i64>().map_err(|_| bad())?, e.parse::<i32>().map_err(|_| bad())?),
                None => (term.parse::<i64>().map_err(|_| bad())?, 0),
            };
            if c == 0 || p.coeff(e) != 0 {
                return Err(bad());
            }
            p.add_term(c, e);
        }
        Ok(p)
    }
}
