use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::field::Field;
use crate::error::{Error, Result};

/// Element of Q(i).
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct GaussRational {
    pub re: BigRational,
    pub im: BigRational,
}

impl GaussRational {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        Self { re, im }
    }

    pub fn real(re: BigRational) -> Self {
        Self { re, im: BigRational::zero() }
    }

    pub fn from_ints(re: i64, im: i64) -> Self {
        Self {
            re: BigRational::from_integer(BigInt::from(re)),
            im: BigRational::from_integer(BigInt::from(im)),
        }
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    /// Both parts are integers.
    pub fn is_gaussian_integer(&self) -> bool {
        self.re.is_integer() && self.im.is_integer()
    }

    pub fn norm_sqr(&self) -> BigRational {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn to_complex64(&self) -> Complex64 {
        Complex64::new(
            self.re.to_f64().unwrap_or(f64::NAN),
            self.im.to_f64().unwrap_or(f64::NAN),
        )
    }

    pub fn abs_bound(&self) -> f64 {
        self.re.abs().to_f64().unwrap_or(f64::INFINITY) + self.im.abs().to_f64().unwrap_or(f64::INFINITY)
    }
}

impl Field for GaussRational {
    fn zero() -> Self {
        Self::default()
    }
    fn one() -> Self {
        Self::real(BigRational::one())
    }
    fn imag_unit() -> Self {
        Self::new(BigRational::zero(), BigRational::one())
    }
    fn from_int(n: i64) -> Self {
        Self::from_ints(n, 0)
    }
    fn from_rational(r: &BigRational) -> Self {
        Self::real(r.clone())
    }
    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
    fn is_one(&self) -> bool {
        self.re.is_one() && self.im.is_zero()
    }
    fn add(&self, rhs: &Self) -> Self {
        Self::new(&self.re + &rhs.re, &self.im + &rhs.im)
    }
    fn sub(&self, rhs: &Self) -> Self {
        Self::new(&self.re - &rhs.re, &self.im - &rhs.im)
    }
    fn mul(&self, rhs: &Self) -> Self {
        if self.im.is_zero() && rhs.im.is_zero() {
            return Self::real(&self.re * &rhs.re);
        }
        Self::new(
            &self.re * &rhs.re - &self.im * &rhs.im,
            &self.re * &rhs.im + &self.im * &rhs.re,
        )
    }
    fn neg(&self) -> Self {
        Self::new(-&self.re, -&self.im)
    }
    fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if self.im.is_zero() {
            return Ok(Self::real(self.re.recip()));
        }
        let n = self.norm_sqr();
        Ok(Self::new(&self.re / &n, -&self.im / &n))
    }
    fn conj(&self) -> Self {
        Self::new(self.re.clone(), -&self.im)
    }
    fn cost(&self) -> usize {
        (self.re.numer().bits() + self.re.denom().bits() + self.im.numer().bits() + self.im.denom().bits()) as usize
    }
}

impl fmt::Display for GaussRational {
    /// Canonical `a+bi` / `a-bi` form, both parts always present.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sign = if self.im.is_negative() { '-' } else { '+' };
        write!(f, "{}{}{}i", self.re, sign, self.im.abs())
    }
}

impl fmt::Debug for GaussRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl FromStr for GaussRational {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let body = s
            .strip_suffix('i')
            .ok_or_else(|| Error::Parse(format!("gaussian rational must end in 'i': {s}")))?;
        let split = body
            .char_indices()
            .skip(1)
            .filter(|&(_, c)| c == '+' || c == '-')
            .map(|(k, _)| k)
            .last()
            .ok_or_else(|| Error::Parse(format!("missing imaginary part: {s}")))?;
        let (re, im) = body.split_at(split);
        let parse = |x: &str| {
            BigRational::from_str(x).map_err(|e| Error::Parse(format!("bad rational {x:?}: {e}")))
        };
        let re = parse(re)?;
        let mut im_val = parse(&im[1..])?;
        if im.starts_with('-') {
            im_val = -im_val;
        }
        Ok(Self::new(re, im_val))
    }
}

impl Serialize for GaussRational {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for GaussRational {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

pub fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn text_round_trip() {
        for g in [
            GaussRational::from_ints(3, -2),
            GaussRational::new(rat(-1, 2), rat(5, 7)),
            GaussRational::zero(),
        ] {
            let s = g.to_string();
            assert_eq!(s.parse::<GaussRational>().unwrap(), g, "{s}");
        }
        assert_eq!(GaussRational::from_ints(3, -2).to_string(), "3-2i");
    }

    #[test]
    fn inverse() {
        let g = GaussRational::from_ints(1, 1);
        assert!(g.mul(&g.inv().unwrap()).is_one());
        assert_eq!(GaussRational::zero().inv(), Err(Error::DivisionByZero));
    }
}
