use std::fmt;
use std::str::FromStr;

use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use super::field::Field;
use super::gauss::GaussRational;
use super::laurent::Laurent;
use crate::error::{Error, Result};

/// Element of the fraction field of Q(i)[t, t^-1].
///
/// Canonical form: the denominator is an ordinary polynomial with nonzero constant
/// term, monic, and coprime to the numerator. Powers of `t` live in the numerator.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Scalar {
    num: Laurent,
    den: Laurent,
}

impl Scalar {
    /// Builds `num / den` and brings it to canonical form.
    pub fn new(num: Laurent, den: Laurent) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::normalize_parts(num, den))
    }

    fn normalize_parts(num: Laurent, den: Laurent) -> Self {
        if num.is_zero() {
            return Self::zero();
        }
        let num = num.shift(-den.low());
        let den = den.unshifted();
        if den.is_monomial() {
            let inv = den.leading().inv().expect("nonzero leading coefficient");
            return Self { num: num.scale(&inv), den: Laurent::one() };
        }
        let g = num.poly_gcd(&den).expect("nonzero gcd operands");
        let (num, den) = if g.is_one() {
            (num, den)
        } else {
            let n = num.exact_div(&g).unwrap().expect("gcd divides numerator");
            let d = den.exact_div(&g).unwrap().expect("gcd divides denominator");
            (n.shift(g.low()), d.shift(g.low()))
        };
        let num = num.shift(-den.low());
        let den = den.unshifted();
        let inv = den.leading().inv().expect("nonzero leading coefficient");
        Self { num: num.scale(&inv), den: den.scale(&inv) }
    }

    /// Re-canonicalizes; a no-op on values built through the public API.
    pub fn normalize(&self) -> Self {
        Self::normalize_parts(self.num.clone(), self.den.clone())
    }

    pub fn from_laurent(num: Laurent) -> Self {
        Self { num, den: Laurent::one() }
    }

    pub fn from_gauss(c: GaussRational) -> Self {
        Self::from_laurent(Laurent::constant(c))
    }

    /// `t^e`.
    pub fn t_pow(e: i64) -> Self {
        Self::from_laurent(Laurent::monomial(GaussRational::one(), e))
    }

    pub fn numerator(&self) -> &Laurent {
        &self.num
    }

    pub fn denominator(&self) -> &Laurent {
        &self.den
    }

    pub fn is_laurent(&self) -> bool {
        self.den.is_one()
    }

    /// The underlying Laurent polynomial, if the denominator is trivial.
    pub fn as_laurent(&self) -> Option<&Laurent> {
        self.is_laurent().then_some(&self.num)
    }

    /// Substitutes `t -> t^-1`. Used for the bar involution `q -> q^-1`.
    pub fn invert_t(&self) -> Self {
        let flip = |p: &Laurent| Laurent::from_terms(p.terms().map(|(e, c)| (-e, c.clone())));
        Self::normalize_parts(flip(&self.num), flip(&self.den))
    }

    /// Substitutes an exact rational value for `t`.
    pub fn eval_at(&self, t: &BigRational) -> Result<GaussRational> {
        let d = self.den.eval_exact(t);
        if d.is_zero() {
            return Err(Error::PoleAtSample(format!("{self} at t = {t}")));
        }
        self.num.eval_exact(t).div(&d)
    }

    /// `[n]_{t^k} = (t^{kn} - t^{-kn}) / (t^k - t^{-k})`, a Laurent polynomial.
    pub fn quantum_int(n: i64, k: i64) -> Self {
        let sign = if n < 0 { -1 } else { 1 };
        let n = n.abs();
        let terms = (0..n).map(|j| (k * (n - 1 - 2 * j), GaussRational::from_int(sign)));
        Self::from_laurent(Laurent::from_terms(terms))
    }

    /// Substitutes `t -> 1`; `None` if the denominator vanishes there.
    pub fn at_one(&self) -> Option<GaussRational> {
        let one = BigRational::from_integer(1.into());
        let d = self.den.eval_exact(&one);
        if d.is_zero() {
            return None;
        }
        Some(self.num.eval_exact(&one).div(&d).unwrap())
    }
}

impl Field for Scalar {
    fn zero() -> Self {
        Self { num: Laurent::zero(), den: Laurent::one() }
    }
    fn one() -> Self {
        Self::from_laurent(Laurent::one())
    }
    fn imag_unit() -> Self {
        Self::from_gauss(GaussRational::imag_unit())
    }
    fn from_int(n: i64) -> Self {
        Self::from_gauss(GaussRational::from_int(n))
    }
    fn from_rational(r: &BigRational) -> Self {
        Self::from_gauss(GaussRational::from_rational(r))
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
    fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    fn add(&self, rhs: &Self) -> Self {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        if self.den.is_one() && rhs.den.is_one() {
            return Self::from_laurent(self.num.add(&rhs.num));
        }
        if self.den == rhs.den {
            return Self::normalize_parts(self.num.add(&rhs.num), self.den.clone());
        }
        Self::normalize_parts(
            self.num.mul(&rhs.den).add(&rhs.num.mul(&self.den)),
            self.den.mul(&rhs.den),
        )
    }

    fn sub(&self, rhs: &Self) -> Self {
        Field::add(self, &Field::neg(rhs))
    }

    fn mul(&self, rhs: &Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return Self::zero();
        }
        if self.den.is_one() && rhs.den.is_one() {
            return Self::from_laurent(self.num.mul(&rhs.num));
        }
        Self::normalize_parts(self.num.mul(&rhs.num), self.den.mul(&rhs.den))
    }

    fn neg(&self) -> Self {
        Self { num: self.num.neg(), den: self.den.clone() }
    }

    fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::normalize_parts(self.den.clone(), self.num.clone()))
    }

    fn div(&self, rhs: &Self) -> Result<Self> {
        if rhs.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if self.is_zero() {
            return Ok(Self::zero());
        }
        Ok(Self::normalize_parts(self.num.mul(&rhs.den), self.den.mul(&rhs.num)))
    }

    fn div_exact(&self, rhs: &Self) -> Result<Self> {
        if rhs.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if self.den.is_one() && rhs.den.is_one() {
            if let Some(q) = self.num.exact_div(&rhs.num)? {
                return Ok(Self::from_laurent(q));
            }
        }
        Field::div(self, rhs)
    }

    fn conj(&self) -> Self {
        Self { num: self.num.conj(), den: self.den.conj() }
    }

    fn cost(&self) -> usize {
        self.num.len() + self.den.len()
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})/({})", self.num, self.den)
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl FromStr for Scalar {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let split = s
            .find(")/(")
            .ok_or_else(|| Error::Parse(format!("expected (num)/(den), got {s:?}")))?;
        let num_txt = s[..split]
            .strip_prefix('(')
            .ok_or_else(|| Error::Parse(format!("missing '(' in {s:?}")))?;
        let den_txt = s[split + 3..]
            .strip_suffix(')')
            .ok_or_else(|| Error::Parse(format!("missing ')' in {s:?}")))?;
        Scalar::new(num_txt.parse()?, den_txt.parse()?)
    }
}

impl Serialize for Scalar {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Scalar {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

impl std::ops::Add for &Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        Field::add(self, rhs)
    }
}

impl std::ops::Sub for &Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        Field::sub(self, rhs)
    }
}

impl std::ops::Mul for &Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        Field::mul(self, rhs)
    }
}

impl std::ops::Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Field::neg(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(low: i64, cs: &[i64]) -> Laurent {
        Laurent::from_coeffs(low, cs.iter().map(|&c| GaussRational::from_ints(c, 0)).collect())
    }

    #[test]
    fn cancels_common_factor() {
        let s = Scalar::new(poly(0, &[-1, 0, 1]), poly(0, &[-1, 1])).unwrap();
        assert_eq!(s, Scalar::from_laurent(poly(0, &[1, 1])));
        assert!(s.is_laurent());
    }

    #[test]
    fn zero_over_power() {
        let s = Scalar::new(Laurent::zero(), poly(3, &[1])).unwrap();
        assert!(s.is_zero());
        assert!(s.denominator().is_one());
    }

    #[test]
    fn unit_cancellation() {
        let i = GaussRational::from_ints(0, 1);
        let s = Scalar::new(Laurent::monomial(i.clone(), 1), Laurent::constant(i)).unwrap();
        assert_eq!(s, Scalar::t_pow(1));
    }

    #[test]
    fn zero_denominator() {
        assert!(matches!(Scalar::new(Laurent::one(), Laurent::zero()), Err(Error::DivisionByZero)));
    }

    #[test]
    fn text_round_trip() {
        let s = Scalar::new(poly(-2, &[3, 0, -1]), poly(0, &[2, 1, 5])).unwrap();
        let txt = s.to_string();
        assert_eq!(txt.parse::<Scalar>().unwrap(), s);
        assert_eq!(Scalar::zero().to_string().parse::<Scalar>().unwrap(), Scalar::zero());
    }

    #[test]
    fn invert_t_is_involution() {
        let s = Scalar::new(poly(-1, &[1, 2]), poly(0, &[1, 0, 3])).unwrap();
        assert_eq!(s.invert_t().invert_t(), s);
    }
}
