use std::fmt;

use num_complex::Complex64;
use num_rational::BigRational;

use super::field::Field;
use super::gauss::GaussRational;
use crate::error::{Error, Result};

/// Laurent polynomial in `t` with Gaussian-rational coefficients.
///
/// `coeffs[k]` is the coefficient of `t^(low + k)`. Both ends are trimmed, so the
/// representation is canonical; the zero polynomial has no coefficients and `low = 0`.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Laurent {
    low: i64,
    coeffs: Vec<GaussRational>,
}

impl Laurent {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: GaussRational) -> Self {
        Self::from_coeffs(0, vec![c])
    }

    pub fn one() -> Self {
        Self::constant(GaussRational::one())
    }

    pub fn monomial(c: GaussRational, e: i64) -> Self {
        Self::from_coeffs(e, vec![c])
    }

    pub fn from_coeffs(low: i64, mut coeffs: Vec<GaussRational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        let lead_zeros = coeffs.iter().take_while(|c| c.is_zero()).count();
        if lead_zeros == coeffs.len() {
            return Self::zero();
        }
        coeffs.drain(..lead_zeros);
        Self { low: low + lead_zeros as i64, coeffs }
    }

    /// Builds from `(exponent, coefficient)` pairs; repeated exponents accumulate.
    pub fn from_terms<I: IntoIterator<Item = (i64, GaussRational)>>(terms: I) -> Self {
        let terms: Vec<_> = terms.into_iter().collect();
        if terms.is_empty() {
            return Self::zero();
        }
        let lo = terms.iter().map(|t| t.0).min().unwrap();
        let hi = terms.iter().map(|t| t.0).max().unwrap();
        let mut coeffs = vec![GaussRational::zero(); (hi - lo + 1) as usize];
        for (e, c) in terms {
            coeffs[(e - lo) as usize].add_assign(&c);
        }
        Self::from_coeffs(lo, coeffs)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.low == 0 && self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    pub fn is_monomial(&self) -> bool {
        self.coeffs.len() == 1
    }

    pub fn low(&self) -> i64 {
        self.low
    }

    pub fn high(&self) -> i64 {
        self.low + self.coeffs.len() as i64 - 1
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &GaussRational)> {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(move |(k, c)| (self.low + k as i64, c))
    }

    pub fn coeff(&self, e: i64) -> GaussRational {
        let k = e - self.low;
        if k < 0 || k >= self.coeffs.len() as i64 {
            GaussRational::zero()
        } else {
            self.coeffs[k as usize].clone()
        }
    }

    pub fn leading(&self) -> &GaussRational {
        self.coeffs.last().expect("leading coefficient of zero polynomial")
    }

    pub fn shift(&self, e: i64) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        Self { low: self.low + e, coeffs: self.coeffs.clone() }
    }

    /// Same coefficients with the lowest exponent moved to zero.
    pub fn unshifted(&self) -> Self {
        self.shift(-self.low)
    }

    pub fn scale(&self, c: &GaussRational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self::from_coeffs(self.low, self.coeffs.iter().map(|x| x.mul(c)).collect())
    }

    pub fn add(&self, rhs: &Self) -> Self {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        let lo = self.low.min(rhs.low);
        let hi = self.high().max(rhs.high());
        let mut coeffs = vec![GaussRational::zero(); (hi - lo + 1) as usize];
        for (k, c) in self.coeffs.iter().enumerate() {
            coeffs[(self.low - lo) as usize + k] = c.clone();
        }
        for (k, c) in rhs.coeffs.iter().enumerate() {
            let slot = &mut coeffs[(rhs.low - lo) as usize + k];
            *slot = Field::add(slot, c);
        }
        Self::from_coeffs(lo, coeffs)
    }

    pub fn neg(&self) -> Self {
        Self { low: self.low, coeffs: self.coeffs.iter().map(|c| c.neg()).collect() }
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![GaussRational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (a, x) in self.coeffs.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (b, y) in rhs.coeffs.iter().enumerate() {
                if !y.is_zero() {
                    coeffs[a + b].add_assign(&x.mul(y));
                }
            }
        }
        Self::from_coeffs(self.low + rhs.low, coeffs)
    }

    /// Conjugates coefficients; `t` is fixed.
    pub fn conj(&self) -> Self {
        Self { low: self.low, coeffs: self.coeffs.iter().map(|c| c.conj()).collect() }
    }

    /// Polynomial division with remainder, treating both operands as polynomials in
    /// `t` after moving their lowest exponents to zero. Returns the quotient and
    /// remainder of `self.unshifted() / d.unshifted()`.
    pub fn poly_divrem(&self, d: &Self) -> Result<(Self, Self)> {
        if d.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let mut rem: Vec<GaussRational> = self.unshifted().coeffs;
        let dc = &d.coeffs;
        if rem.len() < dc.len() {
            return Ok((Self::zero(), Self::from_coeffs(0, rem)));
        }
        let lead_inv = d.leading().inv()?;
        let mut quot = vec![GaussRational::zero(); rem.len() - dc.len() + 1];
        for k in (0..quot.len()).rev() {
            let top = &rem[k + dc.len() - 1];
            if top.is_zero() {
                continue;
            }
            let c = top.mul(&lead_inv);
            for (j, dj) in dc.iter().enumerate() {
                if !dj.is_zero() {
                    rem[k + j] = rem[k + j].sub(&c.mul(dj));
                }
            }
            quot[k] = c;
        }
        Ok((Self::from_coeffs(0, quot), Self::from_coeffs(0, rem)))
    }

    /// Exact quotient `self / d` in the Laurent ring, if it exists.
    pub fn exact_div(&self, d: &Self) -> Result<Option<Self>> {
        if self.is_zero() {
            return Ok(Some(Self::zero()));
        }
        let (q, r) = self.poly_divrem(d)?;
        if !r.is_zero() {
            return Ok(None);
        }
        Ok(Some(q.shift(self.low - d.low)))
    }

    /// Monic gcd of the polynomial parts (lowest exponents stripped).
    pub fn poly_gcd(&self, other: &Self) -> Result<Self> {
        let mut a = self.unshifted();
        let mut b = other.unshifted();
        if a.len() < b.len() {
            std::mem::swap(&mut a, &mut b);
        }
        while !b.is_zero() {
            let (_, r) = a.poly_divrem(&b)?;
            let r = if r.is_zero() { r } else { r.make_monic()? };
            a = b;
            b = r;
        }
        if a.is_zero() {
            return Ok(a);
        }
        a.make_monic()
    }

    pub fn make_monic(&self) -> Result<Self> {
        let inv = self.leading().inv()?;
        Ok(self.scale(&inv))
    }

    pub fn eval_exact(&self, t: &BigRational) -> GaussRational {
        if self.is_zero() {
            return GaussRational::zero();
        }
        let tq = GaussRational::real(t.clone());
        let mut acc = GaussRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(&tq).add(c);
        }
        let base = GaussRational::real(t.clone());
        acc.mul(&base.powi(self.low).expect("evaluation at t = 0 of a negative power"))
    }

    /// Horner evaluation at positive real `t` with a running error bound.
    ///
    /// Returns `(value, bound)` with `|computed - exact| <= bound`, where `exact` is the
    /// value at the real number `t` is meant to approximate to within one ulp.
    pub fn eval_f64(&self, t: f64) -> (Complex64, f64) {
        if self.is_zero() {
            return (Complex64::new(0.0, 0.0), 0.0);
        }
        let mut acc = Complex64::new(0.0, 0.0);
        let mut magnitude = 0.0f64;
        for c in self.coeffs.iter().rev() {
            acc = acc * t + c.to_complex64();
            magnitude = magnitude * t + c.abs_bound();
        }
        let scale = t.powi(self.low as i32);
        let value = acc * scale;
        let n = (self.coeffs.len() as f64) + (self.low.unsigned_abs() as f64) + 2.0;
        let bound = 4.0 * n * f64::EPSILON * magnitude * scale;
        (value, bound)
    }

    pub fn has_integer_coeffs(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_gaussian_integer())
    }
}

impl fmt::Display for Laurent {
    /// `(a+bi) t^k + ...` in increasing exponent order; `0` for the zero polynomial.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in self.terms() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "({c}) t^{e}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Laurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl std::str::FromStr for Laurent {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "0" {
            return Ok(Self::zero());
        }
        let mut terms = Vec::new();
        for part in s.split(" + ") {
            let part = part.trim();
            let close = part
                .find(')')
                .ok_or_else(|| Error::Parse(format!("bad term {part:?}")))?;
            if !part.starts_with('(') {
                return Err(Error::Parse(format!("bad term {part:?}")));
            }
            let c: GaussRational = part[1..close].parse()?;
            let exp_txt = part[close + 1..]
                .trim()
                .strip_prefix("t^")
                .ok_or_else(|| Error::Parse(format!("missing exponent in {part:?}")))?;
            let e: i64 = exp_txt
                .parse()
                .map_err(|_| Error::Parse(format!("bad exponent in {part:?}")))?;
            terms.push((e, c));
        }
        Ok(Self::from_terms(terms))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lp(low: i64, cs: &[i64]) -> Laurent {
        Laurent::from_coeffs(low, cs.iter().map(|&c| GaussRational::from_ints(c, 0)).collect())
    }

    #[test]
    fn trims_and_multiplies() {
        let a = lp(-1, &[0, 1, 1, 0]);
        assert_eq!(a.low(), 0);
        assert_eq!(a.high(), 1);
        let sq = a.mul(&a);
        assert_eq!(sq, lp(0, &[1, 2, 1]));
    }

    #[test]
    fn gcd_and_division() {
        let a = lp(0, &[-1, 0, 1]);
        let b = lp(0, &[-1, 1]);
        assert_eq!(a.poly_gcd(&b).unwrap(), b);
        assert_eq!(a.exact_div(&b).unwrap(), Some(lp(0, &[1, 1])));
        assert_eq!(a.exact_div(&lp(0, &[1, 1, 1])).unwrap(), None);
    }

    #[test]
    fn text_round_trip() {
        let p = Laurent::from_terms([
            (-3, GaussRational::from_ints(2, -1)),
            (4, GaussRational::new(super::super::gauss::rat(1, 3), num_traits::Zero::zero())),
        ]);
        let s = p.to_string();
        assert_eq!(s.parse::<Laurent>().unwrap(), p);
    }
}
