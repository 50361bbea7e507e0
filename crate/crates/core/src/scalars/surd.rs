use std::fmt;
use std::sync::Arc;

use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive};

use super::eval::{rational_root, Sample};
use super::field::Field;
use super::gauss::GaussRational;
use super::linalg::Matrix;
use super::numeric::Numeric;
use super::scalar::Scalar;
use crate::error::{Error, Result};

/// The field Q(i)(s) with `s^degree = r`, `s` the positive real root.
///
/// `r` is chosen so that `x^degree - r` is irreducible over Q(i), which makes the
/// quotient ring a field.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Radical {
    pub degree: u32,
    pub r: BigRational,
}

impl Radical {
    /// The extension containing `t = q0^(1/m)` for a sample point.
    pub fn for_sample(sample: &Sample) -> Self {
        let m = sample.m;
        for g in (1..=m).rev() {
            if !m.is_multiple_of(g) {
                continue;
            }
            if let Some(r) = rational_root(&sample.q0, g) {
                return Self { degree: m / g, r };
            }
        }
        Self { degree: m, r: sample.q0.clone() }
    }

    pub fn approx_root(&self) -> f64 {
        self.r.to_f64().unwrap_or(f64::NAN).powf(1.0 / self.degree as f64)
    }
}

/// Element of a [`Radical`] extension, stored as coefficients of `1, s, s^2, ...`.
///
/// Elements of Q(i) carry no extension so that `Field::zero()` and friends work
/// without context.
#[derive(Clone, PartialEq)]
pub struct Surd {
    ext: Option<Arc<Radical>>,
    c: Vec<GaussRational>,
}

impl Surd {
    fn build(ext: Option<Arc<Radical>>, mut c: Vec<GaussRational>) -> Self {
        while c.last().is_some_and(|x| x.is_zero()) {
            c.pop();
        }
        let ext = if c.len() > 1 { ext } else { None };
        Self { ext, c }
    }

    pub fn constant(x: GaussRational) -> Self {
        Self::build(None, vec![x])
    }

    /// `s^e`.
    pub fn root_pow(ext: &Arc<Radical>, e: i64) -> Self {
        let d = ext.degree as i64;
        let (quo, rem) = (e.div_euclid(d), e.rem_euclid(d));
        let mut c = vec![GaussRational::zero(); rem as usize + 1];
        let scale = if quo >= 0 {
            num_traits::pow(ext.r.clone(), quo as usize)
        } else {
            num_traits::pow(ext.r.recip(), (-quo) as usize)
        };
        c[rem as usize] = GaussRational::real(scale);
        Self::build(Some(ext.clone()), c)
    }

    /// Evaluates a symbolic scalar at `t = s`.
    pub fn from_scalar(x: &Scalar, ext: &Arc<Radical>) -> Result<Self> {
        let eval = |p: &super::laurent::Laurent| {
            let mut acc = Self::zero();
            for (e, c) in p.terms() {
                acc = Field::add(&acc, &Self::root_pow(ext, e).scale(c));
            }
            acc
        };
        let den = eval(x.denominator());
        if den.is_zero() {
            return Err(Error::PoleAtSample(format!("{x} at t^{} = {}", ext.degree, ext.r)));
        }
        eval(x.numerator()).div(&den)
    }

    fn scale(&self, x: &GaussRational) -> Self {
        Self::build(self.ext.clone(), self.c.iter().map(|y| y.mul(x)).collect())
    }

    pub fn as_gauss(&self) -> Option<GaussRational> {
        match self.c.len() {
            0 => Some(GaussRational::zero()),
            1 => Some(self.c[0].clone()),
            _ => None,
        }
    }

    fn joint(&self, rhs: &Self) -> Option<Arc<Radical>> {
        self.ext.clone().or_else(|| rhs.ext.clone())
    }

    pub fn to_complex64(&self) -> Complex64 {
        let s = self.ext.as_ref().map(|e| e.approx_root()).unwrap_or(0.0);
        let mut acc = Complex64::new(0.0, 0.0);
        let mut p = 1.0;
        for x in &self.c {
            acc += x.to_complex64() * p;
            p *= s;
        }
        acc
    }
}

impl Field for Surd {
    fn zero() -> Self {
        Self { ext: None, c: Vec::new() }
    }
    fn one() -> Self {
        Self::constant(GaussRational::one())
    }
    fn imag_unit() -> Self {
        Self::constant(GaussRational::imag_unit())
    }
    fn from_int(n: i64) -> Self {
        Self::constant(GaussRational::from_int(n))
    }
    fn from_rational(r: &BigRational) -> Self {
        Self::constant(GaussRational::from_rational(r))
    }
    fn is_zero(&self) -> bool {
        self.c.is_empty()
    }
    fn add(&self, rhs: &Self) -> Self {
        let n = self.c.len().max(rhs.c.len());
        let z = GaussRational::zero();
        let c = (0..n)
            .map(|k| self.c.get(k).unwrap_or(&z).add(rhs.c.get(k).unwrap_or(&z)))
            .collect();
        Self::build(self.joint(rhs), c)
    }
    fn sub(&self, rhs: &Self) -> Self {
        Field::add(self, &Field::neg(rhs))
    }
    fn mul(&self, rhs: &Self) -> Self {
        if self.c.is_empty() || rhs.c.is_empty() {
            return Self::zero();
        }
        let ext = self.joint(rhs);
        let Some(e) = ext.as_ref() else {
            return Self::constant(self.c[0].mul(&rhs.c[0]));
        };
        let d = e.degree as usize;
        let mut c = vec![GaussRational::zero(); d];
        let r = GaussRational::real(e.r.clone());
        for (a, x) in self.c.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (b, y) in rhs.c.iter().enumerate() {
                let p = x.mul(y);
                if a + b >= d {
                    c[a + b - d] = c[a + b - d].add(&p.mul(&r));
                } else {
                    c[a + b] = c[a + b].add(&p);
                }
            }
        }
        Self::build(ext, c)
    }
    fn neg(&self) -> Self {
        Self { ext: self.ext.clone(), c: self.c.iter().map(|x| x.neg()).collect() }
    }
    fn inv(&self) -> Result<Self> {
        if self.c.is_empty() {
            return Err(Error::DivisionByZero);
        }
        let Some(e) = self.ext.clone() else {
            return Ok(Self::constant(self.c[0].inv()?));
        };
        // solve (self * x) = 1 through the multiplication matrix
        let d = e.degree as usize;
        let mut m = Matrix::zeros(d, d);
        for j in 0..d {
            let col = self.mul(&Self::root_pow(&e, j as i64));
            for (i, x) in col.c.iter().enumerate() {
                m.set(i, j, x.clone());
            }
        }
        let mut rhs = vec![GaussRational::zero(); d];
        rhs[0] = GaussRational::one();
        let x = m
            .solve(&rhs)?
            .ok_or_else(|| Error::InternalConsistency(format!("x^{} - {} is reducible", e.degree, e.r)))?;
        Ok(Self::build(Some(e), x))
    }
    fn conj(&self) -> Self {
        Self { ext: self.ext.clone(), c: self.c.iter().map(|x| x.conj()).collect() }
    }
    fn cost(&self) -> usize {
        self.c.iter().map(|x| x.cost()).sum::<usize>().max(1)
    }
}

impl Numeric for Surd {
    fn to_c64(&self, _sample: &Sample) -> Result<Complex64> {
        Ok(self.to_complex64())
    }
}

impl fmt::Display for Surd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.c.is_empty() {
            return write!(f, "0+0i");
        }
        let mut first = true;
        for (k, x) in self.c.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match k {
                0 => write!(f, "({x})")?,
                _ => write!(f, "({x}) s^{k}")?,
            }
        }
        if let Some(e) = &self.ext {
            let sign = if e.r.is_negative() { "-" } else { "" };
            write!(f, " [s^{} = {sign}{}]", e.degree, e.r.abs())?;
        }
        Ok(())
    }
}

impl fmt::Debug for Surd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::rat;

    #[test]
    fn sqrt_half() {
        let ext = Arc::new(Radical::for_sample(&Sample::new(rat(1, 2), 2).unwrap()));
        assert_eq!(ext.degree, 2);
        let s = Surd::root_pow(&ext, 1);
        assert_eq!(s.mul(&s), Surd::from_rational(&rat(1, 2)));
        let inv = Field::add(&s, &Surd::one()).inv().unwrap();
        assert!(Field::add(&s, &Surd::one()).mul(&inv).is_one());
        assert!((s.to_complex64().re - 0.5f64.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn perfect_powers_reduce() {
        let ext = Radical::for_sample(&Sample::new(rat(1, 4), 4).unwrap());
        assert_eq!((ext.degree, ext.r.clone()), (2, rat(1, 2)));
        let ext = Radical::for_sample(&Sample::new(rat(1, 8), 3).unwrap());
        assert_eq!((ext.degree, ext.r.clone()), (1, rat(1, 2)));
    }

    #[test]
    fn scalar_evaluation_matches_float() {
        let ext = Arc::new(Radical::for_sample(&Sample::new(rat(2, 3), 3).unwrap()));
        let x: Scalar = "((1+0i) t^2 + (3+0i) t^-1)/((1+0i) t^0 + (1+0i) t^1)".parse().unwrap();
        let s = Surd::from_scalar(&x, &ext).unwrap();
        let t = (2.0f64 / 3.0).powf(1.0 / 3.0);
        let want = (t * t + 3.0 / t) / (1.0 + t);
        assert!((s.to_complex64().re - want).abs() < 1e-12);
    }
}
