use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive};
use serde::Serialize;

use super::field::Field;
use super::gauss::GaussRational;
use super::scalar::Scalar;
use crate::error::{Error, Result};

/// A specialization point `q = q0`, read through `t = q0^(1/m)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Sample {
    pub q0: BigRational,
    pub m: u32,
}

/// Value of a scalar at a sample point.
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum SampleValue {
    Exact { value: GaussRational },
    Approx { re: f64, im: f64, err: f64 },
}

impl SampleValue {
    /// True when the value is certainly nonzero.
    pub fn certainly_nonzero(&self) -> bool {
        match self {
            Self::Exact { value } => !value.is_zero(),
            Self::Approx { re, im, err } => Complex64::new(*re, *im).norm() > *err,
        }
    }

    pub fn to_complex64(&self) -> Complex64 {
        match self {
            Self::Exact { value } => value.to_complex64(),
            Self::Approx { re, im, .. } => Complex64::new(*re, *im),
        }
    }
}

/// Exact `m`-th root of a positive rational, if it is rational.
pub fn rational_root(q: &BigRational, m: u32) -> Option<BigRational> {
    if !q.is_positive() || m == 0 {
        return None;
    }
    let root = |n: &BigInt| {
        let r = n.nth_root(m);
        (r.pow(m) == *n).then_some(r)
    };
    Some(BigRational::new(root(q.numer())?, root(q.denom())?))
}

impl Sample {
    pub fn new(q0: BigRational, m: u32) -> Result<Self> {
        if !q0.is_positive() {
            return Err(Error::UsageError(format!("sample point {q0} is not positive")));
        }
        if m == 0 {
            return Err(Error::UsageError("root denominator must be positive".into()));
        }
        Ok(Self { q0, m })
    }

    pub fn exact_t(&self) -> Option<BigRational> {
        rational_root(&self.q0, self.m)
    }

    pub fn approx_t(&self) -> f64 {
        self.q0.to_f64().unwrap_or(f64::NAN).powf(1.0 / self.m as f64)
    }
}

/// Substitutes `t = q0^(1/m)` (positive real root).
///
/// Exact over Q(i) when the root is rational; otherwise evaluated in double precision
/// with an explicit error bound. A denominator that vanishes, or cannot be separated
/// from zero by the bound, is reported as a pole.
pub fn evaluate(s: &Scalar, sample: &Sample) -> Result<SampleValue> {
    if let Some(t) = sample.exact_t() {
        let d = s.denominator().eval_exact(&t);
        if d.is_zero() {
            return Err(Error::PoleAtSample(format!("{s} at q = {}", sample.q0)));
        }
        let n = s.numerator().eval_exact(&t);
        return Ok(SampleValue::Exact { value: n.div(&d)? });
    }
    let t = sample.approx_t();
    // one ulp of slack on t itself, propagated through the derivative bound below
    let (n, en) = s.numerator().eval_f64(t);
    let (d, ed) = s.denominator().eval_f64(t);
    let ed = ed + deriv_bound(s.denominator(), t) * t * f64::EPSILON;
    let en = en + deriv_bound(s.numerator(), t) * t * f64::EPSILON;
    if d.norm() <= ed {
        return Err(Error::PoleAtSample(format!("{s} at q = {}", sample.q0)));
    }
    let value = n / d;
    // |n/d - N/D| <= (en + |n/d| ed) / (|d| - ed)
    let err = (en + value.norm() * ed) / (d.norm() - ed);
    Ok(SampleValue::Approx { re: value.re, im: value.im, err: err * (1.0 + 4.0 * f64::EPSILON) })
}

fn deriv_bound(p: &super::laurent::Laurent, t: f64) -> f64 {
    p.terms()
        .map(|(e, c)| c.abs_bound() * (e.unsigned_abs() as f64) * t.powi(e as i32 - 1) * 1.01)
        .sum()
}

/// Evaluates a scalar that is known to be exactly specializable.
pub fn evaluate_exact(s: &Scalar, sample: &Sample) -> Result<GaussRational> {
    match evaluate(s, sample)? {
        SampleValue::Exact { value } => Ok(value),
        SampleValue::Approx { .. } => Err(Error::UsageError(format!(
            "q = {} has no rational {}-th root",
            sample.q0, sample.m
        ))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::gauss::rat;
    use crate::scalars::laurent::Laurent;

    fn t(e: i64) -> Scalar {
        Scalar::t_pow(e)
    }

    #[test]
    fn square_at_quarter() {
        let s = Sample::new(rat(1, 4), 2).unwrap();
        let v = evaluate(&t(2), &s).unwrap();
        assert_eq!(v, SampleValue::Exact { value: GaussRational::real(rat(1, 4)) });
    }

    #[test]
    fn pole() {
        let s = Sample::new(rat(1, 1), 1).unwrap();
        let x = Scalar::new(Laurent::one(), Laurent::from_terms([(0, GaussRational::from_ints(-1, 0)), (1, GaussRational::from_ints(1, 0))])).unwrap();
        assert!(matches!(evaluate(&x, &s), Err(Error::PoleAtSample(_))));
    }

    #[test]
    fn t_plus_inverse() {
        let s = Sample::new(rat(1, 2), 1).unwrap();
        let x = Field::add(&t(1), &t(-1));
        assert_eq!(evaluate_exact(&x, &s).unwrap(), GaussRational::real(rat(5, 2)));
    }

    #[test]
    fn irrational_root_is_bounded() {
        let s = Sample::new(rat(2, 1), 2).unwrap();
        let x = Field::mul(&t(1), &t(1));
        match evaluate(&x, &s).unwrap() {
            SampleValue::Approx { re, im, err } => {
                assert!((re - 2.0).abs() <= err);
                assert_eq!(im, 0.0);
                assert!(err < 1e-12);
            }
            other => panic!("expected approximate value, got {other:?}"),
        }
    }
}
