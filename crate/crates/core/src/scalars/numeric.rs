use num_complex::Complex64;

use super::eval::{evaluate, Sample};
use super::field::Field;
use super::gauss::GaussRational;
use super::scalar::Scalar;
use crate::error::Result;

/// Fields whose elements can be read as complex numbers at a sample point.
pub trait Numeric: Field {
    fn to_c64(&self, sample: &Sample) -> Result<Complex64>;
}

impl Numeric for Scalar {
    fn to_c64(&self, sample: &Sample) -> Result<Complex64> {
        Ok(evaluate(self, sample)?.to_complex64())
    }
}

/// Already specialized; the sample is ignored.
impl Numeric for GaussRational {
    fn to_c64(&self, _sample: &Sample) -> Result<Complex64> {
        Ok(self.to_complex64())
    }
}
