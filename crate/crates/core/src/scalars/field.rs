use std::fmt;

use num_rational::BigRational;

use crate::error::Result;

/// Exact field arithmetic shared by the symbolic scalars and their specializations
/// at a sample point.
pub trait Field: Clone + PartialEq + fmt::Debug + Send + Sync + 'static {
    fn zero() -> Self;
    fn one() -> Self;
    fn imag_unit() -> Self;
    fn from_int(n: i64) -> Self;
    fn from_rational(r: &BigRational) -> Self;

    fn is_zero(&self) -> bool;
    fn add(&self, rhs: &Self) -> Self;
    fn sub(&self, rhs: &Self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    fn neg(&self) -> Self;
    fn inv(&self) -> Result<Self>;
    /// Complex conjugation; fixes the deformation parameter.
    fn conj(&self) -> Self;

    /// Rough size of the element, used to pick cheap pivots.
    fn cost(&self) -> usize {
        1
    }

    fn is_one(&self) -> bool {
        self.sub(&Self::one()).is_zero()
    }

    fn div(&self, rhs: &Self) -> Result<Self> {
        Ok(self.mul(&rhs.inv()?))
    }

    /// Division known to be exact in the underlying polynomial ring.
    fn div_exact(&self, rhs: &Self) -> Result<Self> {
        self.div(rhs)
    }

    fn powi(&self, e: i64) -> Result<Self> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let mut acc = Self::one();
        let mut sq = base;
        let mut n = e.unsigned_abs();
        while n > 0 {
            if n & 1 == 1 {
                acc = acc.mul(&sq);
            }
            n >>= 1;
            if n > 0 {
                sq = sq.mul(&sq);
            }
        }
        Ok(acc)
    }

    fn add_assign(&mut self, rhs: &Self) {
        *self = Field::add(self, rhs);
    }
}
