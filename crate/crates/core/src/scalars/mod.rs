//! Exact scalars over Q(i)[t, t^-1] and linear algebra over their fraction field.

mod eval;
mod field;
mod gauss;
mod laurent;
mod linalg;
mod numeric;
mod scalar;
mod surd;

pub use eval::{evaluate, evaluate_exact, rational_root, Sample, SampleValue};
pub use field::Field;
pub use gauss::{rat, GaussRational};
pub use laurent::Laurent;
pub use linalg::{add_entry, axpy, scale_sparse, Echelon, Insert, Matrix, SparseVec};
pub use numeric::Numeric;
pub use scalar::Scalar;
pub use surd::{Radical, Surd};
