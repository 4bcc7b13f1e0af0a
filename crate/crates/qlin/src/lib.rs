//! Exact linear algebra over the rationals.
//!
//! [`Q`] is the scalar type used everywhere; [`Matrix`] and [`Span`] are
//! generic over [`Field`] so small prime fields can be swapped in.

mod field;
mod matrix;
mod scalar;
mod span;

pub use field::{Field, Fp};
pub use matrix::{mat_inverse, mat_nullspace, mat_rank, mat_solve, Affine, Matrix};
pub use scalar::{ParseQError, Q};
pub use span::Span;

/// Shorthand for building a scalar from an integer.
pub fn q(v: i64) -> Q {
    Q::int(v)
}
