//! Scalar abstraction shared by every numerical routine in the crate.

use std::fmt::{Debug, Display};
use std::iter::Sum;

use num_complex::Complex;
use num_traits::{Float, FloatConst};
use rustfft::FftNum;

/// Real floating-point type the phase-space model can be instantiated over.
///
/// Implemented for `f32` and `f64`. All exact-identity tolerances quoted in the
/// documentation assume `f64`; `f32` instances are useful for quick sweeps.
pub trait Real: Float + FloatConst + FftNum + Default + Sum + Display + Debug + 'static {
    /// Lossy conversion from an `f64` literal.
    #[inline]
    fn of(x: f64) -> Self {
        <Self as num_traits::FromPrimitive>::from_f64(x).expect("finite literal")
    }

    /// Conversion from a (possibly negative) lattice integer.
    #[inline]
    fn of_int(x: i64) -> Self {
        <Self as num_traits::FromPrimitive>::from_i64(x).expect("integer fits")
    }

    #[inline]
    fn as_f64(self) -> f64 {
        num_traits::ToPrimitive::to_f64(&self).unwrap_or(f64::NAN)
    }
}

impl Real for f32 {}
impl Real for f64 {}

/// `e^{iθ}`.
#[inline]
pub fn cis<T: Real>(theta: T) -> Complex<T> {
    Complex::new(theta.cos(), theta.sin())
}

#[inline]
pub(crate) fn cabs<T: Real>(z: Complex<T>) -> T {
    z.norm()
}

#[inline]
pub(crate) fn rabs<T: Real>(x: T) -> T {
    Float::abs(x)
}

pub(crate) fn is_finite_c<T: Real>(z: &Complex<T>) -> bool {
    z.re.is_finite() && z.im.is_finite()
}

/// Pairwise (tree) summation; the summation order depends only on the length.
pub fn pairwise_sum<A, F>(items: &[A], zero: A, add: &F) -> A
where
    A: Clone,
    F: Fn(&A, &A) -> A,
{
    match items.len() {
        0 => zero,
        1 => items[0].clone(),
        len => {
            let (lo, hi) = items.split_at(len / 2);
            add(
                &pairwise_sum(lo, zero.clone(), add),
                &pairwise_sum(hi, zero, add),
            )
        }
    }
}
