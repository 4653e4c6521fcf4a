//! Reproducible random inputs.
//!
//! All randomness flows through [`LabRng`], a SplitMix64 stream (Steele, Lea &
//! Flood 2014) with a fixed seed. `split` derives an independent child stream
//! from the next output, so cells of an experiment can draw in any order.

use ndarray::{Array1, Array2};
use num_complex::Complex;
use rand::{RngCore, SeedableRng};
use rand_distr::{Distribution, StandardNormal};
use rand_xoshiro::SplitMix64;

use crate::grid::GridSpec;
use crate::operator::OperatorMatrix;
use crate::phase::PhaseFn;
use crate::scalar::Real;
use crate::signal::Signal;

#[derive(Clone, Debug)]
pub struct LabRng(SplitMix64);

impl LabRng {
    pub fn new(seed: u64) -> Self {
        LabRng(SplitMix64::seed_from_u64(seed))
    }

    pub fn next_u64(&mut self) -> u64 {
        self.0.next_u64()
    }

    pub fn split(&mut self) -> LabRng {
        LabRng::new(self.next_u64())
    }

    /// Child stream keyed by a label; does not advance `self`.
    pub fn fork(&self, key: u64) -> LabRng {
        let mut probe = self.0.clone();
        LabRng::new(probe.next_u64() ^ key.wrapping_mul(0x9E37_79B9_7F4A_7C15))
    }

    pub fn normal(&mut self) -> f64 {
        StandardNormal.sample(&mut self.0)
    }

    pub fn uniform(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    pub fn complex_normal<T: Real>(&mut self) -> Complex<T> {
        let re = self.normal();
        let im = self.normal();
        Complex::new(T::of(re), T::of(im))
    }
}

/// Unit-norm signal with i.i.d. complex Gaussian entries.
pub fn random_signal<T: Real>(grid: GridSpec, rng: &mut LabRng) -> Signal<T> {
    let v = Array1::from_shape_fn(grid.n(), |_| rng.complex_normal());
    Signal::new(grid, v)
        .expect("finite")
        .normalized()
        .expect("nonzero")
}

/// Operator with i.i.d. complex Gaussian entries, scaled to unit HS norm.
pub fn random_operator<T: Real>(grid: GridSpec, rng: &mut LabRng) -> OperatorMatrix<T> {
    let n = grid.n();
    let e = Array2::from_shape_fn((n, n), |_| rng.complex_normal());
    let op = OperatorMatrix::new(grid, e).expect("finite");
    let s = op.hs_norm();
    op.scale(Complex::new(T::one() / s, T::zero()))
}

/// Complex Gaussian phase-space function with entries of unit variance.
pub fn random_phase_fn<T: Real>(grid: GridSpec, rng: &mut LabRng) -> PhaseFn<T> {
    let n = grid.n();
    PhaseFn::new(
        grid,
        Array2::from_shape_fn((n, n), |_| rng.complex_normal()),
    )
    .expect("finite")
}

/// Real phase-space function with entries uniform in `[0, 1)`.
pub fn random_nonnegative_fn<T: Real>(grid: GridSpec, rng: &mut LabRng) -> PhaseFn<T> {
    let n = grid.n();
    PhaseFn::new(
        grid,
        Array2::from_shape_fn((n, n), |_| Complex::new(T::of(rng.uniform()), T::zero())),
    )
    .expect("finite")
}

/// Random positive semidefinite operator `B B*` with unit trace.
pub fn random_psd<T: Real>(grid: GridSpec, rng: &mut LabRng) -> OperatorMatrix<T> {
    let b = random_operator::<T>(grid, rng);
    let p = b.compose(&b.adjoint()).expect("same grid");
    let tr = p.trace();
    p.scale(Complex::new(T::one() / tr.re, T::zero()))
}
