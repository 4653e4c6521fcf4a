//! Thin wrappers over `rustfft` for the lattice transforms.
//!
//! Forward transforms compute `Σ_j x_j e^{-2πi jk/n}`, inverse transforms the
//! unnormalized `Σ_k X_k e^{+2πi jk/n}`.

use std::sync::Arc;

use ndarray::{Array2, Axis};
use num_complex::Complex;
use rustfft::{Fft, FftPlanner};

use crate::scalar::Real;

pub(crate) struct Dft<T: Real> {
    forward: Arc<dyn Fft<T>>,
    inverse: Arc<dyn Fft<T>>,
    n: usize,
}

impl<T: Real> Dft<T> {
    pub fn new(n: usize) -> Self {
        let mut planner = FftPlanner::new();
        Dft {
            forward: planner.plan_fft_forward(n),
            inverse: planner.plan_fft_inverse(n),
            n,
        }
    }

    pub fn forward(&self, buf: &mut [Complex<T>]) {
        debug_assert_eq!(buf.len(), self.n);
        self.forward.process(buf);
    }

    pub fn inverse(&self, buf: &mut [Complex<T>]) {
        debug_assert_eq!(buf.len(), self.n);
        self.inverse.process(buf);
    }

    /// Apply `forward` (or `inverse`) to every lane along `axis`.
    pub fn along(&self, a: &mut Array2<Complex<T>>, axis: usize, forward: bool) {
        let mut buf = vec![Complex::new(T::zero(), T::zero()); self.n];
        for mut lane in a.lanes_mut(Axis(axis)) {
            for (b, v) in buf.iter_mut().zip(lane.iter()) {
                *b = *v;
            }
            if forward {
                self.forward(&mut buf);
            } else {
                self.inverse(&mut buf);
            }
            for (v, b) in lane.iter_mut().zip(buf.iter()) {
                *v = *b;
            }
        }
    }
}
