//! The centered lattice that models time, frequency and phase space.
//!
//! An `n`-point grid has step `h = 1/sqrt(n)`, so the time grid and the frequency
//! grid coincide as sets `{j h}` and `h^2 n = 1`. Values are stored in wrapped
//! (FFT) order: storage slot `s` holds centered index `s` for `s < n/2` and
//! `s - n` otherwise. Centered indices run over `-n/2 ..= n/2 - 1`.

use std::f64::consts::PI;

use num_complex::Complex;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::{cis, Real};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GridSpec {
    n: usize,
}

/// A lattice point `z = (m h, k h)` given by centered indices.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PhasePoint {
    pub m: i64,
    pub k: i64,
}

impl PhasePoint {
    pub const ORIGIN: PhasePoint = PhasePoint { m: 0, k: 0 };

    pub fn new(m: i64, k: i64) -> Self {
        PhasePoint { m, k }
    }
}

pub fn make_grid(n: usize) -> Result<GridSpec> {
    GridSpec::new(n)
}

impl GridSpec {
    pub const MIN_POINTS: usize = 8;

    pub fn new(n: usize) -> Result<Self> {
        if n < Self::MIN_POINTS || !n.is_multiple_of(2) {
            return Err(Error::InvalidGrid(n));
        }
        Ok(GridSpec { n })
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn n_i64(&self) -> i64 {
        self.n as i64
    }

    /// Lattice step `h = 1/sqrt(n)`.
    pub fn step<T: Real>(&self) -> T {
        T::one() / T::of(self.n as f64).sqrt()
    }

    /// Phase-space quadrature weight `h^2 = 1/n`.
    pub fn cell<T: Real>(&self) -> T {
        T::one() / T::of(self.n as f64)
    }

    /// The centered index `-n/2`, which is its own negative mod `n`.
    #[inline]
    pub fn nyquist(&self) -> i64 {
        -(self.n as i64) / 2
    }

    /// Storage slot → centered index.
    #[inline]
    pub fn center(&self, s: usize) -> i64 {
        let half = self.n / 2;
        if s < half {
            s as i64
        } else {
            s as i64 - self.n as i64
        }
    }

    /// Any integer → storage slot (reduction mod `n`).
    #[inline]
    pub fn slot(&self, j: i64) -> usize {
        j.rem_euclid(self.n as i64) as usize
    }

    /// Reduce an integer to the centered range.
    #[inline]
    pub fn wrap(&self, j: i64) -> i64 {
        self.center(self.slot(j))
    }

    pub fn contains(&self, j: i64) -> bool {
        let half = (self.n / 2) as i64;
        (-half..half).contains(&j)
    }

    pub fn point(&self, m: i64, k: i64) -> Result<PhasePoint> {
        if self.contains(m) && self.contains(k) {
            Ok(PhasePoint { m, k })
        } else {
            Err(Error::PointOutOfRange { m, k, n: self.n })
        }
    }

    /// Nearest lattice point to the continuous point `(x, ω)`, wrapped into range.
    pub fn nearest_point(&self, x: f64, omega: f64) -> PhasePoint {
        let s = (self.n as f64).sqrt();
        PhasePoint {
            m: self.wrap((x * s).round() as i64),
            k: self.wrap((omega * s).round() as i64),
        }
    }

    pub fn neg(&self, z: PhasePoint) -> PhasePoint {
        PhasePoint {
            m: self.wrap(-z.m),
            k: self.wrap(-z.k),
        }
    }

    pub fn add(&self, a: PhasePoint, b: PhasePoint) -> PhasePoint {
        PhasePoint {
            m: self.wrap(a.m + b.m),
            k: self.wrap(a.k + b.k),
        }
    }

    /// Centered iteration order `-n/2, …, n/2 - 1` as storage slots.
    pub fn centered_slots(&self) -> impl Iterator<Item = usize> + '_ {
        let half = (self.n / 2) as i64;
        (-half..half).map(move |j| self.slot(j))
    }

    /// Coordinate `j h` of a storage slot.
    pub fn coordinate<T: Real>(&self, s: usize) -> T {
        T::of_int(self.center(s)) * self.step::<T>()
    }

    /// `|z|` of the lattice point at storage slots `(a, b)`.
    pub fn radius<T: Real>(&self, a: usize, b: usize) -> T {
        let (m, k) = (self.center(a), self.center(b));
        (T::of_int(m * m + k * k) / T::of(self.n as f64)).sqrt()
    }

    /// Largest `|z|` in the centered fundamental domain (the corner `(-n/2, -n/2)`).
    pub fn rho_max(&self) -> f64 {
        (self.n as f64 / 2.0).sqrt()
    }

    /// `e^{2πi a/n}` for an integer `a`, evaluated after exact reduction mod `n`.
    pub fn root<T: Real>(&self, a: i64) -> Complex<T> {
        let r = a.rem_euclid(self.n as i64);
        cis(T::of(2.0 * PI * r as f64 / self.n as f64))
    }

    /// `e^{πi q/n}`, reduced exactly mod `2n`.
    pub fn half_root<T: Real>(&self, q: i64) -> Complex<T> {
        let two_n = 2 * self.n as i64;
        let r = q.rem_euclid(two_n);
        cis(T::of(PI * r as f64 / self.n as f64))
    }

    /// Integer branch of the product `m k` used for every `e^{±πi x ω}` factor.
    ///
    /// Equal to `m k` for centered indices, except on the Nyquist lines where
    /// `-|m| |k|` is used so that the value is invariant under `z → -z` mod `n`.
    /// The result is always `≡ m k (mod n)`.
    pub fn xw_product(&self, m: i64, k: i64) -> i64 {
        let (m, k) = (self.wrap(m), self.wrap(k));
        let nyq = self.nyquist();
        if m == nyq || k == nyq {
            -(m.abs() * k.abs())
        } else {
            m * k
        }
    }

    /// `σ(z, w) · n = k_z m_w − k_w m_z` (an integer).
    #[inline]
    pub fn symplectic(&self, z: PhasePoint, w: PhasePoint) -> i64 {
        z.k * w.m - w.k * z.m
    }
}
