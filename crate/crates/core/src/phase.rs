//! Functions on the phase-space lattice and the symplectic Fourier transform.

use std::fmt;
use std::str::FromStr;

use ndarray::Array2;
use num_complex::Complex;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fft::Dft;
use crate::grid::{GridSpec, PhasePoint};
use crate::scalar::{cabs, is_finite_c, rabs, Real};
use crate::signal::check_same;

/// Complex `n×n` array modelling a function on phase space.
///
/// Indexed `[m, k]` by storage slots; the point models `z = (m h, k h)`. Every
/// lattice point carries the quadrature weight `1/n`.
#[derive(Clone, Debug, PartialEq)]
pub struct PhaseFn<T: Real> {
    grid: GridSpec,
    values: Array2<Complex<T>>,
}

impl<T: Real> PhaseFn<T> {
    pub fn new(grid: GridSpec, values: Array2<Complex<T>>) -> Result<Self> {
        let n = grid.n();
        if values.dim() != (n, n) {
            return Err(Error::LengthMismatch {
                expected: n * n,
                got: values.len(),
            });
        }
        if let Some(p) = values.iter().position(|v| !is_finite_c(v)) {
            return Err(Error::NonFinite(p));
        }
        Ok(PhaseFn { grid, values })
    }

    pub(crate) fn from_raw(grid: GridSpec, values: Array2<Complex<T>>) -> Self {
        debug_assert_eq!(values.dim(), (grid.n(), grid.n()));
        PhaseFn { grid, values }
    }

    pub fn zeros(grid: GridSpec) -> Self {
        Self::constant(grid, Complex::new(T::zero(), T::zero()))
    }

    pub fn constant(grid: GridSpec, a: Complex<T>) -> Self {
        PhaseFn {
            grid,
            values: Array2::from_elem((grid.n(), grid.n()), a),
        }
    }

    /// Build from centered lattice indices `(m, k)`.
    pub fn from_indices(grid: GridSpec, f: impl Fn(i64, i64) -> Complex<T>) -> Self {
        let values = Array2::from_shape_fn((grid.n(), grid.n()), |(a, b)| {
            f(grid.center(a), grid.center(b))
        });
        PhaseFn { grid, values }
    }

    /// Sample `f(x, ω)` at lattice points.
    pub fn sample(grid: GridSpec, f: impl Fn(T, T) -> Complex<T>) -> Result<Self> {
        let values = Array2::from_shape_fn((grid.n(), grid.n()), |(a, b)| {
            f(grid.coordinate(a), grid.coordinate(b))
        });
        Self::new(grid, values)
    }

    pub fn grid(&self) -> GridSpec {
        self.grid
    }

    pub fn values(&self) -> &Array2<Complex<T>> {
        &self.values
    }

    pub fn into_values(self) -> Array2<Complex<T>> {
        self.values
    }

    pub fn at(&self, z: PhasePoint) -> Complex<T> {
        self.values[[self.grid.slot(z.m), self.grid.slot(z.k)]]
    }

    /// `∫ f dz ≈ (1/n) Σ f`.
    pub fn integral(&self) -> Complex<T> {
        self.values.iter().copied().sum::<Complex<T>>() * self.grid.cell::<T>()
    }

    /// Weighted inner product `(1/n) Σ f conj(g)`.
    pub fn inner(&self, other: &PhaseFn<T>) -> Complex<T> {
        self.values
            .iter()
            .zip(other.values.iter())
            .map(|(a, b)| a * b.conj())
            .sum::<Complex<T>>()
            * self.grid.cell::<T>()
    }

    pub fn norm_l1(&self) -> T {
        self.values.iter().map(|v| v.norm()).sum::<T>() * self.grid.cell::<T>()
    }

    pub fn norm_l2(&self) -> T {
        (self.values.iter().map(|v| v.norm_sqr()).sum::<T>() * self.grid.cell::<T>()).sqrt()
    }

    pub fn norm_sup(&self) -> T {
        self.values.iter().map(|v| cabs(*v)).fold(T::zero(), T::max)
    }

    pub fn min_abs(&self) -> T {
        self.values
            .iter()
            .map(|v| cabs(*v))
            .fold(T::infinity(), T::min)
    }

    pub fn map(&self, f: impl Fn(Complex<T>) -> Complex<T>) -> Self {
        PhaseFn {
            grid: self.grid,
            values: self.values.mapv(f),
        }
    }

    pub fn scale(&self, c: Complex<T>) -> Self {
        self.map(|v| v * c)
    }

    pub fn conj(&self) -> Self {
        self.map(|v| v.conj())
    }

    pub fn add(&self, other: &PhaseFn<T>) -> Result<Self> {
        check_same(self.grid, other.grid)?;
        Ok(PhaseFn {
            grid: self.grid,
            values: &self.values + &other.values,
        })
    }

    pub fn sub(&self, other: &PhaseFn<T>) -> Result<Self> {
        check_same(self.grid, other.grid)?;
        Ok(PhaseFn {
            grid: self.grid,
            values: &self.values - &other.values,
        })
    }

    /// Pointwise product.
    pub fn mul(&self, other: &PhaseFn<T>) -> Result<Self> {
        check_same(self.grid, other.grid)?;
        Ok(PhaseFn {
            grid: self.grid,
            values: &self.values * &other.values,
        })
    }

    pub fn add_constant(&self, a: Complex<T>) -> Self {
        self.map(|v| v + a)
    }

    /// Cyclic translate `w ↦ f(w − z)`.
    pub fn translate(&self, z: PhasePoint) -> Self {
        let g = self.grid;
        let values = Array2::from_shape_fn((g.n(), g.n()), |(a, b)| {
            self.values[[g.slot(g.center(a) - z.m), g.slot(g.center(b) - z.k)]]
        });
        PhaseFn { grid: g, values }
    }

    /// `z ↦ f(−z)`.
    pub fn reflect(&self) -> Self {
        let g = self.grid;
        let values = Array2::from_shape_fn((g.n(), g.n()), |(a, b)| {
            self.values[[g.slot(-g.center(a)), g.slot(-g.center(b))]]
        });
        PhaseFn { grid: g, values }
    }

    pub fn max_abs_diff(&self, other: &PhaseFn<T>) -> T {
        self.values
            .iter()
            .zip(other.values.iter())
            .map(|(a, b)| (a - b).norm())
            .fold(T::zero(), T::max)
    }

    /// Largest imaginary part in modulus.
    pub fn max_imag(&self) -> T {
        self.values
            .iter()
            .map(|v| rabs(v.im))
            .fold(T::zero(), T::max)
    }

    /// Values in centered row-major order (`m` outer, `k` inner).
    pub fn centered_values(&self) -> Vec<Complex<T>> {
        let g = self.grid;
        g.centered_slots()
            .flat_map(|a| g.centered_slots().map(move |b| self.values[[a, b]]))
            .collect()
    }
}

/// `(1/n) Σ_{m',k'} f(m',k') e^{-2πi (k m' − k' m)/n}`; its own inverse.
pub fn symplectic_fourier<T: Real>(f: &PhaseFn<T>) -> PhaseFn<T> {
    let g = f.grid;
    let n = g.n();
    let dft = Dft::<T>::new(n);
    let mut a = f.values.clone();
    // forward over m' (axis 0), unnormalized inverse over k' (axis 1)
    dft.along(&mut a, 0, true);
    dft.along(&mut a, 1, false);
    let inv_n = T::one() / T::of(n as f64);
    let out = a.t().mapv(|v| v * inv_n);
    PhaseFn {
        grid: g,
        values: out,
    }
}

/// Value `n` at the origin, zero elsewhere (so the integral is 1).
pub fn delta_mask<T: Real>(grid: GridSpec) -> PhaseFn<T> {
    let mut f = PhaseFn::zeros(grid);
    f.values[[0, 0]] = Complex::new(T::of(grid.n() as f64), T::zero());
    f
}

/// Mask functions on phase space.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum MaskKind {
    /// Constant `A = re + i im`.
    Constant { re: f64, im: f64 },
    /// `e^{iπ|z|²}`.
    Chirp,
    /// `e^{2πi σ(z₀, z)}` for the lattice point `z₀`.
    PlaneWave { m: i64, k: i64 },
    /// `2/|2τ−1| e^{2πi (2/(2τ−1)) x ω}` sampled at lattice points.
    ATau { tau: f64 },
    /// Indicator of `|z| ≤ r`.
    IndicatorDisk { r: f64 },
    /// Indicator of `|z| > r`.
    IndicatorDiskComplement { r: f64 },
    /// `e^{-π|z|²}`.
    GaussianEnv,
    /// Explicit table in centered row-major order, `[re, im]` per point.
    Custom { values: Vec<[f64; 2]> },
}

impl fmt::Display for MaskKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MaskKind::Constant { re, im } => write!(f, "constant:{re},{im}"),
            MaskKind::Chirp => write!(f, "chirp"),
            MaskKind::PlaneWave { m, k } => write!(f, "plane_wave:{m},{k}"),
            MaskKind::ATau { tau } => write!(f, "a_tau:{tau}"),
            MaskKind::IndicatorDisk { r } => write!(f, "indicator_disk:{r}"),
            MaskKind::IndicatorDiskComplement { r } => write!(f, "indicator_disk_complement:{r}"),
            MaskKind::GaussianEnv => write!(f, "gaussian_env"),
            MaskKind::Custom { values } => write!(f, "custom[{}]", values.len()),
        }
    }
}

impl FromStr for MaskKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (name, arg) = match s.split_once(':') {
            Some((a, b)) => (a.trim(), Some(b.trim())),
            None => (s.trim(), None),
        };
        let bad = || Error::Parse(format!("bad arguments in mask `{s}`"));
        let num = |a: &str| a.trim().parse::<f64>().map_err(|_| bad());
        let pair = |a: &str| -> Result<(f64, f64)> {
            let (x, y) = a.split_once(',').ok_or_else(bad)?;
            Ok((num(x)?, num(y)?))
        };
        match (name, arg) {
            ("chirp", None) => Ok(MaskKind::Chirp),
            ("gaussian_env", None) => Ok(MaskKind::GaussianEnv),
            ("constant", Some(a)) => {
                let (re, im) = if a.contains(',') {
                    pair(a)?
                } else {
                    (num(a)?, 0.0)
                };
                Ok(MaskKind::Constant { re, im })
            }
            ("plane_wave", Some(a)) => {
                let (m, k) = pair(a)?;
                if m.fract() != 0.0 || k.fract() != 0.0 {
                    return Err(bad());
                }
                Ok(MaskKind::PlaneWave {
                    m: m as i64,
                    k: k as i64,
                })
            }
            ("a_tau", Some(a)) => Ok(MaskKind::ATau { tau: num(a)? }),
            ("indicator_disk", Some(a)) => Ok(MaskKind::IndicatorDisk { r: num(a)? }),
            ("indicator_disk_complement", Some(a)) => {
                Ok(MaskKind::IndicatorDiskComplement { r: num(a)? })
            }
            _ => Err(Error::UnknownKind(s.to_string())),
        }
    }
}

fn check_radius(grid: GridSpec, r: f64) -> Result<()> {
    if !(r.is_finite() && r >= 0.0 && r <= grid.rho_max()) {
        return Err(Error::InvalidParameter(format!(
            "disk radius {r} outside [0, {}] for an {}-point grid",
            grid.rho_max(),
            grid.n()
        )));
    }
    Ok(())
}

/// Sample a mask at lattice points `z = (m h, k h)`.
pub fn mask<T: Real>(grid: GridSpec, kind: &MaskKind) -> Result<PhaseFn<T>> {
    let one = Complex::new(T::one(), T::zero());
    let zero = Complex::new(T::zero(), T::zero());
    let n = grid.n_i64();
    let radius2 = |m: i64, k: i64| (m * m + k * k) as f64 / n as f64;
    match kind {
        MaskKind::Constant { re, im } => Ok(PhaseFn::constant(
            grid,
            Complex::new(T::of(*re), T::of(*im)),
        )),
        // e^{iπ (m²+k²)/n}, reduced exactly mod 2n; n-periodic for even n
        MaskKind::Chirp => Ok(PhaseFn::from_indices(grid, |m, k| {
            grid.half_root(m * m + k * k)
        })),
        MaskKind::PlaneWave { m, k } => {
            let z0 = grid.point(*m, *k)?;
            Ok(PhaseFn::from_indices(grid, |m, k| {
                grid.root(grid.symplectic(z0, PhasePoint { m, k }))
            }))
        }
        MaskKind::ATau { tau } => {
            let tau = *tau;
            if !(tau > 0.0 && tau < 1.0) {
                return Err(Error::InvalidParameter(format!("τ = {tau} outside (0, 1)")));
            }
            if tau == 0.5 {
                return Err(Error::InvalidParameter(
                    "τ = 1/2 is the delta symbol; use delta_mask".into(),
                ));
            }
            let amp = 2.0 / (2.0 * tau - 1.0).abs();
            let rate = 2.0 / (2.0 * tau - 1.0);
            Ok(PhaseFn::from_indices(grid, |m, k| {
                // 2π rate x ω with x ω = m k / n
                let theta = 2.0 * std::f64::consts::PI * rate * (m * k) as f64 / n as f64;
                Complex::new(T::of(amp * theta.cos()), T::of(amp * theta.sin()))
            }))
        }
        MaskKind::IndicatorDisk { r } => {
            check_radius(grid, *r)?;
            let r2 = r * r + 1e-12;
            Ok(PhaseFn::from_indices(grid, |m, k| {
                if radius2(m, k) <= r2 {
                    one
                } else {
                    zero
                }
            }))
        }
        MaskKind::IndicatorDiskComplement { r } => {
            check_radius(grid, *r)?;
            let r2 = r * r + 1e-12;
            Ok(PhaseFn::from_indices(grid, |m, k| {
                if radius2(m, k) <= r2 {
                    zero
                } else {
                    one
                }
            }))
        }
        MaskKind::GaussianEnv => Ok(PhaseFn::from_indices(grid, |m, k| {
            Complex::new(
                T::of((-std::f64::consts::PI * radius2(m, k)).exp()),
                T::zero(),
            )
        })),
        MaskKind::Custom { values } => {
            let nn = grid.n() * grid.n();
            if values.len() != nn {
                return Err(Error::LengthMismatch {
                    expected: nn,
                    got: values.len(),
                });
            }
            let mut out = Array2::from_elem((grid.n(), grid.n()), zero);
            let mut it = values.iter();
            for a in grid.centered_slots() {
                for b in grid.centered_slots() {
                    let [re, im] = *it.next().expect("length checked");
                    out[[a, b]] = Complex::new(T::of(re), T::of(im));
                }
            }
            PhaseFn::new(grid, out)
        }
    }
}
