//! Signals on the time grid and the window atoms used throughout.

use std::fmt;
use std::str::FromStr;

use ndarray::Array1;
use num_complex::Complex;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::grid::GridSpec;
use crate::rng::{random_signal, LabRng};
use crate::scalar::{is_finite_c, Real};

/// Complex `n`-vector modelling an `L²(ℝ)` function.
///
/// Entry at centered index `j` is `ψ(j h) √h`, so the plain ℓ² norm models the
/// `L²` norm. Storage is in wrapped order (see [`GridSpec`]).
#[derive(Clone, Debug, PartialEq)]
pub struct Signal<T: Real> {
    grid: GridSpec,
    values: Array1<Complex<T>>,
}

impl<T: Real> Signal<T> {
    pub fn new(grid: GridSpec, values: Array1<Complex<T>>) -> Result<Self> {
        if values.len() != grid.n() {
            return Err(Error::LengthMismatch {
                expected: grid.n(),
                got: values.len(),
            });
        }
        if let Some(p) = values.iter().position(|v| !is_finite_c(v)) {
            return Err(Error::NonFinite(p));
        }
        Ok(Signal { grid, values })
    }

    pub fn zeros(grid: GridSpec) -> Self {
        Signal {
            grid,
            values: Array1::from_elem(grid.n(), Complex::new(T::zero(), T::zero())),
        }
    }

    /// Unit vector at centered index `j`.
    pub fn basis(grid: GridSpec, j: i64) -> Self {
        let mut s = Self::zeros(grid);
        s.values[grid.slot(j)] = Complex::new(T::one(), T::zero());
        s
    }

    /// Sample `ψ` at `t = j h` with the `√h` convention.
    pub fn sample(grid: GridSpec, psi: impl Fn(T) -> Complex<T>) -> Result<Self> {
        let sqrt_h = grid.step::<T>().sqrt();
        let values = Array1::from_shape_fn(grid.n(), |s| psi(grid.coordinate::<T>(s)) * sqrt_h);
        Self::new(grid, values)
    }

    pub fn grid(&self) -> GridSpec {
        self.grid
    }

    /// Storage-order values.
    pub fn values(&self) -> &Array1<Complex<T>> {
        &self.values
    }

    /// Value at centered index `j` (reduced mod `n`).
    pub fn at(&self, j: i64) -> Complex<T> {
        self.values[self.grid.slot(j)]
    }

    pub fn norm_sqr(&self) -> T {
        self.values.iter().map(|v| v.norm_sqr()).sum()
    }

    pub fn norm(&self) -> T {
        self.norm_sqr().sqrt()
    }

    /// `⟨self, other⟩ = Σ self_j conj(other_j)` (linear in the first slot).
    pub fn inner(&self, other: &Signal<T>) -> Complex<T> {
        self.values
            .iter()
            .zip(other.values.iter())
            .map(|(a, b)| a * b.conj())
            .sum()
    }

    pub fn normalized(&self) -> Result<Self> {
        let nrm = self.norm();
        if nrm == T::zero() {
            return Err(Error::ZeroWindow);
        }
        Ok(self.scale(Complex::new(T::one() / nrm, T::zero())))
    }

    pub fn scale(&self, c: Complex<T>) -> Self {
        Signal {
            grid: self.grid,
            values: self.values.mapv(|v| v * c),
        }
    }

    pub fn add(&self, other: &Signal<T>) -> Result<Self> {
        check_same(self.grid, other.grid)?;
        Ok(Signal {
            grid: self.grid,
            values: &self.values + &other.values,
        })
    }

    pub fn sub(&self, other: &Signal<T>) -> Result<Self> {
        check_same(self.grid, other.grid)?;
        Ok(Signal {
            grid: self.grid,
            values: &self.values - &other.values,
        })
    }

    /// `ψ(-t)`.
    pub fn reflect(&self) -> Self {
        let g = self.grid;
        Signal {
            grid: g,
            values: Array1::from_shape_fn(g.n(), |s| self.at(-g.center(s))),
        }
    }

    pub fn max_abs_diff(&self, other: &Signal<T>) -> T {
        self.values
            .iter()
            .zip(other.values.iter())
            .map(|(a, b)| (a - b).norm())
            .fold(T::zero(), T::max)
    }

    /// Values in centered order `-n/2 … n/2-1`.
    pub fn centered_values(&self) -> Vec<Complex<T>> {
        self.grid.centered_slots().map(|s| self.values[s]).collect()
    }
}

pub(crate) fn check_same(a: GridSpec, b: GridSpec) -> Result<()> {
    if a != b {
        Err(Error::GridMismatch {
            left: a.n(),
            right: b.n(),
        })
    } else {
        Ok(())
    }
}

/// Window atoms.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum AtomKind {
    /// `2^{1/4} e^{-π t²}`.
    Gaussian,
    /// Hermite function of the given order, scaled to the `e^{-π t²}` family.
    Hermite { order: usize },
    /// `χ_{[0,∞)}(t) e^{-t}`.
    OnesidedExp,
    /// Indicator of `|t| ≤ width/2`.
    Box { width: f64 },
    /// I.i.d. complex Gaussian samples.
    Random { seed: u64 },
}

impl fmt::Display for AtomKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AtomKind::Gaussian => write!(f, "gaussian"),
            AtomKind::Hermite { order } => write!(f, "hermite:{order}"),
            AtomKind::OnesidedExp => write!(f, "onesided_exp"),
            AtomKind::Box { width } => write!(f, "box:{width}"),
            AtomKind::Random { seed } => write!(f, "random:{seed}"),
        }
    }
}

impl FromStr for AtomKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (name, arg) = match s.split_once(':') {
            Some((a, b)) => (a.trim(), Some(b.trim())),
            None => (s.trim(), None),
        };
        let bad = |what: &str| Error::Parse(format!("{what} in atom `{s}`"));
        match (name, arg) {
            ("gaussian", None) => Ok(AtomKind::Gaussian),
            ("onesided_exp", None) => Ok(AtomKind::OnesidedExp),
            ("hermite", Some(a)) => Ok(AtomKind::Hermite {
                order: a.parse().map_err(|_| bad("bad order"))?,
            }),
            ("box", Some(a)) => Ok(AtomKind::Box {
                width: a.parse().map_err(|_| bad("bad width"))?,
            }),
            ("random", Some(a)) => Ok(AtomKind::Random {
                seed: a.parse().map_err(|_| bad("bad seed"))?,
            }),
            _ => Err(Error::UnknownKind(s.to_string())),
        }
    }
}

/// Orthonormal Hermite functions `h_0 … h_order` at `t`, scaled so `h_0(t) = 2^{1/4} e^{-πt²}`.
fn hermite_function(order: usize, t: f64) -> f64 {
    use std::f64::consts::PI;
    let x = (2.0 * PI).sqrt() * t;
    let scale = (2.0 * PI).powf(0.25);
    let mut prev = 0.0;
    let mut cur = PI.powf(-0.25) * (-x * x / 2.0).exp();
    for j in 0..order {
        let jf = j as f64;
        let next = (2.0 / (jf + 1.0)).sqrt() * x * cur - (jf / (jf + 1.0)).sqrt() * prev;
        prev = cur;
        cur = next;
    }
    scale * cur
}

/// Sample a window atom and renormalize it to unit norm.
pub fn atom<T: Real>(grid: GridSpec, kind: &AtomKind) -> Result<Signal<T>> {
    let real = |f: fn(f64) -> f64| -> Result<Signal<T>> {
        Signal::sample(grid, |t: T| Complex::new(T::of(f(t.as_f64())), T::zero()))
    };
    let raw = match kind {
        AtomKind::Gaussian => real(|t| 2f64.powf(0.25) * (-std::f64::consts::PI * t * t).exp())?,
        AtomKind::Hermite { order } => {
            let order = *order;
            Signal::sample(grid, |t: T| {
                Complex::new(T::of(hermite_function(order, t.as_f64())), T::zero())
            })?
        }
        AtomKind::OnesidedExp => real(|t| if t >= 0.0 { (-t).exp() } else { 0.0 })?,
        AtomKind::Box { width } => {
            let w = *width;
            if !(w.is_finite() && w > 0.0) {
                return Err(Error::InvalidParameter(format!(
                    "box width {w} must be positive"
                )));
            }
            let s = Signal::sample(grid, |t: T| {
                let inside = t.as_f64().abs() <= w / 2.0 + 1e-12;
                Complex::new(if inside { T::one() } else { T::zero() }, T::zero())
            })?;
            if s.norm() == T::zero() {
                return Err(Error::InvalidParameter(format!(
                    "box width {w} contains no lattice point"
                )));
            }
            s
        }
        AtomKind::Random { seed } => return Ok(random_signal(grid, &mut LabRng::new(*seed))),
    };
    raw.normalized()
}
