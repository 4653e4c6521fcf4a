//! Short-time Fourier transforms, Gabor-space projections, Berezin
//! transforms and window diagnostics.

use ndarray::Array2;
use num_complex::Complex;

use crate::conv::conv_op_op;
use crate::error::{Error, Result};
use crate::fft::Dft;
use crate::grid::{GridSpec, PhasePoint};
use crate::linalg;
use crate::operator::{check_op, rank_one, OperatorMatrix};
use crate::phase::PhaseFn;
use crate::profile::{radial_sup, DecayProfile};
use crate::scalar::Real;
use crate::signal::{check_same, Signal};

/// Largest grid for which four-dimensional tables are materialized.
pub const STFT4_MAX_POINTS: usize = 32;

/// `V_φψ(m,k) = ⟨ψ, π(m,k)φ⟩`, indexed by storage slots.
#[derive(Clone, Debug, PartialEq)]
pub struct StftTable<T: Real> {
    grid: GridSpec,
    values: Array2<Complex<T>>,
}

impl<T: Real> StftTable<T> {
    pub fn from_phase_fn(f: PhaseFn<T>) -> Self {
        StftTable {
            grid: f.grid(),
            values: f.into_values(),
        }
    }

    pub fn to_phase_fn(&self) -> PhaseFn<T> {
        PhaseFn::from_raw(self.grid, self.values.clone())
    }

    pub fn zeros(grid: GridSpec) -> Self {
        Self::from_phase_fn(PhaseFn::zeros(grid))
    }

    pub fn grid(&self) -> GridSpec {
        self.grid
    }

    pub fn values(&self) -> &Array2<Complex<T>> {
        &self.values
    }

    pub fn at(&self, z: PhasePoint) -> Complex<T> {
        self.values[[self.grid.slot(z.m), self.grid.slot(z.k)]]
    }

    /// Pointwise multiplication by a phase-space function.
    pub fn multiply(&mut self, f: &PhaseFn<T>) -> Result<()> {
        check_same(self.grid, f.grid())?;
        self.values.zip_mut_with(f.values(), |a, b| *a = *a * b);
        Ok(())
    }

    /// Weighted energy `(1/n) Σ |V|²`.
    pub fn energy(&self) -> T {
        self.values.iter().map(|v| v.norm_sqr()).sum::<T>() * self.grid.cell::<T>()
    }

    /// Weighted inner product `(1/n) Σ F conj(G)`.
    pub fn inner(&self, other: &StftTable<T>) -> Complex<T> {
        self.to_phase_fn().inner(&other.to_phase_fn())
    }
}

fn nonzero_window<T: Real>(phi: &Signal<T>) -> Result<()> {
    if phi.norm_sqr() == T::zero() {
        Err(Error::ZeroWindow)
    } else {
        Ok(())
    }
}

fn unit_window<T: Real>(phi: &Signal<T>) -> Result<()> {
    nonzero_window(phi)?;
    let norm = phi.norm().as_f64();
    if (norm - 1.0).abs() > 1e-6 {
        return Err(Error::UnnormalizedWindow(norm));
    }
    Ok(())
}

/// `V_φψ(m,k) = Σ_j ψ_j conj(φ_{j−m}) e^{-2πi kj/n}`, one FFT per `m`.
pub fn stft<T: Real>(psi: &Signal<T>, phi: &Signal<T>) -> Result<StftTable<T>> {
    let g = psi.grid();
    check_same(g, phi.grid())?;
    nonzero_window(phi)?;
    let n = g.n();
    let dft = Dft::<T>::new(n);
    let (u, w) = (psi.values(), phi.values());
    let mut values = Array2::from_elem((n, n), Complex::new(T::zero(), T::zero()));
    let mut buf = vec![Complex::new(T::zero(), T::zero()); n];
    for a in 0..n {
        for (j, b) in buf.iter_mut().enumerate() {
            *b = u[j] * w[(j + n - a) % n].conj();
        }
        dft.forward(&mut buf);
        for (b, v) in buf.iter().enumerate() {
            values[[a, b]] = *v;
        }
    }
    Ok(StftTable { grid: g, values })
}

/// `V_φ* F = (1/n) Σ_z F(z) π(z)φ`.
pub fn synthesis<T: Real>(table: &StftTable<T>, phi: &Signal<T>) -> Result<Signal<T>> {
    let g = table.grid;
    check_same(g, phi.grid())?;
    nonzero_window(phi)?;
    let n = g.n();
    let dft = Dft::<T>::new(n);
    let inv_n = T::one() / T::of(n as f64);
    let w = phi.values();
    let mut out = vec![Complex::new(T::zero(), T::zero()); n];
    let mut buf = vec![Complex::new(T::zero(), T::zero()); n];
    for a in 0..n {
        for (b, x) in buf.iter_mut().enumerate() {
            *x = table.values[[a, b]];
        }
        dft.inverse(&mut buf);
        for (j, o) in out.iter_mut().enumerate() {
            *o = *o + w[(j + n - a) % n] * buf[j] * inv_n;
        }
    }
    Signal::new(g, out.into())
}

/// Orthogonal projection `V_φ V_φ*` onto the Gabor space of a unit window.
pub fn gabor_projection<T: Real>(table: &StftTable<T>, phi: &Signal<T>) -> Result<StftTable<T>> {
    stft(&synthesis(table, phi)?, phi)
}

/// Reproducing kernel `k_z(z') = ⟨π(z)φ, π(z')φ⟩ = V_φ(π(z)φ)(z')`.
pub fn reproducing_kernel<T: Real>(phi: &Signal<T>, z: PhasePoint) -> Result<StftTable<T>> {
    let shifted = crate::operator::tf_shift(phi.grid(), z)?.apply(phi)?;
    stft(&shifted, phi)
}

/// `𝔅T(z) = ⟨T π(z)φ, π(z)φ⟩` for a unit window.
///
/// For each `m` the diagonal sums `c_d = Σ_b conj(u_{b+d}) T[b+d, b] u_b` of
/// the shifted window `u` are transformed over `d`.
pub fn berezin<T: Real>(t: &OperatorMatrix<T>, phi: &Signal<T>) -> Result<PhaseFn<T>> {
    let g = t.grid();
    check_same(g, phi.grid())?;
    unit_window(phi)?;
    let n = g.n();
    let dft = Dft::<T>::new(n);
    let w = phi.values();
    let e = t.entries();
    let mut values = Array2::from_elem((n, n), Complex::new(T::zero(), T::zero()));
    let mut u = vec![Complex::new(T::zero(), T::zero()); n];
    let mut buf = vec![Complex::new(T::zero(), T::zero()); n];
    for a in 0..n {
        for (j, x) in u.iter_mut().enumerate() {
            *x = w[(j + n - a) % n];
        }
        for (d, x) in buf.iter_mut().enumerate() {
            let mut acc = Complex::new(T::zero(), T::zero());
            for b in 0..n {
                let r = (b + d) % n;
                acc = acc + u[r].conj() * e[[r, b]] * u[b];
            }
            *x = acc;
        }
        dft.forward(&mut buf);
        for (b, v) in buf.iter().enumerate() {
            values[[a, b]] = *v;
        }
    }
    Ok(PhaseFn::from_raw(g, values))
}

/// Berezin transform through the operator convolution `T⋆(φ̌⊗φ̌)`.
pub fn berezin_conv<T: Real>(t: &OperatorMatrix<T>, phi: &Signal<T>) -> Result<PhaseFn<T>> {
    unit_window(phi)?;
    conv_op_op(t, &check_op(&rank_one(phi, phi)?))
}

/// Smallest lattice value of `|V_φφ|`.
pub fn lattice_min_abs_stft<T: Real>(phi: &Signal<T>) -> Result<f64> {
    let v = stft(phi, phi)?;
    Ok(v.values
        .iter()
        .map(|x| x.norm().as_f64())
        .fold(f64::INFINITY, f64::min))
}

/// Radius of the disk on which [`min_abs_stft`] looks for zeros.
pub const ZERO_SEARCH_RADIUS: f64 = 2.0;

/// Ratio `min/max` above which a window is declared free of zeros.
pub const NO_ZEROS_RATIO: f64 = 1e-4;

/// Minimum of `|V_φφ|` over the disk `|z| ≤ 2`, using the bilinear
/// interpolant of the lattice values in every cell inside the disk.
///
/// A cell whose interpolant has an exact zero contributes 0; otherwise the
/// interpolant is sampled on a 9×9 subgrid. Near the origin the lattice
/// resolves the window, while far out the values are dominated by the
/// Gaussian-type decay of every admissible window.
pub fn min_abs_stft<T: Real>(phi: &Signal<T>) -> Result<f64> {
    let v = stft(phi, phi)?;
    let g = v.grid;
    let n = g.n_i64();
    let half = n / 2;
    let r2max = ZERO_SEARCH_RADIUS * ZERO_SEARCH_RADIUS * n as f64;
    let val = |m: i64, k: i64| {
        let x = v.at(PhasePoint::new(m, k));
        Complex::new(x.re.as_f64(), x.im.as_f64())
    };
    let mut best = f64::INFINITY;
    for m in -half..half - 1 {
        for k in -half..half - 1 {
            let corners = [(m, k), (m + 1, k), (m, k + 1), (m + 1, k + 1)];
            if corners.iter().any(|&(a, b)| (a * a + b * b) as f64 > r2max) {
                continue;
            }
            let cell = [val(m, k), val(m + 1, k), val(m, k + 1), val(m + 1, k + 1)];
            best = best.min(bilinear_min_abs(cell));
        }
    }
    if best.is_infinite() {
        best = lattice_min_abs_stft(phi)?;
    }
    Ok(best)
}

/// `min |B|` on the unit square for `B(s,t)` interpolating `[F00, F10, F01, F11]`.
pub(crate) fn bilinear_min_abs(f: [Complex<f64>; 4]) -> f64 {
    let [f00, f10, f01, f11] = f;
    let a = f00;
    let b = f10 - f00;
    let c = f01 - f00;
    let d = f11 - f10 - f01 + f00;
    let scale = f.iter().map(|x| x.norm()).fold(0.0, f64::max);
    if scale == 0.0 {
        return 0.0;
    }
    let eval = |s: f64, t: f64| (a + b * s + c * t + d * s * t).norm();
    let in_unit = |x: f64| (-1e-12..=1.0 + 1e-12).contains(&x);

    // B(s,t) = u(t) + v(t) s vanishes for real s only where Im(u v̄) = 0
    let q2 = (c * d.conj()).im;
    let q1 = (a * d.conj() + c * b.conj()).im;
    let q0 = (a * b.conj()).im;
    let tiny = 1e-14 * scale * scale;
    let mut roots = Vec::new();
    if q2.abs() > tiny {
        let disc = q1 * q1 - 4.0 * q2 * q0;
        if disc >= 0.0 {
            let sq = disc.sqrt();
            let qq = -0.5 * (q1 + q1.signum() * sq);
            roots.push(qq / q2);
            if qq != 0.0 {
                roots.push(q0 / qq);
            }
        }
    } else if q1.abs() > tiny {
        roots.push(-q0 / q1);
    } else if q0.abs() <= tiny {
        // u and v stay parallel: B is real up to a fixed phase
        let ph = f
            .iter()
            .copied()
            .max_by(|x, y| x.norm().total_cmp(&y.norm()))
            .unwrap();
        let ph = ph / ph.norm();
        let re: Vec<f64> = f.iter().map(|x| (x * ph.conj()).re).collect();
        let lo = re.iter().copied().fold(f64::INFINITY, f64::min);
        let hi = re.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        if lo <= 0.0 && hi >= 0.0 {
            return 0.0;
        }
    }
    for t in roots {
        if !in_unit(t) {
            continue;
        }
        let u = a + c * t;
        let v = b + d * t;
        let s = if v.norm_sqr() > 0.0 {
            -(u * v.conj()).re / v.norm_sqr()
        } else {
            0.0
        };
        if in_unit(s) && eval(s.clamp(0.0, 1.0), t.clamp(0.0, 1.0)) <= 1e-9 * scale {
            return 0.0;
        }
    }
    let mut best = f64::INFINITY;
    for i in 0..=8 {
        for j in 0..=8 {
            best = best.min(eval(i as f64 / 8.0, j as f64 / 8.0));
        }
    }
    best
}

/// Zero diagnostics for `V_φφ` on one grid.
#[derive(Clone, Debug, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct WindowZeros {
    pub n: usize,
    pub min_abs: f64,
    pub lattice_min_abs: f64,
    pub max_abs: f64,
    pub ratio: f64,
    pub no_zeros: bool,
}

pub fn window_zeros<T: Real>(phi: &Signal<T>) -> Result<WindowZeros> {
    let v = stft(phi, phi)?;
    let max_abs = v
        .values
        .iter()
        .map(|x| x.norm().as_f64())
        .fold(0.0, f64::max);
    let min_abs = min_abs_stft(phi)?;
    let ratio = if max_abs > 0.0 {
        min_abs / max_abs
    } else {
        0.0
    };
    Ok(WindowZeros {
        n: phi.grid().n(),
        min_abs,
        lattice_min_abs: lattice_min_abs_stft(phi)?,
        max_abs,
        ratio,
        no_zeros: ratio > NO_ZEROS_RATIO,
    })
}

/// Analysis matrix of a window, scaled to have orthonormal columns for unit φ.
fn analysis_matrix<T: Real>(phi: &Signal<T>) -> Result<Array2<Complex<T>>> {
    let g = phi.grid();
    let n = g.n();
    let scale = T::one() / T::of(n as f64).sqrt();
    let mut m = Array2::from_elem((n * n, n), Complex::new(T::zero(), T::zero()));
    for s in 0..n {
        let v = stft(&Signal::basis(g, g.center(s)), phi)?;
        for (r, x) in v.values.iter().enumerate() {
            m[[r, s]] = *x * scale;
        }
    }
    Ok(m)
}

/// Smallest principal angle between the Gabor spaces `V_{φ₁}(L²)` and
/// `V_{φ₂}(L²)` inside the `n²`-dimensional STFT space.
pub fn gabor_intersection_angle<T: Real>(phi1: &Signal<T>, phi2: &Signal<T>) -> Result<f64> {
    check_same(phi1.grid(), phi2.grid())?;
    unit_window(phi1)?;
    unit_window(phi2)?;
    let a1 = analysis_matrix(phi1)?;
    let a2 = analysis_matrix(phi2)?;
    let cross = linalg::matmul(&linalg::adjoint(&a1), &a2);
    let sigma = linalg::singular_values(&cross)?;
    let top = sigma.first().map(|s| s.as_f64()).unwrap_or(0.0);
    Ok(top.clamp(0.0, 1.0).acos())
}

/// Singular values of `T ↦ 𝔅T` as a map from Hilbert–Schmidt operators to
/// phase-space functions with the weighted norm.
pub fn berezin_map_singular_values<T: Real>(phi: &Signal<T>) -> Result<Vec<f64>> {
    let g = phi.grid();
    let n = g.n();
    if n > 16 {
        return Err(Error::SizeGuard { n, limit: 16 });
    }
    unit_window(phi)?;
    let scale = T::one() / T::of(n as f64).sqrt();
    let mut m = Array2::from_elem((n * n, n * n), Complex::new(T::zero(), T::zero()));
    for a in 0..n {
        for b in 0..n {
            let mut e = Array2::from_elem((n, n), Complex::new(T::zero(), T::zero()));
            e[[a, b]] = Complex::new(T::one(), T::zero());
            let col = berezin(&OperatorMatrix::from_raw(g, e), phi)?;
            for (r, x) in col.values().iter().enumerate() {
                m[[r, a * n + b]] = *x * scale;
            }
        }
    }
    Ok(linalg::singular_values(&m)?
        .into_iter()
        .map(|s| s.as_f64())
        .collect())
}

/// STFT of a phase-space function with a phase-space window:
/// `V_Φ f(x, ω) = (1/n) Σ_{z'} f(z') conj(Φ(z' − x)) e^{-2πi ω·z'/n}`.
///
/// Rows index `x` and columns index `ω`, each as `slot(m) · n + slot(k)`.
#[derive(Clone, Debug, PartialEq)]
pub struct Stft4Table<T: Real> {
    grid: GridSpec,
    values: Array2<Complex<T>>,
}

impl<T: Real> Stft4Table<T> {
    pub fn grid(&self) -> GridSpec {
        self.grid
    }

    pub fn values(&self) -> &Array2<Complex<T>> {
        &self.values
    }

    pub fn at(&self, x: PhasePoint, w: PhasePoint) -> Complex<T> {
        let g = self.grid;
        let n = g.n();
        self.values[[g.slot(x.m) * n + g.slot(x.k), g.slot(w.m) * n + g.slot(w.k)]]
    }

    /// `(1/n²) Σ |V|²`.
    pub fn energy(&self) -> T {
        let n2 = T::of((self.grid.n() * self.grid.n()) as f64);
        self.values.iter().map(|v| v.norm_sqr()).sum::<T>() / n2
    }
}

pub fn stft_phase<T: Real>(f: &PhaseFn<T>, window: &PhaseFn<T>) -> Result<Stft4Table<T>> {
    let g = f.grid();
    check_same(g, window.grid())?;
    let n = g.n();
    if n > STFT4_MAX_POINTS {
        return Err(Error::SizeGuard {
            n,
            limit: STFT4_MAX_POINTS,
        });
    }
    if window.norm_sup() == T::zero() {
        return Err(Error::ZeroWindow);
    }
    let dft = Dft::<T>::new(n);
    let inv_n = g.cell::<T>();
    let (fv, wv) = (f.values(), window.values());
    let mut values = Array2::from_elem((n * n, n * n), Complex::new(T::zero(), T::zero()));
    let mut block = Array2::from_elem((n, n), Complex::new(T::zero(), T::zero()));
    for xa in 0..n {
        for xb in 0..n {
            for ((a, b), v) in block.indexed_iter_mut() {
                *v = fv[[a, b]] * wv[[(a + n - xa) % n, (b + n - xb) % n]].conj() * inv_n;
            }
            dft.along(&mut block, 0, true);
            dft.along(&mut block, 1, true);
            let row = xa * n + xb;
            for ((a, b), v) in block.indexed_iter() {
                values[[row, a * n + b]] = *v;
            }
        }
    }
    Ok(Stft4Table { grid: g, values })
}

/// `G(ρ) = max{|V_Φ(f − A)(x, ω)| : |x| ≥ ρ, |ω| ≤ R}`.
pub fn fg_sup_profile<T: Real>(
    f: &PhaseFn<T>,
    a: Complex<T>,
    window: &PhaseFn<T>,
    r_freq: f64,
    radii: &[f64],
) -> Result<DecayProfile> {
    let g = f.grid();
    let table = stft_phase(&f.add_constant(-a), window)?;
    let n = g.n();
    let r2 = r_freq * r_freq * (1.0 + 1e-12);
    let mut per_x = Vec::with_capacity(n * n);
    for xa in 0..n {
        for xb in 0..n {
            let mut best = 0.0f64;
            for wa in 0..n {
                for wb in 0..n {
                    if g.radius::<f64>(wa, wb).powi(2) <= r2 {
                        best = best.max(table.values[[xa * n + xb, wa * n + wb]].norm().as_f64());
                    }
                }
            }
            per_x.push((g.radius::<f64>(xa, xb).powi(2), best));
        }
    }
    Ok(DecayProfile {
        radii: radii.to_vec(),
        values: radial_sup(per_x, radii),
    })
}
