//! Operators on the signal space: time-frequency shifts, parity, the
//! Fourier–Wigner transform and the Weyl correspondence.

use ndarray::{Array1, Array2};
use num_complex::Complex;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fft::Dft;
use crate::grid::{GridSpec, PhasePoint};
use crate::linalg;
use crate::phase::{symplectic_fourier, PhaseFn};
use crate::scalar::{is_finite_c, Real};
use crate::signal::{check_same, Signal};

/// Complex `n×n` matrix acting on signal values (storage-slot indexed).
#[derive(Clone, Debug, PartialEq)]
pub struct OperatorMatrix<T: Real> {
    grid: GridSpec,
    entries: Array2<Complex<T>>,
}

impl<T: Real> OperatorMatrix<T> {
    pub fn new(grid: GridSpec, entries: Array2<Complex<T>>) -> Result<Self> {
        let n = grid.n();
        if entries.dim() != (n, n) {
            return Err(Error::LengthMismatch {
                expected: n * n,
                got: entries.len(),
            });
        }
        if let Some(p) = entries.iter().position(|v| !is_finite_c(v)) {
            return Err(Error::NonFinite(p));
        }
        Ok(OperatorMatrix { grid, entries })
    }

    pub(crate) fn from_raw(grid: GridSpec, entries: Array2<Complex<T>>) -> Self {
        debug_assert_eq!(entries.dim(), (grid.n(), grid.n()));
        OperatorMatrix { grid, entries }
    }

    /// Build from centered row and column indices.
    pub fn from_indices(grid: GridSpec, f: impl Fn(i64, i64) -> Complex<T>) -> Self {
        let entries = Array2::from_shape_fn((grid.n(), grid.n()), |(a, b)| {
            f(grid.center(a), grid.center(b))
        });
        OperatorMatrix { grid, entries }
    }

    pub fn zeros(grid: GridSpec) -> Self {
        OperatorMatrix {
            grid,
            entries: Array2::from_elem((grid.n(), grid.n()), Complex::new(T::zero(), T::zero())),
        }
    }

    pub fn identity(grid: GridSpec) -> Self {
        let mut op = Self::zeros(grid);
        for i in 0..grid.n() {
            op.entries[[i, i]] = Complex::new(T::one(), T::zero());
        }
        op
    }

    pub fn grid(&self) -> GridSpec {
        self.grid
    }

    pub fn entries(&self) -> &Array2<Complex<T>> {
        &self.entries
    }

    pub fn into_entries(self) -> Array2<Complex<T>> {
        self.entries
    }

    /// Entry at centered indices `(a, b)`.
    pub fn at(&self, a: i64, b: i64) -> Complex<T> {
        self.entries[[self.grid.slot(a), self.grid.slot(b)]]
    }

    pub fn trace(&self) -> Complex<T> {
        self.entries.diag().iter().copied().sum()
    }

    pub fn hs_norm(&self) -> T {
        self.entries.iter().map(|v| v.norm_sqr()).sum::<T>().sqrt()
    }

    /// `tr(T* S)`.
    pub fn hs_inner(&self, other: &OperatorMatrix<T>) -> Complex<T> {
        self.entries
            .iter()
            .zip(other.entries.iter())
            .map(|(a, b)| a * b.conj())
            .sum()
    }

    pub fn adjoint(&self) -> Self {
        OperatorMatrix {
            grid: self.grid,
            entries: linalg::adjoint(&self.entries),
        }
    }

    pub fn compose(&self, other: &OperatorMatrix<T>) -> Result<Self> {
        check_same(self.grid, other.grid)?;
        Ok(OperatorMatrix {
            grid: self.grid,
            entries: linalg::matmul(&self.entries, &other.entries),
        })
    }

    pub fn apply(&self, psi: &Signal<T>) -> Result<Signal<T>> {
        check_same(self.grid, psi.grid())?;
        let v: Array1<Complex<T>> = self.entries.dot(psi.values());
        Signal::new(self.grid, v)
    }

    pub fn scale(&self, c: Complex<T>) -> Self {
        OperatorMatrix {
            grid: self.grid,
            entries: self.entries.mapv(|v| v * c),
        }
    }

    pub fn add(&self, other: &OperatorMatrix<T>) -> Result<Self> {
        check_same(self.grid, other.grid)?;
        Ok(OperatorMatrix {
            grid: self.grid,
            entries: &self.entries + &other.entries,
        })
    }

    pub fn sub(&self, other: &OperatorMatrix<T>) -> Result<Self> {
        check_same(self.grid, other.grid)?;
        Ok(OperatorMatrix {
            grid: self.grid,
            entries: &self.entries - &other.entries,
        })
    }

    /// `self + c I`.
    pub fn add_identity(&self, c: Complex<T>) -> Self {
        let mut out = self.clone();
        for i in 0..self.grid.n() {
            out.entries[[i, i]] = out.entries[[i, i]] + c;
        }
        out
    }

    pub fn max_abs_diff(&self, other: &OperatorMatrix<T>) -> T {
        self.entries
            .iter()
            .zip(other.entries.iter())
            .map(|(a, b)| (a - b).norm())
            .fold(T::zero(), T::max)
    }

    /// `‖S − S*‖_max`.
    pub fn hermitian_defect(&self) -> T {
        self.max_abs_diff(&self.adjoint())
    }

    /// Eigenvalues of the Hermitian part, non-increasing.
    pub fn hermitian_eigenvalues(&self) -> Result<Vec<T>> {
        linalg::hermitian_eigenvalues(&self.entries)
    }

    pub fn op_norm(&self) -> Result<T> {
        Ok(linalg::singular_values(&self.entries)?
            .first()
            .copied()
            .unwrap_or(T::zero()))
    }

    /// Entries in centered row-major order.
    pub fn centered_values(&self) -> Vec<Complex<T>> {
        let g = self.grid;
        g.centered_slots()
            .flat_map(|a| g.centered_slots().map(move |b| self.entries[[a, b]]))
            .collect()
    }
}

/// Sorted singular values with the derived Schatten norms.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SchattenSpectrum {
    pub sigma: Vec<f64>,
}

impl SchattenSpectrum {
    /// Trace norm `Σσ`.
    pub fn s1(&self) -> f64 {
        self.sigma.iter().sum()
    }

    /// Hilbert–Schmidt norm `(Σσ²)^{1/2}`.
    pub fn s2(&self) -> f64 {
        self.sigma.iter().map(|s| s * s).sum::<f64>().sqrt()
    }

    /// Operator norm `σ₁`.
    pub fn op(&self) -> f64 {
        self.sigma.first().copied().unwrap_or(0.0)
    }

    pub fn schatten_norm(&self, p: f64) -> f64 {
        if p.is_infinite() {
            return self.op();
        }
        self.sigma
            .iter()
            .map(|s| s.powf(p))
            .sum::<f64>()
            .powf(1.0 / p)
    }

    /// Fraction of singular values strictly above `eps`.
    pub fn fraction_above(&self, eps: f64) -> f64 {
        if self.sigma.is_empty() {
            return 0.0;
        }
        self.sigma.iter().filter(|&&s| s > eps).count() as f64 / self.sigma.len() as f64
    }

    pub fn rank(&self) -> usize {
        self.sigma.iter().filter(|&&s| s > 0.0).count()
    }
}

pub fn schatten<T: Real>(s: &OperatorMatrix<T>) -> Result<SchattenSpectrum> {
    let sigma = linalg::singular_values(&s.entries)?;
    Ok(SchattenSpectrum {
        sigma: sigma.into_iter().map(|v| v.as_f64()).collect(),
    })
}

/// `(π(m,k)ψ)[j] = e^{2πi k j/n} ψ[j − m]`.
pub fn tf_shift<T: Real>(grid: GridSpec, z: PhasePoint) -> Result<OperatorMatrix<T>> {
    grid.point(z.m, z.k)?;
    let mut op = OperatorMatrix::zeros(grid);
    for a in 0..grid.n() {
        let j = grid.center(a);
        op.entries[[a, grid.slot(j - z.m)]] = grid.root(z.k * j);
    }
    Ok(op)
}

/// `α_z(S) = π(z) S π(z)*`, entrywise `e^{2πi k (a−b)/n} S[a−m, b−m]`.
pub fn translate_op<T: Real>(s: &OperatorMatrix<T>, z: PhasePoint) -> OperatorMatrix<T> {
    let g = s.grid;
    OperatorMatrix::from_indices(g, |a, b| {
        g.root::<T>(z.k * (a - b)) * s.at(a - z.m, b - z.m)
    })
}

/// `ψ[j] ↦ ψ[−j]`; the index `−n/2` is fixed.
pub fn parity<T: Real>(grid: GridSpec) -> OperatorMatrix<T> {
    let mut op = OperatorMatrix::zeros(grid);
    for a in 0..grid.n() {
        op.entries[[a, grid.slot(-grid.center(a))]] = Complex::new(T::one(), T::zero());
    }
    op
}

/// `Š = P S P`.
pub fn check_op<T: Real>(s: &OperatorMatrix<T>) -> OperatorMatrix<T> {
    OperatorMatrix::from_indices(s.grid, |a, b| s.at(-a, -b))
}

/// `(ψ⊗φ)ξ = ⟨ξ, φ⟩ ψ`.
pub fn rank_one<T: Real>(psi: &Signal<T>, phi: &Signal<T>) -> Result<OperatorMatrix<T>> {
    check_same(psi.grid(), phi.grid())?;
    let (u, v) = (psi.values(), phi.values());
    let n = psi.grid().n();
    Ok(OperatorMatrix::from_raw(
        psi.grid(),
        Array2::from_shape_fn((n, n), |(a, b)| u[a] * v[b].conj()),
    ))
}

/// `F_W(S)(m,k) = e^{-πi q(m,k)/n} tr(π(−m,−k) S)`.
///
/// `q` is the symmetric branch of `m k` from [`GridSpec::xw_product`]. The trace
/// is `Σ_j e^{-2πi k j/n} S[j+m, j]`, one FFT per diagonal.
pub fn fourier_wigner<T: Real>(s: &OperatorMatrix<T>) -> PhaseFn<T> {
    let g = s.grid;
    let n = g.n();
    let dft = Dft::<T>::new(n);
    let mut out = Array2::from_elem((n, n), Complex::new(T::zero(), T::zero()));
    let mut buf = vec![Complex::new(T::zero(), T::zero()); n];
    for a in 0..n {
        for (j, b) in buf.iter_mut().enumerate() {
            *b = s.entries[[(j + a) % n, j]];
        }
        dft.forward(&mut buf);
        let m = g.center(a);
        for (b, v) in buf.iter().enumerate() {
            out[[a, b]] = *v * g.half_root::<T>(-g.xw_product(m, g.center(b)));
        }
    }
    PhaseFn::from_raw(g, out)
}

/// Exact inverse of [`fourier_wigner`].
pub fn inverse_fourier_wigner<T: Real>(f: &PhaseFn<T>) -> OperatorMatrix<T> {
    let g = f.grid();
    let n = g.n();
    let dft = Dft::<T>::new(n);
    let inv_n = T::one() / T::of(n as f64);
    let mut out = OperatorMatrix::zeros(g);
    let mut buf = vec![Complex::new(T::zero(), T::zero()); n];
    for a in 0..n {
        let m = g.center(a);
        for (b, x) in buf.iter_mut().enumerate() {
            *x = f.values()[[a, b]] * g.half_root::<T>(g.xw_product(m, g.center(b)));
        }
        dft.inverse(&mut buf);
        for (j, v) in buf.iter().enumerate() {
            out.entries[[(j + a) % n, j]] = *v * inv_n;
        }
    }
    out
}

/// `L_f = F_W⁻¹(F_σ f)`.
pub fn weyl_quantize<T: Real>(f: &PhaseFn<T>) -> OperatorMatrix<T> {
    inverse_fourier_wigner(&symplectic_fourier(f))
}

/// `a_S = F_σ(F_W S)`.
pub fn weyl_symbol<T: Real>(s: &OperatorMatrix<T>) -> PhaseFn<T> {
    symplectic_fourier(&fourier_wigner(s))
}

/// Cross-Wigner distribution `W(ψ, φ) = a_{ψ⊗φ}`.
pub fn wigner<T: Real>(psi: &Signal<T>, phi: &Signal<T>) -> Result<PhaseFn<T>> {
    Ok(weyl_symbol(&rank_one(psi, phi)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::make_grid;

    use crate::rng::{random_operator, random_phase_fn, random_signal, LabRng};
    use crate::signal::{atom, AtomKind};
    use std::f64::consts::PI;

    fn c(re: f64) -> Complex<f64> {
        Complex::new(re, 0.0)
    }

    fn g8() -> GridSpec {
        make_grid(8).unwrap()
    }

    /// `e^{-πi mk/n} tr(π(−z) S)` with a dense product and an explicit trace.
    fn fourier_wigner_oracle(s: &OperatorMatrix<f64>) -> PhaseFn<f64> {
        let g = s.grid();
        let n = g.n_i64();
        PhaseFn::from_indices(g, |m, k| {
            let p = tf_shift::<f64>(g, g.neg(PhasePoint::new(m, k))).unwrap();
            let q = g.xw_product(m, k);
            Complex::from_polar(1.0, -PI * q as f64 / n as f64) * p.compose(s).unwrap().trace()
        })
    }

    #[test]
    fn tf_shift_identity_and_unitary() {
        let g = g8();
        assert_eq!(
            tf_shift::<f64>(g, PhasePoint::ORIGIN).unwrap(),
            OperatorMatrix::identity(g)
        );
        for (m, k) in [(1, 2), (-4, 3), (3, -4)] {
            let p = tf_shift::<f64>(g, PhasePoint::new(m, k)).unwrap();
            let id = p.compose(&p.adjoint()).unwrap();
            assert!(id.max_abs_diff(&OperatorMatrix::identity(g)) < 1e-12);
        }
        assert!(tf_shift::<f64>(g, PhasePoint::new(4, 0)).is_err());
    }

    #[test]
    fn tf_shift_composition_phase() {
        let g = g8();
        for (a, b) in [((1, 2), (3, -1)), ((-4, -4), (2, 3)), ((2, 1), (-3, 2))] {
            let za = PhasePoint::new(a.0, a.1);
            let zb = PhasePoint::new(b.0, b.1);
            let lhs = tf_shift::<f64>(g, za)
                .unwrap()
                .compose(&tf_shift(g, zb).unwrap())
                .unwrap();
            let rhs = tf_shift::<f64>(g, g.add(za, zb))
                .unwrap()
                .scale(g.root(-zb.k * za.m));
            assert!(lhs.max_abs_diff(&rhs) < 1e-12);
        }
    }

    #[test]
    fn translate_is_conjugation() {
        let g = g8();
        let s = random_operator::<f64>(g, &mut LabRng::new(3));
        let z = PhasePoint::new(3, -2);
        let p = tf_shift::<f64>(g, z).unwrap();
        let direct = p.compose(&s).unwrap().compose(&p.adjoint()).unwrap();
        assert!(translate_op(&s, z).max_abs_diff(&direct) < 1e-12);
        assert_eq!(translate_op(&s, PhasePoint::ORIGIN), s);
        assert!((translate_op(&s, z).trace() - s.trace()).norm() < 1e-12);
        let z2 = PhasePoint::new(-1, 3);
        let twice = translate_op(&translate_op(&s, z), z2);
        assert!(twice.max_abs_diff(&translate_op(&s, g.add(z, z2))) < 1e-12);
    }

    #[test]
    fn parity_and_check() {
        let g = make_grid(16).unwrap();
        let p = parity::<f64>(g);
        assert_eq!(p.compose(&p).unwrap(), OperatorMatrix::identity(g));
        let phi = atom::<f64>(g, &AtomKind::Gaussian).unwrap();
        assert!(p.apply(&phi).unwrap().max_abs_diff(&phi) < 1e-15);
        let s = random_operator::<f64>(g, &mut LabRng::new(1));
        assert_eq!(check_op(&check_op(&s)), s);
        assert!(check_op(&s).max_abs_diff(&p.compose(&s).unwrap().compose(&p).unwrap()) < 1e-15);
        let r = rank_one(&phi, &phi).unwrap();
        assert!(check_op(&r).max_abs_diff(&r) < 1e-15);
    }

    #[test]
    fn check_of_shift_is_reflected_shift() {
        let g = g8();
        for (m, k) in [(1, 2), (3, -1), (-4, 2)] {
            let z = PhasePoint::new(m, k);
            let lhs = check_op(&tf_shift::<f64>(g, z).unwrap());
            let rhs = tf_shift::<f64>(g, g.neg(z)).unwrap();
            // P π(z) P = π(−z) with unit phase
            assert!(lhs.max_abs_diff(&rhs) < 1e-12);
        }
    }

    #[test]
    fn parity_fourier_wigner_is_supported_on_even_sublattice() {
        // |F_W(P)| equals 2 where m and k are both even and vanishes elsewhere
        let g = g8();
        let f = fourier_wigner(&parity::<f64>(g));
        let oracle = fourier_wigner_oracle(&parity(g));
        assert!(f.max_abs_diff(&oracle) < 1e-12);
        for m in -4..4i64 {
            for k in -4..4i64 {
                let v = f.at(PhasePoint::new(m, k)).norm();
                let want = if m % 2 == 0 && k % 2 == 0 { 2.0 } else { 0.0 };
                assert!((v - want).abs() < 1e-12, "({m},{k}) -> {v}");
            }
        }
    }

    #[test]
    fn rank_one_basics() {
        let g = make_grid(16).unwrap();
        let mut rng = LabRng::new(9);
        let psi = random_signal::<f64>(g, &mut rng);
        let phi = random_signal::<f64>(g, &mut rng);
        assert!((rank_one(&psi, &psi).unwrap().trace() - c(1.0)).norm() < 1e-14);
        assert!((rank_one(&psi, &phi).unwrap().trace() - psi.inner(&phi)).norm() < 1e-14);
        assert_eq!(
            rank_one(&psi, &phi).unwrap().adjoint(),
            rank_one(&phi, &psi).unwrap()
        );
    }

    #[test]
    fn fourier_wigner_matches_trace_oracle() {
        let g = g8();
        let s = random_operator::<f64>(g, &mut LabRng::new(17));
        assert!(fourier_wigner(&s).max_abs_diff(&fourier_wigner_oracle(&s)) < 1e-12);
    }

    #[test]
    fn fourier_wigner_isometry_and_roundtrip() {
        for n in [8, 16, 10] {
            let g = make_grid(n).unwrap();
            let s = random_operator::<f64>(g, &mut LabRng::new(n as u64));
            let f = fourier_wigner(&s);
            assert!((f.norm_l2() - s.hs_norm()).abs() < 1e-12);
            assert!(inverse_fourier_wigner(&f).max_abs_diff(&s) < 1e-13);
        }
    }

    #[test]
    fn fourier_wigner_linear() {
        let g = g8();
        let mut rng = LabRng::new(2);
        let s = random_operator::<f64>(g, &mut rng);
        let t = random_operator::<f64>(g, &mut rng);
        let (al, be) = (Complex::new(0.3, -1.0), Complex::new(2.0, 0.5));
        let lhs = fourier_wigner(&s.scale(al).add(&t.scale(be)).unwrap());
        let rhs = fourier_wigner(&s)
            .scale(al)
            .add(&fourier_wigner(&t).scale(be))
            .unwrap();
        assert!(lhs.max_abs_diff(&rhs) < 1e-13);
    }

    #[test]
    fn fourier_wigner_of_rank_one_is_phased_stft() {
        let g = g8();
        let mut rng = LabRng::new(4);
        let psi = random_signal::<f64>(g, &mut rng);
        let phi = random_signal::<f64>(g, &mut rng);
        let f = fourier_wigner(&rank_one(&psi, &phi).unwrap());
        for m in -4..4 {
            for k in -4..4 {
                let z = PhasePoint::new(m, k);
                // V_φψ(z) = ⟨ψ, π(z)φ⟩
                let v = psi.inner(&tf_shift(g, z).unwrap().apply(&phi).unwrap());
                let want = g.half_root::<f64>(g.xw_product(m, k)) * v;
                assert!((f.at(z) - want).norm() < 1e-12);
            }
        }
    }

    #[test]
    fn fourier_wigner_of_gaussian_projection() {
        let g = make_grid(64).unwrap();
        let phi = atom::<f64>(g, &AtomKind::Gaussian).unwrap();
        let f = fourier_wigner(&rank_one(&phi, &phi).unwrap());
        let want =
            PhaseFn::sample(g, |x: f64, w: f64| c((-PI * (x * x + w * w) / 2.0).exp())).unwrap();
        assert!(f.max_abs_diff(&want) < 1e-6);
    }

    #[test]
    fn covariance_under_translation() {
        let g = g8();
        let s = random_operator::<f64>(g, &mut LabRng::new(8));
        let z0 = PhasePoint::new(2, -3);
        let lhs = fourier_wigner(&translate_op(&s, z0));
        let base = fourier_wigner(&s);
        let rhs = PhaseFn::from_indices(g, |m, k| {
            let w = PhasePoint::new(m, k);
            g.root::<f64>(g.symplectic(z0, w)) * base.at(w)
        });
        assert!(lhs.max_abs_diff(&rhs) < 1e-12);
    }

    #[test]
    fn check_and_adjoint_reflect_the_transform() {
        let g = g8();
        let s = random_operator::<f64>(g, &mut LabRng::new(12));
        let f = fourier_wigner(&s);
        assert!(fourier_wigner(&check_op(&s)).max_abs_diff(&f.reflect()) < 1e-12);
        assert!(fourier_wigner(&s.adjoint()).max_abs_diff(&f.reflect().conj()) < 1e-12);
    }

    #[test]
    fn inverse_of_one_is_the_reflection_quantizer() {
        // F_W⁻¹(1)[a, b] = e^{πi q(a−b, ·)} averaged: direct oracle at n=8
        let g = g8();
        let op = inverse_fourier_wigner(&PhaseFn::constant(g, c(1.0)));
        let n = 8i64;
        let oracle = OperatorMatrix::from_indices(g, |a, b| {
            let m = g.wrap(a - b);
            let mut acc = c(0.0);
            for k in -4..4 {
                acc += g.half_root::<f64>(g.xw_product(m, k)) * g.root::<f64>(k * b);
            }
            acc / n as f64
        });
        assert!(op.max_abs_diff(&oracle) < 1e-12);
        assert!(op.hermitian_defect() < 1e-12);
        assert!(check_op(&op).max_abs_diff(&op) < 1e-12);
    }

    #[test]
    fn weyl_roundtrips_and_unitarity() {
        let g = make_grid(16).unwrap();
        let mut rng = LabRng::new(21);
        let f = random_phase_fn::<f64>(g, &mut rng);
        let s = random_operator::<f64>(g, &mut rng);
        assert!(weyl_symbol(&weyl_quantize(&f)).max_abs_diff(&f) < 1e-12);
        assert!(weyl_quantize(&weyl_symbol(&s)).max_abs_diff(&s) < 1e-13);
        assert!((weyl_quantize(&f).hs_norm() - f.norm_l2()).abs() < 1e-11);
    }

    #[test]
    fn weyl_of_constant_is_scalar() {
        let g = g8();
        let a = Complex::new(1.5, -0.25);
        let l = weyl_quantize(&PhaseFn::constant(g, a));
        assert!(l.max_abs_diff(&OperatorMatrix::identity(g).scale(a)) < 1e-13);
    }

    #[test]
    fn real_symbol_iff_hermitian() {
        let g = make_grid(16).unwrap();
        let mut rng = LabRng::new(5);
        let f = random_phase_fn::<f64>(g, &mut rng).map(|v| c(v.re));
        assert!(weyl_quantize(&f).hermitian_defect() < 1e-13);
        let s = random_operator::<f64>(g, &mut rng);
        let h = s.add(&s.adjoint()).unwrap();
        assert!(weyl_symbol(&h).max_imag() < 1e-12);
        assert!(weyl_symbol(&s).max_imag() > 1e-3);
    }

    #[test]
    fn trace_equals_integral() {
        let g = g8();
        let f = random_phase_fn::<f64>(g, &mut LabRng::new(30));
        assert!((weyl_quantize(&f).trace() - f.integral()).norm() < 1e-12);
    }

    #[test]
    fn symbol_of_translate_is_translated_symbol() {
        let g = make_grid(16).unwrap();
        let s = random_operator::<f64>(g, &mut LabRng::new(31));
        let z = PhasePoint::new(-3, 5);
        let lhs = weyl_symbol(&translate_op(&s, z));
        assert!(lhs.max_abs_diff(&weyl_symbol(&s).translate(z)) < 1e-12);
    }

    #[test]
    fn wigner_properties() {
        let g = make_grid(16).unwrap();
        let mut rng = LabRng::new(6);
        let psi = random_signal::<f64>(g, &mut rng);
        let phi = random_signal::<f64>(g, &mut rng);
        let w = wigner(&psi, &psi).unwrap();
        assert!(w.max_imag() < 1e-13);
        assert!((w.integral() - c(1.0)).norm() < 1e-12);
        let a = wigner(&psi, &phi).unwrap();
        let b = wigner(&phi, &psi).unwrap();
        assert!(a.max_abs_diff(&b.conj()) < 1e-13);
    }

    #[test]
    fn wigner_of_gaussian() {
        let g = make_grid(64).unwrap();
        let phi = atom::<f64>(g, &AtomKind::Gaussian).unwrap();
        let w = wigner(&phi, &phi).unwrap();
        let want = PhaseFn::sample(g, |x: f64, o: f64| {
            c(2.0 * (-2.0 * PI * (x * x + o * o)).exp())
        })
        .unwrap();
        assert!(w.max_abs_diff(&want) < 1e-6);
        assert!(w.min_abs() >= 0.0 && w.max_imag() < 1e-13);
    }

    #[test]
    fn schatten_basics() {
        let g = g8();
        let id = schatten(&OperatorMatrix::<f64>::identity(g)).unwrap();
        assert!(id.sigma.iter().all(|s| (s - 1.0).abs() < 1e-14));
        assert_eq!(id.fraction_above(0.5), 1.0);
        let mut rng = LabRng::new(1);
        let psi = random_signal::<f64>(g, &mut rng).scale(c(2.0));
        let phi = random_signal::<f64>(g, &mut rng).scale(c(0.5));
        let sp = schatten(&rank_one(&psi, &phi).unwrap()).unwrap();
        assert!((sp.s1() - 1.0).abs() < 1e-13);
        assert_eq!(sp.rank(), 1);
        let zero = schatten(&OperatorMatrix::<f64>::zeros(g)).unwrap();
        assert_eq!(zero.s1(), 0.0);
    }

    #[test]
    fn schatten_norms_match_direct_norms() {
        let g = make_grid(16).unwrap();
        let s = random_operator::<f64>(g, &mut LabRng::new(40));
        let sp = schatten(&s).unwrap();
        assert!((sp.s2() - s.hs_norm()).abs() < 1e-8);
        assert!(sp.sigma.windows(2).all(|w| w[1] <= w[0]));
        // ‖S‖_op via power iteration on S*S
        let ss = s.adjoint().compose(&s).unwrap();
        let mut v = random_signal::<f64>(g, &mut LabRng::new(41));
        for _ in 0..2000 {
            v = ss.apply(&v).unwrap().normalized().unwrap();
        }
        let op = ss.apply(&v).unwrap().norm().sqrt();
        assert!((sp.op() - op).abs() < 1e-8);
    }
}
