//! The three convolutions: function∗function, function⋆operator and
//! operator⋆operator, with direct-sum versions in [`naive`].

use crate::error::Result;
use crate::gabor::{stft, synthesis};
use crate::operator::{fourier_wigner, inverse_fourier_wigner, OperatorMatrix};
use crate::phase::{symplectic_fourier, PhaseFn};
use crate::scalar::Real;
use crate::signal::{check_same, Signal};

/// `(f∗g)(z) = (1/n) Σ_{z'} f(z') g(z − z')`, cyclic.
pub fn conv_fun_fun<T: Real>(f: &PhaseFn<T>, g: &PhaseFn<T>) -> Result<PhaseFn<T>> {
    let prod = symplectic_fourier(f).mul(&symplectic_fourier(g))?;
    Ok(symplectic_fourier(&prod))
}

/// `f⋆S = (1/n) Σ_z f(z) α_z(S)`, computed as `F_W⁻¹(F_σ f · F_W S)`.
pub fn conv_fun_op<T: Real>(f: &PhaseFn<T>, s: &OperatorMatrix<T>) -> Result<OperatorMatrix<T>> {
    let prod = symplectic_fourier(f).mul(&fourier_wigner(s))?;
    Ok(inverse_fourier_wigner(&prod))
}

/// `S⋆T(z) = tr(S α_z(Ť))`, computed as `F_σ(F_W S · F_W T)`.
pub fn conv_op_op<T: Real>(s: &OperatorMatrix<T>, t: &OperatorMatrix<T>) -> Result<PhaseFn<T>> {
    let prod = fourier_wigner(s).mul(&fourier_wigner(t))?;
    Ok(symplectic_fourier(&prod))
}

/// Localization operator from its weak definition
/// `⟨𝒜ψ, φ⟩ = ⟨f, V_{φ₂}φ · conj(V_{φ₁}ψ)⟩`, i.e. `𝒜 = V_{φ₂}* f V_{φ₁}`.
///
/// Assembled column by column through STFT analysis and synthesis; equals
/// `f⋆(φ₂⊗φ₁)`.
pub fn loc_op<T: Real>(
    f: &PhaseFn<T>,
    phi1: &Signal<T>,
    phi2: &Signal<T>,
) -> Result<OperatorMatrix<T>> {
    let g = f.grid();
    check_same(g, phi1.grid())?;
    check_same(g, phi2.grid())?;
    let mut out = OperatorMatrix::zeros(g);
    let mut entries = out.entries().clone();
    for s in 0..g.n() {
        let e = Signal::basis(g, g.center(s));
        let mut v = stft(&e, phi1)?;
        v.multiply(f)?;
        let col = synthesis(&v, phi2)?;
        for (a, x) in col.values().iter().enumerate() {
            entries[[a, s]] = *x;
        }
    }
    out = OperatorMatrix::from_raw(g, entries);
    Ok(out)
}

/// Direct lattice sums, used as oracles for the transform-based paths.
pub mod naive {
    use num_complex::Complex;

    use crate::error::Result;
    use crate::grid::PhasePoint;
    use crate::operator::{check_op, translate_op, OperatorMatrix};
    use crate::phase::PhaseFn;
    use crate::scalar::Real;
    use crate::signal::check_same;

    pub fn conv_fun_fun<T: Real>(f: &PhaseFn<T>, g: &PhaseFn<T>) -> Result<PhaseFn<T>> {
        let grid = f.grid();
        check_same(grid, g.grid())?;
        let n = grid.n_i64();
        let half = n / 2;
        let inv = T::one() / T::of(n as f64);
        Ok(PhaseFn::from_indices(grid, |m, k| {
            let mut acc = Complex::new(T::zero(), T::zero());
            for mp in -half..half {
                for kp in -half..half {
                    acc = acc
                        + f.at(PhasePoint::new(mp, kp))
                            * g.at(PhasePoint::new(grid.wrap(m - mp), grid.wrap(k - kp)));
                }
            }
            acc * inv
        }))
    }

    pub fn conv_fun_op<T: Real>(
        f: &PhaseFn<T>,
        s: &OperatorMatrix<T>,
    ) -> Result<OperatorMatrix<T>> {
        let grid = f.grid();
        check_same(grid, s.grid())?;
        let half = grid.n_i64() / 2;
        let inv = T::one() / T::of(grid.n() as f64);
        let mut acc = OperatorMatrix::zeros(grid);
        for m in -half..half {
            for k in -half..half {
                let z = PhasePoint::new(m, k);
                acc = acc.add(&translate_op(s, z).scale(f.at(z) * inv))?;
            }
        }
        Ok(acc)
    }

    pub fn conv_op_op<T: Real>(s: &OperatorMatrix<T>, t: &OperatorMatrix<T>) -> Result<PhaseFn<T>> {
        let grid = s.grid();
        check_same(grid, t.grid())?;
        let tc = check_op(t);
        Ok(PhaseFn::from_indices(grid, |m, k| {
            let shifted = translate_op(&tc, PhasePoint::new(m, k));
            // tr(S X) = Σ_{a,b} S[a,b] X[b,a]
            let mut acc = Complex::new(T::zero(), T::zero());
            for ((a, b), v) in s.entries().indexed_iter() {
                acc = acc + v * shifted.entries()[[b, a]];
            }
            acc
        }))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::{make_grid, PhasePoint};
    use crate::operator::{check_op, rank_one, tf_shift};
    use crate::phase::{delta_mask, mask, MaskKind};
    use crate::rng::{
        random_nonnegative_fn, random_operator, random_phase_fn, random_psd, random_signal, LabRng,
    };
    use crate::signal::{atom, AtomKind};
    use num_complex::Complex;

    fn c(re: f64) -> Complex<f64> {
        Complex::new(re, 0.0)
    }

    #[test]
    fn fast_paths_match_naive() {
        for n in [8, 16] {
            let g = make_grid(n).unwrap();
            let mut rng = LabRng::new(100 + n as u64);
            let f = random_phase_fn::<f64>(g, &mut rng);
            let h = random_phase_fn::<f64>(g, &mut rng);
            let s = random_operator::<f64>(g, &mut rng);
            let t = random_operator::<f64>(g, &mut rng);
            let ff = conv_fun_fun(&f, &h).unwrap();
            assert!(ff.max_abs_diff(&naive::conv_fun_fun(&f, &h).unwrap()) < 1e-12);
            let fo = conv_fun_op(&f, &s).unwrap();
            assert!(fo.max_abs_diff(&naive::conv_fun_op(&f, &s).unwrap()) < 1e-12);
            let oo = conv_op_op(&s, &t).unwrap();
            assert!(oo.max_abs_diff(&naive::conv_op_op(&s, &t).unwrap()) < 1e-12);
        }
    }

    #[test]
    fn delta_is_the_unit() {
        let g = make_grid(16).unwrap();
        let f = random_phase_fn::<f64>(g, &mut LabRng::new(1));
        assert!(conv_fun_fun(&delta_mask(g), &f).unwrap().max_abs_diff(&f) < 1e-12);
    }

    #[test]
    fn integral_is_multiplicative() {
        let g = make_grid(16).unwrap();
        let mut rng = LabRng::new(2);
        let f = random_phase_fn::<f64>(g, &mut rng);
        let h = random_phase_fn::<f64>(g, &mut rng);
        let lhs = conv_fun_fun(&f, &h).unwrap().integral();
        let rhs = f.integral() * h.integral();
        assert!((lhs - rhs).norm() < 1e-10 * rhs.norm().max(1.0));
    }

    #[test]
    fn identity_lemmas() {
        let g = make_grid(16).unwrap();
        let mut rng = LabRng::new(3);
        let f = random_phase_fn::<f64>(g, &mut rng);
        let s = random_operator::<f64>(g, &mut rng);
        let one = PhaseFn::constant(g, c(1.0));
        let id = OperatorMatrix::identity(g);
        let ff = conv_fun_fun(&f, &one).unwrap();
        assert!(ff.max_abs_diff(&PhaseFn::constant(g, f.integral())) < 1e-12);
        let so = conv_op_op(&s, &id).unwrap();
        assert!(so.max_abs_diff(&PhaseFn::constant(g, s.trace())) < 1e-12);
        let os = conv_fun_op(&one, &s).unwrap();
        assert!(os.max_abs_diff(&id.scale(s.trace())) < 1e-12);
        let fi = conv_fun_op(&f, &id).unwrap();
        assert!(fi.max_abs_diff(&id.scale(f.integral())) < 1e-12);
    }

    #[test]
    fn integral_of_operator_convolution() {
        let g = make_grid(16).unwrap();
        let mut rng = LabRng::new(4);
        let s = random_operator::<f64>(g, &mut rng);
        let t = random_operator::<f64>(g, &mut rng);
        let i = conv_op_op(&s, &t).unwrap().integral();
        assert!((i - s.trace() * t.trace()).norm() < 1e-12);
    }

    #[test]
    fn rank_one_convolution_is_spectrogram() {
        let g = make_grid(16).unwrap();
        let mut rng = LabRng::new(5);
        let xi = random_signal::<f64>(g, &mut rng);
        let phi = random_signal::<f64>(g, &mut rng);
        let pc = phi.reflect();
        let lhs = conv_op_op(&rank_one(&xi, &xi).unwrap(), &rank_one(&pc, &pc).unwrap()).unwrap();
        let v = stft(&xi, &phi).unwrap();
        let rhs = v.to_phase_fn().map(|x| c(x.norm_sqr()));
        assert!(lhs.max_abs_diff(&rhs) < 1e-13);
    }

    #[test]
    fn plane_wave_convolution_is_a_shift() {
        let g = make_grid(8).unwrap();
        let t = random_operator::<f64>(g, &mut LabRng::new(6));
        let z0 = PhasePoint::new(2, -1);
        let f: PhaseFn<f64> = mask(g, &MaskKind::PlaneWave { m: z0.m, k: z0.k }).unwrap();
        let out = conv_fun_op(&f, &t).unwrap();
        let fw = crate::operator::fourier_wigner(&t).at(z0);
        // F_W(T)(z₀) e^{-πi x₀ω₀} π(z₀) with the lattice branch for the phase
        let want = tf_shift::<f64>(g, z0)
            .unwrap()
            .scale(fw * g.half_root::<f64>(-g.xw_product(z0.m, z0.k)));
        assert!(out.max_abs_diff(&want) < 1e-12);
    }

    #[test]
    fn loc_op_matches_convolution() {
        let g = make_grid(16).unwrap();
        let mut rng = LabRng::new(7);
        let f = random_phase_fn::<f64>(g, &mut rng);
        let p1 = random_signal::<f64>(g, &mut rng);
        let p2 = atom::<f64>(g, &AtomKind::Hermite { order: 2 }).unwrap();
        let a = loc_op(&f, &p1, &p2).unwrap();
        let b = conv_fun_op(&f, &rank_one(&p2, &p1).unwrap()).unwrap();
        assert!(a.max_abs_diff(&b) < 1e-12);
    }

    #[test]
    fn loc_op_of_one_is_identity() {
        let g = make_grid(16).unwrap();
        let phi = atom::<f64>(g, &AtomKind::OnesidedExp).unwrap();
        let a = loc_op(&PhaseFn::constant(g, c(1.0)), &phi, &phi).unwrap();
        assert!(a.max_abs_diff(&OperatorMatrix::identity(g)) < 1e-12);
        let all: PhaseFn<f64> = mask(g, &MaskKind::IndicatorDisk { r: g.rho_max() }).unwrap();
        assert!(
            loc_op(&all, &phi, &phi)
                .unwrap()
                .max_abs_diff(&OperatorMatrix::identity(g))
                < 1e-12
        );
    }

    #[test]
    fn nonnegative_symbol_gives_positive_loc_op() {
        let g = make_grid(8).unwrap();
        let mut rng = LabRng::new(8);
        let f = random_nonnegative_fn::<f64>(g, &mut rng);
        let phi = random_signal::<f64>(g, &mut rng);
        let ev = loc_op(&f, &phi, &phi)
            .unwrap()
            .hermitian_eigenvalues()
            .unwrap();
        assert!(*ev.last().unwrap() >= -1e-10);
    }

    #[test]
    fn check_commutes_with_operator_convolution() {
        let g = make_grid(8).unwrap();
        let mut rng = LabRng::new(9);
        let s = random_psd::<f64>(g, &mut rng);
        let t = random_psd::<f64>(g, &mut rng);
        let st = conv_op_op(&s, &t).unwrap();
        assert!(st.max_imag() < 1e-13);
        assert!(st.values().iter().all(|v| v.re >= -1e-12));
        let sc = conv_op_op(&check_op(&s), &check_op(&t)).unwrap();
        assert!(sc.max_abs_diff(&st.reflect()) < 1e-13);
    }
}
