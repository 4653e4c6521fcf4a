//! Tauberian diagnostics: Wiener-class checks, window deconvolution, the
//! constructive transfer identities, compactness and decay profiles,
//! oscillation moduli and invertibility checks.

use num_complex::Complex;
use serde::{Deserialize, Serialize};

use crate::conv::{conv_fun_fun, conv_fun_op, conv_op_op, loc_op};
use crate::error::{Error, Result};
use crate::gabor::fg_sup_profile;
use crate::grid::{make_grid, GridSpec, PhasePoint};
use crate::linalg;
use crate::operator::{
    fourier_wigner, inverse_fourier_wigner, rank_one, schatten, weyl_symbol, OperatorMatrix,
};
use crate::phase::{mask, symplectic_fourier, MaskKind, PhaseFn};
use crate::profile::{decay_profile, uniform_radii, DecayProfile};
use crate::rng::{random_operator, LabRng};
use crate::scalar::Real;
use crate::signal::{atom, check_same, AtomKind, Signal};

/// Relative floor below which a Fourier–Wigner value counts as a zero.
pub const DIVISION_GUARD: f64 = 1e-10;

fn min_max<T: Real>(f: &PhaseFn<T>) -> (f64, f64) {
    (f.min_abs().as_f64(), f.norm_sup().as_f64())
}

/// `(min |F_σ a| ≥ δ, min |F_σ a|)`.
pub fn wiener_class_fun<T: Real>(a: &PhaseFn<T>, delta: f64) -> (bool, f64) {
    let m = symplectic_fourier(a).min_abs().as_f64();
    (m >= delta, m)
}

/// `(min |F_W S| ≥ δ, min |F_W S|)`.
pub fn wiener_class_op<T: Real>(s: &OperatorMatrix<T>, delta: f64) -> (bool, f64) {
    let m = fourier_wigner(s).min_abs().as_f64();
    (m >= delta, m)
}

/// `F / G` pointwise, refusing when `min |G| < 1e-10 max |G|`.
fn guarded_quotient<T: Real>(num: &PhaseFn<T>, den: &PhaseFn<T>) -> Result<PhaseFn<T>> {
    check_same(num.grid(), den.grid())?;
    let (min, max) = min_max(den);
    if min.is_nan() || min < DIVISION_GUARD * max || max == 0.0 {
        return Err(Error::WindowHasZeros { min, max });
    }
    let values = ndarray::Zip::from(num.values())
        .and(den.values())
        .map_collect(|a, b| a / b);
    Ok(PhaseFn::from_raw(num.grid(), values))
}

/// `r = F_σ(F_W T / F_W S)`, so that `r⋆S = T`.
pub fn deconvolve<T: Real>(t: &OperatorMatrix<T>, s: &OperatorMatrix<T>) -> Result<PhaseFn<T>> {
    Ok(symplectic_fourier(&guarded_quotient(
        &fourier_wigner(t),
        &fourier_wigner(s),
    )?))
}

/// `ρ = F_σ(F_σ g / F_σ a)`, so that `ρ∗a = g`.
pub fn deconvolve_fun<T: Real>(g: &PhaseFn<T>, a: &PhaseFn<T>) -> Result<PhaseFn<T>> {
    Ok(symplectic_fourier(&guarded_quotient(
        &symplectic_fourier(g),
        &symplectic_fourier(a),
    )?))
}

/// Operator with `F_W = e^{-π|z|²/2}` sampled on the lattice.
///
/// Agrees with `φ₀⊗φ₀` up to periodization error but, unlike any real rank-one
/// window, has no zeros on the line `m = −n/2`.
pub fn lattice_gaussian_window<T: Real>(grid: GridSpec) -> OperatorMatrix<T> {
    let n = grid.n() as f64;
    let f = PhaseFn::from_indices(grid, |m, k| {
        Complex::new(
            T::of((-std::f64::consts::PI * (m * m + k * k) as f64 / (2.0 * n)).exp()),
            T::zero(),
        )
    });
    inverse_fourier_wigner(&f)
}

/// Output of the function-side transfer check.
#[derive(Clone, Debug)]
pub struct TransferFun<T: Real> {
    /// `‖K_T − r⋆K_S‖_HS`.
    pub residual: f64,
    /// `1 + ‖f‖_∞ ‖T‖_{S¹}`, the scale the residual is measured against.
    pub scale: f64,
    pub k_t: OperatorMatrix<T>,
}

/// `K_X = f⋆X − A tr(X) I`; checks `K_T = r⋆K_S` with `r = deconvolve(T, S)`.
pub fn tauberian_transfer_fun<T: Real>(
    f: &PhaseFn<T>,
    s: &OperatorMatrix<T>,
    a: Complex<T>,
    t: &OperatorMatrix<T>,
) -> Result<TransferFun<T>> {
    let r = deconvolve(t, s)?;
    let k = |x: &OperatorMatrix<T>| -> Result<OperatorMatrix<T>> {
        Ok(conv_fun_op(f, x)?.add_identity(-(a * x.trace())))
    };
    let k_s = k(s)?;
    let k_t = k(t)?;
    let residual = k_t.sub(&conv_fun_op(&r, &k_s)?)?.hs_norm().as_f64();
    let scale = 1.0 + f.norm_sup().as_f64() * schatten(t)?.s1();
    Ok(TransferFun {
        residual,
        scale,
        k_t,
    })
}

/// Output of the operator-side transfer check.
#[derive(Clone, Debug)]
pub struct TransferOp<T: Real> {
    /// `‖h_T − r∗h_S‖` in the weighted ℓ² norm.
    pub residual_t: f64,
    /// `‖K_g − ρ⋆K_a‖_HS` for the function window `a = a_S`.
    pub residual_g: f64,
    pub scale: f64,
    pub h_t: PhaseFn<T>,
    pub k_g: OperatorMatrix<T>,
}

impl<T: Real> TransferOp<T> {
    pub fn residual(&self) -> f64 {
        self.residual_t.max(self.residual_g)
    }
}

/// Checks `R⋆T − A tr(T) = r∗(R⋆S − A tr(S))` with `r = deconvolve(T, S)`, and
/// `K_g = ρ⋆K_a` for `K_x = x⋆R − A ∫x I`, where `a = a_S` and `ρ∗a = g`.
pub fn tauberian_transfer_op<T: Real>(
    r_op: &OperatorMatrix<T>,
    s: &OperatorMatrix<T>,
    a: Complex<T>,
    g: &PhaseFn<T>,
    t: &OperatorMatrix<T>,
) -> Result<TransferOp<T>> {
    let h = |x: &OperatorMatrix<T>| -> Result<PhaseFn<T>> {
        Ok(conv_op_op(r_op, x)?.add_constant(-(a * x.trace())))
    };
    let r = deconvolve(t, s)?;
    let h_s = h(s)?;
    let h_t = h(t)?;
    let residual_t = h_t.sub(&conv_fun_fun(&r, &h_s)?)?.norm_l2().as_f64();

    let window = weyl_symbol(s);
    let rho = deconvolve_fun(g, &window)?;
    let k = |x: &PhaseFn<T>| -> Result<OperatorMatrix<T>> {
        Ok(conv_fun_op(x, r_op)?.add_identity(-(a * x.integral())))
    };
    let k_a = k(&window)?;
    let k_g = k(g)?;
    let residual_g = k_g.sub(&conv_fun_op(&rho, &k_a)?)?.hs_norm().as_f64();
    let r_norm = schatten(r_op)?.op();
    let scale = 1.0 + r_norm * (schatten(t)?.s1() + g.norm_l1().as_f64());
    Ok(TransferOp {
        residual_t,
        residual_g,
        scale,
        h_t,
        k_g,
    })
}

/// Singular-value statistics of an operator.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CompactnessSummary {
    pub n: usize,
    pub eps: f64,
    pub fraction_above: f64,
    pub fraction_above_tenth: f64,
    pub s1: f64,
    pub s2: f64,
    pub op: f64,
}

pub fn compactness_report<T: Real>(k: &OperatorMatrix<T>, eps: f64) -> Result<CompactnessSummary> {
    let sp = schatten(k)?;
    Ok(CompactnessSummary {
        n: k.grid().n(),
        eps,
        fraction_above: sp.fraction_above(eps),
        fraction_above_tenth: sp.fraction_above(0.1),
        s1: sp.s1(),
        s2: sp.s2(),
        op: sp.op(),
    })
}

/// A family of fractions behaves compactly if it is non-increasing in `n`
/// and strictly smaller at the largest `n` than at the smallest.
pub fn compact_trend(fractions: &[f64]) -> bool {
    fractions.len() >= 2
        && fractions.windows(2).all(|w| w[1] <= w[0])
        && fractions.last() < fractions.first()
}

/// Fraction of `ρ_max` at which decay is read off.
pub const DECAY_READ_FRACTION: f64 = 0.8;
/// `D(0.8 ρ_max) / D(0)` at or below which a profile counts as decaying.
pub const DECAY_RATIO_MAX: f64 = 0.05;
/// `G(0.8 ρ_max) / G(0.2 ρ_max)` at or below which the sup-profile counts as decaying.
pub const FG_RATIO_MAX: f64 = 0.5;

/// Decay profile on eleven radii `0, 0.1 ρ_max, …, ρ_max`.
pub fn standard_profile<T: Real>(h: &PhaseFn<T>) -> DecayProfile {
    decay_profile(h, &uniform_radii(h.grid().rho_max(), 11))
}

/// `D(0.8 ρ_max) / D(0)` of a profile on [`standard_profile`] radii.
pub fn decay_ratio(p: &DecayProfile) -> f64 {
    let d0 = p.first();
    if d0 == 0.0 {
        return 0.0;
    }
    p.values[8] / d0
}

/// `max{|f(z) − f(z − z')| : |z'| ≤ δ, |z| ≥ ρ}`.
pub fn osc_modulus<T: Real>(f: &PhaseFn<T>, delta: f64, rho: f64) -> f64 {
    let g = f.grid();
    let n = g.n_i64();
    let half = n / 2;
    let nf = n as f64;
    let d2 = delta * delta * nf * (1.0 + 1e-12);
    let r2 = rho * rho * nf * (1.0 - 1e-12);
    let steps: Vec<PhasePoint> = (-half..half)
        .flat_map(|a| (-half..half).map(move |b| PhasePoint::new(a, b)))
        .filter(|p| ((p.m * p.m + p.k * p.k) as f64) <= d2)
        .collect();
    let mut best = 0.0f64;
    for m in -half..half {
        for k in -half..half {
            if ((m * m + k * k) as f64) < r2 {
                continue;
            }
            let z = PhasePoint::new(m, k);
            let v = f.at(z);
            for s in &steps {
                let w = PhasePoint::new(g.wrap(m - s.m), g.wrap(k - s.k));
                best = best.max((v - f.at(w)).norm().as_f64());
            }
        }
    }
    best
}

/// Extreme singular values of a localization operator.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct IsoCheck {
    pub n: usize,
    pub sigma_min: f64,
    pub sigma_max: f64,
    pub invertible: bool,
}

pub const INVERTIBLE_FLOOR: f64 = 1e-8;

pub fn iso_check<T: Real>(f: &PhaseFn<T>, phi: &Signal<T>) -> Result<IsoCheck> {
    let norm = phi.norm().as_f64();
    if (norm - 1.0).abs() > 1e-6 {
        return Err(Error::UnnormalizedWindow(norm));
    }
    let a = loc_op(f, phi, phi)?;
    let sigma = linalg::singular_values(a.entries())?;
    let sigma_max = sigma.first().map(|s| s.as_f64()).unwrap_or(0.0);
    let sigma_min = sigma.last().map(|s| s.as_f64()).unwrap_or(0.0);
    Ok(IsoCheck {
        n: f.grid().n(),
        sigma_min,
        sigma_max,
        invertible: sigma_min > INVERTIBLE_FLOOR,
    })
}

/// `(max − min) / max ≤ band`.
pub fn stable_within(values: &[f64], band: f64) -> bool {
    let max = values.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let min = values.iter().copied().fold(f64::INFINITY, f64::min);
    max > 0.0 && (max - min) / max <= band
}

/// One row of the Schatten counterexample table.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CounterexampleRow {
    /// Disk radius in lattice steps.
    pub spread: u32,
    pub l1: f64,
    pub l2: f64,
    pub s1: f64,
    pub s2: f64,
    pub s2_over_l2: f64,
}

/// `f_w⋆S_{1/2}` for normalized disk indicators `f_w` (unit integral).
///
/// Since `f⋆S_{1/2} = L_f`, the Hilbert–Schmidt norm equals `‖f_w‖₂` exactly
/// while the trace norm is unconstrained by `‖f_w‖₁ = 1`.
pub fn schatten_counterexample_experiment<T: Real>(
    grid: GridSpec,
    spreads: &[u32],
) -> Result<Vec<CounterexampleRow>> {
    let h = grid.step::<f64>();
    let s_half = crate::quantize::tau_operator::<T>(grid, 0.5)?;
    spreads
        .iter()
        .map(|&w| {
            let r = w as f64 * h;
            let disk: PhaseFn<T> = mask(grid, &MaskKind::IndicatorDisk { r })?;
            let f = disk.scale(Complex::new(T::one() / disk.integral().re, T::zero()));
            let sp = schatten(&conv_fun_op(&f, &s_half)?)?;
            let l2 = f.norm_l2().as_f64();
            Ok(CounterexampleRow {
                spread: w,
                l1: f.norm_l1().as_f64(),
                l2,
                s1: sp.s1(),
                s2: sp.s2(),
                s2_over_l2: sp.s2() / l2,
            })
        })
        .collect()
}

/// `a = W(φ₀, φ₀) = 2 e^{-2π|z|²}` quantized through `S_{1/2}`; returns its spectrum.
pub fn gaussian_weyl_example<T: Real>(grid: GridSpec) -> Result<crate::operator::SchattenSpectrum> {
    let phi = atom::<T>(grid, &AtomKind::Gaussian)?;
    let a = crate::operator::wigner(&phi, &phi)?;
    let s_half = crate::quantize::tau_operator::<T>(grid, 0.5)?;
    schatten(&conv_fun_op(&a, &s_half)?)
}

/// Outcome of a trend test in a report.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    PassTrend,
    Fail,
    NotEvaluated,
}

impl Verdict {
    pub fn from_bool(b: bool) -> Self {
        if b {
            Verdict::PassTrend
        } else {
            Verdict::Fail
        }
    }
}

/// Inputs of one Tauberian report.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TauberCase {
    pub mask: MaskKind,
    pub window: AtomKind,
    /// `A` as `[re, im]`.
    pub a: [f64; 2],
    pub ns: Vec<usize>,
    pub seed: u64,
    pub eps: f64,
    pub r_freq: f64,
}

/// Per-grid measurements of a Tauberian report.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TauberCell {
    pub n: usize,
    /// Wiener-class test of the window operator `φ⊗φ`.
    pub wiener_ok: bool,
    pub wiener_min: f64,
    /// Transfer residual against the lattice Gaussian window, when it passes the division guard.
    pub residual: Option<f64>,
    pub residual_scale: Option<f64>,
    pub residual_error: Option<String>,
    /// Singular values of `K_S = (f − A)⋆(φ⊗φ)`.
    pub compact: CompactnessSummary,
    /// Decay of `h = f∗a − A∫a` with `a = W(φ, φ)`.
    pub decay: DecayProfile,
    pub decay_ratio: f64,
    /// Sup-profile `G(ρ)` for grids within the four-dimensional size guard.
    pub fg: Option<DecayProfile>,
    pub fg_ratio: Option<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TauberVerdicts {
    /// Compact-profile trend of `K_S` across `n`.
    pub compact: Verdict,
    /// Decay of `f∗a − A∫a` at the largest `n`.
    pub decay: Verdict,
    /// Sup-profile decay at the largest `n ≤ 32`.
    pub fg: Verdict,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TauberReport {
    pub mask: String,
    pub window: String,
    pub a: [f64; 2],
    pub cells: Vec<TauberCell>,
    pub verdicts: TauberVerdicts,
}

impl TauberReport {
    pub fn max_residual(&self) -> Option<f64> {
        self.cells
            .iter()
            .filter_map(|c| c.residual)
            .reduce(f64::max)
    }
}

/// Sup-profile radii `0.2 ρ_max` and `0.8 ρ_max`.
pub fn fg_radii(grid: GridSpec) -> Vec<f64> {
    vec![0.2 * grid.rho_max(), 0.8 * grid.rho_max()]
}

fn tauber_cell(case: &TauberCase, n: usize) -> Result<TauberCell> {
    let grid = make_grid(n)?;
    let a = Complex::new(case.a[0], case.a[1]);
    let f: PhaseFn<f64> = mask(grid, &case.mask)?;
    let phi = atom::<f64>(grid, &case.window)?;
    let s = rank_one(&phi, &phi)?;
    let (_, wiener_min) = wiener_class_op(&s, 0.0);
    let fw_max = fourier_wigner(&s).norm_sup();
    let wiener_ok = wiener_min >= DIVISION_GUARD * fw_max;

    let t = random_operator::<f64>(grid, &mut LabRng::new(case.seed).fork(n as u64));
    let (residual, residual_scale, residual_error) =
        match tauberian_transfer_fun(&f, &lattice_gaussian_window(grid), a, &t) {
            Ok(tr) => (Some(tr.residual), Some(tr.scale), None),
            Err(e) => (None, None, Some(e.to_string())),
        };

    let fa = f.add_constant(-a);
    let compact = compactness_report(&conv_fun_op(&fa, &s)?, case.eps)?;
    let w = weyl_symbol(&s);
    let h = conv_fun_fun(&f, &w)?.add_constant(-(a * w.integral()));
    let decay = standard_profile(&h);
    let decay_ratio = decay_ratio(&decay);

    let (fg, fg_ratio) = if n <= crate::gabor::STFT4_MAX_POINTS {
        let env: PhaseFn<f64> = mask(grid, &MaskKind::GaussianEnv)?;
        let p = fg_sup_profile(&f, a, &env, case.r_freq, &fg_radii(grid))?;
        let ratio = if p.first() > 0.0 {
            p.last() / p.first()
        } else {
            0.0
        };
        (Some(p), Some(ratio))
    } else {
        (None, None)
    };
    Ok(TauberCell {
        n,
        wiener_ok,
        wiener_min,
        residual,
        residual_scale,
        residual_error,
        compact,
        decay,
        decay_ratio,
        fg,
        fg_ratio,
    })
}

/// Runs every grid of a case (in increasing `n`) and derives the verdicts.
pub fn run_tauber(case: &TauberCase) -> Result<TauberReport> {
    let mut ns = case.ns.clone();
    ns.sort_unstable();
    ns.dedup();
    let cells = ns
        .iter()
        .map(|&n| tauber_cell(case, n))
        .collect::<Result<Vec<_>>>()?;
    let fractions: Vec<f64> = cells.iter().map(|c| c.compact.fraction_above).collect();
    let compact = if cells.len() >= 2 {
        Verdict::from_bool(compact_trend(&fractions))
    } else {
        Verdict::NotEvaluated
    };
    let decay = match cells.last() {
        Some(c) => Verdict::from_bool(c.decay_ratio <= DECAY_RATIO_MAX),
        None => Verdict::NotEvaluated,
    };
    let fg = match cells.iter().rev().find_map(|c| c.fg_ratio) {
        Some(r) => Verdict::from_bool(r <= FG_RATIO_MAX),
        None => Verdict::NotEvaluated,
    };
    Ok(TauberReport {
        mask: case.mask.to_string(),
        window: case.window.to_string(),
        a: case.a,
        cells,
        verdicts: TauberVerdicts { compact, decay, fg },
    })
}

/// One mask in the Pitt dichotomy check.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PittRow {
    pub mask: String,
    pub n: usize,
    pub fg_ratio: f64,
    pub osc_far: f64,
    pub raw_decay_ratio: f64,
    /// `true` unless the mask passes the sup-profile test and is slowly
    /// oscillating while its raw profile does not decay.
    pub consistent: bool,
}

/// Oscillation floor for the Pitt check, measured with `δ = h` beyond `0.8 ρ_max`.
pub const OSC_FLOOR: f64 = 0.05;

pub fn pitt_check(masks: &[MaskKind], n: usize) -> Result<Vec<PittRow>> {
    let grid = make_grid(n)?;
    let env: PhaseFn<f64> = mask(grid, &MaskKind::GaussianEnv)?;
    masks
        .iter()
        .map(|mk| {
            let f: PhaseFn<f64> = mask(grid, mk)?;
            let p = fg_sup_profile(&f, Complex::new(0.0, 0.0), &env, 1.0, &fg_radii(grid))?;
            let fg_ratio = if p.first() > 0.0 {
                p.last() / p.first()
            } else {
                0.0
            };
            let osc_far = osc_modulus(&f, grid.step::<f64>(), DECAY_READ_FRACTION * grid.rho_max());
            let raw_decay_ratio = decay_ratio(&standard_profile(&f));
            let premise = fg_ratio <= FG_RATIO_MAX && osc_far <= OSC_FLOOR;
            Ok(PittRow {
                mask: mk.to_string(),
                n,
                fg_ratio,
                osc_far,
                raw_decay_ratio,
                consistent: !premise || raw_decay_ratio <= DECAY_RATIO_MAX,
            })
        })
        .collect()
}

/// `a = S⋆S`: checks `F_σ a = (F_W S)²` and `∫a = (tr S)²`; returns both deviations.
pub fn square_window_check<T: Real>(s: &OperatorMatrix<T>) -> Result<(f64, f64)> {
    let a = conv_op_op(s, s)?;
    let fw = fourier_wigner(s);
    let d1 = symplectic_fourier(&a).max_abs_diff(&fw.mul(&fw)?).as_f64();
    let d2 = (a.integral() - s.trace() * s.trace()).norm().as_f64();
    Ok((d1, d2))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::operator::{parity, tf_shift};
    use crate::phase::delta_mask;
    use crate::rng::random_phase_fn;

    fn c(re: f64) -> Complex<f64> {
        Complex::new(re, 0.0)
    }

    fn gaussian_state(g: GridSpec) -> OperatorMatrix<f64> {
        let phi = atom::<f64>(g, &AtomKind::Gaussian).unwrap();
        rank_one(&phi, &phi).unwrap()
    }

    #[test]
    fn wiener_class_examples() {
        let g = make_grid(16).unwrap();
        let env: PhaseFn<f64> = mask(g, &MaskKind::GaussianEnv).unwrap();
        let (ok, m) = wiener_class_fun(&env, 1e-12);
        assert!(ok && m > 0.0);
        assert!(symplectic_fourier(&env).max_abs_diff(&env) < 1e-4);
        let (ok, m) = wiener_class_fun(&delta_mask::<f64>(g), 0.5);
        assert!(ok && (m - 1.0).abs() < 1e-14);
        let disk: PhaseFn<f64> = mask(g, &MaskKind::IndicatorDisk { r: 1.0 }).unwrap();
        let (_, m) = wiener_class_fun(&disk, 0.0);
        assert!(m < 1e-2 * symplectic_fourier(&disk).norm_sup());

        let h1 = atom::<f64>(g, &AtomKind::Hermite { order: 1 }).unwrap();
        let s = rank_one(&h1, &h1).unwrap();
        let (ok, _) = wiener_class_op(&s, 1e-4 * fourier_wigner(&s).norm_sup());
        assert!(!ok);
        let (ok, _) = wiener_class_op(&OperatorMatrix::<f64>::identity(g), 1e-10);
        assert!(!ok);
        // real rank-one windows vanish on the line m = −n/2; the lattice Gaussian does not
        let (ok, _) = wiener_class_op(&gaussian_state(g), 1e-12);
        assert!(!ok);
        let (ok, m) = wiener_class_op(&lattice_gaussian_window::<f64>(g), 1e-10);
        let corner = (-std::f64::consts::PI * g.rho_max().powi(2) / 2.0).exp();
        assert!(ok && (m / corner - 1.0).abs() < 1e-9);
    }

    #[test]
    fn lattice_gaussian_is_close_to_the_projection() {
        let g = make_grid(64).unwrap();
        let d = lattice_gaussian_window::<f64>(g).max_abs_diff(&gaussian_state(g));
        assert!(d < 1e-6, "{d}");
    }

    #[test]
    fn deconvolution() {
        let g = make_grid(16).unwrap();
        let s = lattice_gaussian_window::<f64>(g);
        let r = deconvolve(&s, &s).unwrap();
        assert!(r.max_abs_diff(&delta_mask(g)) < 1e-8 * g.n() as f64);
        assert!(conv_fun_op(&r, &s).unwrap().max_abs_diff(&s) < 1e-12);
        let t = random_operator::<f64>(g, &mut LabRng::new(1));
        let r = deconvolve(&t, &s).unwrap();
        let res = conv_fun_op(&r, &s).unwrap().sub(&t).unwrap().hs_norm();
        assert!(res <= 1e-8 * t.hs_norm(), "{res}");
        let h1 = atom::<f64>(g, &AtomKind::Hermite { order: 1 }).unwrap();
        assert!(matches!(
            deconvolve(&t, &rank_one(&h1, &h1).unwrap()),
            Err(Error::WindowHasZeros { .. })
        ));
        assert!(matches!(
            deconvolve(&t, &gaussian_state(g)),
            Err(Error::WindowHasZeros { .. })
        ));
    }

    #[test]
    fn transfer_for_functions() {
        let g = make_grid(16).unwrap();
        let mut rng = LabRng::new(2);
        let s = lattice_gaussian_window::<f64>(g);
        let t = random_operator::<f64>(g, &mut rng);
        let a = Complex::new(0.7, -0.2);
        let constant = PhaseFn::constant(g, a);
        let tr = tauberian_transfer_fun(&constant, &s, a, &t).unwrap();
        assert!(tr.residual <= 1e-10 && tr.k_t.hs_norm() < 1e-12);
        for mk in [
            MaskKind::Chirp,
            MaskKind::PlaneWave { m: 2, k: 1 },
            MaskKind::ATau { tau: 0.3 },
        ] {
            let f: PhaseFn<f64> = mask(g, &mk).unwrap();
            let tr = tauberian_transfer_fun(&f, &s, c(0.0), &t).unwrap();
            assert!(tr.residual <= 1e-8 * tr.scale, "{mk}: {}", tr.residual);
        }
    }

    #[test]
    fn plane_wave_convolution_is_not_compact() {
        let z0 = PhasePoint::new(1, 1);
        let mut s1 = Vec::new();
        for n in [16, 32] {
            let g = make_grid(n).unwrap();
            let s = gaussian_state(g);
            let f: PhaseFn<f64> = mask(g, &MaskKind::PlaneWave { m: z0.m, k: z0.k }).unwrap();
            let k = conv_fun_op(&f, &s).unwrap();
            let sp = schatten(&k).unwrap();
            let fw = fourier_wigner(&s).at(z0).norm();
            assert!((sp.op() - fw).abs() < 1e-12);
            assert!(sp.sigma.iter().all(|v| (v - fw).abs() < 1e-12));
            s1.push(sp.fraction_above(0.01));
        }
        assert!(!compact_trend(&s1));
    }

    #[test]
    fn transfer_for_operators() {
        let g = make_grid(16).unwrap();
        let mut rng = LabRng::new(3);
        let s = lattice_gaussian_window::<f64>(g);
        let t = random_operator::<f64>(g, &mut rng);
        let gf = random_phase_fn::<f64>(g, &mut rng);
        let a = Complex::new(1.5, 0.5);
        let scalar = OperatorMatrix::identity(g).scale(a);
        let tr = tauberian_transfer_op(&scalar, &s, a, &gf, &t).unwrap();
        assert!(tr.h_t.norm_sup() < 1e-12 && tr.k_g.hs_norm() < 1e-12);
        for r in [
            parity::<f64>(g),
            tf_shift(g, PhasePoint::new(2, -1)).unwrap(),
            random_operator(g, &mut rng),
        ] {
            let tr = tauberian_transfer_op(&r, &s, c(0.0), &gf, &t).unwrap();
            assert!(tr.residual() <= 1e-8 * tr.scale, "{}", tr.residual());
        }
    }

    #[test]
    fn shift_against_projected_window() {
        let g = make_grid(16).unwrap();
        let z0 = PhasePoint::new(2, 1);
        let r = tf_shift::<f64>(g, z0).unwrap();
        let s = gaussian_state(g);
        let fw = fourier_wigner(&s);
        let mut spike = PhaseFn::zeros(g);
        spike = spike
            .add(&PhaseFn::from_indices(g, |m, k| {
                if (m, k) == (z0.m, z0.k) {
                    fw.at(z0)
                } else {
                    c(0.0)
                }
            }))
            .unwrap();
        let projected = s.sub(&inverse_fourier_wigner(&spike)).unwrap();
        assert!(conv_op_op(&r, &projected).unwrap().norm_sup() < 1e-13);
        let wave = conv_op_op(&r, &s).unwrap();
        let level = fw.at(z0).norm();
        assert!(wave
            .values()
            .iter()
            .all(|v| (v.norm() - level).abs() < 1e-12));
    }

    #[test]
    fn parity_convolution_decays_for_the_half_quantizer() {
        // R = S_{1/2} = F_W⁻¹(1) decays against φ₀⊗φ₀; P itself peaks again at the half periods
        let g = make_grid(32).unwrap();
        let s = gaussian_state(g);
        let half = crate::quantize::tau_operator::<f64>(g, 0.5).unwrap();
        let p = standard_profile(&conv_op_op(&half, &s).unwrap());
        assert!(
            p.values[..5].windows(2).all(|w| w[1] < w[0]),
            "{:?}",
            p.values
        );
        let pp = standard_profile(&conv_op_op(&parity::<f64>(g), &s).unwrap());
        assert!((pp.last() - 1.0).abs() < 1e-6);
    }

    #[test]
    fn oscillation_modulus() {
        let g = make_grid(32).unwrap();
        let h = g.step::<f64>();
        assert_eq!(
            osc_modulus(&PhaseFn::<f64>::constant(g, c(2.0)), h, 0.0),
            0.0
        );
        let env: PhaseFn<f64> = mask(g, &MaskKind::GaussianEnv).unwrap();
        let near = osc_modulus(&env, h, 0.0);
        let far = osc_modulus(&env, h, 0.8 * g.rho_max());
        assert!(far < 1e-3 * near);
        let chirp: PhaseFn<f64> = mask(g, &MaskKind::Chirp).unwrap();
        let rows: Vec<f64> = [0.0, 0.5, 1.0, 2.0, 3.0]
            .iter()
            .map(|&r| osc_modulus(&chirp, h, r))
            .collect();
        assert!(rows.windows(2).all(|w| w[1] <= w[0] + 1e-15));
        assert!(*rows.last().unwrap() > 1.0);
    }

    #[test]
    fn iso_examples() {
        let g = make_grid(16).unwrap();
        let phi = atom::<f64>(g, &AtomKind::Gaussian).unwrap();
        let id = iso_check(&PhaseFn::constant(g, c(1.0)), &phi).unwrap();
        assert!((id.sigma_min - 1.0).abs() < 1e-12 && (id.sigma_max - 1.0).abs() < 1e-12);
        let comp: PhaseFn<f64> = mask(g, &MaskKind::IndicatorDiskComplement { r: 1.0 }).unwrap();
        let disk: PhaseFn<f64> = mask(g, &MaskKind::IndicatorDisk { r: 1.0 }).unwrap();
        let via_one_minus = PhaseFn::constant(g, c(1.0)).sub(&disk).unwrap();
        let a = iso_check(&comp, &phi).unwrap();
        let b = iso_check(&via_one_minus, &phi).unwrap();
        assert!(a.invertible && (a.sigma_min - b.sigma_min).abs() < 1e-12);
        assert!(stable_within(&[1.0, 0.9, 0.85], 0.2) && !stable_within(&[1.0, 0.7], 0.2));
    }

    #[test]
    fn compactness_summaries() {
        let g = make_grid(8).unwrap();
        let z = compactness_report(&OperatorMatrix::<f64>::zeros(g), 0.01).unwrap();
        assert_eq!((z.fraction_above, z.s1, z.s2, z.op), (0.0, 0.0, 0.0, 0.0));
        let i = compactness_report(&OperatorMatrix::<f64>::identity(g), 0.5).unwrap();
        assert_eq!(i.fraction_above, 1.0);
        assert!(compact_trend(&[0.75, 0.4, 0.2]));
        assert!(!compact_trend(&[1.0, 1.0, 1.0]));
        assert!(!compact_trend(&[0.5, 0.6, 0.2]));
    }

    #[test]
    fn toeplitz_products_follow_the_berezin_transform() {
        let (mut fr_c, mut fr_p) = (Vec::new(), Vec::new());
        let (mut b_c, mut b_p) = (Vec::new(), Vec::new());
        for n in [16, 32, 64] {
            let g = make_grid(n).unwrap();
            let phi = atom::<f64>(g, &AtomKind::Gaussian).unwrap();
            let t = |k: &MaskKind| loc_op(&mask::<f64>(g, k).unwrap(), &phi, &phi).unwrap();
            let env = t(&MaskKind::GaussianEnv);
            let chirp = t(&MaskKind::Chirp);
            let far = t(&MaskKind::IndicatorDiskComplement { r: 1.0 });
            let compact = env.compose(&chirp).unwrap();
            let not_compact = far.compose(&far).unwrap();
            fr_c.push(compactness_report(&compact, 0.01).unwrap().fraction_above);
            fr_p.push(
                compactness_report(&not_compact, 0.01)
                    .unwrap()
                    .fraction_above,
            );
            b_c.push(decay_ratio(&standard_profile(
                &crate::gabor::berezin(&compact, &phi).unwrap(),
            )));
            b_p.push(decay_ratio(&standard_profile(
                &crate::gabor::berezin(&not_compact, &phi).unwrap(),
            )));
        }
        assert!(compact_trend(&fr_c), "{fr_c:?}");
        assert!(!compact_trend(&fr_p), "{fr_p:?}");
        assert!(b_c.iter().all(|r| *r <= DECAY_RATIO_MAX), "{b_c:?}");
        assert!(b_p.iter().all(|r| *r > DECAY_RATIO_MAX), "{b_p:?}");
    }

    #[test]
    fn counterexample_table() {
        let g = make_grid(32).unwrap();
        let rows = schatten_counterexample_experiment::<f64>(g, &[0, 1, 2, 4, 8]).unwrap();
        for r in &rows {
            assert!((r.l1 - 1.0).abs() < 1e-12);
            assert!((r.s2_over_l2 - 1.0).abs() < 1e-10);
        }
        let half = crate::quantize::tau_operator::<f64>(g, 0.5).unwrap();
        assert!((rows[0].s1 - schatten(&half).unwrap().s1()).abs() < 1e-9);
        assert!(rows.windows(2).all(|w| w[1].l2 < w[0].l2));
        let sp = gaussian_weyl_example::<f64>(g).unwrap();
        assert!((sp.s1() - 1.0).abs() < 1e-6 && sp.sigma[1] < 1e-6);
    }

    #[test]
    fn square_window_identities() {
        let g = make_grid(16).unwrap();
        let s = random_operator::<f64>(g, &mut LabRng::new(4));
        let (d1, d2) = square_window_check(&s).unwrap();
        assert!(d1 < 1e-12 && d2 < 1e-12);
    }

    #[test]
    fn report_controls() {
        let case = |mask| TauberCase {
            mask,
            window: AtomKind::Gaussian,
            a: [0.0, 0.0],
            ns: vec![16, 32],
            seed: 7,
            eps: 0.01,
            r_freq: 1.0,
        };
        let chirp = run_tauber(&case(MaskKind::Chirp)).unwrap();
        assert_eq!(chirp.verdicts.compact, Verdict::PassTrend);
        assert_eq!(chirp.verdicts.decay, Verdict::PassTrend);
        assert_eq!(chirp.verdicts.fg, Verdict::PassTrend);
        assert!(chirp.cells[0].residual.unwrap() <= 1e-8 * chirp.cells[0].residual_scale.unwrap());
        let wave = run_tauber(&case(MaskKind::PlaneWave { m: 1, k: 1 })).unwrap();
        assert_eq!(wave.verdicts.compact, Verdict::Fail);
        assert_eq!(wave.verdicts.decay, Verdict::Fail);
        assert_eq!(wave.verdicts.fg, Verdict::Fail);
        let mut cst = case(MaskKind::Constant { re: 2.0, im: 0.0 });
        cst.a = [2.0, 0.0];
        let cst = run_tauber(&cst).unwrap();
        assert!(cst.max_residual().unwrap() <= 1e-10);
    }

    #[test]
    fn pitt_dichotomy_on_the_zoo() {
        let zoo = [
            MaskKind::Chirp,
            MaskKind::GaussianEnv,
            MaskKind::PlaneWave { m: 1, k: 0 },
            MaskKind::IndicatorDisk { r: 1.0 },
            MaskKind::ATau { tau: 0.3 },
        ];
        let rows = pitt_check(&zoo, 16).unwrap();
        assert!(rows.iter().all(|r| r.consistent), "{rows:?}");
    }
}
