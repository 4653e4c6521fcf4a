//! Quantization schemes and Cohen's class: the τ-family, Born–Jordan and
//! Husimi-type distributions.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex;
use serde::{Deserialize, Serialize};

use crate::conv::{conv_fun_fun, conv_fun_op, conv_op_op};
use crate::error::{Error, Result};
use crate::gabor::window_zeros;
use crate::grid::{make_grid, GridSpec};
use crate::operator::{
    check_op, inverse_fourier_wigner, parity, rank_one, tf_shift, weyl_quantize, weyl_symbol,
    wigner, OperatorMatrix,
};
use crate::phase::{delta_mask, mask, MaskKind, PhaseFn};
use crate::scalar::{pairwise_sum, Real};
use crate::signal::{atom, AtomKind, Signal};
use crate::tauber::{
    compact_trend, compactness_report, decay_ratio, standard_profile, CompactnessSummary, Verdict,
    DECAY_RATIO_MAX,
};

/// Default number of midpoint nodes for the Born–Jordan τ-average.
pub const BJ_NODES: usize = 64;

fn check_tau(tau: f64) -> Result<()> {
    if tau > 0.0 && tau < 1.0 {
        Ok(())
    } else {
        Err(Error::InvalidParameter(format!("τ = {tau} outside (0, 1)")))
    }
}

/// Sampled `a_τ(x, ω) = 2/|2τ−1| e^{2πi (2/(2τ−1)) x ω}`; the delta for `τ = 1/2`.
pub fn tau_symbol<T: Real>(grid: GridSpec, tau: f64) -> Result<PhaseFn<T>> {
    check_tau(tau)?;
    if tau == 0.5 {
        return Ok(delta_mask(grid));
    }
    mask(grid, &MaskKind::ATau { tau })
}

/// `F_W(S_τ)(z) = e^{πi (2τ−1) x ω}`, evaluated with the lattice branch of `x ω`.
pub fn tau_kernel<T: Real>(grid: GridSpec, tau: f64) -> Result<PhaseFn<T>> {
    check_tau(tau)?;
    let c = 2.0 * tau - 1.0;
    let n = grid.n() as f64;
    Ok(PhaseFn::from_indices(grid, |m, k| {
        let theta = std::f64::consts::PI * c * grid.xw_product(m, k) as f64 / n;
        Complex::new(T::of(theta.cos()), T::of(theta.sin()))
    }))
}

/// The operator `S_τ` with `F_W(S_τ) = F_σ(a_τ)`.
///
/// Built from the Fourier–Wigner kernel [`tau_kernel`]. The lattice samples of
/// `a_τ` oscillate faster than the grid resolves for every `τ ≠ 1/2`, so the
/// sampled symbol is kept only for [`sampled_tau_operator`].
pub fn tau_operator<T: Real>(grid: GridSpec, tau: f64) -> Result<OperatorMatrix<T>> {
    Ok(inverse_fourier_wigner(&tau_kernel(grid, tau)?))
}

/// `weyl_quantize` of the sampled symbol [`tau_symbol`] (aliased for `τ ≠ 1/2`).
pub fn sampled_tau_operator<T: Real>(grid: GridSpec, tau: f64) -> Result<OperatorMatrix<T>> {
    Ok(weyl_quantize(&tau_symbol(grid, tau)?))
}

/// `Q_R(ψ) = (ψ⊗ψ)⋆Ř`.
pub fn cohen_q<T: Real>(r: &OperatorMatrix<T>, psi: &Signal<T>) -> Result<PhaseFn<T>> {
    conv_op_op(&rank_one(psi, psi)?, &check_op(r))
}

/// `Q_R(ψ) = a_Ř ∗ W(ψ, ψ)`.
pub fn cohen_q_factorized<T: Real>(r: &OperatorMatrix<T>, psi: &Signal<T>) -> Result<PhaseFn<T>> {
    conv_fun_fun(&weyl_symbol(&check_op(r)), &wigner(psi, psi)?)
}

/// τ-Wigner distribution `W_τ(ψ) = Q_{S_τ}(ψ)`.
pub fn tau_wigner<T: Real>(psi: &Signal<T>, tau: f64) -> Result<PhaseFn<T>> {
    cohen_q(&tau_operator(psi.grid(), tau)?, psi)
}

/// Shubin τ-quantization `f⋆S_{1−τ}`.
pub fn tau_quantize<T: Real>(f: &PhaseFn<T>, tau: f64) -> Result<OperatorMatrix<T>> {
    conv_fun_op(f, &tau_operator(f.grid(), 1.0 - tau)?)
}

/// `sinc(π x ω)` on the lattice, with `sinc(t) = sin t / t`.
pub fn born_jordan_kernel<T: Real>(grid: GridSpec) -> PhaseFn<T> {
    let n = grid.n() as f64;
    PhaseFn::from_indices(grid, |m, k| {
        let t = std::f64::consts::PI * (m * k) as f64 / n;
        let v = if t == 0.0 { 1.0 } else { t.sin() / t };
        Complex::new(T::of(v), T::zero())
    })
}

/// `S_BJ = F_W⁻¹(sinc(π x ω))`.
pub fn born_jordan<T: Real>(grid: GridSpec) -> OperatorMatrix<T> {
    inverse_fourier_wigner(&born_jordan_kernel(grid))
}

/// Midpoint rule `(1/m) Σ_j Q_{S_{τ_j}}(ψ)` with `τ_j = (j + 1/2)/m`, summed pairwise.
pub fn born_jordan_quadrature<T: Real>(psi: &Signal<T>, nodes: usize) -> Result<PhaseFn<T>> {
    if nodes == 0 {
        return Err(Error::InvalidParameter(
            "Born–Jordan quadrature needs at least one node".into(),
        ));
    }
    let terms = (0..nodes)
        .map(|j| tau_wigner(psi, (j as f64 + 0.5) / nodes as f64))
        .collect::<Result<Vec<_>>>()?;
    let zero = PhaseFn::zeros(psi.grid());
    let sum = pairwise_sum(&terms, zero, &|a: &PhaseFn<T>, b: &PhaseFn<T>| {
        a.add(b).expect("same grid")
    });
    Ok(sum.scale(Complex::new(T::one() / T::of(nodes as f64), T::zero())))
}

/// Quantization schemes `f ↦ f⋆R`.
#[derive(Clone, Debug, PartialEq)]
pub enum QuantizerKind<T: Real> {
    Tau(f64),
    BornJordan,
    Custom(OperatorMatrix<T>),
}

#[derive(Clone, Debug, PartialEq)]
pub struct QuantizerSpec<T: Real> {
    pub grid: GridSpec,
    pub kind: QuantizerKind<T>,
}

impl<T: Real> QuantizerSpec<T> {
    pub fn new(grid: GridSpec, kind: QuantizerKind<T>) -> Result<Self> {
        match &kind {
            QuantizerKind::Tau(tau) => check_tau(*tau)?,
            QuantizerKind::BornJordan => {}
            QuantizerKind::Custom(r) => crate::signal::check_same(grid, r.grid())?,
        }
        Ok(QuantizerSpec { grid, kind })
    }

    /// The operator `R` of the scheme; for τ this is `S_{1−τ}`.
    pub fn operator(&self) -> Result<OperatorMatrix<T>> {
        match &self.kind {
            QuantizerKind::Tau(tau) => tau_operator(self.grid, 1.0 - tau),
            QuantizerKind::BornJordan => Ok(born_jordan(self.grid)),
            QuantizerKind::Custom(r) => Ok(r.clone()),
        }
    }

    pub fn quantize(&self, f: &PhaseFn<T>) -> Result<OperatorMatrix<T>> {
        conv_fun_op(f, &self.operator()?)
    }
}

/// Operators that can be rebuilt on every grid of a sweep.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum OperatorSpec {
    Identity,
    Parity,
    /// `φ⊗φ` for a window atom.
    RankOne {
        window: AtomKind,
    },
    /// `π(z₀)` at the lattice point nearest to `(x, ω)`.
    TfShift {
        x: f64,
        omega: f64,
    },
    Tau {
        tau: f64,
    },
    BornJordan,
}

impl OperatorSpec {
    pub fn build<T: Real>(&self, grid: GridSpec) -> Result<OperatorMatrix<T>> {
        match self {
            OperatorSpec::Identity => Ok(OperatorMatrix::identity(grid)),
            OperatorSpec::Parity => Ok(parity(grid)),
            OperatorSpec::RankOne { window } => {
                let phi = atom(grid, window)?;
                rank_one(&phi, &phi)
            }
            OperatorSpec::TfShift { x, omega } => tf_shift(grid, grid.nearest_point(*x, *omega)),
            OperatorSpec::Tau { tau } => tau_operator(grid, *tau),
            OperatorSpec::BornJordan => Ok(born_jordan(grid)),
        }
    }
}

impl fmt::Display for OperatorSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OperatorSpec::Identity => write!(f, "identity"),
            OperatorSpec::Parity => write!(f, "parity"),
            OperatorSpec::RankOne { window } => write!(f, "rank_one:{window}"),
            OperatorSpec::TfShift { x, omega } => write!(f, "tf_shift:{x},{omega}"),
            OperatorSpec::Tau { tau } => write!(f, "tau:{tau}"),
            OperatorSpec::BornJordan => write!(f, "born_jordan"),
        }
    }
}

impl FromStr for OperatorSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (name, arg) = match s.split_once(':') {
            Some((a, b)) => (a.trim(), Some(b.trim())),
            None => (s.trim(), None),
        };
        let bad = || Error::Parse(format!("bad arguments in operator `{s}`"));
        let num = |a: &str| a.trim().parse::<f64>().map_err(|_| bad());
        match (name, arg) {
            ("identity", None) => Ok(OperatorSpec::Identity),
            ("parity", None) => Ok(OperatorSpec::Parity),
            ("born_jordan", None) => Ok(OperatorSpec::BornJordan),
            ("rank_one", Some(w)) => Ok(OperatorSpec::RankOne { window: w.parse()? }),
            ("tf_shift", Some(a)) => {
                let (x, w) = a.split_once(',').ok_or_else(bad)?;
                Ok(OperatorSpec::TfShift {
                    x: num(x)?,
                    omega: num(w)?,
                })
            }
            ("tau", Some(a)) => {
                let tau = num(a)?;
                check_tau(tau)?;
                Ok(OperatorSpec::Tau { tau })
            }
            _ => Err(Error::UnknownKind(s.to_string())),
        }
    }
}

/// Inputs of a compactness-equivalence check for one operator `R`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct QuantizationCase {
    pub operator: OperatorSpec,
    /// Window `φ` of the Husimi-type test; must have no STFT zeros.
    pub window: AtomKind,
    pub masks: Vec<MaskKind>,
    pub signals: Vec<AtomKind>,
    pub ns: Vec<usize>,
    pub eps: f64,
}

/// Per-grid measurements of a compactness-equivalence check.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct QuantizationCell {
    pub n: usize,
    /// `D(0.8 ρ_max)/D(0)` of `Q_R(φ)`.
    pub husimi_ratio: f64,
    /// Compact profile of `g⋆R` with `g` the Gaussian envelope.
    pub wiener_mask: CompactnessSummary,
    /// `D(0.8 ρ_max)/D(0)` of `Q_R(ψ)` per test signal.
    pub signal_ratios: Vec<f64>,
    /// Compact profile of `f⋆R` per test mask.
    pub masks: Vec<CompactnessSummary>,
}

/// The four equivalent conditions, each read off as a trend verdict.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct QuantizationVerdicts {
    /// `Q_R(φ)` decays for the window.
    pub husimi: Verdict,
    /// `g⋆R` is compact for a Wiener-class `g`.
    pub wiener_mask: Verdict,
    /// `Q_R(ψ)` decays for every test signal.
    pub signals: Verdict,
    /// `f⋆R` is compact for every test mask.
    pub masks: Verdict,
    /// All four verdicts agree.
    pub consistent: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct QuantizationReport {
    pub operator: String,
    pub window: String,
    pub masks: Vec<String>,
    pub signals: Vec<String>,
    pub cells: Vec<QuantizationCell>,
    pub verdicts: QuantizationVerdicts,
}

fn quantization_cell(case: &QuantizationCase, n: usize) -> Result<QuantizationCell> {
    let grid = make_grid(n)?;
    let r: OperatorMatrix<f64> = case.operator.build(grid)?;
    let phi = atom::<f64>(grid, &case.window)?;
    let zeros = window_zeros(&phi)?;
    if !zeros.no_zeros {
        return Err(Error::WindowHasZeros {
            min: zeros.min_abs,
            max: zeros.max_abs,
        });
    }
    let husimi_ratio = decay_ratio(&standard_profile(&cohen_q(&r, &phi)?));
    let env: PhaseFn<f64> = mask(grid, &MaskKind::GaussianEnv)?;
    let wiener_mask = compactness_report(&conv_fun_op(&env, &r)?, case.eps)?;
    let signal_ratios = case
        .signals
        .iter()
        .map(|k| {
            Ok(decay_ratio(&standard_profile(&cohen_q(
                &r,
                &atom(grid, k)?,
            )?)))
        })
        .collect::<Result<Vec<_>>>()?;
    let masks = case
        .masks
        .iter()
        .map(|k| compactness_report(&conv_fun_op(&mask::<f64>(grid, k)?, &r)?, case.eps))
        .collect::<Result<Vec<_>>>()?;
    Ok(QuantizationCell {
        n,
        husimi_ratio,
        wiener_mask,
        signal_ratios,
        masks,
    })
}

/// Measures the four equivalent compactness conditions for `R` on every grid
/// of the case and reports whether their verdicts agree.
///
/// Decay verdicts are read at the largest grid, compactness verdicts from the
/// trend of `fraction_above(eps)` across grids.
pub fn quantization_compactness_check(case: &QuantizationCase) -> Result<QuantizationReport> {
    let mut ns = case.ns.clone();
    ns.sort_unstable();
    ns.dedup();
    if ns.len() < 2 {
        return Err(Error::InvalidParameter(
            "the compactness check needs at least two grids".into(),
        ));
    }
    let cells = ns
        .iter()
        .map(|&n| quantization_cell(case, n))
        .collect::<Result<Vec<_>>>()?;
    let last = cells.last().expect("at least two cells");
    let decays = |r: f64| r <= DECAY_RATIO_MAX;
    let trend = |pick: &dyn Fn(&QuantizationCell) -> f64| {
        compact_trend(&cells.iter().map(pick).collect::<Vec<_>>())
    };
    let husimi = decays(last.husimi_ratio);
    let wiener_mask = trend(&|c| c.wiener_mask.fraction_above);
    let signals = last.signal_ratios.iter().all(|&r| decays(r));
    let masks = (0..case.masks.len()).all(|i| trend(&|c| c.masks[i].fraction_above));
    let consistent = husimi == wiener_mask && husimi == signals && husimi == masks;
    Ok(QuantizationReport {
        operator: case.operator.to_string(),
        window: case.window.to_string(),
        masks: case.masks.iter().map(|m| m.to_string()).collect(),
        signals: case.signals.iter().map(|s| s.to_string()).collect(),
        cells,
        verdicts: QuantizationVerdicts {
            husimi: Verdict::from_bool(husimi),
            wiener_mask: Verdict::from_bool(wiener_mask),
            signals: Verdict::from_bool(signals),
            masks: Verdict::from_bool(masks),
            consistent,
        },
    })
}
