//! Quantum harmonic analysis on a finite phase space.
//!
//! Signals live on an `n`-point centered grid with step `1/sqrt(n)`; phase space
//! is the `n×n` lattice with cell weight `1/n`. On top of that model the crate
//! provides the operator calculus (time-frequency shifts, Fourier–Wigner and
//! Weyl transforms), the three convolutions between functions and operators,
//! STFT/Gabor tools, Tauberian diagnostics and quantization schemes.
//!
//! Every numerical type is generic over [`Real`] (`f32` or `f64`); the aliases
//! below fix the scalar for the common cases.

pub mod conv;
pub mod error;
mod fft;
pub mod gabor;
pub mod grid;
pub mod io;
pub mod linalg;
pub mod operator;
pub mod phase;
pub mod profile;
pub mod quantize;
pub mod rng;
pub mod scalar;
pub mod signal;
pub mod suite;
pub mod tauber;

pub use error::{Error, Result};
pub use grid::{make_grid, GridSpec, PhasePoint};
pub use operator::{
    check_op, fourier_wigner, inverse_fourier_wigner, parity, rank_one, schatten, tf_shift,
    translate_op, weyl_quantize, weyl_symbol, wigner, OperatorMatrix, SchattenSpectrum,
};
pub use phase::{delta_mask, mask, symplectic_fourier, MaskKind, PhaseFn};
pub use profile::{decay_profile, uniform_radii, DecayProfile};
pub use rng::LabRng;
pub use scalar::Real;
pub use signal::{atom, AtomKind, Signal};

pub type C64 = num_complex::Complex<f64>;
pub type C32 = num_complex::Complex<f32>;
pub type Signal64 = Signal<f64>;
pub type Signal32 = Signal<f32>;
pub type PhaseFn64 = PhaseFn<f64>;
pub type PhaseFn32 = PhaseFn<f32>;
pub type Operator64 = OperatorMatrix<f64>;
pub type Operator32 = OperatorMatrix<f32>;
pub type StftTable64 = gabor::StftTable<f64>;
pub type StftTable32 = gabor::StftTable<f32>;
