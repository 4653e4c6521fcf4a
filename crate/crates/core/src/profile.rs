//! Radial sup-profiles, the finite stand-in for vanishing at infinity.

use serde::{Deserialize, Serialize};

use crate::phase::PhaseFn;
use crate::scalar::Real;

/// `D(ρ) = max{|h(z)| : |z| ≥ ρ}` over the centered fundamental domain.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DecayProfile {
    pub radii: Vec<f64>,
    pub values: Vec<f64>,
}

impl DecayProfile {
    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn is_non_increasing(&self) -> bool {
        self.values.windows(2).all(|w| w[1] <= w[0])
    }

    pub fn is_strictly_decreasing(&self) -> bool {
        self.values.windows(2).all(|w| w[1] < w[0])
    }

    pub fn first(&self) -> f64 {
        self.values.first().copied().unwrap_or(0.0)
    }

    pub fn last(&self) -> f64 {
        self.values.last().copied().unwrap_or(0.0)
    }

    /// Ratio `D(last) / D(first)`; `0` when the profile starts at zero.
    pub fn decay_ratio(&self) -> f64 {
        let f = self.first();
        if f > 0.0 {
            self.last() / f
        } else {
            0.0
        }
    }
}

/// Evenly spaced radii `0, ρ_max/(count−1), …, ρ_max`.
pub fn uniform_radii(rho_max: f64, count: usize) -> Vec<f64> {
    match count {
        0 => vec![],
        1 => vec![0.0],
        c => (0..c)
            .map(|i| rho_max * i as f64 / (c - 1) as f64)
            .collect(),
    }
}

/// Sup of `|values|` over lattice points with `|z|² ≥ ρ²` for each radius.
///
/// `abs` holds `(|z|², |h(z)|)` pairs; shared with the sup-profile over the
/// four-dimensional STFT.
pub(crate) fn radial_sup(mut abs: Vec<(f64, f64)>, radii: &[f64]) -> Vec<f64> {
    abs.sort_by(|a, b| b.0.total_cmp(&a.0));
    let mut suffix = Vec::with_capacity(abs.len());
    let mut best = 0.0f64;
    for &(_, v) in &abs {
        best = best.max(v);
        suffix.push(best);
    }
    radii
        .iter()
        .map(|&rho| {
            // lattice radii are exact square roots of rationals; absorb rounding
            let r2 = rho * rho * (1.0 - 1e-12);
            let count = abs.partition_point(|p| p.0 >= r2);
            if count == 0 {
                0.0
            } else {
                suffix[count - 1]
            }
        })
        .collect()
}

pub fn decay_profile<T: Real>(h: &PhaseFn<T>, radii: &[f64]) -> DecayProfile {
    let g = h.grid();
    let n = g.n();
    let mut abs = Vec::with_capacity(n * n);
    for a in 0..n {
        for b in 0..n {
            abs.push((
                g.radius::<f64>(a, b).powi(2),
                h.values()[[a, b]].norm().as_f64(),
            ));
        }
    }
    DecayProfile {
        radii: radii.to_vec(),
        values: radial_sup(abs, radii),
    }
}
