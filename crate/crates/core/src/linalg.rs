//! Dense complex linear algebra: products and a one-sided Jacobi SVD.

use ndarray::Array2;
use num_complex::Complex;

use crate::error::{Error, Result};
use crate::scalar::{rabs, Real};

const MAX_SWEEPS: usize = 100;

pub fn matmul<T: Real>(a: &Array2<Complex<T>>, b: &Array2<Complex<T>>) -> Array2<Complex<T>> {
    a.dot(b)
}

/// Conjugate transpose.
pub fn adjoint<T: Real>(a: &Array2<Complex<T>>) -> Array2<Complex<T>> {
    a.t().mapv(|v| v.conj())
}

/// Column norms after Jacobi orthogonalization, unsorted and unfloored.
fn jacobi_column_norms<T: Real>(a: &Array2<Complex<T>>) -> Result<Vec<T>> {
    let (rows, cols) = a.dim();
    let mut col: Vec<Vec<Complex<T>>> = (0..cols).map(|j| a.column(j).to_vec()).collect();
    let tol = T::epsilon() * T::of(rows.max(1) as f64).sqrt();
    // pairs below this inner product are negligible against the whole matrix
    let fro2: T = col
        .iter()
        .flat_map(|c| c.iter())
        .map(|v| v.norm_sqr())
        .sum();
    let negligible = T::epsilon() * T::epsilon() * fro2;

    let mut converged = cols < 2;
    let mut worst = T::zero();
    for _ in 0..MAX_SWEEPS {
        if converged {
            break;
        }
        let mut rotated = false;
        worst = T::zero();
        for i in 0..cols {
            for j in i + 1..cols {
                let (lo, hi) = col.split_at_mut(j);
                let (ai, aj) = (&mut lo[i], &mut hi[0]);
                let mut alpha = T::zero();
                let mut beta = T::zero();
                let mut gamma = Complex::new(T::zero(), T::zero());
                for (x, y) in ai.iter().zip(aj.iter()) {
                    alpha = alpha + x.norm_sqr();
                    beta = beta + y.norm_sqr();
                    gamma = gamma + x.conj() * y;
                }
                let g = gamma.norm();
                if g <= negligible {
                    continue;
                }
                let ratio = g / (alpha.sqrt() * beta.sqrt());
                worst = worst.max(ratio);
                if ratio <= tol {
                    continue;
                }
                rotated = true;
                // rotate a_j so that a_iᴴ a_j = |γ| is real
                let phase = (gamma / g).conj();
                for y in aj.iter_mut() {
                    *y = *y * phase;
                }
                let zeta = (beta - alpha) / (T::of(2.0) * g);
                let sign = if zeta < T::zero() {
                    -T::one()
                } else {
                    T::one()
                };
                let t = sign / (rabs(zeta) + (T::one() + zeta * zeta).sqrt());
                let c = T::one() / (T::one() + t * t).sqrt();
                let s = c * t;
                for (x, y) in ai.iter_mut().zip(aj.iter_mut()) {
                    let (xi, yj) = (*x, *y);
                    *x = xi * c - yj * s;
                    *y = xi * s + yj * c;
                }
            }
        }
        converged = !rotated;
    }
    if !converged {
        return Err(Error::SvdNoConvergence {
            sweeps: MAX_SWEEPS,
            residual: worst.as_f64(),
        });
    }
    Ok(col
        .iter()
        .map(|c| c.iter().map(|v| v.norm_sqr()).sum::<T>().sqrt())
        .collect())
}

fn sort_desc<T: Real>(v: &mut [T]) {
    v.sort_by(|a, b| b.partial_cmp(a).expect("finite singular values"));
}

/// Singular values in non-increasing order (one-sided Hestenes–Jacobi).
///
/// Values below `1e-12 σ₁` are reported as exactly zero. Wide matrices are
/// handled through their adjoint.
pub fn singular_values<T: Real>(a: &Array2<Complex<T>>) -> Result<Vec<T>> {
    let mut sigma = if a.ncols() > a.nrows() {
        jacobi_column_norms(&adjoint(a))?
    } else {
        jacobi_column_norms(a)?
    };
    sort_desc(&mut sigma);
    let floor = sigma.first().copied().unwrap_or(T::zero()) * T::of(1e-12);
    for s in sigma.iter_mut() {
        if *s < floor {
            *s = T::zero();
        }
    }
    Ok(sigma)
}

/// Eigenvalues of a Hermitian matrix in non-increasing order.
///
/// Uses `λ(H) = σ(H + sI) − s` with `s = ‖H‖_F`, which makes the shifted
/// matrix positive semidefinite. Only the Hermitian part of `h` is used.
pub fn hermitian_eigenvalues<T: Real>(h: &Array2<Complex<T>>) -> Result<Vec<T>> {
    let n = h.nrows();
    let mut shifted = (h + &adjoint(h)).mapv(|v| v * T::of(0.5));
    let s = shifted.iter().map(|v| v.norm_sqr()).sum::<T>().sqrt();
    for i in 0..n {
        shifted[[i, i]] = shifted[[i, i]] + Complex::new(s, T::zero());
    }
    let mut sigma = jacobi_column_norms(&shifted)?;
    sort_desc(&mut sigma);
    Ok(sigma.into_iter().map(|v| v - s).collect())
}
