//! Spectral radius of small nonnegative matrices.
//!
//! Power iteration runs on the shifted matrix `J + σI` with `σ = ‖J‖∞`. For a
//! nonnegative `J` the Perron root `ρ + σ` then strictly dominates every other
//! eigenvalue in modulus, so periodic (e.g. permutation-like) matrices converge
//! as well. If the iteration stalls, small matrices fall back to a dense
//! eigenvalue solve.

use nalgebra::DMatrix;

use crate::linalg::SquareMatrix;

const POWER_MAX_ITER: usize = 20_000;
const DENSE_MAX_DIM: usize = 8;

pub fn spectral_radius(j: &SquareMatrix, rel_tol: f64) -> crate::Result<f64> {
    match spectral_radius_power(j, rel_tol, POWER_MAX_ITER) {
        Some(rho) => Ok(rho),
        None if j.dim() <= DENSE_MAX_DIM => Ok(spectral_radius_dense(j)),
        None => Err(crate::Error::EigenStagnation { dim: j.dim() }),
    }
}

/// Shifted power iteration. `None` when the estimate has not settled.
pub fn spectral_radius_power(j: &SquareMatrix, rel_tol: f64, max_iter: usize) -> Option<f64> {
    let n = j.dim();
    if n == 0 {
        return Some(0.0);
    }
    debug_assert!(j.iter().all(|v| *v >= 0.0), "matrix must be nonnegative");
    let shift = (0..n).map(|i| j.row(i).iter().sum::<f64>()).fold(0.0, f64::max);
    if shift == 0.0 {
        return Some(0.0);
    }

    let mut x = vec![1.0; n];
    let mut prev_est = f64::NAN;
    let mut prev_delta = f64::NAN;
    for _ in 0..max_iter {
        let mut y = j.mul_vec(&x);
        y.iter_mut().zip(&x).for_each(|(yi, xi)| *yi += shift * xi);

        // Collatz-Wielandt bracket: min and max of y_i / x_i enclose ρ + σ
        let (lo, hi) = y
            .iter()
            .zip(&x)
            .fold((f64::INFINITY, 0.0f64), |(lo, hi), (yi, xi)| {
                let r = yi / xi;
                (lo.min(r), hi.max(r))
            });
        if hi - lo <= rel_tol * (hi - shift).max(f64::MIN_POSITIVE) {
            return Some((0.5 * (lo + hi) - shift).max(0.0));
        }

        let norm = y.iter().fold(0.0f64, |a, v| a.max(*v));
        let est = norm; // ‖x‖∞ = 1, so this is the growth factor
        let delta = (est - prev_est).abs();
        if delta.is_finite() && prev_delta.is_finite() {
            let ratio = delta / prev_delta;
            // remaining error of a geometric sequence with this contraction
            let bound = if delta == 0.0 {
                0.0
            } else if ratio < 1.0 {
                delta * ratio / (1.0 - ratio)
            } else {
                f64::INFINITY
            };
            if bound <= rel_tol * (est - shift).max(f64::MIN_POSITIVE) && delta <= rel_tol * est {
                return Some((est - shift).max(0.0));
            }
        }
        prev_delta = delta;
        prev_est = est;
        x = y.into_iter().map(|v| v / norm).collect();
    }
    None
}

/// Largest eigenvalue modulus from a dense Schur decomposition. Meant for
/// small dimensions where power iteration can stall on defective matrices.
pub fn spectral_radius_dense(j: &SquareMatrix) -> f64 {
    let n = j.dim();
    if n == 0 {
        return 0.0;
    }
    DMatrix::from_fn(n, n, |r, c| j[(r, c)])
        .complex_eigenvalues()
        .iter()
        .map(|z| z.norm())
        .fold(0.0, f64::max)
}
