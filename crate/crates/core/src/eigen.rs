//! Cyclic Jacobi eigensolver for complex Hermitian matrices.
//!
//! Each step applies a complex Givens rotation `G = diag(1, e^{-iφ})·R(θ)` in
//! the `(p, q)` plane: the phase makes `h_pq` real, then the real Jacobi
//! rotation annihilates it. A sweep visits every upper-triangular pair once;
//! sweeps continue until the largest off-diagonal modulus drops below the
//! tolerance.

use alloc::vec::Vec;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::matrix::ComplexMatrix;

/// Off-diagonal convergence threshold used when callers do not pass one.
pub const DEFAULT_TOLERANCE: f64 = 1e-12;
/// Inputs whose `h − h†` exceeds this entrywise are rejected.
pub const HERMITIAN_TOLERANCE: f64 = 1e-10;
/// Eigenvalues above `-PSD_TOLERANCE` count as nonnegative.
pub const PSD_TOLERANCE: f64 = 1e-10;
pub const MAX_SWEEPS: usize = 100;

/// Eigenvalues in ascending order with the matching orthonormal eigenvectors
/// stored as columns.
#[derive(Debug, Clone)]
pub(crate) struct Decomposition {
    pub values: Vec<f64>,
    pub vectors: ComplexMatrix,
}

/// All eigenvalues of a Hermitian matrix, sorted ascending.
pub fn hermitian_eigenvalues(h: &ComplexMatrix, tol: f64) -> Result<Vec<f64>> {
    jacobi(h, tol, false).map(|d| d.values)
}

/// Smallest eigenvalue of a Hermitian matrix at the default tolerance.
pub fn min_eigenvalue(h: &ComplexMatrix) -> Result<f64> {
    let values = hermitian_eigenvalues(h, DEFAULT_TOLERANCE)?;
    Ok(values.first().copied().unwrap_or(0.0))
}

pub(crate) fn decompose(h: &ComplexMatrix, tol: f64) -> Result<Decomposition> {
    jacobi(h, tol, true)
}

fn max_off_diagonal(a: &ComplexMatrix) -> f64 {
    let n = a.rows();
    let mut worst = 0.0f64;
    for p in 0..n {
        for q in (p + 1)..n {
            worst = worst.max(a[(p, q)].norm());
        }
    }
    worst
}

fn jacobi(h: &ComplexMatrix, tol: f64, want_vectors: bool) -> Result<Decomposition> {
    let n = h.require_square()?;
    let deviation = h.hermiticity_deviation();
    if deviation > HERMITIAN_TOLERANCE {
        return Err(Error::NotHermitian(deviation));
    }
    let mut a = h.hermitian_part();
    for i in 0..n {
        a[(i, i)].im = 0.0;
    }
    let mut v = if want_vectors {
        ComplexMatrix::identity(n)
    } else {
        ComplexMatrix::zeros(0, 0)
    };

    let mut converged = false;
    for _ in 0..MAX_SWEEPS {
        if max_off_diagonal(&a) < tol {
            converged = true;
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                rotate(&mut a, &mut v, p, q, want_vectors);
            }
        }
    }
    if !converged {
        let residual = max_off_diagonal(&a);
        if residual >= tol {
            return Err(Error::NoConvergence {
                sweeps: MAX_SWEEPS,
                residual,
            });
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&x, &y| a[(x, x)].re.total_cmp(&a[(y, y)].re));
    let values = order.iter().map(|&i| a[(i, i)].re).collect();
    let vectors = if want_vectors {
        ComplexMatrix::from_fn(n, n, |r, c| v[(r, order[c])])
    } else {
        v
    };
    Ok(Decomposition { values, vectors })
}

fn rotate(a: &mut ComplexMatrix, v: &mut ComplexMatrix, p: usize, q: usize, want_vectors: bool) {
    let apq = a[(p, q)];
    let g = apq.norm();
    if g < 1e-300 {
        return;
    }
    let phase = apq / g;
    let app = a[(p, p)].re;
    let aqq = a[(q, q)].re;
    let theta = (aqq - app) / (2.0 * g);
    let t = if theta.abs() > 1e150 {
        0.5 / theta
    } else {
        let t = 1.0 / (theta.abs() + libm::sqrt(theta * theta + 1.0));
        if theta < 0.0 {
            -t
        } else {
            t
        }
    };
    let c = 1.0 / libm::sqrt(1.0 + t * t);
    let s = t * c;
    let phase_conj = phase.conj();

    // G = [[c, s], [-s·e^{-iφ}, c·e^{-iφ}]] on (p, q).
    let g_pp = Complex64::new(c, 0.0);
    let g_pq = Complex64::new(s, 0.0);
    let g_qp = phase_conj * (-s);
    let g_qq = phase_conj * c;

    let n = a.rows();
    for k in 0..n {
        let akp = a[(k, p)];
        let akq = a[(k, q)];
        a[(k, p)] = akp * g_pp + akq * g_qp;
        a[(k, q)] = akp * g_pq + akq * g_qq;
    }
    for k in 0..n {
        let apk = a[(p, k)];
        let aqk = a[(q, k)];
        a[(p, k)] = g_pp.conj() * apk + g_qp.conj() * aqk;
        a[(q, k)] = g_pq.conj() * apk + g_qq.conj() * aqk;
    }
    a[(p, q)] = Complex64::new(0.0, 0.0);
    a[(q, p)] = Complex64::new(0.0, 0.0);
    a[(p, p)].im = 0.0;
    a[(q, q)].im = 0.0;

    if want_vectors {
        for k in 0..n {
            let vkp = v[(k, p)];
            let vkq = v[(k, q)];
            v[(k, p)] = vkp * g_pp + vkq * g_qp;
            v[(k, q)] = vkp * g_pq + vkq * g_qq;
        }
    }
}

/// Applies `f` to the spectrum of a Hermitian matrix: `V·diag(f(λ))·V†`.
pub(crate) fn spectral_map(
    h: &ComplexMatrix,
    f: impl Fn(f64) -> Complex64,
) -> Result<ComplexMatrix> {
    let Decomposition { values, vectors } = decompose(h, DEFAULT_TOLERANCE)?;
    let n = values.len();
    let weights: Vec<Complex64> = values.into_iter().map(f).collect();
    Ok(ComplexMatrix::from_fn(n, n, |r, c| {
        (0..n)
            .map(|k| vectors[(r, k)] * weights[k] * vectors[(c, k)].conj())
            .sum()
    }))
}

/// Groups a sorted list of reals into `(value, multiplicity)` clusters; a new
/// cluster starts whenever the gap to the previous value exceeds `tol`.
pub fn group_sorted(values: &[f64], tol: f64) -> Vec<(f64, usize)> {
    let mut groups: Vec<(f64, usize)> = Vec::new();
    let mut prev = f64::NEG_INFINITY;
    for &x in values {
        match groups.last_mut() {
            Some((sum, count)) if x - prev <= tol => {
                *sum += x;
                *count += 1;
            }
            _ => groups.push((x, 1)),
        }
        prev = x;
    }
    groups
        .into_iter()
        .map(|(sum, count)| (sum / count as f64, count))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    #[test]
    fn diagonal_input_is_sorted() {
        let h = ComplexMatrix::from_real_diagonal(&[3.0, 1.0, 2.0]);
        assert_eq!(
            hermitian_eigenvalues(&h, 1e-12).unwrap(),
            vec![1.0, 2.0, 3.0]
        );
    }

    #[test]
    fn pauli_x_spectrum() {
        let one = Complex64::new(1.0, 0.0);
        let zero = Complex64::new(0.0, 0.0);
        let x = ComplexMatrix::from_vec(2, 2, vec![zero, one, one, zero]).unwrap();
        let ev = hermitian_eigenvalues(&x, 1e-12).unwrap();
        assert!((ev[0] + 1.0).abs() < 1e-14 && (ev[1] - 1.0).abs() < 1e-14);
    }

    #[test]
    fn identity_min_eigenvalue() {
        assert!((min_eigenvalue(&ComplexMatrix::identity(5)).unwrap() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn rejects_non_hermitian() {
        let mut m = ComplexMatrix::identity(2);
        m[(0, 1)] = Complex64::new(1.0, 0.0);
        assert!(matches!(min_eigenvalue(&m), Err(Error::NotHermitian(_))));
        assert!(matches!(
            min_eigenvalue(&ComplexMatrix::zeros(2, 3)),
            Err(Error::NotSquare { .. })
        ));
    }

    #[test]
    fn eigenvectors_reconstruct_input() {
        let h = ComplexMatrix::from_fn(4, 4, |r, c| {
            let (r, c) = (r as f64, c as f64);
            if r == c {
                Complex64::new(r * 0.7 - 1.0, 0.0)
            } else {
                Complex64::new(0.3 * (r + c), 0.2 * (r - c))
            }
        });
        let h = h.hermitian_part();
        let d = decompose(&h, 1e-13).unwrap();
        let back = ComplexMatrix::from_fn(4, 4, |r, c| {
            (0..4)
                .map(|k| d.vectors[(r, k)] * d.values[k] * d.vectors[(c, k)].conj())
                .sum()
        });
        assert!(back.max_abs_diff(&h) < 1e-12);
        let vtv = &d.vectors.adjoint() * &d.vectors;
        assert!(vtv.max_abs_diff(&ComplexMatrix::identity(4)) < 1e-12);
    }

    #[test]
    fn grouping_merges_close_values() {
        let g = group_sorted(&[0.0, 1e-12, 0.5, 0.5, 1.0], 1e-8);
        assert_eq!(g.len(), 3);
        assert_eq!(g[0].1, 2);
        assert_eq!(g[1], (0.5, 2));
    }
}
