//! Density matrices on tensor products of finite-dimensional systems.
//!
//! Subsystem `0` is the leftmost tensor factor and indexes the slowest
//! varying digit of the composite basis.

use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;

use crate::eigen::{self, PSD_TOLERANCE};
use crate::error::{Error, Result};
use crate::matrix::{kron, ComplexMatrix, ZERO};

/// Entrywise Hermiticity tolerance for density matrices.
pub const STATE_HERMITIAN_TOLERANCE: f64 = 1e-12;
/// Allowed deviation of the trace from one.
pub const STATE_TRACE_TOLERANCE: f64 = 1e-12;

/// A validated density matrix together with its subsystem dimensions.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    matrix: ComplexMatrix,
    dims: Vec<usize>,
}

impl DensityMatrix {
    /// Validates shape, Hermiticity, unit trace and positivity.
    pub fn new(matrix: ComplexMatrix, dims: Vec<usize>) -> Result<Self> {
        let state = Self::checked_without_spectrum(matrix, dims)?;
        let min = eigen::min_eigenvalue(&state.matrix)?;
        if min < -PSD_TOLERANCE {
            return Err(Error::NotPositive(min));
        }
        Ok(state)
    }

    /// Shape, Hermiticity and trace checks only; for constructions whose
    /// positivity holds by construction.
    pub(crate) fn checked_without_spectrum(
        matrix: ComplexMatrix,
        dims: Vec<usize>,
    ) -> Result<Self> {
        let n = matrix.require_square()?;
        check_dims(&dims, n)?;
        let dev = matrix.hermiticity_deviation();
        if dev > STATE_HERMITIAN_TOLERANCE {
            return Err(Error::NotHermitian(dev));
        }
        let tr = matrix.trace();
        if (tr.re - 1.0).abs() > STATE_TRACE_TOLERANCE || tr.im.abs() > STATE_TRACE_TOLERANCE {
            return Err(Error::BadTrace(tr.re));
        }
        Ok(DensityMatrix { matrix, dims })
    }

    /// `|ψ><ψ|` for the normalized version of `psi`.
    pub fn pure(psi: &[Complex64], dims: Vec<usize>) -> Result<Self> {
        let norm = libm::sqrt(psi.iter().map(|z| z.norm_sqr()).sum::<f64>());
        if !(norm > 0.0) || !norm.is_finite() {
            return Err(Error::InvalidArgument(
                "state vector has zero or non-finite norm",
            ));
        }
        let v: Vec<Complex64> = psi.iter().map(|z| z / norm).collect();
        Self::checked_without_spectrum(ComplexMatrix::outer(&v, &v), dims)
    }

    /// `I/D` on the given subsystems.
    pub fn maximally_mixed(dims: Vec<usize>) -> Result<Self> {
        let n: usize = dims.iter().product();
        let m = ComplexMatrix::identity(n).scale_real(1.0 / n as f64);
        Self::checked_without_spectrum(m, dims)
    }

    /// `self ⊗ other`, with the subsystem lists concatenated.
    pub fn tensor(&self, other: &DensityMatrix) -> DensityMatrix {
        let mut dims = self.dims.clone();
        dims.extend_from_slice(&other.dims);
        DensityMatrix {
            matrix: kron(&self.matrix, &other.matrix),
            dims,
        }
    }

    /// Convex combination `Σ w_k ρ_k`; weights must be nonnegative and sum to one.
    pub fn mixture(parts: &[(f64, &DensityMatrix)]) -> Result<Self> {
        let first = parts
            .first()
            .ok_or(Error::InvalidArgument("empty mixture"))?
            .1;
        if parts.iter().any(|(w, _)| *w < 0.0) {
            return Err(Error::InvalidArgument("negative mixture weight"));
        }
        let mut acc = ComplexMatrix::zeros(first.order(), first.order());
        for (w, rho) in parts {
            if rho.dims != first.dims {
                return Err(Error::DimensionMismatch {
                    expected: first.order(),
                    found: rho.order(),
                });
            }
            acc.add_scaled(Complex64::new(*w, 0.0), &rho.matrix);
        }
        Self::checked_without_spectrum(acc, first.dims.clone())
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn into_matrix(self) -> ComplexMatrix {
        self.matrix
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    /// Total Hilbert-space dimension.
    pub fn order(&self) -> usize {
        self.matrix.rows()
    }

    /// Reduced state on the subsystems in `keep`, in ascending index order.
    pub fn partial_trace(&self, keep: &[usize]) -> Result<DensityMatrix> {
        let matrix = partial_trace(&self.matrix, &self.dims, keep)?;
        let mut kept: Vec<usize> = keep.to_vec();
        kept.sort_unstable();
        kept.dedup();
        let dims = kept.iter().map(|&k| self.dims[k]).collect();
        Ok(DensityMatrix { matrix, dims })
    }

    /// Transpose on the indices of one subsystem.
    pub fn partial_transpose(&self, subsystem: usize) -> Result<ComplexMatrix> {
        if self.dims.len() < 2 {
            return Err(Error::InvalidArgument(
                "partial transpose needs at least two subsystems",
            ));
        }
        partial_transpose(&self.matrix, &self.dims, subsystem)
    }

    /// `Tr[ρ·op]`.
    pub fn expectation(&self, op: &ComplexMatrix) -> Result<Complex64> {
        expectation(&self.matrix, op)
    }

    /// Smallest eigenvalue of the partial transpose on `subsystem`.
    pub fn min_pt_eigenvalue(&self, subsystem: usize) -> Result<f64> {
        eigen::min_eigenvalue(&self.partial_transpose(subsystem)?)
    }

    pub fn eigenvalues(&self) -> Result<Vec<f64>> {
        eigen::hermitian_eigenvalues(&self.matrix, eigen::DEFAULT_TOLERANCE)
    }
}

fn check_dims(dims: &[usize], order: usize) -> Result<()> {
    if dims.is_empty() || dims.contains(&0) {
        return Err(Error::InvalidArgument(
            "subsystem dimensions must be positive",
        ));
    }
    let product: usize = dims.iter().product();
    if product != order {
        return Err(Error::DimensionMismatch {
            expected: product,
            found: order,
        });
    }
    Ok(())
}

fn strides(dims: &[usize]) -> Vec<usize> {
    let mut s = vec![1; dims.len()];
    for k in (0..dims.len().saturating_sub(1)).rev() {
        s[k] = s[k + 1] * dims[k + 1];
    }
    s
}

/// Offsets into the composite index for every multi-index over `subset`.
fn subset_offsets(dims: &[usize], strides: &[usize], subset: &[usize]) -> Vec<usize> {
    let mut offsets = vec![0usize];
    for &k in subset {
        offsets = offsets
            .iter()
            .flat_map(|&base| (0..dims[k]).map(move |digit| base + digit * strides[k]))
            .collect();
    }
    offsets
}

/// Partial trace of an operator over every subsystem not listed in `keep`.
pub fn partial_trace(x: &ComplexMatrix, dims: &[usize], keep: &[usize]) -> Result<ComplexMatrix> {
    let n = x.require_square()?;
    check_dims(dims, n)?;
    if keep.is_empty() {
        return Err(Error::EmptySelection);
    }
    if let Some(&bad) = keep.iter().find(|&&k| k >= dims.len()) {
        return Err(Error::InvalidSubsystem {
            index: bad,
            count: dims.len(),
        });
    }
    let mut kept: Vec<usize> = keep.to_vec();
    kept.sort_unstable();
    kept.dedup();
    let traced: Vec<usize> = (0..dims.len()).filter(|k| !kept.contains(k)).collect();
    let st = strides(dims);
    let keep_off = subset_offsets(dims, &st, &kept);
    let trace_off = subset_offsets(dims, &st, &traced);
    let m = keep_off.len();
    Ok(ComplexMatrix::from_fn(m, m, |r, c| {
        trace_off
            .iter()
            .map(|&t| x[(keep_off[r] + t, keep_off[c] + t)])
            .sum()
    }))
}

/// Partial transpose of an operator on one subsystem.
pub fn partial_transpose(
    x: &ComplexMatrix,
    dims: &[usize],
    subsystem: usize,
) -> Result<ComplexMatrix> {
    let n = x.require_square()?;
    check_dims(dims, n)?;
    if subsystem >= dims.len() {
        return Err(Error::InvalidSubsystem {
            index: subsystem,
            count: dims.len(),
        });
    }
    let stride = strides(dims)[subsystem];
    let d = dims[subsystem];
    let digit = |i: usize| (i / stride) % d;
    Ok(ComplexMatrix::from_fn(n, n, |r, c| {
        let (dr, dc) = (digit(r), digit(c));
        let src_r = r - dr * stride + dc * stride;
        let src_c = c - dc * stride + dr * stride;
        x[(src_r, src_c)]
    }))
}

/// `Tr[x·op]` without forming the product.
pub fn expectation(x: &ComplexMatrix, op: &ComplexMatrix) -> Result<Complex64> {
    let n = x.require_square()?;
    if op.rows() != n || op.cols() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: op.rows(),
        });
    }
    let mut acc = ZERO;
    for r in 0..n {
        for c in 0..n {
            acc += x[(r, c)] * op[(c, r)];
        }
    }
    Ok(acc)
}

/// `Tr[x·(f₀ ⊗ f₁ ⊗ …)]` where factor `k` acts on subsystem `k`, computed
/// without assembling the Kronecker product.
pub fn product_expectation(
    x: &ComplexMatrix,
    dims: &[usize],
    factors: &[&ComplexMatrix],
) -> Result<Complex64> {
    let n = x.require_square()?;
    check_dims(dims, n)?;
    if factors.len() != dims.len() {
        return Err(Error::DimensionMismatch {
            expected: dims.len(),
            found: factors.len(),
        });
    }
    for (f, &d) in factors.iter().zip(dims) {
        if f.rows() != d || f.cols() != d {
            return Err(Error::DimensionMismatch {
                expected: d,
                found: f.rows(),
            });
        }
    }
    let st = strides(dims);
    let digits = |i: usize, k: usize| (i / st[k]) % dims[k];
    let mut acc = ZERO;
    for r in 0..n {
        for c in 0..n {
            let xv = x[(r, c)];
            if xv == ZERO {
                continue;
            }
            let mut w = Complex64::new(1.0, 0.0);
            for (k, f) in factors.iter().enumerate() {
                w *= f[(digits(c, k), digits(r, k))];
                if w == ZERO {
                    break;
                }
            }
            acc += xv * w;
        }
    }
    Ok(acc)
}

/// Applies a linear map to one subsystem of a multipartite operator.
///
/// `map` receives each `d × d` block (all other indices fixed) and must
/// return an `out_dim × out_dim` block; the subsystem's dimension becomes
/// `out_dim`.
pub fn apply_local_map(
    x: &ComplexMatrix,
    dims: &[usize],
    site: usize,
    out_dim: usize,
    mut map: impl FnMut(&ComplexMatrix) -> ComplexMatrix,
) -> Result<(ComplexMatrix, Vec<usize>)> {
    let n = x.require_square()?;
    check_dims(dims, n)?;
    if site >= dims.len() {
        return Err(Error::InvalidSubsystem {
            index: site,
            count: dims.len(),
        });
    }
    let d = dims[site];
    let rest: Vec<usize> = (0..dims.len()).filter(|&k| k != site).collect();
    let st_in = strides(dims);
    let rest_in = subset_offsets(dims, &st_in, &rest);

    let mut out_dims = dims.to_vec();
    out_dims[site] = out_dim;
    let st_out = strides(&out_dims);
    let rest_out = subset_offsets(&out_dims, &st_out, &rest);
    let total: usize = out_dims.iter().product();
    let mut out = ComplexMatrix::zeros(total, total);

    for (&r_in, &r_out) in rest_in.iter().zip(&rest_out) {
        for (&c_in, &c_out) in rest_in.iter().zip(&rest_out) {
            let block = ComplexMatrix::from_fn(d, d, |a, b| {
                x[(r_in + a * st_in[site], c_in + b * st_in[site])]
            });
            let mapped = map(&block);
            for a in 0..out_dim {
                for b in 0..out_dim {
                    out[(r_out + a * st_out[site], c_out + b * st_out[site])] = mapped[(a, b)];
                }
            }
        }
    }
    Ok((out, out_dims))
}
