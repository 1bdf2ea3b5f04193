//! The dichotomization maps from qudits to qubits.
//!
//! A single qudit with spin `j` goes to the qubit with Bloch vector `⟨J⟩/j`.
//! Several qudits are mapped site by site, which keeps product states product
//! and commutes with partial transposition because `J1ᵀ = J1`, `J2ᵀ = −J2`,
//! `J3ᵀ = J3` and `σ` has the same transpose signs.
//!
//! Two independent routes exist for one qudit: the closed Bloch-vector form
//! ([`map_qudit`]) and the literal isometry form
//! `Tr_D[U(ρ ⊗ |0⟩⟨0|)U†]` ([`map_qudit_via_isometry`]). The fiducial `|0⟩`
//! is ancilla basis state 0, the `+1` eigenstate of `σ3`.

use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;

use crate::density::{self, DensityMatrix};
use crate::eigen;
use crate::error::{Error, Result};
use crate::matrix::{kron, ComplexMatrix, ONE, ZERO};
use crate::spin::{pauli, SchwingerIsometry, SpinOperators};

/// Largest number of parties accepted by [`map_n_qudits`].
pub const MAX_PARTIES: usize = 10;

/// Axis normalization tolerance for rotations.
pub const AXIS_TOLERANCE: f64 = 1e-10;

/// A qubit (or multi-qubit) state obtained from a qudit state.
#[derive(Debug, Clone, PartialEq)]
pub struct MappedQubitState {
    state: DensityMatrix,
    source_dims: Vec<usize>,
}

impl MappedQubitState {
    pub fn state(&self) -> &DensityMatrix {
        &self.state
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        self.state.matrix()
    }

    pub fn source_dims(&self) -> &[usize] {
        &self.source_dims
    }

    pub fn into_state(self) -> DensityMatrix {
        self.state
    }
}

/// Normalized first and second moments of a two-qudit state:
/// `r1_i = ⟨J_i ⊗ 1⟩/j₁`, `r2_i = ⟨1 ⊗ J_i⟩/j₂`, `T_ij = ⟨J_i ⊗ J_j⟩/(j₁j₂)`.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct CorrelationTensor {
    pub r1: [f64; 3],
    pub r2: [f64; 3],
    pub t: [[f64; 3]; 3],
}

impl CorrelationTensor {
    pub fn diagonal(&self) -> [f64; 3] {
        [self.t[0][0], self.t[1][1], self.t[2][2]]
    }
}

fn local_dim_of(x: &ComplexMatrix) -> Result<usize> {
    let d = x.require_square()?;
    if d < 2 {
        return Err(Error::InvalidDimension(d));
    }
    Ok(d)
}

/// The single-qudit map applied to an arbitrary `d × d` operator `X`:
/// `½(Tr X · 1 + Σ_i Tr[X J_i]/j · σ_i)`. Linear in `X`.
pub fn map_qudit_operator(x: &ComplexMatrix, spin: &SpinOperators) -> Result<ComplexMatrix> {
    if x.rows() != spin.dim() || x.cols() != spin.dim() {
        return Err(Error::DimensionMismatch {
            expected: spin.dim(),
            found: x.rows(),
        });
    }
    let mut out = pauli(0).scale(x.trace() * 0.5);
    for axis in 0..3 {
        let coeff = density::expectation(x, spin.component(axis))? / spin.j() * 0.5;
        out.add_scaled(coeff, &pauli(axis + 1));
    }
    Ok(out)
}

/// `M_U(ρ) = ½(1 + Σ_i ⟨J_i⟩_ρ/j · σ_i)` for a single `d`-level state.
pub fn map_qudit(rho: &DensityMatrix) -> Result<MappedQubitState> {
    let d = local_dim_of(rho.matrix())?;
    let spin = SpinOperators::new(d)?;
    let sigma = map_qudit_operator(rho.matrix(), &spin)?;
    Ok(MappedQubitState {
        state: DensityMatrix::checked_without_spectrum(sigma, vec![2])?,
        source_dims: vec![d],
    })
}

/// `Tr_D[U(ρ ⊗ |0⟩⟨0|)U†]` assembled literally from the isometry.
pub fn map_qudit_via_isometry(
    rho: &DensityMatrix,
    iso: &SchwingerIsometry,
) -> Result<MappedQubitState> {
    let d = iso.source_dim();
    if rho.order() != d {
        return Err(Error::DimensionMismatch {
            expected: d,
            found: rho.order(),
        });
    }
    let fiducial = ComplexMatrix::from_vec(2, 2, vec![ONE, ZERO, ZERO, ZERO])?;
    let input = kron(rho.matrix(), &fiducial);
    let u = iso.u();
    let image = &(u * &input) * &u.adjoint();
    let sigma = density::partial_trace(&image, &[iso.target_dim(), 2], &[1])?;
    Ok(MappedQubitState {
        state: DensityMatrix::checked_without_spectrum(sigma, vec![2])?,
        source_dims: vec![d],
    })
}

fn normalized_ops(spin: &SpinOperators) -> [ComplexMatrix; 4] {
    let inv = 1.0 / spin.j();
    [
        ComplexMatrix::identity(spin.dim()),
        spin.j1().scale_real(inv),
        spin.j2().scale_real(inv),
        spin.j3().scale_real(inv),
    ]
}

fn check_party_dims(dims: &[usize]) -> Result<()> {
    match dims.iter().find(|&&d| d < 2) {
        Some(&d) => Err(Error::InvalidDimension(d)),
        None => Ok(()),
    }
}

/// The two-qudit map on an arbitrary operator on `H_{d1} ⊗ H_{d2}`, built
/// from the moment expansion `¼ Σ_{a,b} Tr[X (L_a ⊗ L_b)] σ_a ⊗ σ_b` with
/// `L_0 = 1`, `L_i = J_i/j`.
pub fn map_two_qudits_operator(x: &ComplexMatrix, d1: usize, d2: usize) -> Result<ComplexMatrix> {
    check_party_dims(&[d1, d2])?;
    let dims = [d1, d2];
    let l1 = normalized_ops(&SpinOperators::new(d1)?);
    let l2 = normalized_ops(&SpinOperators::new(d2)?);
    let mut out = ComplexMatrix::zeros(4, 4);
    for a in 0..4 {
        for b in 0..4 {
            let coeff = density::product_expectation(x, &dims, &[&l1[a], &l2[b]])?;
            out.add_scaled(coeff * 0.25, &kron(&pauli(a), &pauli(b)));
        }
    }
    Ok(out)
}

/// `M_{U1U2}(ρ)` for a bipartite state; the subsystem list must have two entries.
pub fn map_two_qudits(rho: &DensityMatrix) -> Result<MappedQubitState> {
    let [d1, d2] = two_dims(rho)?;
    let m = map_two_qudits_operator(rho.matrix(), d1, d2)?;
    Ok(MappedQubitState {
        state: DensityMatrix::checked_without_spectrum(m, vec![2, 2])?,
        source_dims: vec![d1, d2],
    })
}

pub(crate) fn two_dims(rho: &DensityMatrix) -> Result<[usize; 2]> {
    match rho.dims() {
        &[d1, d2] => {
            check_party_dims(&[d1, d2])?;
            Ok([d1, d2])
        }
        other => Err(Error::DimensionMismatch {
            expected: 2,
            found: other.len(),
        }),
    }
}

/// The N-qudit map on an arbitrary operator, applied one site at a time.
pub fn map_n_qudits_operator(x: &ComplexMatrix, dims: &[usize]) -> Result<ComplexMatrix> {
    if dims.len() > MAX_PARTIES {
        return Err(Error::TooManySubsystems {
            found: dims.len(),
            limit: MAX_PARTIES,
        });
    }
    if dims.is_empty() {
        return Err(Error::EmptySelection);
    }
    check_party_dims(dims)?;
    let mut current = x.clone();
    let mut current_dims = dims.to_vec();
    for (site, &d) in dims.iter().enumerate() {
        let spin = SpinOperators::new(d)?;
        let (next, next_dims) =
            density::apply_local_map(&current, &current_dims, site, 2, |block| {
                map_qudit_operator(block, &spin).expect("block shape matches spin dimension")
            })?;
        current = next;
        current_dims = next_dims;
    }
    Ok(current)
}

/// `M_{⊗U}(ρ)` on all parties of `rho`.
pub fn map_n_qudits(rho: &DensityMatrix) -> Result<MappedQubitState> {
    let dims = rho.dims().to_vec();
    let m = map_n_qudits_operator(rho.matrix(), &dims)?;
    Ok(MappedQubitState {
        state: DensityMatrix::checked_without_spectrum(m, vec![2; dims.len()])?,
        source_dims: dims,
    })
}

/// Normalized moments `r1`, `r2`, `T` of a bipartite state.
pub fn correlation_tensor(rho: &DensityMatrix) -> Result<CorrelationTensor> {
    let [d1, d2] = two_dims(rho)?;
    let dims = [d1, d2];
    let l1 = normalized_ops(&SpinOperators::new(d1)?);
    let l2 = normalized_ops(&SpinOperators::new(d2)?);
    let x = rho.matrix();
    let moment = |a: usize, b: usize| -> Result<f64> {
        Ok(density::product_expectation(x, &dims, &[&l1[a], &l2[b]])?.re)
    };
    let mut ct = CorrelationTensor {
        r1: [0.0; 3],
        r2: [0.0; 3],
        t: [[0.0; 3]; 3],
    };
    for i in 0..3 {
        ct.r1[i] = moment(i + 1, 0)?;
        ct.r2[i] = moment(0, i + 1)?;
        for k in 0..3 {
            ct.t[i][k] = moment(i + 1, k + 1)?;
        }
    }
    Ok(ct)
}

fn check_axis(axis: [f64; 3]) -> Result<()> {
    let norm = libm::sqrt(axis.iter().map(|x| x * x).sum::<f64>());
    if (norm - 1.0).abs() > AXIS_TOLERANCE {
        return Err(Error::NonUnitAxis(norm));
    }
    Ok(())
}

/// `exp(−iα n·J)`, computed from the spectral decomposition of `n·J`.
pub fn rotation_unitary(spin: &SpinOperators, axis: [f64; 3], angle: f64) -> Result<ComplexMatrix> {
    check_axis(axis)?;
    eigen::spectral_map(&spin.along(axis), |lambda| {
        Complex64::from_polar(1.0, -angle * lambda)
    })
}

/// `ρ' = e^{−iα n·J} ρ e^{iα n·J}` for a single qudit.
pub fn rotate_state(rho: &DensityMatrix, axis: [f64; 3], angle: f64) -> Result<DensityMatrix> {
    let d = local_dim_of(rho.matrix())?;
    let spin = SpinOperators::new(d)?;
    let u = rotation_unitary(&spin, axis, angle)?;
    let rotated = &(&u * rho.matrix()) * &u.adjoint();
    DensityMatrix::checked_without_spectrum(rotated.hermitian_part(), rho.dims().to_vec())
}
