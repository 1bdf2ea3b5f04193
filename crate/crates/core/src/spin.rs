//! Angular-momentum operators and the Schwinger-boson isometry.
//!
//! Basis convention: computational index `c = 0..d-1` is the spin state with
//! `m = j - c`, so index 0 is the `+j` state and `J3 = diag(j, j-1, …, -j)`.
//!
//! In the Schwinger picture a spin-`j` state `|j, m⟩` is the two-mode Fock
//! state `|n_a, n_b⟩ = |j+m, j-m⟩` with `n_a + n_b = 2j`. The isometry maps
//! this sector into the direct sum of the `2j-1` boson sector (dimension
//! `2j`) followed by the `2j+1` boson sector (dimension `2j+2`), each ordered
//! by descending `n_a`. The target space therefore has dimension `D = 2d`.

use alloc::vec::Vec;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::matrix::{kron, ComplexMatrix, I, ONE, ZERO};

/// Pauli matrix `σ_k`, with `σ_0` the 2×2 identity.
pub fn pauli(k: usize) -> ComplexMatrix {
    let data = match k {
        0 => [ONE, ZERO, ZERO, ONE],
        1 => [ZERO, ONE, ONE, ZERO],
        2 => [ZERO, -I, I, ZERO],
        3 => [ONE, ZERO, ZERO, -ONE],
        _ => panic!("Pauli index {k} out of range"),
    };
    ComplexMatrix::from_vec(2, 2, data.to_vec()).expect("2x2 Pauli")
}

/// Spin quantum number `j = (d − 1)/2`.
pub fn spin_of(d: usize) -> f64 {
    (d as f64 - 1.0) / 2.0
}

fn check_dim(d: usize) -> Result<()> {
    if d < 2 {
        Err(Error::InvalidDimension(d))
    } else {
        Ok(())
    }
}

/// The Cartesian and ladder spin operators on a `d = 2j+1` dimensional space.
#[derive(Debug, Clone, PartialEq)]
pub struct SpinOperators {
    d: usize,
    j: f64,
    components: [ComplexMatrix; 3],
    raising: ComplexMatrix,
    lowering: ComplexMatrix,
}

impl SpinOperators {
    /// Standard matrix elements `J+|j,m⟩ = √(j(j+1) − m(m+1)) |j,m+1⟩`.
    pub fn new(d: usize) -> Result<Self> {
        check_dim(d)?;
        let j = spin_of(d);
        let mut raising = ComplexMatrix::zeros(d, d);
        // m + 1 sits one index lower.
        for c in 1..d {
            let m = j - c as f64;
            raising[(c - 1, c)] = Complex64::new(libm::sqrt(j * (j + 1.0) - m * (m + 1.0)), 0.0);
        }
        let lowering = raising.adjoint();
        let j1 = (&raising + &lowering).scale_real(0.5);
        let j2 = (&raising - &lowering).scale(Complex64::new(0.0, -0.5));
        let j3 =
            ComplexMatrix::from_real_diagonal(&(0..d).map(|c| j - c as f64).collect::<Vec<_>>());
        Ok(SpinOperators {
            d,
            j,
            components: [j1, j2, j3],
            raising,
            lowering,
        })
    }

    pub fn dim(&self) -> usize {
        self.d
    }

    /// The spin `j`, which is also the largest eigenvalue of every `J_i`.
    pub fn j(&self) -> f64 {
        self.j
    }

    /// `J_1`, `J_2`, `J_3` for `axis` = 0, 1, 2.
    pub fn component(&self, axis: usize) -> &ComplexMatrix {
        &self.components[axis]
    }

    pub fn components(&self) -> &[ComplexMatrix; 3] {
        &self.components
    }

    pub fn j1(&self) -> &ComplexMatrix {
        &self.components[0]
    }

    pub fn j2(&self) -> &ComplexMatrix {
        &self.components[1]
    }

    pub fn j3(&self) -> &ComplexMatrix {
        &self.components[2]
    }

    pub fn raising(&self) -> &ComplexMatrix {
        &self.raising
    }

    pub fn lowering(&self) -> &ComplexMatrix {
        &self.lowering
    }

    /// `n·J` for a 3-vector `n`.
    pub fn along(&self, n: [f64; 3]) -> ComplexMatrix {
        let mut out = ComplexMatrix::zeros(self.d, self.d);
        for (axis, &w) in n.iter().enumerate() {
            out.add_scaled(Complex64::new(w, 0.0), &self.components[axis]);
        }
        out
    }
}

/// Two-mode boson operators restricted to the `2j` sector and landing in the
/// `2j-1 ⊕ 2j+1` target layout.
struct BosonBlocks {
    a: ComplexMatrix,
    a_dag: ComplexMatrix,
    b: ComplexMatrix,
    b_dag: ComplexMatrix,
}

fn boson_blocks(d: usize) -> BosonBlocks {
    let two_j = d - 1;
    let target = 2 * d;
    let upper = two_j; // first index of the 2j+1 sector
    let mut a = ComplexMatrix::zeros(target, d);
    let mut a_dag = ComplexMatrix::zeros(target, d);
    let mut b = ComplexMatrix::zeros(target, d);
    let mut b_dag = ComplexMatrix::zeros(target, d);
    for c in 0..d {
        let n_a = (two_j - c) as f64;
        let n_b = c as f64;
        if c < two_j {
            // n_a - 1 in the lower sector sits at index c.
            a[(c, c)] = Complex64::new(libm::sqrt(n_a), 0.0);
        }
        a_dag[(upper + c, c)] = Complex64::new(libm::sqrt(n_a + 1.0), 0.0);
        if c >= 1 {
            b[(c - 1, c)] = Complex64::new(libm::sqrt(n_b), 0.0);
        }
        b_dag[(upper + c + 1, c)] = Complex64::new(libm::sqrt(n_b + 1.0), 0.0);
    }
    BosonBlocks { a, a_dag, b, b_dag }
}

/// An isometry `U = Σ_i A_i ⊗ σ_i` from `H_d ⊗ H_2` into `H_D ⊗ H_2`.
#[derive(Debug, Clone, PartialEq)]
pub struct SchwingerIsometry {
    d: usize,
    target_dim: usize,
    a: [ComplexMatrix; 4],
    u: ComplexMatrix,
}

impl SchwingerIsometry {
    /// The Schwinger-representation operators
    /// `A_0, A_3 = (a/√j ± a†/√(j+1))/(2√2)`,
    /// `A_1 = (b/√j − b†/√(j+1))/(2√2)`, `iA_2 = (b/√j + b†/√(j+1))/(2√2)`.
    pub fn new(d: usize) -> Result<Self> {
        check_dim(d)?;
        let j = spin_of(d);
        let BosonBlocks { a, a_dag, b, b_dag } = boson_blocks(d);
        let pref = 1.0 / (2.0 * libm::sqrt(2.0));
        let lo = pref / libm::sqrt(j);
        let hi = pref / libm::sqrt(j + 1.0);
        let combine = |x: &ComplexMatrix, wx: f64, y: &ComplexMatrix, wy: f64| {
            let mut out = x.scale_real(wx);
            out.add_scaled(Complex64::new(wy, 0.0), y);
            out
        };
        let a0 = combine(&a, lo, &a_dag, hi);
        let a3 = combine(&a, lo, &a_dag, -hi);
        let a1 = combine(&b, lo, &b_dag, -hi);
        let a2 = combine(&b, lo, &b_dag, hi).scale(-I);
        Self::from_operators(d, [a0, a1, a2, a3])
    }

    /// Assembles `U` from arbitrary `D × d` operators `A_0..A_3`. No
    /// isometry check is made; see [`verify_isometry`].
    pub fn from_operators(d: usize, a: [ComplexMatrix; 4]) -> Result<Self> {
        check_dim(d)?;
        let target_dim = a[0].rows();
        for op in &a {
            if op.cols() != d || op.rows() != target_dim {
                return Err(Error::DimensionMismatch {
                    expected: d,
                    found: op.cols(),
                });
            }
        }
        let mut u = ComplexMatrix::zeros(2 * target_dim, 2 * d);
        for (k, op) in a.iter().enumerate() {
            u.add_scaled(ONE, &kron(op, &pauli(k)));
        }
        Ok(SchwingerIsometry {
            d,
            target_dim,
            a,
            u,
        })
    }

    pub fn source_dim(&self) -> usize {
        self.d
    }

    pub fn target_dim(&self) -> usize {
        self.target_dim
    }

    pub fn operator(&self, k: usize) -> &ComplexMatrix {
        &self.a[k]
    }

    pub fn operators(&self) -> &[ComplexMatrix; 4] {
        &self.a
    }

    /// The assembled `2D × 2d` isometry.
    pub fn u(&self) -> &ComplexMatrix {
        &self.u
    }
}

/// Max-entry residuals of the isometry conditions.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IsometryResiduals {
    /// `Σ A_i†A_i − 1`, then the three cross-term groups for σ_1, σ_2, σ_3.
    pub conditions: [f64; 4],
    /// `U†U − 1` on the `2d`-dimensional source.
    pub u_dagger_u: f64,
}

impl IsometryResiduals {
    pub fn max(&self) -> f64 {
        self.conditions
            .iter()
            .copied()
            .fold(self.u_dagger_u, f64::max)
    }
}

/// Residuals of `A_0†A_0+…+A_3†A_3 = 1` and
/// `A_k†A_0 + A_0†A_k + i(A_l†A_m − A_m†A_l) = 0` for cyclic `(k, l, m)`.
pub fn verify_isometry(iso: &SchwingerIsometry) -> IsometryResiduals {
    let a = &iso.a;
    let ad: Vec<ComplexMatrix> = a.iter().map(|x| x.adjoint()).collect();
    let prod = |x: usize, y: usize| &ad[x] * &a[y];

    let mut gram = ComplexMatrix::zeros(iso.d, iso.d);
    for k in 0..4 {
        gram.add_scaled(ONE, &prod(k, k));
    }
    let identity = gram.max_abs_diff(&ComplexMatrix::identity(iso.d));

    let cross = |k: usize, l: usize, m: usize| {
        let mut s = &prod(k, 0) + &prod(0, k);
        s.add_scaled(I, &prod(l, m));
        s.add_scaled(-I, &prod(m, l));
        s.max_abs()
    };
    let conditions = [identity, cross(1, 2, 3), cross(2, 3, 1), cross(3, 1, 2)];

    let udu = &iso.u.adjoint() * &iso.u;
    let u_dagger_u = udu.max_abs_diff(&ComplexMatrix::identity(2 * iso.d));
    IsometryResiduals {
        conditions,
        u_dagger_u,
    }
}

/// Residuals of the reduced conditions that make the isometry reproduce the
/// spin map: with `𝒜₀₃ = √j(A_0 + A_3)` and `𝒜₁₂ = √j(A_1 + iA_2)`,
/// `𝒜₀₃†𝒜₀₃ = (j + J3)/2`, `𝒜₁₂†𝒜₁₂ = (j − J3)/2` and
/// `𝒜₀₃†𝒜₁₂ = (J1 + iJ2)/2`.
pub fn verify_spin_closure(iso: &SchwingerIsometry) -> Result<[f64; 3]> {
    let spin = SpinOperators::new(iso.d)?;
    let sj = libm::sqrt(spin.j());
    let a03 = (&iso.a[0] + &iso.a[3]).scale_real(sj);
    let mut a12 = iso.a[1].clone();
    a12.add_scaled(I, &iso.a[2]);
    let a12 = a12.scale_real(sj);

    let id = ComplexMatrix::identity(iso.d).scale_real(spin.j());
    let plus = (&id + spin.j3()).scale_real(0.5);
    let minus = (&id - spin.j3()).scale_real(0.5);
    let ladder = spin.raising().scale_real(0.5);

    let a03d = a03.adjoint();
    Ok([
        (&a03d * &a03).max_abs_diff(&plus),
        (&a12.adjoint() * &a12).max_abs_diff(&minus),
        (&a03d * &a12).max_abs_diff(&ladder),
    ])
}
