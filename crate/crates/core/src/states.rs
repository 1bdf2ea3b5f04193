//! Weyl operators, generalized Bell states, Werner states and the
//! three-parameter Bell-diagonal family `ρ_{α,β,γ}` with its closed-form
//! spectra.
//!
//! The family is
//!
//! ```text
//! ρ = (1−α−β−γ)/d² · 1 + α P_00 + β/(2j) Σ_{k=1}^{2j} P_k0 + γ/(2j+1) Σ_{k=0}^{2j} P_k1
//! ```
//!
//! where `P_kl` projects on `(W_kl ⊗ 1)|Ω_00⟩` and `|Ω_00⟩ = Σ_m |m,m⟩/√d`.

use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::PI;
use core::fmt;

use num_complex::Complex64;

use crate::density::DensityMatrix;
use crate::error::{Error, Result};
use crate::matrix::{kron, ComplexMatrix, ONE, ZERO};
use crate::spin::spin_of;

/// Tolerance used when deciding whether a family point is physical.
pub const PHYSICAL_TOLERANCE: f64 = 1e-10;

/// `w^k` with `w = e^{2πi/d}`, exponent reduced mod `d` first.
pub fn root_of_unity(d: usize, k: i64) -> Complex64 {
    let r = k.rem_euclid(d as i64) as f64;
    Complex64::from_polar(1.0, 2.0 * PI * r / d as f64)
}

fn reduce(x: i64, d: usize) -> usize {
    x.rem_euclid(d as i64) as usize
}

/// `W_kl |m⟩ = w^{k(m−l)} |(m−l) mod d⟩`.
#[derive(Debug, Clone, PartialEq)]
pub struct WeylOperator {
    pub d: usize,
    pub k: usize,
    pub l: usize,
    pub matrix: ComplexMatrix,
}

/// Builds `W_kl`; `k` and `l` are taken mod `d`.
pub fn weyl_operator(d: usize, k: i64, l: i64) -> Result<WeylOperator> {
    if d < 2 {
        return Err(Error::InvalidDimension(d));
    }
    let (k, l) = (reduce(k, d), reduce(l, d));
    let mut matrix = ComplexMatrix::zeros(d, d);
    for m in 0..d {
        let shift = m as i64 - l as i64;
        matrix[(reduce(shift, d), m)] = root_of_unity(d, k as i64 * shift);
    }
    Ok(WeylOperator { d, k, l, matrix })
}

/// `|Ω_kl⟩ = (W_kl ⊗ 1)|Ω_00⟩` as a state vector.
pub fn bell_vector(d: usize, k: i64, l: i64) -> Result<Vec<Complex64>> {
    let w = weyl_operator(d, k, l)?;
    let amp = 1.0 / libm::sqrt(d as f64);
    let mut omega = vec![ZERO; d * d];
    for m in 0..d {
        omega[m * d + m] = Complex64::new(amp, 0.0);
    }
    Ok(kron(&w.matrix, &ComplexMatrix::identity(d)).apply(&omega))
}

/// The generalized Bell projector `P_kl`.
pub fn bell_state(d: usize, k: i64, l: i64) -> Result<DensityMatrix> {
    DensityMatrix::pure(&bell_vector(d, k, l)?, vec![d, d])
}

/// `P_kl` rebuilt from its Weyl-basis expansion
/// `(1/d²) Σ_{a,b} w^{al − kb} W_ab ⊗ W_{−a,b}`.
pub fn bell_projector_weyl_expansion(d: usize, k: i64, l: i64) -> Result<ComplexMatrix> {
    let mut out = ComplexMatrix::zeros(d * d, d * d);
    let norm = 1.0 / (d * d) as f64;
    for a in 0..d as i64 {
        for b in 0..d as i64 {
            let phase = root_of_unity(d, a * l - k * b) * norm;
            let term = kron(
                &weyl_operator(d, a, b)?.matrix,
                &weyl_operator(d, -a, b)?.matrix,
            );
            out.add_scaled(phase, &term);
        }
    }
    Ok(out)
}

/// Lower end of the Werner weight range, `−1/(d²−1)`.
pub fn werner_min_alpha(d: usize) -> f64 {
    -1.0 / ((d * d) as f64 - 1.0)
}

/// `ρ_α = α P_00 + (1−α)/d² · 1`.
pub fn werner_state(d: usize, alpha: f64) -> Result<DensityMatrix> {
    if d < 2 {
        return Err(Error::InvalidDimension(d));
    }
    let min = werner_min_alpha(d);
    if !(alpha >= min - PHYSICAL_TOLERANCE && alpha <= 1.0 + PHYSICAL_TOLERANCE) {
        return Err(Error::WeightOutOfRange { alpha, min });
    }
    let p00 = bell_state(d, 0, 0)?;
    let mut m = ComplexMatrix::identity(d * d).scale_real((1.0 - alpha) / (d * d) as f64);
    m.add_scaled(Complex64::new(alpha, 0.0), p00.matrix());
    DensityMatrix::checked_without_spectrum(m, vec![d, d])
}

/// One of the four eigenvalue conditions bounding the physical family.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub enum PositivityCondition {
    /// `(1−α−β−γ)/d² ≥ 0`
    Background,
    /// `α + (1−α−β−γ)/d² ≥ 0`
    Alpha,
    /// `β/(2j) + (1−α−β−γ)/d² ≥ 0`
    Beta,
    /// `(1−α−β+2jγ)/d² ≥ 0`
    Gamma,
}

impl PositivityCondition {
    pub const ALL: [PositivityCondition; 4] = [
        PositivityCondition::Background,
        PositivityCondition::Alpha,
        PositivityCondition::Beta,
        PositivityCondition::Gamma,
    ];
}

impl fmt::Display for PositivityCondition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            PositivityCondition::Background => "(1-a-b-g)/d^2 >= 0",
            PositivityCondition::Alpha => "a + (1-a-b-g)/d^2 >= 0",
            PositivityCondition::Beta => "b/(2j) + (1-a-b-g)/d^2 >= 0",
            PositivityCondition::Gamma => "(1-a-b+2j*g)/d^2 >= 0",
        };
        f.write_str(s)
    }
}

/// A point `(α, β, γ)` of the three-parameter family on `d × d`.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct FamilyPoint {
    pub alpha: f64,
    pub beta: f64,
    pub gamma: f64,
    pub d: usize,
}

impl FamilyPoint {
    pub fn new(d: usize, alpha: f64, beta: f64, gamma: f64) -> Self {
        FamilyPoint {
            alpha,
            beta,
            gamma,
            d,
        }
    }

    pub fn j(&self) -> f64 {
        spin_of(self.d)
    }

    /// Weight of the identity component, `(1−α−β−γ)/d²`.
    pub fn background(&self) -> f64 {
        (1.0 - self.alpha - self.beta - self.gamma) / (self.d * self.d) as f64
    }

    /// Left-hand sides of the four positivity conditions, in
    /// [`PositivityCondition::ALL`] order.
    pub fn positivity_margins(&self) -> [f64; 4] {
        let c = self.background();
        let two_j = (self.d - 1) as f64;
        [
            c,
            self.alpha + c,
            self.beta / two_j + c,
            c + self.gamma / self.d as f64,
        ]
    }

    /// First condition violated by more than `tol`, if any. For `d = 2` the
    /// background weight is not an eigenvalue, so its condition is skipped.
    pub fn violated_condition(&self, tol: f64) -> Option<PositivityCondition> {
        self.positivity_margins()
            .iter()
            .zip(PositivityCondition::ALL)
            .filter(|(_, c)| self.d > 2 || *c != PositivityCondition::Background)
            .find(|(m, _)| **m < -tol)
            .map(|(_, c)| c)
    }

    pub fn is_physical(&self) -> bool {
        self.violated_condition(PHYSICAL_TOLERANCE).is_none()
    }

    pub fn check_physical(&self) -> Result<()> {
        match self.violated_condition(PHYSICAL_TOLERANCE) {
            Some(c) => Err(Error::Unphysical(c)),
            None => Ok(()),
        }
    }

    /// Bell-basis weights `C_kl` with `ρ = Σ C_kl P_kl`, indexed `[k][l]`.
    pub fn bell_coefficients(&self) -> Vec<Vec<f64>> {
        let d = self.d;
        let c = self.background();
        let two_j = (d - 1) as f64;
        let mut coeffs = vec![vec![c; d]; d];
        coeffs[0][0] += self.alpha;
        for row in coeffs.iter_mut().skip(1) {
            row[0] += self.beta / two_j;
        }
        for row in coeffs.iter_mut() {
            row[1] += self.gamma / d as f64;
        }
        coeffs
    }
}

fn check_family_dim(d: usize) -> Result<()> {
    if d < 2 {
        Err(Error::InvalidDimension(d))
    } else {
        Ok(())
    }
}

/// Builds `ρ_{α,β,γ}` after checking the positivity conditions.
pub fn family_state(point: &FamilyPoint) -> Result<DensityMatrix> {
    check_family_dim(point.d)?;
    point.check_physical()?;
    let d = point.d;
    let coeffs = point.bell_coefficients();
    let mut m = ComplexMatrix::zeros(d * d, d * d);
    for (k, row) in coeffs.iter().enumerate() {
        for (l, &w) in row.iter().enumerate() {
            let v = bell_vector(d, k as i64, l as i64)?;
            m.add_scaled(Complex64::new(w, 0.0), &ComplexMatrix::outer(&v, &v));
        }
    }
    DensityMatrix::checked_without_spectrum(m.hermitian_part(), vec![d, d])
}

/// Eigenvalues with multiplicities.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectrumWithMultiplicity {
    pub entries: Vec<(f64, usize)>,
}

impl SpectrumWithMultiplicity {
    fn from_entries(entries: impl IntoIterator<Item = (f64, usize)>) -> Self {
        SpectrumWithMultiplicity {
            entries: entries.into_iter().filter(|&(_, m)| m > 0).collect(),
        }
    }

    pub fn total_multiplicity(&self) -> usize {
        self.entries.iter().map(|&(_, m)| m).sum()
    }

    /// `Σ λ·mult`.
    pub fn weighted_sum(&self) -> f64 {
        self.entries.iter().map(|&(v, m)| v * m as f64).sum()
    }

    /// Every eigenvalue repeated by multiplicity, ascending.
    pub fn sorted_values(&self) -> Vec<f64> {
        let mut out: Vec<f64> = self
            .entries
            .iter()
            .flat_map(|&(v, m)| core::iter::repeat_n(v, m))
            .collect();
        out.sort_by(f64::total_cmp);
        out
    }

    /// Clusters coinciding eigenvalues (gap ≤ `tol`).
    pub fn grouped(&self, tol: f64) -> Vec<(f64, usize)> {
        crate::eigen::group_sorted(&self.sorted_values(), tol)
    }

    pub fn min(&self) -> f64 {
        self.entries
            .iter()
            .map(|&(v, _)| v)
            .fold(f64::INFINITY, f64::min)
    }
}

/// Spectrum of `ρ_{α,β,γ}`; the state is diagonal in the Bell basis.
pub fn family_spectrum_analytic(point: &FamilyPoint) -> Result<SpectrumWithMultiplicity> {
    check_family_dim(point.d)?;
    let d = point.d;
    let two_j = d - 1;
    let c = point.background();
    Ok(SpectrumWithMultiplicity::from_entries([
        (c + point.gamma / d as f64, d),
        (c + point.beta / two_j as f64, two_j),
        (c + point.alpha, 1),
        (c, d * (d - 2)),
    ]))
}

/// Closed-form spectrum of the partial transpose of `ρ_{α,β,γ}` for integer
/// spin `j` (odd `d ≥ 3`).
pub fn family_pt_spectrum_analytic(point: &FamilyPoint) -> Result<SpectrumWithMultiplicity> {
    let d = point.d;
    if d < 3 || d.is_multiple_of(2) {
        return Err(Error::UnsupportedSpin(d));
    }
    let j = point.j();
    let (a, b, g) = (point.alpha, point.beta, point.gamma);
    let df = d as f64;
    let d2 = df * df;
    let first = (1.0 + 2.0 * j * (a + b) - g) / d2;
    let centre = g / df - 2.0 * (a + b + g - 1.0) / d2;
    let skew = b - 2.0 * j * a;
    let radius = libm::sqrt((skew * skew + j * j * g * g) / (j * j * d2));
    let low = 0.5 * (centre - radius);
    let high = 0.5 * (centre + radius);
    let two_j = d - 1;
    if two_j == 2 {
        return Ok(SpectrumWithMultiplicity::from_entries([
            (first, 3),
            (low, 3),
            (high, 3),
        ]));
    }
    let ji = two_j / 2;
    let second = (-b - 2.0 * j * (-1.0 - 2.0 * j * a + 2.0 * b + g)) / (2.0 * j * d2);
    let third = (b - 2.0 * j * (-1.0 + 2.0 * (1.0 + j) * a + g)) / (2.0 * j * d2);
    Ok(SpectrumWithMultiplicity::from_entries([
        (first, d),
        (second, d * (ji - 1)),
        (third, d * (ji - 1)),
        (low, d),
        (high, d),
    ]))
}

/// `(⟨J1⊗J1⟩, ⟨J2⊗J2⟩, ⟨J3⊗J3⟩)` on `ρ_{α,β,γ}`:
/// `j(j+1)(α − β/2j)/3`, its negative, and `[j(j+1)(α+β) + j(j−2)γ]/3`.
pub fn family_correlators_analytic(point: &FamilyPoint) -> [f64; 3] {
    let j = point.j();
    let (a, b, g) = (point.alpha, point.beta, point.gamma);
    let xx = j * (j + 1.0) * (a - b / (2.0 * j)) / 3.0;
    let zz = (j * (j + 1.0) * (a + b) + j * (j - 2.0) * g) / 3.0;
    [xx, -xx, zz]
}

/// Discrete-Fourier coefficients expanding the spin operators in the Weyl
/// basis, in the orientation where basis index `m` carries spin `m − j`:
/// `η_z^l = Σ_m (m−j)/d · w^{−ml}` and
/// `η_p^l = Σ_m √(j(j+1) − (m−j)(m−j+1))/d · w^{−ml}`.
#[derive(Debug, Clone, PartialEq)]
pub struct EtaCoefficients {
    pub d: usize,
    pub z: Vec<Complex64>,
    pub p: Vec<Complex64>,
}

impl EtaCoefficients {
    pub fn new(d: usize) -> Result<Self> {
        check_family_dim(d)?;
        let j = spin_of(d);
        let df = d as f64;
        let coeff = |f: &dyn Fn(f64) -> f64, l: usize| -> Complex64 {
            (0..d)
                .map(|m| root_of_unity(d, -((m * l) as i64)) * (f(m as f64 - j) / df))
                .sum()
        };
        let z = (0..d).map(|l| coeff(&|s| s, l)).collect();
        let p = (0..d)
            .map(|l| coeff(&|s| libm::sqrt((j * (j + 1.0) - s * (s + 1.0)).max(0.0)), l))
            .collect();
        Ok(EtaCoefficients { d, z, p })
    }

    fn z_at(&self, l: i64) -> Complex64 {
        self.z[reduce(l, self.d)]
    }

    fn p_at(&self, l: i64) -> Complex64 {
        self.p[reduce(l, self.d)]
    }

    /// `Σ_l η_z^l W_l0`, the diagonal spin component `diag(m − j)`.
    pub fn spin_z(&self) -> Result<ComplexMatrix> {
        let mut out = ComplexMatrix::zeros(self.d, self.d);
        for l in 0..self.d as i64 {
            out.add_scaled(self.z_at(l), &weyl_operator(self.d, l, 0)?.matrix);
        }
        Ok(out)
    }

    /// `Σ_l η_p^l w^{−l} W_{l,−1}`, the raising operator in this orientation.
    pub fn spin_plus(&self) -> Result<ComplexMatrix> {
        let mut out = ComplexMatrix::zeros(self.d, self.d);
        for l in 0..self.d as i64 {
            let w = root_of_unity(self.d, -l);
            out.add_scaled(self.p_at(l) * w, &weyl_operator(self.d, l, -1)?.matrix);
        }
        Ok(out)
    }

    /// `Σ_l η_p^l W_{l,1}`, the lowering operator in this orientation.
    pub fn spin_minus(&self) -> Result<ComplexMatrix> {
        let mut out = ComplexMatrix::zeros(self.d, self.d);
        for l in 0..self.d as i64 {
            out.add_scaled(self.p_at(l), &weyl_operator(self.d, l, 1)?.matrix);
        }
        Ok(out)
    }

    /// `Tr[P_kl J_z⊗J_z] = Σ_m η_z^m η_z^{−m} w^{ml}`.
    pub fn bell_zz(&self, _k: i64, l: i64) -> Complex64 {
        (0..self.d as i64)
            .map(|m| self.z_at(m) * self.z_at(-m) * root_of_unity(self.d, m * l))
            .sum()
    }

    /// `Tr[P_kl J_+⊗J_+] = w^{−k} Σ_m η_p^m η_p^{−m} w^{ml}`.
    pub fn bell_plus_plus(&self, k: i64, l: i64) -> Complex64 {
        let s: Complex64 = (0..self.d as i64)
            .map(|m| self.p_at(m) * self.p_at(-m) * root_of_unity(self.d, m * l))
            .sum();
        s * root_of_unity(self.d, -k)
    }

    /// `Tr[P_kl J_+⊗J_−]`, which vanishes for every Bell state.
    pub fn bell_plus_minus(&self, _k: i64, _l: i64) -> Complex64 {
        ZERO
    }
}

/// `eta_coefficients(d)` as a plain pair `(η_z, η_p)`.
pub fn eta_coefficients(d: usize) -> Result<(Vec<Complex64>, Vec<Complex64>)> {
    let e = EtaCoefficients::new(d)?;
    Ok((e.z, e.p))
}

/// Blocks `B_m` of the partial transpose of a Bell-diagonal state
/// `Σ C_kl P_kl`. Block `m` collects the basis states `|s, m−s⟩`, and
/// `⟨s|B_m|t⟩ = (1/d) Σ_k C_{k, m−s−t} w^{k(s−t)}`; the partial transpose is
/// permutation-similar to `⊕_m B_m`.
pub fn pt_blocks(coeffs: &[Vec<f64>]) -> Result<Vec<ComplexMatrix>> {
    let d = coeffs.len();
    check_family_dim(d)?;
    if coeffs.iter().any(|row| row.len() != d) {
        return Err(Error::InvalidArgument("coefficient table must be d x d"));
    }
    let inv = 1.0 / d as f64;
    Ok((0..d)
        .map(|m| {
            ComplexMatrix::from_fn(d, d, |s, t| {
                let l = reduce(m as i64 - s as i64 - t as i64, d);
                (0..d)
                    .map(|k| root_of_unity(d, (k * s) as i64 - (k * t) as i64) * coeffs[k][l])
                    .sum::<Complex64>()
                    * inv
            })
        })
        .collect())
}

/// The four vertices of the physical tetrahedron of `ρ_{α,β,γ}`, as
/// `[α, β, γ]`. Bounded only for `d ≥ 3`.
pub fn tetrahedron_vertices(d: usize) -> Result<[[f64; 3]; 4]> {
    if d < 3 {
        return Err(Error::UnboundedRegion(d));
    }
    let df = d as f64;
    let c = 1.0 / (df * (df - 2.0));
    Ok([
        [1.0, 0.0, 0.0],
        [0.0, 1.0, 0.0],
        [0.0, 0.0, 1.0],
        [-c, -(df - 1.0) * c, -df * c],
    ])
}

/// `n³` points covering the physical tetrahedron (boundary included), from
/// the cube-to-simplex map `λ = (u, (1−u)v, (1−u)(1−v)w, (1−u)(1−v)(1−w))`.
pub fn tetrahedron_grid(d: usize, n: usize) -> Result<Vec<FamilyPoint>> {
    if n < 2 {
        return Err(Error::InvalidArgument(
            "grid needs at least two points per axis",
        ));
    }
    let v = tetrahedron_vertices(d)?;
    let step = 1.0 / (n - 1) as f64;
    let mut out = Vec::with_capacity(n * n * n);
    for iu in 0..n {
        for iv in 0..n {
            for iw in 0..n {
                let (u, s, w) = (iu as f64 * step, iv as f64 * step, iw as f64 * step);
                let lambda = [
                    u,
                    (1.0 - u) * s,
                    (1.0 - u) * (1.0 - s) * w,
                    (1.0 - u) * (1.0 - s) * (1.0 - w),
                ];
                let mut p = [0.0; 3];
                for (weight, vertex) in lambda.iter().zip(&v) {
                    for axis in 0..3 {
                        p[axis] += weight * vertex[axis];
                    }
                }
                out.push(FamilyPoint::new(d, p[0], p[1], p[2]));
            }
        }
    }
    Ok(out)
}

/// `Σ_kl P_kl / d²`; equals `1/d²` when the Bell basis is complete.
pub fn bell_resolution(d: usize) -> Result<ComplexMatrix> {
    let mut acc = ComplexMatrix::zeros(d * d, d * d);
    let w = Complex64::new(1.0 / (d * d) as f64, 0.0);
    for k in 0..d as i64 {
        for l in 0..d as i64 {
            acc.add_scaled(w, bell_state(d, k, l)?.matrix());
        }
    }
    Ok(acc)
}

#[allow(dead_code)]
fn unit(d: usize, m: usize) -> Vec<Complex64> {
    let mut v = vec![ZERO; d];
    v[m] = ONE;
    v
}
