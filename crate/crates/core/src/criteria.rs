//! Entanglement verdicts: PPT, the octahedron criterion on spin correlators
//! (raw and rotation-optimized), its closed form on `ρ_{α,β,γ}`, Werner
//! thresholds and the four collective-spin squeezing inequalities.

use alloc::vec::Vec;
use core::fmt;

use crate::density::{self, DensityMatrix};
use crate::eigen;
use crate::error::{Error, Result};
use crate::mapping::{correlation_tensor, two_dims};
use crate::matrix::ComplexMatrix;
use crate::spin::{spin_of, SpinOperators};
use crate::states::{werner_state, FamilyPoint};

/// A report is violated when `lhs > bound + VERDICT_TOLERANCE`.
pub const VERDICT_TOLERANCE: f64 = 1e-10;

/// Which witness produced a report.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "kebab-case"))]
pub enum Witness {
    Ppt,
    Octahedron,
    OctahedronOptimized,
    Family,
}

impl Witness {
    pub fn name(&self) -> &'static str {
        match self {
            Witness::Ppt => "ppt",
            Witness::Octahedron => "octahedron",
            Witness::OctahedronOptimized => "octahedron-optimized",
            Witness::Family => "family",
        }
    }
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct CriterionReport {
    pub lhs: f64,
    pub bound: f64,
    pub violated: bool,
    pub witness: Witness,
}

impl CriterionReport {
    pub fn new(witness: Witness, lhs: f64, bound: f64) -> Self {
        CriterionReport {
            lhs,
            bound,
            violated: lhs > bound + VERDICT_TOLERANCE,
            witness,
        }
    }

    /// `lhs / bound`; only meaningful for positive bounds.
    pub fn normalized_lhs(&self) -> f64 {
        self.lhs / self.bound
    }
}

/// `lhs = −λ_min(ρ^{T_k})`, `bound = 0`; violated means NPT.
pub fn ppt_check(rho: &DensityMatrix, subsystem: usize) -> Result<CriterionReport> {
    let lambda = rho.min_pt_eigenvalue(subsystem)?;
    Ok(CriterionReport::new(Witness::Ppt, -lambda, 0.0))
}

/// `Σ_i |⟨J_i ⊗ J_i⟩| ≤ j₁j₂` on the given axes.
pub fn octahedron_criterion(rho: &DensityMatrix) -> Result<CriterionReport> {
    let [d1, d2] = two_dims(rho)?;
    let s1 = SpinOperators::new(d1)?;
    let s2 = SpinOperators::new(d2)?;
    let dims = [d1, d2];
    let mut lhs = 0.0;
    for i in 0..3 {
        let c =
            density::product_expectation(rho.matrix(), &dims, &[s1.component(i), s2.component(i)])?;
        lhs += c.re.abs();
    }
    Ok(CriterionReport::new(
        Witness::Octahedron,
        lhs,
        s1.j() * s2.j(),
    ))
}

/// Singular values of a real 3×3 matrix, descending.
pub fn singular_values(t: &[[f64; 3]; 3]) -> Result<[f64; 3]> {
    let block = ComplexMatrix::from_fn(6, 6, |r, c| {
        let v = match (r < 3, c < 3) {
            (true, false) => t[r][c - 3],
            (false, true) => t[c][r - 3],
            _ => 0.0,
        };
        num_complex::Complex64::new(v, 0.0)
    });
    let ev = eigen::hermitian_eigenvalues(&block, eigen::DEFAULT_TOLERANCE)?;
    // ev = [−σ1, −σ2, −σ3, σ3, σ2, σ1]; average the two copies of each.
    Ok([
        0.5 * (ev[5] - ev[0]),
        0.5 * (ev[4] - ev[1]),
        0.5 * (ev[3] - ev[2]),
    ])
}

/// Sum of singular values of the normalized correlation tensor, bound 1.
/// Local rotations act on `T` by orthogonal conjugation, so this is the
/// octahedron criterion in the frame that diagonalizes `T`.
pub fn octahedron_criterion_optimized(rho: &DensityMatrix) -> Result<CriterionReport> {
    let ct = correlation_tensor(rho)?;
    let sv = singular_values(&ct.t)?;
    Ok(CriterionReport::new(
        Witness::OctahedronOptimized,
        sv.iter().sum(),
        1.0,
    ))
}

/// Closed form of the normalized octahedron criterion on `ρ_{α,β,γ}`:
/// `[|(j+1)(α+β)+(j−2)γ| + (j+1)|2α−β/j|] / 3j ≤ 1`.
pub fn family_criterion(point: &FamilyPoint) -> CriterionReport {
    let j = spin_of(point.d);
    let (a, b, g) = (point.alpha, point.beta, point.gamma);
    let lhs = (((j + 1.0) * (a + b) + (j - 2.0) * g).abs() + (j + 1.0) * (2.0 * a - b / j).abs())
        / (3.0 * j);
    CriterionReport::new(Witness::Family, lhs, 1.0)
}

/// Position of a correlation diagonal relative to the separable octahedron
/// and the physical tetrahedron of two-qubit states.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Membership {
    pub in_tetrahedron: bool,
    pub in_octahedron: bool,
}

/// Tetrahedron with vertices `(−1,−1,−1)`, `(−1,1,1)`, `(1,−1,1)`, `(1,1,−1)`;
/// octahedron `|t₁|+|t₂|+|t₃| ≤ 1`.
pub fn tetrahedron_octahedron_membership(t: [f64; 3]) -> Membership {
    let [x, y, z] = t;
    let facets = [
        1.0 - x - y - z,
        1.0 + x + y - z,
        1.0 + x - y + z,
        1.0 - x + y + z,
    ];
    Membership {
        in_tetrahedron: facets.iter().all(|&f| f >= -VERDICT_TOLERANCE),
        in_octahedron: x.abs() + y.abs() + z.abs() <= 1.0 + VERDICT_TOLERANCE,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "kebab-case"))]
pub enum Relation {
    AtMost,
    AtLeast,
}

/// One squeezing inequality `lhs ≤ rhs` or `lhs ≥ rhs`.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct InequalityReport {
    pub lhs: f64,
    pub rhs: f64,
    pub relation: Relation,
    pub satisfied: bool,
}

impl InequalityReport {
    fn new(lhs: f64, rhs: f64, relation: Relation) -> Self {
        let satisfied = match relation {
            Relation::AtMost => lhs <= rhs + VERDICT_TOLERANCE,
            Relation::AtLeast => lhs >= rhs - VERDICT_TOLERANCE,
        };
        InequalityReport {
            lhs,
            rhs,
            relation,
            satisfied,
        }
    }
}

/// The four inequalities for one assignment `(a, b, c)` of the axes:
///
/// 1. `⟨S₁²⟩ + ⟨S₂²⟩ + ⟨S₃²⟩ ≤ N(N+2)/4`
/// 2. `(ΔS₁)² + (ΔS₂)² + (ΔS₃)² ≥ N/2`
/// 3. `S^lsq_a + S^lsq_b − (N−1)(Δ̃S_c)² ≤ N(N−1)/4`
/// 4. `S^lsq_a − (N−1)[(Δ̃S_b)² + (Δ̃S_c)²] ≤ N(N−1)/4`
///
/// where `S^lsq_α = Σ_{i≠k} ⟨s^i_α s^k_α⟩`, `⟨S_α²⟩ = N/4 + S^lsq_α` and
/// `(Δ̃S_α)² = S^lsq_α − ⟨S_α⟩²`, with per-site `s_α = J_α/2j`.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct SqueezingReport {
    pub permutation: [usize; 3],
    pub parties: usize,
    pub inequalities: [InequalityReport; 4],
}

impl SqueezingReport {
    pub fn satisfied(&self) -> bool {
        self.inequalities.iter().all(|r| r.satisfied)
    }

    pub fn violated(&self) -> bool {
        !self.satisfied()
    }
}

/// First and pairwise moments of the collective spin per axis.
#[derive(Debug, Clone, Copy, PartialEq)]
struct CollectiveMoments {
    mean: [f64; 3],
    lsq: [f64; 3],
}

/// Moments of `S_α = Σ_i J^i_α / 2j_i`; each site keeps its own spin.
fn collective_moments(rho: &DensityMatrix) -> Result<CollectiveMoments> {
    let dims = rho.dims();
    let n = dims.len();
    let spins = dims
        .iter()
        .map(|&d| SpinOperators::new(d))
        .collect::<Result<Vec<_>>>()?;
    let ids: Vec<ComplexMatrix> = dims.iter().map(|&d| ComplexMatrix::identity(d)).collect();
    let mut out = CollectiveMoments {
        mean: [0.0; 3],
        lsq: [0.0; 3],
    };
    for axis in 0..3 {
        let ops: Vec<ComplexMatrix> = spins
            .iter()
            .map(|s| s.component(axis).scale_real(1.0 / (2.0 * s.j())))
            .collect();
        let mut factors: Vec<&ComplexMatrix> = ids.iter().collect();
        for i in 0..n {
            factors[i] = &ops[i];
            out.mean[axis] += density::product_expectation(rho.matrix(), dims, &factors)?.re;
            for k in (i + 1)..n {
                factors[k] = &ops[k];
                out.lsq[axis] +=
                    2.0 * density::product_expectation(rho.matrix(), dims, &factors)?.re;
                factors[k] = &ids[k];
            }
            factors[i] = &ids[i];
        }
    }
    Ok(out)
}

fn check_permutation(p: [usize; 3]) -> Result<()> {
    let mut seen = [false; 3];
    for &a in &p {
        if a > 2 || seen[a] {
            return Err(Error::InvalidArgument(
                "axis permutation must reorder 0, 1, 2",
            ));
        }
        seen[a] = true;
    }
    Ok(())
}

fn squeezing_report(
    m: &CollectiveMoments,
    parties: usize,
    permutation: [usize; 3],
) -> SqueezingReport {
    let nf = parties as f64;
    let second: [f64; 3] = core::array::from_fn(|a| nf / 4.0 + m.lsq[a]);
    let var: [f64; 3] = core::array::from_fn(|a| second[a] - m.mean[a] * m.mean[a]);
    let tvar: [f64; 3] = core::array::from_fn(|a| m.lsq[a] - m.mean[a] * m.mean[a]);
    let [a, b, c] = permutation;
    let pair_bound = nf * (nf - 1.0) / 4.0;
    SqueezingReport {
        permutation,
        parties,
        inequalities: [
            InequalityReport::new(second.iter().sum(), nf * (nf + 2.0) / 4.0, Relation::AtMost),
            InequalityReport::new(var.iter().sum(), nf / 2.0, Relation::AtLeast),
            InequalityReport::new(
                m.lsq[a] + m.lsq[b] - (nf - 1.0) * tvar[c],
                pair_bound,
                Relation::AtMost,
            ),
            InequalityReport::new(
                m.lsq[a] - (nf - 1.0) * (tvar[b] + tvar[c]),
                pair_bound,
                Relation::AtMost,
            ),
        ],
    }
}

/// Evaluates the four inequalities on `N` qudits for one axis assignment.
pub fn spin_squeezing_check(
    rho: &DensityMatrix,
    permutation: [usize; 3],
) -> Result<SqueezingReport> {
    check_permutation(permutation)?;
    let m = collective_moments(rho)?;
    Ok(squeezing_report(&m, rho.dims().len(), permutation))
}

/// All six axis assignments, in lexicographic order.
pub const AXIS_PERMUTATIONS: [[usize; 3]; 6] = [
    [0, 1, 2],
    [0, 2, 1],
    [1, 0, 2],
    [1, 2, 0],
    [2, 0, 1],
    [2, 1, 0],
];

pub fn spin_squeezing_all(rho: &DensityMatrix) -> Result<Vec<SqueezingReport>> {
    let m = collective_moments(rho)?;
    Ok(AXIS_PERMUTATIONS
        .iter()
        .map(|&p| squeezing_report(&m, rho.dims().len(), p))
        .collect())
}

#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct WernerThresholds {
    /// `1/(d+1)`
    pub ppt_analytic: f64,
    /// `j/(j+1)`
    pub criterion_analytic: f64,
    pub ppt_numeric: f64,
    pub criterion_numeric: f64,
}

pub const BISECTION_STEPS: usize = 50;

fn bisect(mut detected: impl FnMut(f64) -> Result<bool>) -> Result<f64> {
    let (mut lo, mut hi) = (0.0, 1.0);
    for _ in 0..BISECTION_STEPS {
        let mid = 0.5 * (lo + hi);
        if detected(mid)? {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// Analytic and bisected thresholds for NPT and for octahedron detection of
/// Werner states.
pub fn werner_thresholds(d: usize) -> Result<WernerThresholds> {
    let j = spin_of(d);
    let ppt_numeric = bisect(|a| Ok(ppt_check(&werner_state(d, a)?, 1)?.violated))?;
    let criterion_numeric = bisect(|a| Ok(octahedron_criterion(&werner_state(d, a)?)?.violated))?;
    Ok(WernerThresholds {
        ppt_analytic: 1.0 / (d as f64 + 1.0),
        criterion_analytic: j / (j + 1.0),
        ppt_numeric,
        criterion_numeric,
    })
}
