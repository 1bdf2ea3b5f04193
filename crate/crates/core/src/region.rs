//! Classification of the `(α, β, γ)` parameter space of `ρ_{α,β,γ}` into
//! unphysical, PPT, detected-entangled and undetected-NPT points.

use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use rand::Rng;

use crate::criteria::family_criterion;
use crate::eigen::PSD_TOLERANCE;
use crate::error::{Error, Result};
use crate::random::StateSampler;
use crate::states::{family_pt_spectrum_analytic, family_state, tetrahedron_vertices, FamilyPoint};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "lowercase"))]
pub enum RegionClass {
    Unphysical,
    Ppt,
    Detected,
    Undetected,
}

impl RegionClass {
    pub const ALL: [RegionClass; 4] = [
        RegionClass::Unphysical,
        RegionClass::Ppt,
        RegionClass::Detected,
        RegionClass::Undetected,
    ];

    pub fn label(&self) -> &'static str {
        match self {
            RegionClass::Unphysical => "unphysical",
            RegionClass::Ppt => "ppt",
            RegionClass::Detected => "detected",
            RegionClass::Undetected => "undetected",
        }
    }
}

impl fmt::Display for RegionClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

/// How the minimum eigenvalue of the partial transpose is obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "lowercase"))]
pub enum SpectrumMode {
    /// Closed-form spectrum; integer spin only.
    Analytic,
    /// Jacobi diagonalization of the assembled partial transpose.
    Numeric,
}

impl FromStr for SpectrumMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "analytic" => Ok(SpectrumMode::Analytic),
            "numeric" => Ok(SpectrumMode::Numeric),
            _ => Err(Error::InvalidArgument("mode must be analytic or numeric")),
        }
    }
}

/// Smallest eigenvalue of `ρ_{α,β,γ}^{T₂}` for a physical point.
pub fn family_min_pt_eigenvalue(point: &FamilyPoint, mode: SpectrumMode) -> Result<f64> {
    match mode {
        SpectrumMode::Analytic => Ok(family_pt_spectrum_analytic(point)?.min()),
        SpectrumMode::Numeric => family_state(point)?.min_pt_eigenvalue(1),
    }
}

/// Unphysical, then PPT, then detected by the closed-form criterion, else
/// undetected. Checking PPT first keeps `detected` inside the NPT set.
pub fn classify(point: &FamilyPoint, mode: SpectrumMode) -> Result<RegionClass> {
    if mode == SpectrumMode::Analytic {
        check_mode(point.d, mode)?;
    }
    if !point.is_physical() {
        return Ok(RegionClass::Unphysical);
    }
    if family_min_pt_eigenvalue(point, mode)? >= -PSD_TOLERANCE {
        return Ok(RegionClass::Ppt);
    }
    if family_criterion(point).violated {
        Ok(RegionClass::Detected)
    } else {
        Ok(RegionClass::Undetected)
    }
}

/// Analytic spectra exist only for odd `d ≥ 3`.
pub fn check_mode(d: usize, mode: SpectrumMode) -> Result<()> {
    if d < 2 {
        return Err(Error::InvalidDimension(d));
    }
    if mode == SpectrumMode::Analytic && (d < 3 || d.is_multiple_of(2)) {
        return Err(Error::UnsupportedSpin(d));
    }
    Ok(())
}

#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct RegionSample {
    pub alpha: f64,
    pub beta: f64,
    pub gamma: f64,
    pub class: RegionClass,
}

/// Axis-aligned box `[lo_i, hi_i]` in `(α, β, γ)`.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Bounds {
    pub lo: [f64; 3],
    pub hi: [f64; 3],
}

/// Default margin added around the tetrahedron's bounding box.
pub const DEFAULT_MARGIN: f64 = 0.1;

impl Bounds {
    pub fn cube(lo: f64, hi: f64) -> Result<Self> {
        Bounds::new([lo; 3], [hi; 3])
    }

    pub fn new(lo: [f64; 3], hi: [f64; 3]) -> Result<Self> {
        if lo.iter().chain(&hi).any(|x| !x.is_finite()) {
            return Err(Error::NonFinite);
        }
        if lo.iter().zip(&hi).any(|(a, b)| a >= b) {
            return Err(Error::InvalidArgument(
                "box lower bound must be below upper bound",
            ));
        }
        Ok(Bounds { lo, hi })
    }

    /// Smallest box containing the physical tetrahedron, widened by `margin`.
    pub fn tetrahedron(d: usize, margin: f64) -> Result<Self> {
        let v = tetrahedron_vertices(d)?;
        let mut lo = [f64::INFINITY; 3];
        let mut hi = [f64::NEG_INFINITY; 3];
        for p in &v {
            for i in 0..3 {
                lo[i] = lo[i].min(p[i] - margin);
                hi[i] = hi[i].max(p[i] + margin);
            }
        }
        Bounds::new(lo, hi)
    }

    pub fn volume(&self) -> f64 {
        (0..3).map(|i| self.hi[i] - self.lo[i]).product()
    }
}

/// `resolution³` points, α slowest and γ fastest.
pub fn grid_points(d: usize, bounds: &Bounds, resolution: usize) -> Result<Vec<FamilyPoint>> {
    if resolution < 2 {
        return Err(Error::InvalidArgument("resolution must be at least 2"));
    }
    let axis = |i: usize| -> Vec<f64> {
        let (lo, hi) = (bounds.lo[i], bounds.hi[i]);
        let step = (hi - lo) / (resolution - 1) as f64;
        (0..resolution)
            .map(|k| {
                if k + 1 == resolution {
                    hi
                } else {
                    lo + k as f64 * step
                }
            })
            .collect()
    };
    let (a, b, g) = (axis(0), axis(1), axis(2));
    let mut out = Vec::with_capacity(resolution.pow(3));
    for &alpha in &a {
        for &beta in &b {
            for &gamma in &g {
                out.push(FamilyPoint::new(d, alpha, beta, gamma));
            }
        }
    }
    Ok(out)
}

pub fn classify_sample(point: &FamilyPoint, mode: SpectrumMode) -> Result<RegionSample> {
    Ok(RegionSample {
        alpha: point.alpha,
        beta: point.beta,
        gamma: point.gamma,
        class: classify(point, mode)?,
    })
}

/// Monte Carlo estimate of how much of the physical tetrahedron is NPT and
/// how much of the NPT part the closed-form criterion detects.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "camelCase"))]
pub struct DetectedFraction {
    pub d: usize,
    pub samples: usize,
    pub seed: u64,
    pub entangled: usize,
    pub detected: usize,
    pub entangled_fraction: f64,
    pub detected_among_entangled: f64,
    /// Binomial standard error of `detected_among_entangled`.
    pub standard_error: f64,
}

/// Draws `samples` physical points uniformly by rejection from the vertex
/// bounding box. Deterministic under `seed`.
pub fn sample_physical_points(d: usize, samples: usize, seed: u64) -> Result<Vec<FamilyPoint>> {
    let bounds = Bounds::tetrahedron(d, 0.0)?;
    let mut sampler = StateSampler::new(seed);
    let mut out = Vec::with_capacity(samples);
    while out.len() < samples {
        let rng = sampler.rng();
        let p: [f64; 3] = core::array::from_fn(|i| rng.random_range(bounds.lo[i]..bounds.hi[i]));
        let point = FamilyPoint::new(d, p[0], p[1], p[2]);
        if point.violated_condition(0.0).is_none() {
            out.push(point);
        }
    }
    Ok(out)
}

/// Analytic spectra for odd `d`, numeric ones otherwise.
pub fn preferred_mode(d: usize) -> SpectrumMode {
    if d % 2 == 1 && d >= 3 {
        SpectrumMode::Analytic
    } else {
        SpectrumMode::Numeric
    }
}

/// Aggregates the classes of [`sample_physical_points`] output.
pub fn summarize_fraction(d: usize, seed: u64, classes: &[RegionClass]) -> DetectedFraction {
    let samples = classes.len();
    let detected = classes
        .iter()
        .filter(|c| **c == RegionClass::Detected)
        .count();
    let entangled = detected
        + classes
            .iter()
            .filter(|c| **c == RegionClass::Undetected)
            .count();
    let ratio = |a: usize, b: usize| if b == 0 { 0.0 } else { a as f64 / b as f64 };
    let p = ratio(detected, entangled);
    let standard_error = if entangled == 0 {
        0.0
    } else {
        libm::sqrt(p * (1.0 - p) / entangled as f64)
    };
    DetectedFraction {
        d,
        samples,
        seed,
        entangled,
        detected,
        entangled_fraction: ratio(entangled, samples),
        detected_among_entangled: p,
        standard_error,
    }
}

/// Monte Carlo share of NPT points in the physical tetrahedron and of
/// detected points among them.
pub fn detected_fraction(d: usize, samples: usize, seed: u64) -> Result<DetectedFraction> {
    if samples == 0 {
        return Err(Error::InvalidArgument("samples must be positive"));
    }
    let mode = preferred_mode(d);
    let classes = sample_physical_points(d, samples, seed)?
        .iter()
        .map(|p| classify(p, mode))
        .collect::<Result<Vec<_>>>()?;
    Ok(summarize_fraction(d, seed, &classes))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn origin_and_bell_corner() {
        let origin = FamilyPoint::new(3, 0.0, 0.0, 0.0);
        let bell = FamilyPoint::new(3, 1.0, 0.0, 0.0);
        for mode in [SpectrumMode::Analytic, SpectrumMode::Numeric] {
            assert_eq!(classify(&origin, mode).unwrap(), RegionClass::Ppt);
            assert_eq!(classify(&bell, mode).unwrap(), RegionClass::Detected);
        }
    }

    #[test]
    fn analytic_mode_rejects_even_dimension() {
        let p = FamilyPoint::new(4, 0.0, 0.0, 0.0);
        assert_eq!(
            classify(&p, SpectrumMode::Analytic),
            Err(Error::UnsupportedSpin(4))
        );
        assert_eq!(
            classify(&p, SpectrumMode::Numeric).unwrap(),
            RegionClass::Ppt
        );
    }

    #[test]
    fn default_box_contains_vertices() {
        let b = Bounds::tetrahedron(3, DEFAULT_MARGIN).unwrap();
        for v in tetrahedron_vertices(3).unwrap() {
            for i in 0..3 {
                assert!(b.lo[i] < v[i] && v[i] < b.hi[i]);
            }
        }
        assert!(Bounds::tetrahedron(2, DEFAULT_MARGIN).is_err());
    }

    #[test]
    fn grid_is_lexicographic() {
        let b = Bounds::cube(0.0, 1.0).unwrap();
        let g = grid_points(3, &b, 3).unwrap();
        assert_eq!(g.len(), 27);
        assert_eq!((g[0].alpha, g[0].beta, g[0].gamma), (0.0, 0.0, 0.0));
        assert_eq!((g[1].alpha, g[1].beta, g[1].gamma), (0.0, 0.0, 0.5));
        assert_eq!((g[26].alpha, g[26].beta, g[26].gamma), (1.0, 1.0, 1.0));
    }

    #[test]
    fn box_corners_outside_tetrahedron_are_unphysical() {
        let b = Bounds::tetrahedron(3, DEFAULT_MARGIN).unwrap();
        let g = grid_points(3, &b, 2).unwrap();
        for p in g {
            assert_eq!(
                classify(&p, SpectrumMode::Analytic).unwrap(),
                RegionClass::Unphysical
            );
        }
    }
}
