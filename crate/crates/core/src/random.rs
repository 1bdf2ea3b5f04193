//! Seeded random states for property tests and Monte Carlo sweeps.
//!
//! Pure states are normalized standard complex Gaussian vectors (Haar
//! distributed); mixture weights are uniform on the simplex (Dirichlet(1),
//! drawn as normalized `Exp(1)` variates).

use alloc::vec::Vec;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Exp1, StandardNormal};

use crate::density::DensityMatrix;
use crate::error::{Error, Result};
use crate::matrix::ComplexMatrix;

/// A single-owner seeded generator.
#[derive(Debug, Clone)]
pub struct StateSampler {
    rng: ChaCha8Rng,
}

impl StateSampler {
    pub fn new(seed: u64) -> Self {
        StateSampler {
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    pub fn rng(&mut self) -> &mut ChaCha8Rng {
        &mut self.rng
    }

    pub fn uniform(&mut self) -> f64 {
        self.rng.random::<f64>()
    }

    pub fn gaussian(&mut self) -> f64 {
        self.rng.sample(StandardNormal)
    }

    fn complex_gaussian(&mut self) -> Complex64 {
        Complex64::new(self.gaussian(), self.gaussian())
    }

    /// Haar-random unit vector in `C^n`.
    pub fn pure_vector(&mut self, n: usize) -> Vec<Complex64> {
        loop {
            let v: Vec<Complex64> = (0..n).map(|_| self.complex_gaussian()).collect();
            let norm = libm::sqrt(v.iter().map(|z| z.norm_sqr()).sum::<f64>());
            if norm > 1e-12 {
                return v.into_iter().map(|z| z / norm).collect();
            }
        }
    }

    pub fn pure_state(&mut self, dims: &[usize]) -> Result<DensityMatrix> {
        let n = checked_order(dims)?;
        DensityMatrix::pure(&self.pure_vector(n), dims.to_vec())
    }

    /// Full-rank mixed state `G G† / Tr[G G†]` from a square Ginibre matrix.
    pub fn mixed_state(&mut self, dims: &[usize]) -> Result<DensityMatrix> {
        let n = checked_order(dims)?;
        let g = ComplexMatrix::from_fn(n, n, |_, _| self.complex_gaussian());
        let w = &g * &g.adjoint();
        let tr = w.trace().re;
        DensityMatrix::new(w.scale_real(1.0 / tr).hermitian_part(), dims.to_vec())
    }

    /// Uniform point on the probability simplex with `k` vertices.
    pub fn simplex_weights(&mut self, k: usize) -> Vec<f64> {
        let raw: Vec<f64> = (0..k).map(|_| self.rng.sample::<f64, _>(Exp1)).collect();
        let total: f64 = raw.iter().sum();
        raw.into_iter().map(|x| x / total).collect()
    }

    /// Uniform unit vector in `R^3`.
    pub fn unit_axis(&mut self) -> [f64; 3] {
        loop {
            let v = [self.gaussian(), self.gaussian(), self.gaussian()];
            let norm = libm::sqrt(v.iter().map(|x| x * x).sum::<f64>());
            if norm > 1e-9 {
                return [v[0] / norm, v[1] / norm, v[2] / norm];
            }
        }
    }

    /// Convex mixture of `terms` random pure product states on `dims`.
    pub fn separable_state(&mut self, dims: &[usize], terms: usize) -> Result<DensityMatrix> {
        if terms == 0 {
            return Err(Error::InvalidArgument(
                "a separable mixture needs at least one term",
            ));
        }
        checked_order(dims)?;
        let weights = self.simplex_weights(terms);
        let n: usize = dims.iter().product();
        let mut acc = ComplexMatrix::zeros(n, n);
        for w in weights {
            let mut psi = alloc::vec![Complex64::new(1.0, 0.0)];
            for &d in dims {
                let local = self.pure_vector(d);
                psi = psi
                    .iter()
                    .flat_map(|a| local.iter().map(move |b| a * b))
                    .collect();
            }
            acc.add_scaled(Complex64::new(w, 0.0), &ComplexMatrix::outer(&psi, &psi));
        }
        DensityMatrix::new(acc.hermitian_part(), dims.to_vec())
    }
}

fn checked_order(dims: &[usize]) -> Result<usize> {
    if dims.is_empty() {
        return Err(Error::EmptySelection);
    }
    if let Some(&d) = dims.iter().find(|&&d| d < 2) {
        return Err(Error::InvalidDimension(d));
    }
    Ok(dims.iter().product())
}

/// Seeded random separable state on `d1 ⊗ d2`.
pub fn random_separable_state(
    d1: usize,
    d2: usize,
    terms: usize,
    seed: u64,
) -> Result<DensityMatrix> {
    StateSampler::new(seed).separable_state(&[d1, d2], terms)
}
