#![allow(dead_code)]

use quditmap_core::matrix::kron_all;
use quditmap_core::random::StateSampler;
use quditmap_core::spin::{pauli, SpinOperators};
use quditmap_core::{Complex64, ComplexMatrix, DensityMatrix};

/// Random state: even draws pure, odd draws full rank.
pub fn random_state(s: &mut StateSampler, dims: &[usize], i: usize) -> DensityMatrix {
    if i.is_multiple_of(2) {
        s.pure_state(dims).unwrap()
    } else {
        s.mixed_state(dims).unwrap()
    }
}

/// `[1, J1/j, J2/j, J3/j]`.
pub fn normalized_spin(d: usize) -> Vec<ComplexMatrix> {
    let s = SpinOperators::new(d).unwrap();
    let mut out = vec![ComplexMatrix::identity(d)];
    for i in 0..3 {
        out.push(s.component(i).scale_real(1.0 / s.j()));
    }
    out
}

/// `2^{-N} Σ_words Tr[ρ ⊗L_{k_i}] ⊗σ_{k_i}`, each word operator assembled in
/// full with Kronecker products.
pub fn word_expansion_map(rho: &ComplexMatrix, dims: &[usize]) -> ComplexMatrix {
    let n = dims.len();
    let ls: Vec<Vec<ComplexMatrix>> = dims.iter().map(|&d| normalized_spin(d)).collect();
    let mut out = ComplexMatrix::zeros(1 << n, 1 << n);
    for word in 0..4usize.pow(n as u32) {
        let digits: Vec<usize> = (0..n)
            .map(|i| (word / 4usize.pow((n - 1 - i) as u32)) % 4)
            .collect();
        let l = kron_all(digits.iter().zip(&ls).map(|(&k, l)| &l[k]));
        let coeff = (&l * rho).trace();
        let paulis: Vec<ComplexMatrix> = digits.iter().map(|&k| pauli(k)).collect();
        let sig = kron_all(paulis.iter());
        out.add_scaled(coeff / (1u64 << n) as f64, &sig);
    }
    out
}

/// Entrywise `Σ_{r,c} x_rc y_cr`, the oracle for `Tr[x y]`.
pub fn trace_product_oracle(x: &ComplexMatrix, y: &ComplexMatrix) -> Complex64 {
    let n = x.rows();
    let mut acc = Complex64::new(0.0, 0.0);
    for r in 0..n {
        for c in 0..n {
            acc += x[(r, c)] * y[(c, r)];
        }
    }
    acc
}

pub fn random_hermitian(s: &mut StateSampler, n: usize) -> ComplexMatrix {
    let g = ComplexMatrix::from_fn(n, n, |_, _| Complex64::new(s.gaussian(), s.gaussian()));
    (&g + &g.adjoint()).scale_real(0.5)
}
