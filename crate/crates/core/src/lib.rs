//! Qudit-to-qubit dichotomization and the entanglement criteria it induces.
//!
//! Every qudit is mapped to a qubit through an isometry built from the
//! Schwinger representation of angular momentum. The map keeps product states
//! product, commutes with partial transposition and is covariant under SU(2)
//! rotations, so qubit separability tests become qudit entanglement
//! witnesses. The crate provides:
//!
//! * dense complex linear algebra with a Jacobi Hermitian eigensolver
//!   ([`matrix`], [`density`], [`eigen`]),
//! * spin operators and the Schwinger isometry ([`spin`]),
//! * the single, two and N-qudit maps ([`mapping`]),
//! * Weyl operators, generalized Bell states, Werner states and the
//!   three-parameter Bell-diagonal family with closed-form spectra
//!   ([`states`]),
//! * PPT, octahedron and spin-squeezing verdicts ([`criteria`]),
//! * parameter-space classification of the family ([`region`]),
//! * seeded random state generators ([`random`]).
//!
//! The crate is `no_std` and only needs `alloc`.
#![no_std]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod criteria;
pub mod density;
pub mod eigen;
pub mod error;
pub mod mapping;
pub mod matrix;
pub mod random;
pub mod region;
pub mod spin;
pub mod states;

pub use num_complex::Complex64;

pub use density::DensityMatrix;
pub use error::{Error, Result};
pub use matrix::ComplexMatrix;
