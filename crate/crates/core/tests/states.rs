mod common;

use quditmap_core::density::product_expectation;
use quditmap_core::eigen::{group_sorted, hermitian_eigenvalues};
use quditmap_core::random::StateSampler;
use quditmap_core::spin::SpinOperators;
use quditmap_core::states::{
    bell_projector_weyl_expansion, bell_resolution, bell_state, eta_coefficients,
    family_correlators_analytic, family_pt_spectrum_analytic, family_spectrum_analytic,
    family_state, pt_blocks, tetrahedron_grid, weyl_operator, EtaCoefficients, FamilyPoint,
    SpectrumWithMultiplicity,
};
use quditmap_core::{Complex64, ComplexMatrix};

fn random_physical_point(s: &mut StateSampler, d: usize) -> FamilyPoint {
    loop {
        let p = FamilyPoint::new(
            d,
            s.uniform() * 2.0 - 1.0,
            s.uniform() * 2.0 - 1.0,
            s.uniform() * 2.0 - 1.0,
        );
        if p.is_physical() {
            return p;
        }
    }
}

fn assert_same_spectrum(analytic: &SpectrumWithMultiplicity, numeric: &[f64], what: &str) {
    let a = analytic.sorted_values();
    assert_eq!(a.len(), numeric.len(), "{what}");
    for (x, y) in a.iter().zip(numeric) {
        assert!((x - y).abs() < 1e-10, "{what}: {x} vs {y}");
    }
    let ga = group_sorted(&a, 1e-8);
    let gn = group_sorted(numeric, 1e-8);
    let mult = |g: &[(f64, usize)]| g.iter().map(|x| x.1).collect::<Vec<_>>();
    assert_eq!(mult(&ga), mult(&gn), "{what}");
}

#[test]
fn weyl_operators_are_hilbert_schmidt_orthogonal() {
    for d in [2, 3, 5] {
        for k in 0..d as i64 {
            for l in 0..d as i64 {
                let a = weyl_operator(d, k, l).unwrap().matrix;
                for m in 0..d as i64 {
                    for n in 0..d as i64 {
                        let b = weyl_operator(d, m, n).unwrap().matrix;
                        let ip = (&a.adjoint() * &b).trace();
                        let expected = if (k, l) == (m, n) { d as f64 } else { 0.0 };
                        assert!((ip - Complex64::new(expected, 0.0)).norm() < 1e-12);
                    }
                }
            }
        }
    }
}

#[test]
fn bell_projectors_resolve_identity() {
    for d in 2..=5 {
        let r = bell_resolution(d).unwrap();
        let target = ComplexMatrix::identity(d * d).scale_real(1.0 / (d * d) as f64);
        assert!(r.max_abs_diff(&target) < 1e-12);
    }
}

#[test]
fn bell_projectors_match_weyl_expansion() {
    for d in [2, 3, 4] {
        for k in 0..d as i64 {
            for l in 0..d as i64 {
                let direct = bell_state(d, k, l).unwrap();
                let expanded = bell_projector_weyl_expansion(d, k, l).unwrap();
                assert!(
                    direct.matrix().max_abs_diff(&expanded) < 1e-12,
                    "d={d} ({k},{l})"
                );
            }
        }
    }
}

#[test]
fn family_state_matches_weyl_reconstruction() {
    let mut s = StateSampler::new(10);
    for _ in 0..10 {
        let p = random_physical_point(&mut s, 3);
        let direct = family_state(&p).unwrap();
        let mut rebuilt = ComplexMatrix::zeros(9, 9);
        for (k, row) in p.bell_coefficients().iter().enumerate() {
            for (l, &c) in row.iter().enumerate() {
                let pkl = bell_projector_weyl_expansion(3, k as i64, l as i64).unwrap();
                rebuilt.add_scaled(Complex64::new(c, 0.0), &pkl);
            }
        }
        assert!(direct.matrix().max_abs_diff(&rebuilt) < 1e-12);
    }
}

#[test]
fn analytic_spectra_match_eigensolver_on_tetrahedron_grid() {
    for d in [3, 5] {
        for p in tetrahedron_grid(d, 5).unwrap() {
            let rho = family_state(&p).unwrap();
            assert_same_spectrum(
                &family_spectrum_analytic(&p).unwrap(),
                &rho.eigenvalues().unwrap(),
                &format!("state {p:?}"),
            );
            let pt = rho.partial_transpose(1).unwrap();
            assert_same_spectrum(
                &family_pt_spectrum_analytic(&p).unwrap(),
                &hermitian_eigenvalues(&pt, 1e-13).unwrap(),
                &format!("pt {p:?}"),
            );
        }
    }
}

#[test]
fn analytic_pt_spectrum_holds_for_larger_integer_spin() {
    let mut s = StateSampler::new(12);
    for d in [7, 9] {
        for _ in 0..5 {
            let p = random_physical_point(&mut s, d);
            let pt = family_state(&p).unwrap().partial_transpose(1).unwrap();
            assert_same_spectrum(
                &family_pt_spectrum_analytic(&p).unwrap(),
                &hermitian_eigenvalues(&pt, 1e-13).unwrap(),
                &format!("pt {p:?}"),
            );
        }
    }
}

#[test]
fn pt_blocks_carry_the_partial_transpose_spectrum() {
    let mut s = StateSampler::new(13);
    for d in [2, 3, 4, 5] {
        for _ in 0..5 {
            let p = random_physical_point(&mut s, d);
            let blocks = pt_blocks(&p.bell_coefficients()).unwrap();
            assert_eq!(blocks.len(), d);
            let mut union: Vec<f64> = blocks
                .iter()
                .flat_map(|b| hermitian_eigenvalues(b, 1e-13).unwrap())
                .collect();
            union.sort_by(f64::total_cmp);
            let pt = family_state(&p).unwrap().partial_transpose(1).unwrap();
            let numeric = hermitian_eigenvalues(&pt, 1e-13).unwrap();
            for (a, b) in union.iter().zip(&numeric) {
                assert!((a - b).abs() < 1e-10, "d={d}");
            }
        }
    }
}

#[test]
fn pt_blocks_are_unitarily_equivalent_for_integer_spin() {
    let p = FamilyPoint::new(5, 0.3, 0.2, -0.1);
    let blocks = pt_blocks(&p.bell_coefficients()).unwrap();
    let first = hermitian_eigenvalues(&blocks[0], 1e-13).unwrap();
    for b in &blocks[1..] {
        let ev = hermitian_eigenvalues(b, 1e-13).unwrap();
        for (x, y) in ev.iter().zip(&first) {
            assert!((x - y).abs() < 1e-12);
        }
    }
}

#[test]
fn correlators_match_direct_expectations() {
    let mut s = StateSampler::new(14);
    for d in [3, 4, 5] {
        let spin = SpinOperators::new(d).unwrap();
        for _ in 0..10 {
            let p = random_physical_point(&mut s, d);
            let rho = family_state(&p).unwrap();
            let analytic = family_correlators_analytic(&p);
            for i in 0..3 {
                let c = product_expectation(
                    rho.matrix(),
                    &[d, d],
                    &[spin.component(i), spin.component(i)],
                )
                .unwrap();
                assert!((c.re - analytic[i]).abs() < 1e-10, "d={d} axis {i}");
            }
        }
    }
}

#[test]
fn eta_coefficients_rebuild_spin_operators() {
    for d in 2..=7 {
        let e = EtaCoefficients::new(d).unwrap();
        let spin = SpinOperators::new(d).unwrap();
        let flip = ComplexMatrix::from_fn(d, d, |r, c| {
            if r + c == d - 1 {
                Complex64::new(1.0, 0.0)
            } else {
                Complex64::new(0.0, 0.0)
            }
        });
        // The expansion runs index m from spin −j upwards: J3 reversed.
        let jz = &(&flip * spin.j3()) * &flip;
        let jp = &(&flip * spin.raising()) * &flip;
        assert!(e.spin_z().unwrap().max_abs_diff(&jz) < 1e-12, "d={d}");
        assert!(e.spin_plus().unwrap().max_abs_diff(&jp) < 1e-12, "d={d}");
        assert!(
            e.spin_minus().unwrap().max_abs_diff(&jp.adjoint()) < 1e-12,
            "d={d}"
        );
    }
}

#[test]
fn eta_correlators_match_bell_expectations() {
    for d in [3, 4, 5] {
        let e = EtaCoefficients::new(d).unwrap();
        let (z, p, m) = (
            e.spin_z().unwrap(),
            e.spin_plus().unwrap(),
            e.spin_minus().unwrap(),
        );
        for k in 0..d as i64 {
            for l in 0..d as i64 {
                let bell = bell_state(d, k, l).unwrap();
                let ev = |a: &ComplexMatrix, b: &ComplexMatrix| {
                    product_expectation(bell.matrix(), &[d, d], &[a, b]).unwrap()
                };
                assert!(
                    (ev(&z, &z) - e.bell_zz(k, l)).norm() < 1e-12,
                    "zz d={d} ({k},{l})"
                );
                assert!(
                    (ev(&p, &p) - e.bell_plus_plus(k, l)).norm() < 1e-12,
                    "pp d={d} ({k},{l})"
                );
                assert!(
                    (ev(&p, &m) - e.bell_plus_minus(k, l)).norm() < 1e-12,
                    "pm d={d} ({k},{l})"
                );
            }
        }
    }
    let (z, _) = eta_coefficients(3).unwrap();
    let zz: Complex64 = (0..3).map(|m| z[m] * z[(3 - m) % 3]).sum();
    assert!((zz - Complex64::new(2.0 / 3.0, 0.0)).norm() < 1e-12);
}

#[test]
fn physical_points_are_positive_and_unphysical_ones_are_not() {
    let mut s = StateSampler::new(15);
    for d in [2, 3, 4, 5] {
        for _ in 0..200 {
            let p = FamilyPoint::new(
                d,
                s.uniform() * 3.0 - 1.5,
                s.uniform() * 3.0 - 1.5,
                s.uniform() * 3.0 - 1.5,
            );
            let skip = if d == 2 { 1 } else { 0 };
            let margin = p
                .positivity_margins()
                .into_iter()
                .skip(skip)
                .fold(f64::INFINITY, f64::min);
            let lowest = family_spectrum_analytic(&p).unwrap().min();
            if p.is_physical() {
                assert!(family_state(&p).unwrap().eigenvalues().unwrap()[0] >= -1e-10);
            } else if margin < -1e-6 {
                assert!(lowest < -1e-8);
                assert!(family_state(&p).is_err());
            }
        }
    }
}
