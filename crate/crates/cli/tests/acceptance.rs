//! Acceptance gate: one PASS/FAIL line per criterion, nonzero exit on failure.

use std::process::{Command, ExitCode};
use std::time::Instant;

use quditmap::commands::{scan_samples, ScanArgs};
use quditmap::output::Format;
use quditmap_core::criteria::{
    family_criterion, octahedron_criterion, octahedron_criterion_optimized, ppt_check,
    spin_squeezing_all, spin_squeezing_check, werner_thresholds,
};
use quditmap_core::density::partial_transpose;
use quditmap_core::eigen::{group_sorted, hermitian_eigenvalues};
use quditmap_core::mapping::{
    map_qudit, map_qudit_via_isometry, map_two_qudits, map_two_qudits_operator, rotate_state,
    rotation_unitary,
};
use quditmap_core::random::{random_separable_state, StateSampler};
use quditmap_core::region::{detected_fraction, RegionClass};
use quditmap_core::spin::{spin_of, verify_isometry, SchwingerIsometry, SpinOperators};
use quditmap_core::states::{
    bell_state, family_pt_spectrum_analytic, family_spectrum_analytic, family_state,
    tetrahedron_grid, FamilyPoint, SpectrumWithMultiplicity,
};
use quditmap_core::{Complex64, DensityMatrix};

type Outcome = Result<String, String>;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn e<E: std::fmt::Display>(err: E) -> String {
    err.to_string()
}

fn random_state(s: &mut StateSampler, dims: &[usize], i: usize) -> Result<DensityMatrix, String> {
    if i.is_multiple_of(2) {
        s.pure_state(dims).map_err(e)
    } else {
        s.mixed_state(dims).map_err(e)
    }
}

fn isometry() -> Outcome {
    let mut worst = 0.0f64;
    for d in 2..=12 {
        let r = verify_isometry(&SchwingerIsometry::new(d).map_err(e)?);
        ensure(r.max() < 1e-12, || format!("d={d}: {r:?}"))?;
        worst = worst.max(r.max());
    }
    Ok(format!("max residual {worst:.1e} over d=2..12"))
}

fn dual_map() -> Outcome {
    let mut s = StateSampler::new(2);
    let mut worst = 0.0f64;
    for d in 2..=8 {
        let iso = SchwingerIsometry::new(d).map_err(e)?;
        for i in 0..100 {
            let rho = random_state(&mut s, &[d], i)?;
            let a = map_qudit(&rho).map_err(e)?;
            let b = map_qudit_via_isometry(&rho, &iso).map_err(e)?;
            let dev = a.matrix().max_abs_diff(b.matrix());
            ensure(dev < 1e-12, || format!("d={d} draw {i}: {dev:e}"))?;
            worst = worst.max(dev);
        }
    }
    Ok(format!("max deviation {worst:.1e} over 700 states"))
}

fn rotation() -> Outcome {
    let mut s = StateSampler::new(3);
    let qubit = SpinOperators::new(2).map_err(e)?;
    let mut worst = 0.0f64;
    for d in 2..=5 {
        for i in 0..50 {
            let rho = random_state(&mut s, &[d], i)?;
            let axis = s.unit_axis();
            let angle = (s.uniform() - 0.5) * 4.0 * std::f64::consts::PI;
            let lhs = map_qudit(&rotate_state(&rho, axis, angle).map_err(e)?).map_err(e)?;
            let r = rotation_unitary(&qubit, axis, angle).map_err(e)?;
            let m = map_qudit(&rho).map_err(e)?;
            let rhs = &(&r * m.matrix()) * &r.adjoint();
            let dev = lhs.matrix().max_abs_diff(&rhs);
            ensure(dev < 1e-12, || format!("d={d} draw {i}: {dev:e}"))?;
            worst = worst.max(dev);
        }
    }
    Ok(format!("max deviation {worst:.1e} over 200 draws"))
}

fn pt_commutation() -> Outcome {
    let mut s = StateSampler::new(4);
    let mut worst = 0.0f64;
    for dims in [[3, 3], [2, 4]] {
        for i in 0..100 {
            let rho = random_state(&mut s, &dims, i)?;
            let pt = rho.partial_transpose(1).map_err(e)?;
            let mapped_pt = map_two_qudits_operator(&pt, dims[0], dims[1]).map_err(e)?;
            let m = map_two_qudits(&rho).map_err(e)?;
            let rhs = partial_transpose(m.matrix(), &[2, 2], 1).map_err(e)?;
            let dev = mapped_pt.max_abs_diff(&rhs);
            ensure(dev < 1e-12, || format!("{dims:?} draw {i}: {dev:e}"))?;
            worst = worst.max(dev);
        }
    }
    Ok(format!("max deviation {worst:.1e} on 3x3 and 2x4"))
}

fn werner() -> Outcome {
    let mut parts = Vec::new();
    for d in [2, 3, 5, 7] {
        let t = werner_thresholds(d).map_err(e)?;
        ensure((t.ppt_numeric - t.ppt_analytic).abs() < 1e-6, || {
            format!("d={d} ppt: {t:?}")
        })?;
        ensure(
            (t.criterion_numeric - t.criterion_analytic).abs() < 1e-6,
            || format!("d={d} criterion: {t:?}"),
        )?;
        parts.push(format!(
            "d={d}: {:.6}/{:.6}",
            t.ppt_numeric, t.criterion_numeric
        ));
    }
    Ok(parts.join(", "))
}

fn same_spectrum(
    analytic: &SpectrumWithMultiplicity,
    numeric: &[f64],
    what: &str,
) -> Result<(), String> {
    let a = analytic.sorted_values();
    ensure(a.len() == numeric.len(), || format!("{what}: length"))?;
    for (x, y) in a.iter().zip(numeric) {
        ensure((x - y).abs() < 1e-10, || format!("{what}: {x} vs {y}"))?;
    }
    let mult = |g: Vec<(f64, usize)>| g.into_iter().map(|x| x.1).collect::<Vec<_>>();
    ensure(
        mult(group_sorted(&a, 1e-8)) == mult(group_sorted(numeric, 1e-8)),
        || format!("{what}: multiplicities"),
    )
}

fn spectra() -> Outcome {
    let mut n = 0;
    for d in [3, 5] {
        for p in tetrahedron_grid(d, 9).map_err(e)? {
            let rho = family_state(&p).map_err(e)?;
            same_spectrum(
                &family_spectrum_analytic(&p).map_err(e)?,
                &rho.eigenvalues().map_err(e)?,
                &format!("state {p:?}"),
            )?;
            let pt = rho.partial_transpose(1).map_err(e)?;
            same_spectrum(
                &family_pt_spectrum_analytic(&p).map_err(e)?,
                &hermitian_eigenvalues(&pt, 1e-13).map_err(e)?,
                &format!("pt {p:?}"),
            )?;
            n += 1;
        }
    }
    Ok(format!(
        "{n} grid points, state and partial-transpose spectra"
    ))
}

fn closed_form() -> Outcome {
    let mut worst = 0.0f64;
    for d in [3, 5] {
        for p in tetrahedron_grid(d, 9).map_err(e)? {
            let numeric = octahedron_criterion(&family_state(&p).map_err(e)?).map_err(e)?;
            let closed = family_criterion(&p);
            let dev = (numeric.normalized_lhs() - closed.lhs).abs();
            ensure(dev < 1e-10, || format!("{p:?}: {dev:e}"))?;
            worst = worst.max(dev);
        }
    }
    Ok(format!("max deviation {worst:.1e}"))
}

fn bell_states() -> Outcome {
    let mut missed = Vec::new();
    for d in [3, 5] {
        let j = spin_of(d);
        let raw = octahedron_criterion(&bell_state(d, 0, 0).map_err(e)?).map_err(e)?;
        ensure((raw.lhs - j * (j + 1.0)).abs() < 1e-10, || {
            format!("d={d}: Omega00 lhs {}", raw.lhs)
        })?;
        for k in 0..d as i64 {
            for l in 0..d as i64 {
                let r =
                    octahedron_criterion_optimized(&bell_state(d, k, l).map_err(e)?).map_err(e)?;
                if !r.violated {
                    missed.push(format!("d={d} P_{k}{l} lhs {:.4}", r.lhs));
                }
            }
        }
    }
    ensure(missed.is_empty(), || {
        format!(
            "Omega00 lhs matches j(j+1); {} Bell states not flagged: {}",
            missed.len(),
            missed.join(", ")
        )
    })?;
    Ok("Omega00 lhs 2 and 6, all Bell states flagged".into())
}

fn soundness() -> Outcome {
    for (d1, d2) in [(2, 2), (3, 3), (5, 5), (2, 3)] {
        for seed in 0..1000u64 {
            let rho = random_separable_state(d1, d2, 1 + (seed % 5) as usize, seed).map_err(e)?;
            let raw = octahedron_criterion(&rho).map_err(e)?;
            let opt = octahedron_criterion_optimized(&rho).map_err(e)?;
            let ppt = ppt_check(&rho, 1).map_err(e)?;
            let squeeze = spin_squeezing_all(&rho).map_err(e)?;
            ensure(!raw.violated && !opt.violated && !ppt.violated, || {
                format!("{d1}x{d2} seed {seed}: {raw:?} {opt:?} {ppt:?}")
            })?;
            ensure(squeeze.iter().all(|r| r.satisfied()), || {
                format!("{d1}x{d2} seed {seed}: squeezing")
            })?;
        }
    }
    let mut s = StateSampler::new(9);
    for i in 0..1000 {
        let rho = s.separable_state(&[3, 3, 3], 1 + i % 4).map_err(e)?;
        for sub in 0..3 {
            ensure(!ppt_check(&rho, sub).map_err(e)?.violated, || {
                format!("qutrits draw {i}: ppt {sub}")
            })?;
        }
        ensure(
            spin_squeezing_all(&rho)
                .map_err(e)?
                .iter()
                .all(|r| r.satisfied()),
            || format!("qutrits draw {i}: squeezing"),
        )?;
    }
    Ok("5000 separable states, no false positives".into())
}

fn monotonicity() -> Outcome {
    let seed = 7;
    let f3 = detected_fraction(3, 100_000, seed).map_err(e)?;
    let f5 = detected_fraction(5, 100_000, seed).map_err(e)?;
    let gap = f3.detected_among_entangled - f5.detected_among_entangled;
    let se = f3.standard_error.hypot(f5.standard_error);
    ensure(gap > 3.0 * se, || {
        format!(
            "d=3 {:.4}, d=5 {:.4}, gap {gap:.4} vs 3 SE {:.4}",
            f3.detected_among_entangled,
            f5.detected_among_entangled,
            3.0 * se
        )
    })?;

    let args = ScanArgs {
        dim: 3,
        resolution: 41,
        mode: None,
        lo: None,
        hi: None,
        format: Format::Csv,
        out: None,
        workers: None,
    };
    let samples = scan_samples(&args).map_err(e)?;
    let count = |c: RegionClass| samples.iter().filter(|s| s.class == c).count();
    let counts: Vec<usize> = RegionClass::ALL.iter().map(|&c| count(c)).collect();
    ensure(counts.iter().all(|&n| n > 0), || {
        format!("empty class in {counts:?}")
    })?;
    for s in samples.iter().filter(|s| s.class == RegionClass::Detected) {
        let p = FamilyPoint::new(3, s.alpha, s.beta, s.gamma);
        let ppt = ppt_check(&family_state(&p).map_err(e)?, 1).map_err(e)?;
        ensure(ppt.violated, || format!("detected point {p:?} is PPT"))?;
    }
    Ok(format!(
        "detected among entangled {:.4} (d=3) vs {:.4} (d=5), gap {:.1} SE; scan classes {counts:?}",
        f3.detected_among_entangled,
        f5.detected_among_entangled,
        gap / se
    ))
}

fn squeezing_sanity() -> Outcome {
    let h = std::f64::consts::FRAC_1_SQRT_2;
    let z = Complex64::new(0.0, 0.0);
    let singlet = DensityMatrix::pure(
        &[z, Complex64::new(h, 0.0), Complex64::new(-h, 0.0), z],
        vec![2, 2],
    )
    .map_err(e)?;
    let r = spin_squeezing_check(&singlet, [0, 1, 2]).map_err(e)?;
    let var = &r.inequalities[1];
    ensure(
        var.lhs.abs() < 1e-12 && (var.rhs - 1.0).abs() < 1e-12 && !var.satisfied,
        || format!("singlet variance {var:?}"),
    )?;
    let mut up = vec![z; 4];
    up[0] = Complex64::new(1.0, 0.0);
    let product = DensityMatrix::pure(&up, vec![2, 2]).map_err(e)?;
    let first = &spin_squeezing_check(&product, [0, 1, 2])
        .map_err(e)?
        .inequalities[0];
    ensure(
        first.lhs == 2.0 && first.rhs == 2.0 && first.satisfied,
        || format!("|00> first {first:?}"),
    )?;
    Ok(format!(
        "singlet variance lhs {:.1e} < 1; |00> first lhs {}",
        var.lhs, first.lhs
    ))
}

fn determinism() -> Outcome {
    let dir = tempfile::TempDir::new().map_err(e)?;
    let mut outputs = Vec::new();
    for workers in ["1", "8"] {
        let path = dir.path().join(format!("scan{workers}.csv"));
        let status = Command::new(env!("CARGO_BIN_EXE_quditmap"))
            .args([
                "scan",
                "--dim",
                "3",
                "--resolution",
                "21",
                "--workers",
                workers,
                "--out",
            ])
            .arg(&path)
            .status()
            .map_err(e)?;
        ensure(status.success(), || {
            format!("scan with {workers} workers: {status}")
        })?;
        outputs.push(std::fs::read(&path).map_err(e)?);
    }
    ensure(outputs[0] == outputs[1], || "outputs differ".into())?;
    Ok(format!(
        "{} bytes identical for 1 and 8 workers",
        outputs[0].len()
    ))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 12] = [
        ("isometry", isometry),
        ("dual map agreement", dual_map),
        ("rotation covariance", rotation),
        ("partial transpose commutation", pt_commutation),
        ("Werner thresholds", werner),
        ("family spectra", spectra),
        ("closed-form criterion", closed_form),
        ("Bell-state detection", bell_states),
        ("soundness sweep", soundness),
        ("detected-volume monotonicity", monotonicity),
        ("spin-squeezing sanity", squeezing_sanity),
        ("determinism", determinism),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let secs = || start.elapsed().as_secs_f64();
        match check() {
            Ok(detail) => println!("PASS {:>2} {name}: {detail} [{:.1}s]", i + 1, secs()),
            Err(detail) => {
                failed += 1;
                println!("FAIL {:>2} {name}: {detail} [{:.1}s]", i + 1, secs());
            }
        }
    }
    println!(
        "{} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
