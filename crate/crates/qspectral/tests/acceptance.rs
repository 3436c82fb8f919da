//! Acceptance suite: one test per numbered criterion, each printing a
//! single PASS/FAIL line (visible with `--nocapture`) and asserting every
//! stated tolerance.

use qspectral::compact::{CompactModel, TailFamily, TailRule};
use qspectral::corpus::{self, DeterministicRng};
use qspectral::verify::{eigen_relation_residual, set_distance};
use qspectral::*;
use std::time::Instant;

const CORPUS_SEED: u64 = 0x5eed;
const CASES_PER_DIM: usize = 200;
const DIMS: std::ops::RangeInclusive<usize> = 1..=8;

fn normal_corpus(n: usize, cases: usize) -> Vec<QMatrix> {
    let mut rng = DeterministicRng::new(CORPUS_SEED.wrapping_add(n as u64));
    (0..cases)
        .map(|_| corpus::random_normal(n, &mut rng).expect("corpus generation"))
        .collect()
}

fn tilted_slice() -> ImaginaryUnit {
    let s = 1.0 / 3f64.sqrt();
    ImaginaryUnit::new(Quaternion::new(0.0, s, s, s), 1e-9).unwrap()
}

fn conclude(criterion: &str, worst: f64, tol: f64, detail: &str) {
    let pass = worst <= tol;
    println!(
        "ACCEPTANCE {criterion}: {} (worst {worst:.3e} vs tol {tol:.1e}; {detail})",
        if pass { "PASS" } else { "FAIL" }
    );
    assert!(
        pass,
        "{criterion}: worst residual {worst:.3e} exceeds {tol:.1e} ({detail})"
    );
}

#[test]
fn criterion_1_norm_equals_max_eigenvalue_modulus() {
    let start = Instant::now();
    let iota = ImaginaryUnit::i();
    let mut worst = 0.0_f64;
    let mut cases = 0usize;
    for n in DIMS {
        for t in normal_corpus(n, CASES_PER_DIM) {
            let spectrum = point_spectrum(&t, &iota, DEFAULT_TOL).unwrap();
            worst = worst.max((spectrum.points.max_modulus() - t.operator_norm()).abs());
            cases += 1;
        }
    }
    let elapsed = start.elapsed();
    assert!(
        elapsed.as_secs_f64() < 30.0,
        "criterion 1 runtime {elapsed:?} exceeds 30 s"
    );
    conclude(
        "1 (norm law)",
        worst,
        1e-8,
        &format!("{cases} matrices in {elapsed:.2?}"),
    );
}

#[test]
fn criterion_2_spectral_decomposition() {
    let iota = ImaginaryUnit::i();
    let frame = SliceFrame::new(&iota);
    let mut worst = 0.0_f64;
    let mut cases = 0usize;
    for n in DIMS {
        for t in normal_corpus(n, CASES_PER_DIM) {
            let dec = spectral_decomposition(&t, &iota).unwrap();

            let rebuilt = synthesize(&dec.basis, &dec.lambdas, 1e-7 * n as f64).unwrap();
            worst = worst.max(t.sub(&rebuilt).unwrap().operator_norm());

            for l in &dec.lambdas {
                let (_, _, leak) = frame.slice_coordinates(l);
                worst = worst.max(leak);
            }

            let spectrum = point_spectrum(&t, &iota, DEFAULT_TOL).unwrap();
            worst = worst.max(set_distance(
                &spectrum.points.without_zero(DEFAULT_TOL),
                &dec.circularized_lambdas(DEFAULT_TOL)
                    .without_zero(DEFAULT_TOL),
            ));

            let j = build_j_from_basis(&dec.basis, &iota).unwrap();
            for z in dec.basis.vectors() {
                let defect = j
                    .apply(z)
                    .unwrap()
                    .sub(&z.scale_right(&iota.quaternion()))
                    .norm();
                worst = worst.max(defect);
            }
            cases += 1;
        }
    }
    conclude(
        "2 (spectral decomposition)",
        worst,
        1e-8,
        &format!("{cases} matrices"),
    );
}

fn scattered_lambda(rng: &mut DeterministicRng) -> Quaternion {
    use rand::Rng;
    let re = rng.random_range(-2.0..2.0);
    if rng.random_range(0.0..1.0) < 0.25 {
        Quaternion::real(re)
    } else {
        let axis = corpus::random_imaginary_unit(rng).quaternion();
        Quaternion::real(re) + axis.scale(rng.random_range(0.1..2.0))
    }
}

#[test]
fn criterion_3_synthesis() {
    let iota = ImaginaryUnit::i();
    let mut rng = DeterministicRng::new(CORPUS_SEED ^ 0x3333);
    let mut worst_normality = 0.0_f64;
    let mut worst_spectrum = 0.0_f64;
    for case in 0..200 {
        let n = 1 + case % 8;
        let basis = corpus::random_basis(n, &mut rng).unwrap();
        let lambdas: Vec<Quaternion> = (0..n).map(|_| scattered_lambda(&mut rng)).collect();
        let t = synthesize(&basis, &lambdas, 1e-8 * n as f64).unwrap();

        let adj = t.adjoint();
        let defect = t
            .matmul(&adj)
            .unwrap()
            .sub(&adj.matmul(&t).unwrap())
            .unwrap()
            .operator_norm();
        worst_normality = worst_normality.max(defect);

        let spectrum = point_spectrum(&t, &iota, DEFAULT_TOL).unwrap();
        let omega_lambda = circularize(&lambdas, DEFAULT_TOL);
        worst_spectrum = worst_spectrum.max(set_distance(
            &spectrum.points.without_zero(DEFAULT_TOL),
            &omega_lambda.without_zero(DEFAULT_TOL),
        ));
    }
    conclude(
        "3a (synthesis normality)",
        worst_normality,
        1e-9,
        "200 bases",
    );
    conclude(
        "3b (synthesis spectrum = Ω_Λ)",
        worst_spectrum,
        1e-8,
        "200 bases",
    );
}

#[test]
fn criterion_4_ajb_clauses() {
    let iota = ImaginaryUnit::i();
    let mut worst = 0.0_f64;
    let mut cases = 0usize;
    for n in DIMS {
        for t in normal_corpus(n, CASES_PER_DIM) {
            let dec = ajb_decompose(&t, &iota).unwrap();
            let id = QMatrix::identity(n);

            // (i) T = A + JB
            worst = worst.max(dec.residual);
            // (ii) A self-adjoint, B positive
            worst = worst.max(dec.a.sub(&dec.a.adjoint()).unwrap().operator_norm());
            worst = worst.max(dec.b.sub(&dec.b.adjoint()).unwrap().operator_norm());
            let min_eig = operator::hermitian_min_eigenvalue(&dec.b.chi(&iota));
            worst = worst.max((-min_eig).max(0.0));
            // (iii) J anti self-adjoint and unitary
            worst = worst.max(dec.j.add(&dec.j.adjoint()).unwrap().operator_norm());
            worst = worst.max(
                dec.j
                    .adjoint()
                    .matmul(&dec.j)
                    .unwrap()
                    .sub(&id)
                    .unwrap()
                    .operator_norm(),
            );
            // (iv) mutual commutation
            for (x, y) in [(&dec.a, &dec.b), (&dec.a, &dec.j), (&dec.b, &dec.j)] {
                worst = worst.max(
                    x.matmul(y)
                        .unwrap()
                        .sub(&y.matmul(x).unwrap())
                        .unwrap()
                        .operator_norm(),
                );
            }
            // closed-form uniqueness of A and B
            let adj = t.adjoint();
            worst = worst.max(
                dec.a
                    .sub(&t.add(&adj).unwrap().scale(0.5))
                    .unwrap()
                    .operator_norm(),
            );
            let abs_c = t.sub(&adj).unwrap().operator_abs(DEFAULT_TOL).unwrap();
            worst = worst.max(dec.b.sub(&abs_c.scale(0.5)).unwrap().operator_norm());
            cases += 1;
        }
    }
    conclude(
        "4 (A+JB clauses)",
        worst,
        1e-8,
        &format!("{cases} matrices"),
    );
}

#[test]
fn criterion_5_classification_spectra() {
    let iota = ImaginaryUnit::i();
    let mut rng = DeterministicRng::new(CORPUS_SEED ^ 0x5555);
    let mut worst_real = 0.0_f64;
    let mut worst_imag = 0.0_f64;
    let mut worst_unitary = 0.0_f64;
    let mut worst_sphere = 0.0_f64;
    for case in 0..200 {
        let n = 1 + case % 8;

        let sa = corpus::random_self_adjoint(n, &mut rng).unwrap();
        for p in point_spectrum(&sa, &iota, DEFAULT_TOL)
            .unwrap()
            .points
            .points()
        {
            worst_real = worst_real.max(p.im);
        }

        let t = corpus::random_normal(n, &mut rng).unwrap();
        let anti = t.sub(&t.adjoint()).unwrap().scale(0.5);
        for p in point_spectrum(&anti, &iota, DEFAULT_TOL)
            .unwrap()
            .points
            .points()
        {
            worst_imag = worst_imag.max(p.re.abs());
        }

        let u = corpus::random_unitary(n, &mut rng).unwrap();
        for p in point_spectrum(&u, &iota, DEFAULT_TOL)
            .unwrap()
            .points
            .points()
        {
            worst_unitary = worst_unitary.max((p.modulus() - 1.0).abs());
        }

        // anti self-adjoint unitary: spectrum is exactly the sphere class
        let basis = corpus::random_basis(n, &mut rng).unwrap();
        let j = build_j_from_basis(&basis, &corpus::random_imaginary_unit(&mut rng)).unwrap();
        let spec = point_spectrum(&j, &iota, DEFAULT_TOL).unwrap();
        assert_eq!(spec.points.len(), 1, "J spectrum must be one class");
        let p = spec.points.points()[0];
        worst_sphere = worst_sphere.max(p.re.abs()).max((p.im - 1.0).abs());
        assert_eq!(p.mult, n);
    }
    conclude(
        "5a (self-adjoint spectra real)",
        worst_real,
        1e-9,
        "200 matrices",
    );
    conclude(
        "5b (anti self-adjoint spectra imaginary)",
        worst_imag,
        1e-9,
        "200 matrices",
    );
    conclude(
        "5c (unitary spectra on the unit sphere)",
        worst_unitary,
        1e-8,
        "200 matrices",
    );
    conclude(
        "5d (anti self-adjoint unitary spectrum = 𝕊)",
        worst_sphere,
        1e-8,
        "200 matrices",
    );

    // σ_S(T) = σ_S(T*) on matrices with no normality assumption
    let mut worst_sym = 0.0_f64;
    for case in 0..200 {
        let n = 1 + case % 8;
        let t = corpus::random_matrix(n, &mut rng);
        let s = point_spectrum(&t, &iota, DEFAULT_TOL).unwrap();
        let s_adj = point_spectrum(&t.adjoint(), &iota, DEFAULT_TOL).unwrap();
        worst_sym = worst_sym.max(set_distance(&s.points, &s_adj.points));
    }
    conclude(
        "5e (σ_S(T) = σ_S(T*))",
        worst_sym,
        1e-8,
        "200 general matrices",
    );
}

/// Complex nullity of χ(Δ_q(T)) by Gaussian elimination with complete
/// pivoting on plain (re, im) pairs — independent of the SVD route inside
/// `eigensphere_kernel`.
fn chi_delta_nullity(t: &QMatrix, q: &Quaternion) -> usize {
    let delta = t.delta_q(q).unwrap();
    let chi = delta.chi(&ImaginaryUnit::i());
    let dim = chi.matrix.nrows();
    let mut a: Vec<Vec<(f64, f64)>> = (0..dim)
        .map(|r| {
            (0..dim)
                .map(|c| {
                    let z = chi.matrix[(r, c)];
                    (z.re, z.im)
                })
                .collect()
        })
        .collect();
    // absolute threshold, matching the kernel route's ‖Δ_q(T)u‖ ≤ 1e-7;
    // a scale-relative one would misread a numerically zero Δ as full rank
    let pivot_tol = 1e-7;

    let mut rank = 0usize;
    while rank < dim {
        // complete pivoting: largest remaining entry
        let mut best = (rank, rank, 0.0_f64);
        for (r, row) in a.iter().enumerate().skip(rank) {
            for (c, (re, im)) in row.iter().enumerate().skip(rank) {
                let mag = re.hypot(*im);
                if mag > best.2 {
                    best = (r, c, mag);
                }
            }
        }
        let (pr_row, pr_col, mag) = best;
        if mag <= pivot_tol {
            break;
        }
        a.swap(rank, pr_row);
        for row in a.iter_mut() {
            row.swap(rank, pr_col);
        }
        let (pr, pi) = a[rank][rank];
        let pden = pr * pr + pi * pi;
        for r in rank + 1..dim {
            let (vr, vi) = a[r][rank];
            if vr == 0.0 && vi == 0.0 {
                continue;
            }
            let fr = (vr * pr + vi * pi) / pden;
            let fi = (vi * pr - vr * pi) / pden;
            let pivot_row: Vec<(f64, f64)> = a[rank][rank..].to_vec();
            for (offset, &(ar, ai)) in pivot_row.iter().enumerate() {
                let (br, bi) = a[r][rank + offset];
                a[r][rank + offset] = (br - (fr * ar - fi * ai), bi - (fr * ai + fi * ar));
            }
        }
        rank += 1;
    }
    dim - rank
}

#[test]
fn criterion_6_eigensphere_oracle() {
    use rand::Rng;
    let iota = ImaginaryUnit::i();
    let mut rng = DeterministicRng::new(CORPUS_SEED ^ 0x6666);
    let mut worst_relation = 0.0_f64;
    let mut checked_points = 0usize;
    let mut probes_done = 0usize;

    for case in 0..200 {
        let n = 1 + case % 8;
        let t = corpus::random_normal(n, &mut rng).unwrap();
        let spectrum = point_spectrum(&t, &iota, DEFAULT_TOL).unwrap();

        for p in spectrum.points.points() {
            let rep = p.representative(&iota, Half::Upper);
            let kernel = eigensphere_kernel(&t, &rep, 1e-7).unwrap();
            assert!(!kernel.is_empty(), "empty kernel on a spectrum class");
            assert_eq!(
                kernel.len(),
                p.mult,
                "kernel dimension disagrees with class multiplicity"
            );
            // independent rank oracle
            assert_eq!(
                chi_delta_nullity(&t, &rep),
                2 * kernel.len(),
                "rank oracle disagrees with paired kernel dimension"
            );
            for u in &kernel {
                worst_relation =
                    worst_relation.max(eigen_relation_residual(&t, u, &rep, &iota).unwrap());
            }
            checked_points += 1;
        }

        // 50 rejection-sampled non-spectrum probes across the corpus
        if probes_done < 50 {
            loop {
                let q = Quaternion::new(
                    rng.random_range(-3.0..3.0),
                    0.0,
                    rng.random_range(0.0..3.0),
                    0.0,
                );
                let far = spectrum.points.points().iter().all(|p| {
                    let dr = p.re - q.re();
                    let di = p.im - q.im_norm();
                    dr.hypot(di) >= 0.1
                });
                if !far {
                    continue;
                }
                let kernel = eigensphere_kernel(&t, &q, 1e-7).unwrap();
                assert!(kernel.is_empty(), "kernel found off the spectrum");
                assert_eq!(chi_delta_nullity(&t, &q), 0);
                probes_done += 1;
                break;
            }
        }
    }
    assert_eq!(probes_done, 50);
    conclude(
        "6 (eigensphere oracle)",
        worst_relation,
        1e-7,
        &format!("{checked_points} classes, 50 probes"),
    );
}

#[test]
fn criterion_7_gelfand_and_spectral_map() {
    let iota = ImaginaryUnit::i();
    let mut worst_gelfand = 0.0_f64;
    for n in DIMS {
        for t in normal_corpus(n, 25) {
            let mut estimates = Vec::with_capacity(5);
            let mut power = t.clone();
            for k in 0..=4u32 {
                estimates.push(power.operator_norm().powf(1.0 / 2f64.powi(k as i32)));
                if k < 4 {
                    power = power.matmul(&power).unwrap();
                }
            }
            let radius = point_spectrum(&t, &iota, DEFAULT_TOL)
                .unwrap()
                .points
                .max_modulus();
            for e in &estimates {
                worst_gelfand = worst_gelfand.max((e - radius).abs() / radius.max(1.0));
            }
        }
    }
    conclude(
        "7a (Gelfand radius sequence)",
        worst_gelfand,
        1e-6,
        "200 matrices, k ≤ 4",
    );

    let mut rng = DeterministicRng::new(CORPUS_SEED ^ 0x7777);
    let mut failures = 0usize;
    for case in 0..100 {
        let n = 1 + case % 6;
        let t = corpus::random_self_adjoint(n, &mut rng).unwrap();
        let coeffs = corpus::random_polynomial(3, &mut rng);
        if !spectral_map_check(&t, &coeffs).unwrap() {
            failures += 1;
        }
    }
    conclude(
        "7b (polynomial spectral map)",
        failures as f64,
        0.0,
        "100 self-adjoint/cubic pairs",
    );
}

#[test]
fn criterion_8_compact_simulator() {
    let start = Instant::now();
    let rule = TailRule::new(TailFamily::Harmonic, 0.0, 1.0, ImaginaryUnit::i()).unwrap();
    let model = CompactModel::new(None, Some(rule), 1000, None).unwrap();
    let report = compact::verify_compact_laws(&model, &[10, 100, 1000]).unwrap();
    assert!(report.pass, "compact laws failed");

    let mut worst = report.norm_law_residual;
    for r in &report.reports {
        worst = worst.max((r.norm - 1.0).abs());
        worst = worst.max((r.min_modulus * r.level as f64 - 1.0).abs());
    }
    let lambda_01 = model.lambda_eps(0.1).unwrap();
    assert_eq!(lambda_01.len(), 10, "Λ_0.1 must have exactly 10 elements");
    let elapsed = start.elapsed();
    assert!(
        elapsed.as_secs_f64() < 20.0,
        "criterion 8 runtime {elapsed:?} exceeds 20 s"
    );
    conclude(
        "8a (harmonic truncation sweep)",
        worst,
        1e-10,
        &format!("levels 10/100/1000 in {elapsed:.2?}"),
    );

    // rotated-tail variant: canonicalize, then the synthesis laws hold
    let iota = ImaginaryUnit::i();
    let mut worst_rot = 0.0_f64;
    for level in [10usize, 50] {
        let rule = TailRule::new(TailFamily::Harmonic, 0.0, 1.0, ImaginaryUnit::i()).unwrap();
        let rotated = CompactModel::new(None, Some(rule), level, Some(42)).unwrap();
        let t = rotated.truncate().unwrap();
        let lambdas: Vec<Quaternion> = (1..=level)
            .map(|m| rotated.tail_lambda(m).unwrap())
            .collect();
        let dec = SpectralDecomposition {
            iota,
            basis: HilbertBasis::standard(level),
            lambdas,
        };
        let canon = canonicalize(&dec, &iota);
        let frame = SliceFrame::new(&iota);
        for l in &canon.lambdas {
            let (_, im, leak) = frame.slice_coordinates(l);
            assert!(im >= -1e-12, "canonical eigenvalue below the upper half");
            worst_rot = worst_rot.max(leak);
        }
        let rebuilt = synthesize(&canon.basis, &canon.lambdas, 1e-8 * level as f64).unwrap();
        worst_rot = worst_rot.max(t.sub(&rebuilt).unwrap().operator_norm());

        let adj = rebuilt.adjoint();
        worst_rot = worst_rot.max(
            rebuilt
                .matmul(&adj)
                .unwrap()
                .sub(&adj.matmul(&rebuilt).unwrap())
                .unwrap()
                .operator_norm(),
        );
        let spectrum = point_spectrum(&rebuilt, &iota, DEFAULT_TOL).unwrap();
        let omega = circularize(&canon.lambdas, DEFAULT_TOL);
        worst_rot = worst_rot.max(set_distance(
            &spectrum.points.without_zero(DEFAULT_TOL),
            &omega.without_zero(DEFAULT_TOL),
        ));
    }
    conclude(
        "8b (rotated tail + canonicalize)",
        worst_rot,
        1e-8,
        "levels 10/50",
    );
}

#[test]
fn criterion_9_slice_independence() {
    let iota1 = ImaginaryUnit::i();
    let iota2 = tilted_slice();
    let mut worst = 0.0_f64;
    let mut cases = 0usize;

    // criteria 1 and 2 rerun with the tilted slice
    for n in DIMS {
        for t in normal_corpus(n, CASES_PER_DIM) {
            let s1 = point_spectrum(&t, &iota1, DEFAULT_TOL).unwrap();
            let s2 = point_spectrum(&t, &iota2, DEFAULT_TOL).unwrap();
            worst = worst.max(set_distance(&s1.points, &s2.points));
            worst = worst.max((s2.points.max_modulus() - t.operator_norm()).abs());

            let dec = spectral_decomposition(&t, &iota2).unwrap();
            let rebuilt = synthesize(&dec.basis, &dec.lambdas, 1e-7 * n as f64).unwrap();
            worst = worst.max(t.sub(&rebuilt).unwrap().operator_norm());
            worst = worst.max(set_distance(
                &dec.circularized_lambdas(DEFAULT_TOL)
                    .without_zero(DEFAULT_TOL),
                &s1.points.without_zero(DEFAULT_TOL),
            ));
            cases += 1;
        }
    }

    // criterion 3 rerun: synthesized spectra agree across slices
    let mut rng = DeterministicRng::new(CORPUS_SEED ^ 0x3333);
    for case in 0..200 {
        let n = 1 + case % 8;
        let basis = corpus::random_basis(n, &mut rng).unwrap();
        let lambdas: Vec<Quaternion> = (0..n).map(|_| scattered_lambda(&mut rng)).collect();
        let t = synthesize(&basis, &lambdas, 1e-8 * n as f64).unwrap();
        let s1 = point_spectrum(&t, &iota1, DEFAULT_TOL).unwrap();
        let s2 = point_spectrum(&t, &iota2, DEFAULT_TOL).unwrap();
        worst = worst.max(set_distance(&s1.points, &s2.points));
        cases += 1;
    }
    conclude(
        "9 (slice independence)",
        worst,
        1e-8,
        &format!("{cases} matrices"),
    );
}
