//! The machine-checkable invariant suite behind the `verify` command.
//!
//! Runs the spectral laws — norm law, adjoint symmetry, decomposition and
//! synthesis round trip, A+JB clauses, classification-spectrum shapes,
//! eigensphere kernels, Gelfand radius, polynomial spectral map — over a
//! seeded random corpus or a single input matrix, and reports one named
//! PASS/FAIL line per law with the worst observed residual. Thresholds are
//! the fixed contract of each law, not user tolerances.

use crate::corpus::{self, DeterministicRng};
use crate::error::Result;
use crate::hilbert::QVector;
use crate::json::JVal;
use crate::operator::QMatrix;
use crate::quaternion::{
    rotation_to_axis, CircularSet, Half, ImaginaryUnit, Quaternion, DEFAULT_TOL,
};
use crate::spectral::{
    ajb_decompose, build_j_from_basis, eigensphere_kernel, point_spectrum, spectral_decomposition,
    spectral_map_check, synthesize,
};
use rand::Rng;

/// One verified law.
#[derive(Debug, Clone)]
pub struct CheckResult {
    pub name: &'static str,
    pub cases: usize,
    pub max_residual: f64,
    pub tolerance: f64,
    pub passed: bool,
}

impl CheckResult {
    fn new(name: &'static str, cases: usize, max_residual: f64, tolerance: f64) -> Self {
        Self {
            name,
            cases,
            max_residual,
            tolerance,
            passed: max_residual <= tolerance,
        }
    }
}

/// Full suite outcome.
#[derive(Debug, Clone)]
pub struct VerifyReport {
    pub seed: u64,
    pub checks: Vec<CheckResult>,
}

impl VerifyReport {
    pub fn pass(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn to_json(&self) -> JVal {
        JVal::Obj(vec![
            ("seed", JVal::Int(self.seed as i64)),
            ("pass", JVal::Bool(self.pass())),
            (
                "checks",
                JVal::Arr(
                    self.checks
                        .iter()
                        .map(|c| {
                            JVal::Obj(vec![
                                ("name", JVal::Str(c.name.into())),
                                (
                                    "status",
                                    JVal::Str(if c.passed { "PASS" } else { "FAIL" }.into()),
                                ),
                                ("cases", JVal::Int(c.cases as i64)),
                                ("max_residual", JVal::Num(c.max_residual.min(f64::MAX))),
                                ("tolerance", JVal::Num(c.tolerance)),
                            ])
                        })
                        .collect(),
                ),
            ),
        ])
    }
}

/// What the suite runs on.
pub enum VerifyInput<'a> {
    Matrix(&'a QMatrix),
    Random { dim: usize, count: usize },
}

/// Distance between circular sets: worst matched coordinate deviation, or
/// f64::MAX on a structural mismatch.
pub fn set_distance(a: &CircularSet, b: &CircularSet) -> f64 {
    a.matching_distance(b).unwrap_or(f64::MAX)
}

/// ‖T(uμ) − (uμ)q‖ for the slice representative q of a spectrum class,
/// with μ chosen to rotate the observed eigenvalue axis onto the class
/// representative. Small exactly when u is an eigenvector for the class.
pub fn eigen_relation_residual(
    t: &QMatrix,
    u: &QVector,
    class_rep: &Quaternion,
    iota: &ImaginaryUnit,
) -> Result<f64> {
    let observed = u.inner(&t.apply(u)?)?;
    let s = observed.im_norm();
    let mu = if s <= 1e-12 * (1.0 + observed.norm()) {
        Quaternion::one()
    } else {
        rotation_to_axis(&observed.im().scale(1.0 / s), iota)
    };
    let um = u.scale_right(&mu);
    Ok(t.apply(&um)?.sub(&um.scale_right(class_rep)).norm())
}

fn normality_defect(t: &QMatrix) -> Result<f64> {
    let adj = t.adjoint();
    Ok(t.matmul(&adj)?.sub(&adj.matmul(t)?)?.operator_norm())
}

struct Residual {
    worst: f64,
    cases: usize,
}

impl Residual {
    fn new() -> Self {
        Self {
            worst: 0.0,
            cases: 0,
        }
    }

    fn record(&mut self, r: f64) {
        self.worst = self.worst.max(r);
        self.cases += 1;
    }
}

/// Runs the suite. `iota` fixes the slice for decomposition checks.
pub fn run_invariant_suite(
    input: &VerifyInput,
    iota: &ImaginaryUnit,
    seed: u64,
) -> Result<VerifyReport> {
    let mut rng = DeterministicRng::new(seed);
    let matrices: Vec<QMatrix> = match input {
        VerifyInput::Matrix(m) => vec![(*m).clone()],
        VerifyInput::Random { dim, count } => (0..*count)
            .map(|_| corpus::random_normal(*dim, &mut rng))
            .collect::<Result<_>>()?,
    };

    let mut checks = Vec::new();

    // normality gate: the laws below assume normal input
    let mut normal_defect = Residual::new();
    for t in &matrices {
        let scale = 1.0 + t.operator_norm();
        normal_defect.record(normality_defect(t)? / (scale * scale));
    }
    let all_normal = {
        let c = CheckResult::new(
            "input_normal",
            normal_defect.cases,
            normal_defect.worst,
            DEFAULT_TOL * 8.0,
        );
        let ok = c.passed;
        checks.push(c);
        ok
    };

    // adjoint symmetry holds without normality
    let mut adjoint_sym = Residual::new();
    for t in &matrices {
        let s = point_spectrum(t, iota, DEFAULT_TOL)?;
        let s_adj = point_spectrum(&t.adjoint(), iota, DEFAULT_TOL)?;
        adjoint_sym.record(set_distance(&s.points, &s_adj.points));
    }
    checks.push(CheckResult::new(
        "adjoint_spectrum_symmetry",
        adjoint_sym.cases,
        adjoint_sym.worst,
        1e-8,
    ));

    // eigensphere kernels: nonempty with an eigen-relation on spectrum
    // classes, empty off the spectrum
    let mut oracle = Residual::new();
    let mut resolvent_hits = Residual::new();
    for t in &matrices {
        let spectrum = point_spectrum(t, iota, DEFAULT_TOL)?;
        for p in spectrum.points.points() {
            let rep = p.representative(iota, Half::Upper);
            let kernel = eigensphere_kernel(t, &rep, 1e-7)?;
            if kernel.is_empty() {
                oracle.record(f64::MAX);
                continue;
            }
            for u in &kernel {
                oracle.record(eigen_relation_residual(t, u, &rep, iota)?);
            }
        }
        // probes rejection-sampled at distance ≥ 0.1 from every class
        let mut probes = 0;
        while probes < 3 {
            let q = Quaternion::new(
                rng.random_range(-3.0..3.0),
                0.0,
                rng.random_range(0.0..3.0),
                0.0,
            );
            let far = spectrum.points.points().iter().all(|p| {
                let dr = p.re - q.re();
                let di = p.im - q.im_norm();
                (dr * dr + di * di).sqrt() >= 0.1
            });
            if !far {
                continue;
            }
            probes += 1;
            let kernel = eigensphere_kernel(t, &q, 1e-7)?;
            resolvent_hits.record(kernel.len() as f64);
        }
    }
    checks.push(CheckResult::new(
        "eigensphere_oracle",
        oracle.cases,
        oracle.worst,
        1e-7,
    ));
    checks.push(CheckResult::new(
        "resolvent_kernel_empty",
        resolvent_hits.cases,
        resolvent_hits.worst,
        0.5,
    ));

    if !all_normal {
        return Ok(VerifyReport { seed, checks });
    }

    // Theorem 1: max eigenvalue modulus = operator norm
    let mut law = Residual::new();
    for t in &matrices {
        let s = point_spectrum(t, iota, DEFAULT_TOL)?;
        law.record((s.points.max_modulus() - t.operator_norm()).abs());
    }
    checks.push(CheckResult::new(
        "theorem1_norm_law",
        law.cases,
        law.worst,
        1e-8,
    ));

    // spectral decomposition: reconstruction, slice containment, spectrum
    // match, basis inside H+^{Jι}
    let mut reconstruction = Residual::new();
    let mut in_slice = Residual::new();
    let mut spectrum_match = Residual::new();
    let mut in_plus = Residual::new();
    for t in &matrices {
        let dec = spectral_decomposition(t, iota)?;
        let rebuilt = synthesize(&dec.basis, &dec.lambdas, 1e-6)?;
        reconstruction.record(t.sub(&rebuilt)?.operator_norm());

        let frame = crate::quaternion::SliceFrame::new(iota);
        for l in &dec.lambdas {
            let (_, _, leak) = frame.slice_coordinates(l);
            in_slice.record(leak);
        }

        let s = point_spectrum(t, iota, DEFAULT_TOL)?;
        let circ = dec.circularized_lambdas(DEFAULT_TOL);
        spectrum_match.record(set_distance(
            &s.points.without_zero(DEFAULT_TOL),
            &circ.without_zero(DEFAULT_TOL),
        ));

        let j = build_j_from_basis(&dec.basis, iota)?;
        for z in dec.basis.vectors() {
            let jz = j.apply(z)?;
            in_plus.record(jz.sub(&z.scale_right(&iota.quaternion())).norm());
        }
    }
    checks.push(CheckResult::new(
        "decomposition_reconstruction",
        reconstruction.cases,
        reconstruction.worst,
        1e-8,
    ));
    checks.push(CheckResult::new(
        "lambdas_in_slice",
        in_slice.cases,
        in_slice.worst,
        1e-9,
    ));
    checks.push(CheckResult::new(
        "lambda_spectrum_match",
        spectrum_match.cases,
        spectrum_match.worst,
        1e-8,
    ));
    checks.push(CheckResult::new(
        "basis_in_plus_subspace",
        in_plus.cases,
        in_plus.worst,
        1e-8,
    ));

    // A+JB clauses
    let mut ajb = Residual::new();
    for t in &matrices {
        let dec = ajb_decompose(t, iota)?;
        let mut worst = dec.residual;
        worst = worst.max(dec.a.sub(&dec.a.adjoint())?.operator_norm());
        worst = worst.max(dec.b.sub(&dec.b.adjoint())?.operator_norm());
        let chi = dec.b.chi(iota);
        let min_eig = crate::operator::hermitian_min_eigenvalue(&chi);
        worst = worst.max((-min_eig).max(0.0));
        worst = worst.max(dec.j.add(&dec.j.adjoint())?.operator_norm());
        worst = worst.max(
            dec.j
                .adjoint()
                .matmul(&dec.j)?
                .sub(&QMatrix::identity(t.rows()))?
                .operator_norm(),
        );
        // closed-form uniqueness of A and B
        let adj = t.adjoint();
        worst = worst.max(dec.a.sub(&t.add(&adj)?.scale(0.5))?.operator_norm());
        worst = worst.max(
            dec.b
                .sub(&t.sub(&adj)?.operator_abs(DEFAULT_TOL)?.scale(0.5))?
                .operator_norm(),
        );
        // mutual commutation
        for (x, y) in [(&dec.a, &dec.b), (&dec.a, &dec.j), (&dec.b, &dec.j)] {
            worst = worst.max(x.matmul(y)?.sub(&y.matmul(x)?)?.operator_norm());
        }
        ajb.record(worst);
    }
    checks.push(CheckResult::new("ajb_clauses", ajb.cases, ajb.worst, 1e-8));

    // classification: spectra of the self-adjoint / anti self-adjoint /
    // structure parts have the right shape
    let mut real_spec = Residual::new();
    let mut imag_spec = Residual::new();
    let mut sphere_spec = Residual::new();
    for t in &matrices {
        let adj = t.adjoint();
        let a = t.add(&adj)?.scale(0.5);
        for p in point_spectrum(&a, iota, DEFAULT_TOL)?.points.points() {
            real_spec.record(p.im);
        }
        let c = t.sub(&adj)?.scale(0.5);
        for p in point_spectrum(&c, iota, DEFAULT_TOL)?.points.points() {
            imag_spec.record(p.re.abs());
        }
        let dec = ajb_decompose(t, iota)?;
        for p in point_spectrum(&dec.j, iota, DEFAULT_TOL)?.points.points() {
            sphere_spec.record(p.re.abs().max((p.im - 1.0).abs()));
        }
    }
    checks.push(CheckResult::new(
        "self_adjoint_real_spectrum",
        real_spec.cases,
        real_spec.worst,
        1e-9,
    ));
    checks.push(CheckResult::new(
        "anti_self_adjoint_imaginary_spectrum",
        imag_spec.cases,
        imag_spec.worst,
        1e-9,
    ));
    checks.push(CheckResult::new(
        "structure_spectrum_is_sphere",
        sphere_spec.cases,
        sphere_spec.worst,
        1e-8,
    ));

    // Gelfand radius: ‖T^{2^k}‖^{1/2^k} constant and equal to r_S
    let mut gelfand = Residual::new();
    for t in &matrices {
        let radius = point_spectrum(t, iota, DEFAULT_TOL)?.points.max_modulus();
        let mut power = t.clone();
        for k in 0..=4u32 {
            let estimate = power.operator_norm().powf(1.0 / 2f64.powi(k as i32));
            gelfand.record((estimate - radius).abs() / radius.max(1e-6));
            if k < 4 {
                power = power.matmul(&power)?;
            }
        }
    }
    checks.push(CheckResult::new(
        "gelfand_radius",
        gelfand.cases,
        gelfand.worst,
        1e-6,
    ));

    // polynomial spectral map on the self-adjoint parts
    let mut smap = Residual::new();
    for t in &matrices {
        let a = t.add(&t.adjoint())?.scale(0.5);
        let coeffs = corpus::random_polynomial(3, &mut rng);
        let ok = spectral_map_check(&a, &coeffs)?;
        smap.record(if ok { 0.0 } else { 1.0 });
    }
    checks.push(CheckResult::new(
        "spectral_map",
        smap.cases,
        smap.worst,
        0.5,
    ));

    Ok(VerifyReport { seed, checks })
}
