//! Spherical spectra, the A+JB splitting, slice restriction, spectral
//! decomposition of normal operators, and synthesis.
//!
//! The route for every spectral question is the complex adjoint image:
//! right eigenvalues of T correspond to eigenvalues of χ(T), which occur in
//! conjugate pairs (the numerical witness of circularity), so the spherical
//! point spectrum is the circularization of the χ eigenvalues. For normal T
//! the splitting T = A + JB (A = (T+T*)/2 self-adjoint, B = |T−T*|/2
//! positive, J anti self-adjoint unitary commuting with both) produces the
//! slice subspace H+^{Jι} on which T restricts to a complex-normal matrix;
//! diagonalizing that restriction and lifting its eigenvectors through the
//! slice basis yields the spectral decomposition T = Σ z λ_z ⟨z|·⟩ with
//! λ_z ∈ C_ι.
//!
//! In finite dimension the spherical spectrum is pure point spectrum: the
//! residual and continuous parts are empty (Δ_q(T) is injective iff
//! invertible), so no operation computes them.

use crate::cplx::{self, C64};
use crate::error::{Error, Result};
use crate::hilbert::{slice_basis, HilbertBasis, QVector, SliceBasis};
use crate::operator::QMatrix;
use crate::quaternion::{
    merge_points, CircularPoint, CircularSet, ImaginaryUnit, Quaternion, SliceFrame, DEFAULT_TOL,
};
use nalgebra::{DMatrix, DVector};

/// Diagonal matrices above this dimension bypass the dense χ eigensolvers;
/// their spectra and norms are exact entrywise reads.
const DIAGONAL_FAST_PATH_MIN: usize = 64;

/// Relative threshold for clustering eigenvalues of Hermitian χ images.
const CLUSTER_REL: f64 = 1e-7;

/// The spherical point spectrum of an operator, as a circular set.
#[derive(Debug, Clone)]
pub struct SphericalSpectrum {
    /// The circularized eigenvalue classes, multiplicities counting
    /// right-ℍ eigenspace dimensions.
    pub points: CircularSet,
    /// True when the input was normal within tolerance, in which case the
    /// point spectrum is the whole spherical spectrum. For non-normal
    /// inputs the points are still the eigenvalue classes, but no claim is
    /// made about the rest of the spherical spectrum.
    pub spherical_certified: bool,
}

impl SphericalSpectrum {
    /// Every point of a finite-dimensional spectrum is an eigenvalue class.
    pub fn kind(&self) -> &'static str {
        "point"
    }
}

/// The splitting T = A + JB of a normal operator.
#[derive(Debug, Clone)]
pub struct AjbDecomposition {
    /// Self-adjoint part (T + T*)/2.
    pub a: QMatrix,
    /// Positive part |T − T*|/2.
    pub b: QMatrix,
    /// Anti self-adjoint unitary, unique on the range of T − T*; on the
    /// kernel it acts as z ↦ zι over an eigenbasis of A.
    pub j: QMatrix,
    /// ‖T − (A + JB)‖.
    pub residual: f64,
}

/// The restriction of T to the slice subspace H+^{Jι}.
#[derive(Debug, Clone)]
pub struct SliceRestriction {
    /// Matrix of T|_{H+^{Jι}} in the slice basis, entries read in C_ι.
    pub matrix: DMatrix<C64>,
    /// The C_ι basis of H+^{Jι} that produced the matrix.
    pub basis: SliceBasis,
}

/// An eigenbasis with its eigenvalue map: T z = z λ_z for every basis z.
#[derive(Debug, Clone)]
pub struct SpectralDecomposition {
    pub iota: ImaginaryUnit,
    pub basis: HilbertBasis,
    /// λ_z per basis vector; produced in C_ι by [`spectral_decomposition`],
    /// mapped into the closed upper half slice by [`canonicalize`].
    pub lambdas: Vec<Quaternion>,
}

impl SpectralDecomposition {
    /// ‖T − Σ z λ_z ⟨z|·⟩‖.
    pub fn reconstruction_residual(&self, t: &QMatrix) -> Result<f64> {
        let rebuilt = synthesize(&self.basis, &self.lambdas, 1e-6)?;
        Ok(t.sub(&rebuilt)?.operator_norm())
    }

    /// Circularization of the eigenvalue map.
    pub fn circularized_lambdas(&self, tol: f64) -> CircularSet {
        crate::quaternion::circularize(&self.lambdas, tol)
    }
}

fn normality_defect(t: &QMatrix) -> Result<f64> {
    let adj = t.adjoint();
    Ok(t.matmul(&adj)?.sub(&adj.matmul(t)?)?.operator_norm())
}

fn require_normal(t: &QMatrix) -> Result<()> {
    let n = t.require_square()? as f64;
    let defect = normality_defect(t)?;
    let scale = 1.0 + t.operator_norm();
    if defect > DEFAULT_TOL * n * scale * scale {
        return Err(Error::NotNormal { defect });
    }
    Ok(())
}

/// Spherical point spectrum: the χ(T) eigenvalues paired into conjugate
/// classes and circularized, multiplicities summing to the dimension.
///
/// T need not be normal — in finite dimension the point spectrum is always
/// the set of eigenvalue classes — but only for normal T does the result
/// carry the whole spherical spectrum (see
/// [`SphericalSpectrum::spherical_certified`]).
pub fn point_spectrum(t: &QMatrix, iota: &ImaginaryUnit, tol: f64) -> Result<SphericalSpectrum> {
    let n = t.require_square()?;
    if n == 0 {
        return Err(Error::DimensionMismatch("empty matrix".into()));
    }

    if t.is_diagonal() && n > DIAGONAL_FAST_PATH_MIN {
        // right eigenvalues of diag(q_1..q_n) are exactly the classes of
        // the entries; diagonal matrices are normal
        let points = crate::quaternion::circularize(&t.diagonal_entries(), tol);
        return Ok(SphericalSpectrum {
            points,
            spherical_certified: true,
        });
    }

    let chi = t.chi(iota);
    let mut eigs = cplx::schur_eigenvalues(&chi.matrix)?;

    // deterministic processing order
    eigs.sort_by(|a, b| {
        (a.re, a.im.abs(), a.im)
            .partial_cmp(&(b.re, b.im.abs(), b.im))
            .expect("NaN eigenvalue")
    });
    let scale = eigs.iter().fold(0.0_f64, |m, e| m.max(e.norm()));
    let pair_tol = tol.max(1e-7 * scale.max(1.0));

    // conjugate partners share the class coordinates (re, |im|); greedy
    // nearest-neighbor matching tolerates the jitter that breaks positional
    // pairing when several classes share a real part
    let class_distance = |a: &C64, b: &C64| (a.re - b.re).abs() + (a.im.abs() - b.im.abs()).abs();
    let mut used = vec![false; eigs.len()];
    let mut classes = Vec::with_capacity(n);
    for idx in 0..eigs.len() {
        if used[idx] {
            continue;
        }
        used[idx] = true;
        let mut best: Option<(usize, f64)> = None;
        for (jdx, other) in eigs.iter().enumerate().skip(idx + 1) {
            if used[jdx] {
                continue;
            }
            let d = class_distance(&eigs[idx], other);
            if best.is_none_or(|(_, bd)| d < bd) {
                best = Some((jdx, d));
            }
        }
        let (partner, dist) =
            best.ok_or_else(|| Error::Internal("odd χ eigenvalue count cannot pair".into()))?;
        if dist > pair_tol {
            return Err(Error::Internal(format!(
                "χ eigenvalues do not pair into conjugate classes: {} vs {}",
                eigs[idx], eigs[partner]
            )));
        }
        used[partner] = true;
        let re = 0.5 * (eigs[idx].re + eigs[partner].re);
        let im = 0.5 * (eigs[idx].im.abs() + eigs[partner].im.abs());
        classes.push(CircularPoint {
            re,
            im: if im <= tol { 0.0 } else { im },
            mult: 1,
        });
    }
    let points = merge_points(classes, tol);
    let spherical_certified = {
        let defect = normality_defect(t)?;
        defect <= DEFAULT_TOL * n as f64 * (1.0 + scale) * (1.0 + scale)
    };
    Ok(SphericalSpectrum {
        points,
        spherical_certified,
    })
}

/// Spherical spectral radius: the largest class modulus of the point
/// spectrum. Equals ‖T‖ for normal T.
pub fn spectral_radius(t: &QMatrix) -> Result<f64> {
    Ok(point_spectrum(t, &ImaginaryUnit::i(), DEFAULT_TOL)?
        .points
        .max_modulus())
}

/// Orthonormal right-ℍ basis of the numerical kernel of Δ_q(T).
///
/// Nonempty exactly when the class of q is an eigensphere; every returned u
/// satisfies ‖Δ_q(T) u‖ ≤ tol. The complex nullity of χ(Δ_q(T)) must be
/// even (two complex directions per quaternionic one) or the pairing
/// structure is reported broken.
pub fn eigensphere_kernel(t: &QMatrix, q: &Quaternion, tol: f64) -> Result<Vec<QVector>> {
    t.require_square()?;
    let delta = t.delta_q(q)?;
    let iota = ImaginaryUnit::i();
    let chi = delta.chi(&iota);
    let cols = cplx::nullspace(&chi.matrix, tol);
    if cols.is_empty() {
        return Ok(Vec::new());
    }
    if !cols.len().is_multiple_of(2) {
        return Err(Error::Internal(format!(
            "odd complex nullity {} of χ(Δ_q(T))",
            cols.len()
        )));
    }
    let frame = SliceFrame::new(&iota);
    cplx::pair_into_qvectors(&cols, &frame)
}

/// Orthonormal eigenbasis with real eigenvalues of a self-adjoint matrix,
/// via the Hermitian χ image and Ω-pairing of its eigenvector clusters.
fn self_adjoint_eigenbasis(m: &QMatrix) -> Result<Vec<(f64, QVector)>> {
    let n = m.require_square()?;
    let iota = ImaginaryUnit::i();
    let frame = SliceFrame::new(&iota);
    let chi = m.chi(&iota);
    let (vals, vecs) = cplx::hermitian_eigen(&chi.matrix);
    let scale = vals.iter().fold(f64::MIN_POSITIVE, |a, &b| a.max(b.abs()));
    let tau = CLUSTER_REL * scale;

    let mut out = Vec::with_capacity(n);
    let mut start = 0;
    while start < 2 * n {
        let mut end = start + 1;
        while end < 2 * n && vals[end] - vals[end - 1] <= tau {
            end += 1;
        }
        if !(end - start).is_multiple_of(2) {
            return Err(Error::Internal(
                "odd eigenvalue cluster in self-adjoint χ image".into(),
            ));
        }
        let cols: Vec<DVector<C64>> = (start..end).map(|k| vecs.column(k).into_owned()).collect();
        let mean = vals[start..end].iter().sum::<f64>() / (end - start) as f64;
        for v in cplx::pair_into_qvectors(&cols, &frame)? {
            out.push((mean, v));
        }
        start = end;
    }
    Ok(out)
}

/// Σ z ι ⟨z|·⟩ over a (not necessarily complete) orthonormal family.
fn structure_from_family(vectors: &[QVector], iota: &ImaginaryUnit, n: usize) -> QMatrix {
    let iq = iota.quaternion();
    let mut out = QMatrix::zeros(n, n);
    for z in vectors {
        for r in 0..n {
            let zr_i = z.get(r) * iq;
            for c in 0..n {
                let cur = out.get(r, c);
                out.set(r, c, cur + zr_i * z.get(c).conj());
            }
        }
    }
    out
}

/// The A+JB splitting of a normal operator.
///
/// A and B come from the closed formulas A = (T+T*)/2, B = |T−T*|/2; J is
/// the polar factor of T−T* on its range (both read from one Hermitian
/// eigendecomposition of the skew-Hermitian χ(T−T*), so B and J commute to
/// machine precision), extended on the kernel of T−T* by Jz = zι over an
/// orthonormal eigenbasis of A restricted to that kernel. The eigenbasis
/// choice is what makes J commute with A there; an arbitrary orthonormal
/// kernel basis would not.
pub fn ajb_decompose(t: &QMatrix, iota: &ImaginaryUnit) -> Result<AjbDecomposition> {
    let n = t.require_square()?;
    require_normal(t)?;

    let adj = t.adjoint();
    let a = t.add(&adj)?.scale(0.5);
    let c = t.sub(&adj)?;

    let chi_c = c.chi(iota);
    // M = −i·χ(C) is Hermitian for anti self-adjoint C
    let skew = (&chi_c.matrix - chi_c.matrix.adjoint()).unscale(2.0);
    let m = skew.map(|x| x * C64::new(0.0, -1.0));
    let (svals, u) = cplx::hermitian_eigen(&m);
    let smax = svals.iter().fold(0.0_f64, |acc, &s| acc.max(s.abs()));
    // pseudo-inverse threshold: directions below it belong to Ker(T − T*).
    // The floor matters when T is (numerically) self-adjoint: C is then pure
    // rounding noise and a threshold relative to ‖C‖ alone would promote
    // noise directions to the range, with arbitrary polar signs.
    let floor = 2.0 * n as f64 * f64::EPSILON * (1.0 + t.operator_norm());
    let thresh = (n as f64 * 1e-12 * smax).max(floor);

    let half_abs: Vec<f64> = svals.iter().map(|s| s.abs() / 2.0).collect();
    let b = crate::operator::ComplexAdjointImage {
        iota: *iota,
        matrix: cplx::assemble_hermitian(&half_abs, &u),
    }
    .chi_inverse();

    // range part of J: C · pinv(|C|), i.e. U diag(i·sign s) U*
    let mut sign_diag = DMatrix::<C64>::zeros(2 * n, 2 * n);
    let mut kernel_cols: Vec<DVector<C64>> = Vec::new();
    for (k, &s) in svals.iter().enumerate() {
        if s.abs() > thresh {
            sign_diag[(k, k)] = C64::new(0.0, s.signum());
        } else {
            kernel_cols.push(u.column(k).into_owned());
        }
    }
    let j_range_chi = &u * sign_diag * u.adjoint();
    let mut j = crate::operator::ComplexAdjointImage {
        iota: *iota,
        matrix: j_range_chi,
    }
    .chi_inverse();

    if !kernel_cols.is_empty() {
        if !kernel_cols.len().is_multiple_of(2) {
            return Err(Error::Internal("odd kernel dimension in χ(T − T*)".into()));
        }
        let frame = SliceFrame::new(iota);
        let kernel_basis = cplx::pair_into_qvectors(&kernel_cols, &frame)?;
        let p = kernel_basis.len();

        // A restricted to Ker(T − T*), a p×p self-adjoint matrix
        let a_images: Vec<QVector> = kernel_basis
            .iter()
            .map(|z| a.apply(z))
            .collect::<Result<_>>()?;
        let mut a_restricted = QMatrix::zeros(p, p);
        for (l, z) in kernel_basis.iter().enumerate() {
            for (mm, az) in a_images.iter().enumerate() {
                a_restricted.set(l, mm, z.inner(az)?);
            }
        }
        let eigen = self_adjoint_eigenbasis(&a_restricted)?;
        // rotate the kernel basis into the A eigenbasis
        let mut rotated = Vec::with_capacity(p);
        for (_val, coeffs) in &eigen {
            let mut zv = QVector::zeros(n);
            for (l, z) in kernel_basis.iter().enumerate() {
                zv = zv.add(&z.scale_right(&coeffs.get(l)));
            }
            rotated.push(zv);
        }
        j = j.add(&structure_from_family(&rotated, iota, n))?;
    }

    let residual = t.sub(&a.add(&j.matmul(&b)?)?)?.operator_norm();
    Ok(AjbDecomposition { a, b, j, residual })
}

/// Matrix of T restricted to H+^{Jι}, in a slice basis built from the J of
/// a valid A+JB decomposition.
///
/// J must commute with T and T* within tolerance; the restriction is then
/// well defined, complex-normal for normal T, and its eigenvalues
/// circularize to the point spectrum.
pub fn complex_restriction(
    t: &QMatrix,
    dec: &AjbDecomposition,
    iota: &ImaginaryUnit,
) -> Result<SliceRestriction> {
    let n = t.require_square()?;
    let scale = 1.0 + t.operator_norm();
    let ctol = 1e-7 * n as f64 * scale;
    let adj = t.adjoint();
    for other in [t, &adj] {
        let defect = dec
            .j
            .matmul(other)?
            .sub(&other.matmul(&dec.j)?)?
            .operator_norm();
        if defect > ctol {
            return Err(Error::CommutationDefect { defect, tol: ctol });
        }
    }

    let sb = slice_basis(&dec.j, iota, DEFAULT_TOL)?;
    let frame = SliceFrame::new(iota);
    let mut matrix = DMatrix::<C64>::zeros(n, n);
    let mut leakage: f64 = 0.0;
    for (mcol, bm) in sb.plus_vectors().iter().enumerate() {
        let tb = t.apply(bm)?;
        for (krow, bk) in sb.plus_vectors().iter().enumerate() {
            let coeff = bk.inner(&tb)?;
            let (re, im, resid) = frame.slice_coordinates(&coeff);
            leakage = leakage.max(resid);
            matrix[(krow, mcol)] = C64::new(re, im);
        }
    }
    if leakage > ctol {
        return Err(Error::Internal(format!(
            "slice restriction leaks outside C_ι by {leakage:.3e}"
        )));
    }
    Ok(SliceRestriction { matrix, basis: sb })
}

/// Spectral decomposition of a normal operator: an orthonormal eigenbasis
/// N ⊂ H+^{Jι} and eigenvalues λ_z ∈ C_ι with T = Σ z λ_z ⟨z|·⟩.
pub fn spectral_decomposition(t: &QMatrix, iota: &ImaginaryUnit) -> Result<SpectralDecomposition> {
    let n = t.require_square()?;
    require_normal(t)?;
    let dec = ajb_decompose(t, iota)?;
    let restriction = complex_restriction(t, &dec, iota)?;
    let (lambdas_c, u) = cplx::normal_complex_eigen(&restriction.matrix)?;

    let frame = SliceFrame::new(iota);
    let mut vectors = Vec::with_capacity(n);
    for col in 0..n {
        let mut z = QVector::zeros(n);
        for (k, bk) in restriction.basis.plus_vectors().iter().enumerate() {
            let c = u[(k, col)];
            z = z.add(&bk.scale_right(&frame.embed_complex(c.re, c.im)));
        }
        vectors.push(z);
    }
    let basis = HilbertBasis::new(vectors, 1e-8 * n as f64)?;
    let lambdas = lambdas_c
        .iter()
        .map(|l| frame.embed_complex(l.re, l.im))
        .collect();
    Ok(SpectralDecomposition {
        iota: *iota,
        basis,
        lambdas,
    })
}

/// Rotates every eigenvalue into the closed upper half slice C_ι⁺,
/// replacing z by zμ and λ by μ⁻¹λμ.
///
/// μ = 1 for real λ; μ = ȷ for λ in the lower half of C_ι (which conjugates
/// re − ι·s to re + ι·s); for λ off the slice μ is the unit quaternion
/// (v̂ + ι)/|v̂ + ι| with v̂ the imaginary axis of λ, satisfying v̂μ = μι.
/// Eigen-relations and orthonormality are preserved.
pub fn canonicalize(dec: &SpectralDecomposition, iota: &ImaginaryUnit) -> SpectralDecomposition {
    let iq = iota.quaternion();
    let mut vectors = Vec::with_capacity(dec.basis.dim());
    let mut lambdas = Vec::with_capacity(dec.lambdas.len());
    for (z, lambda) in dec.basis.vectors().iter().zip(&dec.lambdas) {
        let s = lambda.im_norm();
        if s <= 1e-14 * (1.0 + lambda.norm()) {
            vectors.push(z.clone());
            lambdas.push(*lambda);
            continue;
        }
        let axis = lambda.im().scale(1.0 / s);
        let mu = crate::quaternion::rotation_to_axis(&axis, iota);
        if mu == Quaternion::one() {
            vectors.push(z.clone());
            lambdas.push(*lambda);
        } else {
            vectors.push(z.scale_right(&mu));
            lambdas.push(Quaternion::real(lambda.re()) + iq.scale(s));
        }
    }
    SpectralDecomposition {
        iota: *iota,
        basis: HilbertBasis::new(vectors, f64::INFINITY)
            .expect("unit right multiples preserve basis shape"),
        lambdas,
    }
}

/// The unique matrix with action Tx = Σ z λ_z ⟨z|x⟩.
///
/// The basis must be orthonormal within `tol`; the synthesized matrix is
/// normal and its nonzero spectrum circularizes the eigenvalue map.
pub fn synthesize(basis: &HilbertBasis, lambdas: &[Quaternion], tol: f64) -> Result<QMatrix> {
    if lambdas.len() != basis.dim() {
        return Err(Error::DimensionMismatch(
            "one eigenvalue per basis vector required".into(),
        ));
    }
    let residual = crate::hilbert::gram_residual(basis.vectors())?;
    if residual > tol {
        return Err(Error::NotOrthonormal { residual });
    }
    let n = basis.dim();
    let mut out = QMatrix::zeros(n, n);
    for (z, lambda) in basis.vectors().iter().zip(lambdas) {
        for r in 0..n {
            let zl = z.get(r) * *lambda;
            for c in 0..n {
                let cur = out.get(r, c);
                out.set(r, c, cur + zl * z.get(c).conj());
            }
        }
    }
    Ok(out)
}

/// The operator Jx = Σ z ι ⟨z|x⟩ attached to a Hilbert basis: anti
/// self-adjoint, unitary, with N ⊂ H+^{Jι}; it commutes with any operator
/// synthesized from N and eigenvalues in C_ι.
pub fn build_j_from_basis(basis: &HilbertBasis, iota: &ImaginaryUnit) -> Result<QMatrix> {
    let residual = crate::hilbert::gram_residual(basis.vectors())?;
    if residual > 1e-8 * basis.dim() as f64 {
        return Err(Error::NotOrthonormal { residual });
    }
    Ok(structure_from_family(basis.vectors(), iota, basis.dim()))
}

/// Verifies the polynomial spectral map σ_S(P(T)) = P(σ_S(T)) for a
/// self-adjoint T and a real polynomial (coefficients ascending in degree).
pub fn spectral_map_check(t: &QMatrix, coeffs: &[f64]) -> Result<bool> {
    let n = t.require_square()?;
    let defect = t.sub(&t.adjoint())?.operator_norm();
    if defect > DEFAULT_TOL * n as f64 * (1.0 + t.operator_norm()) {
        return Err(Error::NotSelfAdjoint { defect });
    }
    let iota = ImaginaryUnit::i();
    let spectrum = point_spectrum(t, &iota, DEFAULT_TOL)?;

    // Horner evaluation of P(T)
    let id = QMatrix::identity(n);
    let mut p_of_t = QMatrix::zeros(n, n);
    for &c in coeffs.iter().rev() {
        p_of_t = p_of_t.matmul(t)?.add(&id.scale(c))?;
    }
    let lhs = point_spectrum(&p_of_t, &iota, DEFAULT_TOL)?;

    // direct image of the (real) spectrum points under P
    let eval = |x: f64| coeffs.iter().rev().fold(0.0, |acc, &c| acc * x + c);
    let mapped: Vec<CircularPoint> = spectrum
        .points
        .points()
        .iter()
        .map(|p| CircularPoint {
            re: eval(p.re),
            im: 0.0,
            mult: p.mult,
        })
        .collect();
    let rhs = merge_points(mapped, DEFAULT_TOL);

    let cmp_tol = 1e-8 * (1.0 + rhs.max_modulus());
    Ok(lhs.points.approx_eq(&rhs, cmp_tol))
}
