//! Finite-dimensional quaternionic Hilbert space H^n.
//!
//! Vectors carry right scalar multiplication; the inner product
//! ⟨u|v⟩ = Σ ū_m v_m is right linear in v and Hermitian. Expansion
//! coefficients always sit to the right of basis vectors, x = Σ z ⟨z|x⟩.
//! The module also hosts the slice subspaces H±^{Jι} = {u : Ju = ±uι}
//! attached to an anti self-adjoint unitary J, their projections
//! P±(x) = ½(x ∓ Jxι), and slice-adapted orthonormal bases.

use crate::error::{Error, Result};
use crate::operator::QMatrix;
use crate::quaternion::{ImaginaryUnit, Quaternion, SliceFrame};

/// Norm below which an input vector counts as degenerate and is rejected.
pub const DEGENERATE_NORM: f64 = 1e-12;

/// Residual above which Gram–Schmidt runs a second orthogonalization pass.
const REORTH_THRESHOLD: f64 = 1e-10;

/// An element of H^n.
#[derive(Debug, Clone, PartialEq)]
pub struct QVector {
    entries: Vec<Quaternion>,
}

impl QVector {
    pub fn new(entries: Vec<Quaternion>) -> Self {
        Self { entries }
    }

    pub fn zeros(n: usize) -> Self {
        Self {
            entries: vec![Quaternion::zero(); n],
        }
    }

    /// Standard basis vector e_m (0-indexed).
    pub fn basis(n: usize, m: usize) -> Self {
        let mut v = Self::zeros(n);
        v.entries[m] = Quaternion::one();
        v
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> &[Quaternion] {
        &self.entries
    }

    pub fn get(&self, m: usize) -> Quaternion {
        self.entries[m]
    }

    pub fn set(&mut self, m: usize, q: Quaternion) {
        self.entries[m] = q;
    }

    /// ⟨self|v⟩ = Σ conj(self_m) v_m.
    pub fn inner(&self, v: &QVector) -> Result<Quaternion> {
        if self.len() != v.len() {
            return Err(Error::DimensionMismatch(format!(
                "inner product of vectors of lengths {} and {}",
                self.len(),
                v.len()
            )));
        }
        let mut acc = Quaternion::zero();
        for (a, b) in self.entries.iter().zip(&v.entries) {
            acc = acc + a.conj() * *b;
        }
        Ok(acc)
    }

    pub fn norm_sqr(&self) -> f64 {
        self.entries.iter().map(|q| q.norm_sqr()).sum()
    }

    pub fn norm(&self) -> f64 {
        self.norm_sqr().sqrt()
    }

    /// Right scalar multiple v·q.
    pub fn scale_right(&self, q: &Quaternion) -> QVector {
        QVector::new(self.entries.iter().map(|e| *e * *q).collect())
    }

    /// Real scalar multiple.
    pub fn scale(&self, s: f64) -> QVector {
        QVector::new(self.entries.iter().map(|e| e.scale(s)).collect())
    }

    pub fn add(&self, v: &QVector) -> QVector {
        QVector::new(
            self.entries
                .iter()
                .zip(&v.entries)
                .map(|(a, b)| *a + *b)
                .collect(),
        )
    }

    pub fn sub(&self, v: &QVector) -> QVector {
        QVector::new(
            self.entries
                .iter()
                .zip(&v.entries)
                .map(|(a, b)| *a - *b)
                .collect(),
        )
    }
}

/// Which scalar ring Gram–Schmidt coefficients are drawn from.
#[derive(Debug, Clone, Copy)]
pub enum Scalars {
    /// Full quaternionic coefficients.
    Quaternionic,
    /// Coefficients restricted to the slice C_ι.
    Complex(ImaginaryUnit),
}

impl Scalars {
    /// Orthogonal projection coefficient of ⟨u|v⟩ onto the scalar ring.
    fn coefficient(&self, inner: &Quaternion) -> Quaternion {
        match self {
            Scalars::Quaternionic => *inner,
            Scalars::Complex(iota) => {
                let frame = SliceFrame::new(iota);
                let (re, im, _) = frame.slice_coordinates(inner);
                frame.embed_complex(re, im)
            }
        }
    }
}

/// Modified Gram–Schmidt over ℍ or C_ι, right coefficients only.
///
/// Runs a second orthogonalization pass for a vector whenever the first pass
/// leaves residual projections above 1e-10 relative to the vector norm.
/// Degenerate inputs (norm < 1e-12) are rejected rather than normalized, and
/// a vector that collapses under projection reports its index.
pub fn gram_schmidt(vs: &[QVector], scalars: Scalars) -> Result<Vec<QVector>> {
    let mut out: Vec<QVector> = Vec::with_capacity(vs.len());
    for (index, v) in vs.iter().enumerate() {
        let norm_in = v.norm();
        if norm_in < DEGENERATE_NORM {
            return Err(Error::DegenerateVector {
                index,
                norm: norm_in,
            });
        }
        let mut w = v.clone();
        for u in &out {
            let c = scalars.coefficient(&u.inner(&w)?);
            w = w.sub(&u.scale_right(&c));
        }
        // cancellation can leave residual overlap; one more pass clears it
        let mut residual = 0.0_f64;
        for u in &out {
            residual = residual.max(scalars.coefficient(&u.inner(&w)?).norm());
        }
        if residual > REORTH_THRESHOLD * norm_in {
            for u in &out {
                let c = scalars.coefficient(&u.inner(&w)?);
                w = w.sub(&u.scale_right(&c));
            }
        }
        let norm_out = w.norm();
        if norm_out < DEGENERATE_NORM * norm_in.max(1.0) {
            return Err(Error::RankDeficient { index });
        }
        out.push(w.scale(1.0 / norm_out));
    }
    Ok(out)
}

/// Largest deviation of the Gram matrix from the identity.
pub fn gram_residual(vectors: &[QVector]) -> Result<f64> {
    let mut worst: f64 = 0.0;
    for (i, u) in vectors.iter().enumerate() {
        for (j, v) in vectors.iter().enumerate() {
            let g = u.inner(v)?;
            let target = if i == j {
                Quaternion::one()
            } else {
                Quaternion::zero()
            };
            worst = worst.max((g - target).norm());
        }
    }
    Ok(worst)
}

/// An orthonormal right-ℍ basis of H^n.
#[derive(Debug, Clone)]
pub struct HilbertBasis {
    vectors: Vec<QVector>,
    gram_residual: f64,
}

impl HilbertBasis {
    /// Validates orthonormality (within `tol`) and completeness (n vectors
    /// of length n).
    pub fn new(vectors: Vec<QVector>, tol: f64) -> Result<Self> {
        if vectors.is_empty() {
            return Err(Error::DimensionMismatch("empty basis".into()));
        }
        let n = vectors[0].len();
        if vectors.len() != n || vectors.iter().any(|v| v.len() != n) {
            return Err(Error::DimensionMismatch(format!(
                "{} vectors of length {} do not form a basis of H^{}",
                vectors.len(),
                vectors[0].len(),
                n
            )));
        }
        let residual = gram_residual(&vectors)?;
        if residual > tol {
            return Err(Error::NotOrthonormal { residual });
        }
        Ok(Self {
            vectors,
            gram_residual: residual,
        })
    }

    pub fn standard(n: usize) -> Self {
        Self {
            vectors: (0..n).map(|m| QVector::basis(n, m)).collect(),
            gram_residual: 0.0,
        }
    }

    pub fn dim(&self) -> usize {
        self.vectors.len()
    }

    pub fn vectors(&self) -> &[QVector] {
        &self.vectors
    }

    pub fn gram_residual(&self) -> f64 {
        self.gram_residual
    }

    /// Expansion coefficients ⟨z|x⟩ for every basis vector z.
    pub fn coefficients(&self, x: &QVector) -> Result<Vec<Quaternion>> {
        self.vectors.iter().map(|z| z.inner(x)).collect()
    }

    /// Σ z c_z with right coefficients.
    pub fn combine(&self, coeffs: &[Quaternion]) -> Result<QVector> {
        if coeffs.len() != self.vectors.len() {
            return Err(Error::DimensionMismatch(
                "coefficient count does not match basis".into(),
            ));
        }
        let mut acc = QVector::zeros(self.vectors[0].len());
        for (z, c) in self.vectors.iter().zip(coeffs) {
            acc = acc.add(&z.scale_right(c));
        }
        Ok(acc)
    }
}

/// Left scalar multiplication induced by a Hilbert basis:
/// qu = Σ z q ⟨z|u⟩. With the standard basis this is componentwise left
/// multiplication.
pub fn left_mul(q: &Quaternion, u: &QVector, basis: &HilbertBasis) -> Result<QVector> {
    if u.len() != basis.dim() {
        return Err(Error::DimensionMismatch(
            "vector length does not match basis dimension".into(),
        ));
    }
    let mut acc = QVector::zeros(u.len());
    for z in basis.vectors() {
        let c = *q * z.inner(u)?;
        acc = acc.add(&z.scale_right(&c));
    }
    Ok(acc)
}

/// Matrix of the left multiplication L_q in the standard basis: diag(q,…,q).
pub fn left_mul_matrix(q: &Quaternion, n: usize) -> QMatrix {
    QMatrix::diagonal(&vec![*q; n])
}

/// Sign selecting one of the two slice subspaces H±^{Jι}.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sign {
    Plus,
    Minus,
}

fn check_complex_structure(j: &QMatrix, tol: f64) -> Result<()> {
    let class = j.classify(tol)?;
    if !class.anti_self_adjoint || !class.unitary {
        return Err(Error::InvalidComplexStructure(format!(
            "anti self-adjoint: {}, unitary: {}",
            class.anti_self_adjoint, class.unitary
        )));
    }
    Ok(())
}

/// Projection P±(x) = ½(x ∓ Jxι) onto H±^{Jι}.
///
/// J must be anti self-adjoint and unitary within `tol` (scaled by the
/// dimension internally, as in [`QMatrix::classify`]).
pub fn project_pm(
    x: &QVector,
    j: &QMatrix,
    iota: &ImaginaryUnit,
    sign: Sign,
    tol: f64,
) -> Result<QVector> {
    check_complex_structure(j, tol)?;
    let jxi = j.apply(x)?.scale_right(&iota.quaternion());
    let half = 0.5;
    Ok(match sign {
        Sign::Plus => x.sub(&jxi).scale(half),
        Sign::Minus => x.add(&jxi).scale(half),
    })
}

/// A C_ι-orthonormal basis of the slice subspace H+^{Jι}.
#[derive(Debug, Clone)]
pub struct SliceBasis {
    iota: ImaginaryUnit,
    j_matrix: QMatrix,
    plus_vectors: Vec<QVector>,
}

impl SliceBasis {
    pub fn iota(&self) -> &ImaginaryUnit {
        &self.iota
    }

    pub fn j_matrix(&self) -> &QMatrix {
        &self.j_matrix
    }

    pub fn plus_vectors(&self) -> &[QVector] {
        &self.plus_vectors
    }

    /// The companion basis {bȷ} of H−^{Jι}, for ȷ ⊥ ι.
    pub fn minus_vectors(&self) -> Vec<QVector> {
        let jay = self.iota.orthogonal_unit().quaternion();
        self.plus_vectors
            .iter()
            .map(|b| b.scale_right(&jay))
            .collect()
    }
}

/// Builds a C_ι-orthonormal basis of H+^{Jι} for an anti self-adjoint
/// unitary J.
///
/// Candidates are the standard basis columns followed by their right
/// multiples by ȷ; each is projected by P+ and the results are
/// orthonormalized over C_ι until n vectors survive. H+^{Jι} has C_ι
/// dimension n, so fewer than n survivors indicates a numerical failure.
pub fn slice_basis(j: &QMatrix, iota: &ImaginaryUnit, tol: f64) -> Result<SliceBasis> {
    check_complex_structure(j, tol)?;
    let n = j.rows();
    let jay = iota.orthogonal_unit().quaternion();
    let scalars = Scalars::Complex(*iota);

    let mut kept: Vec<QVector> = Vec::with_capacity(n);
    'candidates: for idx in 0..2 * n {
        if kept.len() == n {
            break;
        }
        let cand = if idx < n {
            QVector::basis(n, idx)
        } else {
            QVector::basis(n, idx - n).scale_right(&jay)
        };
        let projected = {
            let jxi = j.apply(&cand)?.scale_right(&iota.quaternion());
            cand.sub(&jxi).scale(0.5)
        };
        if projected.norm() < 1e-8 {
            continue;
        }
        // orthonormalize against what we already kept, over C_ι
        let mut w = projected;
        for _pass in 0..2 {
            for u in &kept {
                let c = scalars.coefficient(&u.inner(&w)?);
                w = w.sub(&u.scale_right(&c));
            }
            if w.norm() < 1e-8 {
                continue 'candidates;
            }
        }
        kept.push(w.scale(1.0 / w.norm()));
    }

    if kept.len() != n {
        return Err(Error::Internal(format!(
            "slice basis construction produced {} of {} vectors",
            kept.len(),
            n
        )));
    }
    Ok(SliceBasis {
        iota: *iota,
        j_matrix: j.clone(),
        plus_vectors: kept,
    })
}
