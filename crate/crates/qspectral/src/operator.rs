//! Right ℍ-linear operators on H^n as quaternionic matrices.
//!
//! A matrix acts by (Tu)_m = Σ_k T_{mk} u_k, which commutes with right
//! scalar multiplication. The adjoint is the conjugate transpose, and the
//! complex adjoint image χ(T) — the 2n×2n complex matrix of the blocks
//! [[A, B], [−conj B, conj A]] for the entrywise split T = A + Bȷ over a
//! slice frame — carries every spectral computation: it is an injective
//! *-homomorphism, so norms, eigenvalues and functional calculus transfer.
//!
//! Operators here are everywhere defined (the domain is all of H^n);
//! rectangular matrices exist only for `apply` and the norm — the spectral
//! operations require square inputs.

use crate::cplx::{self, C64};
use crate::error::{Error, Result};
use crate::hilbert::QVector;
use crate::quaternion::{ImaginaryUnit, Quaternion, SliceFrame};
use nalgebra::DMatrix;

/// A quaternionic matrix, row-major. Square except where noted.
#[derive(Debug, Clone, PartialEq)]
pub struct QMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Quaternion>,
}

impl QMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![Quaternion::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Quaternion::one());
        }
        m
    }

    pub fn diagonal(entries: &[Quaternion]) -> Self {
        let n = entries.len();
        let mut m = Self::zeros(n, n);
        for (i, q) in entries.iter().enumerate() {
            m.set(i, i, *q);
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Quaternion>>) -> Result<Self> {
        if rows.is_empty() {
            return Err(Error::DimensionMismatch("empty matrix".into()));
        }
        let cols = rows[0].len();
        if cols == 0 || rows.iter().any(|r| r.len() != cols) {
            return Err(Error::DimensionMismatch("ragged matrix rows".into()));
        }
        let r = rows.len();
        Ok(Self {
            rows: r,
            cols,
            data: rows.into_iter().flatten().collect(),
        })
    }

    /// Matrix whose m-th column is the m-th vector.
    pub fn from_columns(cols: &[QVector]) -> Result<Self> {
        if cols.is_empty() {
            return Err(Error::DimensionMismatch("empty matrix".into()));
        }
        let rows = cols[0].len();
        if cols.iter().any(|c| c.len() != rows) {
            return Err(Error::DimensionMismatch("ragged matrix columns".into()));
        }
        let mut m = Self::zeros(rows, cols.len());
        for (j, c) in cols.iter().enumerate() {
            for i in 0..rows {
                m.set(i, j, c.get(i));
            }
        }
        Ok(m)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub(crate) fn require_square(&self) -> Result<usize> {
        if !self.is_square() {
            return Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        Ok(self.rows)
    }

    pub fn get(&self, r: usize, c: usize) -> Quaternion {
        self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, q: Quaternion) {
        self.data[r * self.cols + c] = q;
    }

    pub fn column(&self, c: usize) -> QVector {
        QVector::new((0..self.rows).map(|r| self.get(r, c)).collect())
    }

    /// True iff every off-diagonal entry is exactly zero.
    pub fn is_diagonal(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|r| (0..self.cols).all(|c| r == c || self.get(r, c).is_zero()))
    }

    pub fn diagonal_entries(&self) -> Vec<Quaternion> {
        (0..self.rows.min(self.cols))
            .map(|i| self.get(i, i))
            .collect()
    }

    /// Matrix action on a vector.
    pub fn apply(&self, u: &QVector) -> Result<QVector> {
        if u.len() != self.cols {
            return Err(Error::DimensionMismatch(format!(
                "applying {}x{} matrix to vector of length {}",
                self.rows,
                self.cols,
                u.len()
            )));
        }
        let mut out = QVector::zeros(self.rows);
        for r in 0..self.rows {
            let mut acc = Quaternion::zero();
            for c in 0..self.cols {
                acc = acc + self.get(r, c) * u.get(c);
            }
            out.set(r, acc);
        }
        Ok(out)
    }

    pub fn matmul(&self, other: &QMatrix) -> Result<QMatrix> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "product of {}x{} and {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = QMatrix::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            for c in 0..other.cols {
                let mut acc = Quaternion::zero();
                for k in 0..self.cols {
                    acc = acc + self.get(r, k) * other.get(k, c);
                }
                out.set(r, c, acc);
            }
        }
        Ok(out)
    }

    pub fn add(&self, other: &QMatrix) -> Result<QMatrix> {
        self.zip(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &QMatrix) -> Result<QMatrix> {
        self.zip(other, |a, b| a - b)
    }

    fn zip(
        &self,
        other: &QMatrix,
        f: impl Fn(Quaternion, Quaternion) -> Quaternion,
    ) -> Result<QMatrix> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::DimensionMismatch(format!(
                "combining {}x{} and {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(QMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| f(*a, *b))
                .collect(),
        })
    }

    /// Multiplies every entry by a real scalar (right real multiple Tr).
    pub fn scale(&self, s: f64) -> QMatrix {
        QMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|q| q.scale(s)).collect(),
        }
    }

    /// Adjoint T*: conjugate transpose. ⟨T*u|v⟩ = ⟨u|Tv⟩.
    pub fn adjoint(&self) -> QMatrix {
        let mut out = QMatrix::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                out.set(c, r, self.get(r, c).conj());
            }
        }
        out
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|q| q.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Operator norm ‖T‖ = sup ‖Tu‖/‖u‖, the largest singular value of χ(T).
    ///
    /// Strictly diagonal matrices short-circuit to the largest entry
    /// modulus, which is the exact answer (each diagonal entry contributes a
    /// 2×2 block |q|·unitary to χ).
    pub fn operator_norm(&self) -> f64 {
        if self.rows == 0 || self.cols == 0 {
            return 0.0;
        }
        if self.is_diagonal() {
            return self
                .diagonal_entries()
                .iter()
                .map(|q| q.norm())
                .fold(0.0, f64::max);
        }
        let chi = self.chi(&ImaginaryUnit::i());
        cplx::largest_singular_value(&chi.matrix)
    }

    /// Δ_q(T) = T² − T(q + q̄) + I|q|². The coefficients are real, so left
    /// and right placement agree.
    pub fn delta_q(&self, q: &Quaternion) -> Result<QMatrix> {
        let n = self.require_square()?;
        let t2 = self.matmul(self)?;
        let linear = self.scale(2.0 * q.re());
        let constant = QMatrix::identity(n).scale(q.norm_sqr());
        t2.sub(&linear)?.add(&constant)
    }

    /// Classification flags of a square matrix at absolute tolerance
    /// `tol` × dimension.
    pub fn classify(&self, tol: f64) -> Result<OperatorClass> {
        let n = self.require_square()?;
        let scaled = tol * n as f64;
        let adj = self.adjoint();
        let normal = self.matmul(&adj)?.sub(&adj.matmul(self)?)?.operator_norm() <= scaled;
        let self_adjoint = self.sub(&adj)?.operator_norm() <= scaled;
        let anti_self_adjoint = self.add(&adj)?.operator_norm() <= scaled;
        let unitary = adj
            .matmul(self)?
            .sub(&QMatrix::identity(n))?
            .operator_norm()
            <= scaled;
        // positivity: self-adjoint with nonnegative (real) spherical
        // eigenvalues, read off the Hermitian χ image
        let positive = self_adjoint && {
            let chi = self.chi(&ImaginaryUnit::i());
            let eigs = cplx::hermitian_eigenvalues(&chi.matrix);
            eigs.iter().all(|&e| e >= -scaled)
        };
        Ok(OperatorClass {
            normal,
            self_adjoint,
            anti_self_adjoint,
            unitary,
            positive,
            tol: scaled,
        })
    }

    /// Complex adjoint image over the slice of ι: split T = A + Bȷ
    /// entrywise (A, B over C_ι, ȷ the frame unit orthogonal to ι) and
    /// assemble [[A, B], [−conj B, conj A]].
    pub fn chi(&self, iota: &ImaginaryUnit) -> ComplexAdjointImage {
        let frame = SliceFrame::new(iota);
        let (m, n) = (self.rows, self.cols);
        let mut out = DMatrix::<C64>::zeros(2 * m, 2 * n);
        for r in 0..m {
            for c in 0..n {
                let [a0, a1, a2, a3] = frame.coordinates(&self.get(r, c));
                let alpha = C64::new(a0, a1);
                let beta = C64::new(a2, a3);
                out[(r, c)] = alpha;
                out[(r, n + c)] = beta;
                out[(m + r, c)] = -beta.conj();
                out[(m + r, n + c)] = alpha.conj();
            }
        }
        ComplexAdjointImage {
            iota: *iota,
            matrix: out,
        }
    }

    /// Square root |S| of S*S: self-adjoint, positive, |S|² = S*S.
    ///
    /// Computed through the Hermitian eigendecomposition of χ(S*S);
    /// eigenvalues below −tol·dim signal a broken positivity precondition.
    pub fn operator_abs(&self, tol: f64) -> Result<QMatrix> {
        let n = self.require_square()?;
        let sts = self.adjoint().matmul(self)?;
        let chi = sts.chi(&ImaginaryUnit::i());
        let (vals, vecs) = cplx::hermitian_eigen(&chi.matrix);
        let peak = vals.iter().fold(0.0_f64, |m, v| m.max(v.abs()));
        let floor = -tol * n as f64 * peak.max(1.0);
        // eigenvalues of S*S at rounding level are kernel directions; taking
        // their square root would turn O(ε) noise into O(√ε) output
        let snap = 2.0 * n as f64 * f64::EPSILON * peak;
        let mut roots = Vec::with_capacity(vals.len());
        for &v in &vals {
            if v < floor {
                return Err(Error::NotPositive { value: v });
            }
            roots.push(if v <= snap { 0.0 } else { v.sqrt() });
        }
        let root_chi = cplx::assemble_hermitian(&roots, &vecs);
        Ok(ComplexAdjointImage {
            iota: chi.iota,
            matrix: root_chi,
        }
        .chi_inverse())
    }
}

/// The 2n×2n complex adjoint image χ(T) for a fixed slice ι.
///
/// χ is multiplicative, *-preserving and isometric for the operator norm;
/// `chi_inverse` recovers T, symmetrizing over the block structure so that
/// near-images round-trip cleanly.
#[derive(Debug, Clone)]
pub struct ComplexAdjointImage {
    pub iota: ImaginaryUnit,
    pub matrix: DMatrix<C64>,
}

impl ComplexAdjointImage {
    pub fn chi_inverse(&self) -> QMatrix {
        let frame = SliceFrame::new(&self.iota);
        let m = self.matrix.nrows() / 2;
        let n = self.matrix.ncols() / 2;
        let mut out = QMatrix::zeros(m, n);
        for r in 0..m {
            for c in 0..n {
                // average the two copies of each block
                let alpha = (self.matrix[(r, c)] + self.matrix[(m + r, n + c)].conj()) * 0.5;
                let beta = (self.matrix[(r, n + c)] - self.matrix[(m + r, c)].conj()) * 0.5;
                out.set(r, c, frame.assemble([alpha.re, alpha.im, beta.re, beta.im]));
            }
        }
        out
    }
}

/// Smallest eigenvalue of the Hermitian part of a χ image; the positivity
/// witness for self-adjoint operators.
pub fn hermitian_min_eigenvalue(chi: &ComplexAdjointImage) -> f64 {
    cplx::hermitian_eigenvalues(&chi.matrix)
        .iter()
        .fold(f64::INFINITY, |a, &b| a.min(b))
}

/// Flags produced by [`QMatrix::classify`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OperatorClass {
    pub normal: bool,
    pub self_adjoint: bool,
    pub anti_self_adjoint: bool,
    pub unitary: bool,
    pub positive: bool,
    /// The dimension-scaled absolute tolerance that was applied.
    pub tol: f64,
}
