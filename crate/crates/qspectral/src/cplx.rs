//! Bridge between quaternionic vectors and their complex coordinates.
//!
//! A quaternionic vector u = a + bȷ (a, b entrywise in C_ι) corresponds to
//! the complex 2n-vector φ(u) = (a, −conj b), chosen so that
//! χ(T)φ(u) = φ(Tu). Right multiplication by ȷ becomes the antilinear
//! structure map Ω(v₁, v₂) = (conj v₂, −conj v₁) with Ω² = −1, and
//! ⟨u|u'⟩ has C_ι part ⟨φu|φu'⟩ and ȷ part −⟨φu|Ωφu'⟩. Eigen- and null-
//! spaces of χ images are Ω-invariant, which is what lets complex
//! eigenvector columns be paired back into quaternionic orthonormal bases.

use crate::error::{Error, Result};
use crate::hilbert::QVector;
use crate::quaternion::SliceFrame;
use nalgebra::{Complex, DMatrix, DVector};

pub type C64 = Complex<f64>;

/// φ(u): complex coordinates of a quaternionic vector in the given frame.
#[cfg_attr(not(test), allow(dead_code))]
pub fn qvec_to_cvec(u: &QVector, frame: &SliceFrame) -> DVector<C64> {
    let n = u.len();
    let mut v = DVector::<C64>::zeros(2 * n);
    for m in 0..n {
        let [a0, a1, a2, a3] = frame.coordinates(&u.get(m));
        v[m] = C64::new(a0, a1);
        // −conj(a2 + a3 i)
        v[n + m] = C64::new(-a2, a3);
    }
    v
}

/// φ⁻¹(v): quaternionic vector from complex coordinates.
pub fn cvec_to_qvec(v: &DVector<C64>, frame: &SliceFrame) -> QVector {
    let n = v.len() / 2;
    let mut u = QVector::zeros(n);
    for m in 0..n {
        let a = v[m];
        let b = -v[n + m].conj();
        u.set(m, frame.assemble([a.re, a.im, b.re, b.im]));
    }
    u
}

/// The antilinear structure map Ω (right multiplication by ȷ in φ
/// coordinates).
pub fn omega(v: &DVector<C64>) -> DVector<C64> {
    let n = v.len() / 2;
    let mut w = DVector::<C64>::zeros(2 * n);
    for m in 0..n {
        w[m] = v[n + m].conj();
        w[n + m] = -v[m].conj();
    }
    w
}

/// Pairs complex-orthonormal columns spanning an Ω-invariant subspace into
/// ℍ-orthonormal quaternionic vectors (half as many).
///
/// Greedy: take the first column w, emit φ⁻¹(w), remove span{w, Ωw} from
/// the rest, re-orthonormalize, repeat. An odd count at any stage violates
/// the quaternionic pairing structure and is reported as an internal error.
pub fn pair_into_qvectors(columns: &[DVector<C64>], frame: &SliceFrame) -> Result<Vec<QVector>> {
    let mut basis: Vec<DVector<C64>> = columns.to_vec();
    let mut out = Vec::with_capacity(columns.len() / 2);
    while !basis.is_empty() {
        if basis.len() == 1 {
            return Err(Error::Internal(
                "odd number of complex directions cannot pair into quaternionic vectors".into(),
            ));
        }
        let w = basis[0].clone();
        let ow = omega(&w);
        out.push(cvec_to_qvec(&w, frame));

        let mut next: Vec<DVector<C64>> = Vec::with_capacity(basis.len() - 2);
        for v in basis.iter().skip(1) {
            let mut t = v.clone();
            for _pass in 0..2 {
                let c1 = w.dotc(&t);
                t -= w.scale_complex(c1);
                let c2 = ow.dotc(&t);
                t -= ow.scale_complex(c2);
                for u in &next {
                    let c = u.dotc(&t);
                    t -= u.scale_complex(c);
                }
            }
            let norm = t.norm();
            if norm > 1e-6 {
                next.push(t.unscale(norm));
            }
        }
        if next.len() != basis.len() - 2 {
            return Err(Error::Internal(format!(
                "pairing removed {} directions instead of 2",
                basis.len() - next.len()
            )));
        }
        basis = next;
    }
    Ok(out)
}

trait ScaleComplex {
    fn scale_complex(&self, c: C64) -> DVector<C64>;
}

impl ScaleComplex for DVector<C64> {
    fn scale_complex(&self, c: C64) -> DVector<C64> {
        self.map(|x| x * c)
    }
}

/// Largest singular value; 0 for an empty matrix.
pub fn largest_singular_value(m: &DMatrix<C64>) -> f64 {
    if m.nrows() == 0 || m.ncols() == 0 {
        return 0.0;
    }
    m.clone()
        .singular_values()
        .iter()
        .fold(0.0_f64, |a, &b| a.max(b))
}

/// Right singular vectors with singular value ≤ `threshold`.
pub fn nullspace(m: &DMatrix<C64>, threshold: f64) -> Vec<DVector<C64>> {
    let svd = m.clone().svd(false, true);
    let v_t = svd.v_t.expect("SVD requested right singular vectors");
    let mut cols = Vec::new();
    for (k, &sigma) in svd.singular_values.iter().enumerate() {
        if sigma <= threshold {
            cols.push(v_t.row(k).conjugate().transpose());
        }
    }
    cols
}

/// Eigenvalues of a Hermitian matrix (input symmetrized first).
pub fn hermitian_eigenvalues(m: &DMatrix<C64>) -> Vec<f64> {
    let h = (m + m.adjoint()).unscale(2.0);
    h.symmetric_eigenvalues().iter().copied().collect()
}

/// Hermitian eigendecomposition, eigenvalues ascending, unitary columns.
pub fn hermitian_eigen(m: &DMatrix<C64>) -> (Vec<f64>, DMatrix<C64>) {
    let h = (m + m.adjoint()).unscale(2.0);
    let se = h.symmetric_eigen();
    let n = se.eigenvalues.len();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| {
        se.eigenvalues[a]
            .partial_cmp(&se.eigenvalues[b])
            .expect("NaN eigenvalue")
    });
    let vals: Vec<f64> = order.iter().map(|&k| se.eigenvalues[k]).collect();
    let mut vecs = DMatrix::<C64>::zeros(n, n);
    for (dst, &src) in order.iter().enumerate() {
        vecs.set_column(dst, &se.eigenvectors.column(src));
    }
    (vals, vecs)
}

/// U diag(vals) U^H.
pub fn assemble_hermitian(vals: &[f64], vecs: &DMatrix<C64>) -> DMatrix<C64> {
    let n = vals.len();
    let mut d = DMatrix::<C64>::zeros(n, n);
    for (k, &v) in vals.iter().enumerate() {
        d[(k, k)] = C64::new(v, 0.0);
    }
    vecs * d * vecs.adjoint()
}

/// All eigenvalues of a general complex matrix, via the Schur form.
pub fn schur_eigenvalues(m: &DMatrix<C64>) -> Result<Vec<C64>> {
    let n = m.nrows();
    if n == 0 {
        return Ok(Vec::new());
    }
    let schur = m
        .clone()
        .try_schur(1e-13, 0)
        .ok_or_else(|| Error::Eigensolver("Schur iteration did not converge".into()))?;
    let (_q, t) = schur.unpack();
    Ok((0..n).map(|k| t[(k, k)]).collect())
}

/// Eigendecomposition of a (numerically) normal complex matrix with an
/// exactly unitary eigenvector matrix.
///
/// Splits S = H + iK into the commuting Hermitian pair H = (S+S*)/2,
/// K = (S−S*)/(2i), diagonalizes H, clusters its eigenvalues, and refines
/// every nontrivial cluster by the projected K. Eigenvalues are Rayleigh
/// quotients of the final columns; ordering is by (Re, Im) of the H/K
/// stages, hence deterministic.
pub fn normal_complex_eigen(s: &DMatrix<C64>) -> Result<(Vec<C64>, DMatrix<C64>)> {
    let n = s.nrows();
    if n != s.ncols() {
        return Err(Error::NotSquare {
            rows: n,
            cols: s.ncols(),
        });
    }
    if n == 0 {
        return Ok((Vec::new(), DMatrix::zeros(0, 0)));
    }
    let h = (s + s.adjoint()).unscale(2.0);
    let k = (s - s.adjoint()).map(|x| x * C64::new(0.0, -0.5));

    let (hvals, mut u) = hermitian_eigen(&h);
    let scale = (s.norm() / (n as f64).sqrt()).max(f64::MIN_POSITIVE);
    let tau = 1e-7 * scale;

    // consecutive clustering of the sorted H eigenvalues
    let mut start = 0;
    while start < n {
        let mut end = start + 1;
        while end < n && hvals[end] - hvals[end - 1] <= tau {
            end += 1;
        }
        let p = end - start;
        if p > 1 {
            let w = u.columns(start, p).into_owned();
            let m = w.adjoint() * &k * &w;
            let (_kvals, v) = hermitian_eigen(&m);
            let refined = w * v;
            for (offset, col) in refined.column_iter().enumerate() {
                u.set_column(start + offset, &col);
            }
        }
        start = end;
    }

    let mut lambdas = Vec::with_capacity(n);
    for col in u.column_iter() {
        let col = col.into_owned();
        let sv = s * &col;
        lambdas.push(col.dotc(&sv));
    }
    Ok((lambdas, u))
}
