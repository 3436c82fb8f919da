//! Spectral theory of right ℍ-linear operators on finite-dimensional
//! quaternionic Hilbert spaces.
//!
//! The crate models H^n over the quaternions with right scalar
//! multiplication and provides, for quaternionic matrices:
//!
//! - spherical point spectra as circular sets (conjugation classes encoded
//!   by real part and imaginary modulus),
//! - the A+JB splitting of a normal operator into commuting self-adjoint,
//!   positive, and anti self-adjoint unitary parts,
//! - slice restriction to the complex subspace H+^{Jι} and the spectral
//!   decomposition T = Σ z λ_z ⟨z|·⟩ of normal operators, together with its
//!   converse (synthesis from a basis and an eigenvalue map),
//! - a compact-operator simulator: finite-rank head plus vanishing
//!   eigenvalue tail, truncated to matrices with explicit tail bounds.
//!
//! Everything is finite-dimensional: infinite compact operators appear only
//! through their truncations.

pub mod compact;
pub mod corpus;
mod cplx;
pub mod error;
pub mod hilbert;
pub mod json;
pub mod operator;
pub mod quaternion;
pub mod spectral;
pub mod verify;

pub use error::{Error, Result};
pub use hilbert::{
    gram_residual, gram_schmidt, left_mul, left_mul_matrix, project_pm, slice_basis, HilbertBasis,
    QVector, Scalars, Sign, SliceBasis,
};
pub use operator::{ComplexAdjointImage, OperatorClass, QMatrix};
pub use quaternion::{
    circularize, CircularPoint, CircularSet, Half, ImaginaryUnit, Quaternion, SliceFrame,
    DEFAULT_TOL,
};
pub use spectral::{
    ajb_decompose, build_j_from_basis, canonicalize, complex_restriction, eigensphere_kernel,
    point_spectrum, spectral_decomposition, spectral_map_check, spectral_radius, synthesize,
    AjbDecomposition, SliceRestriction, SpectralDecomposition, SphericalSpectrum,
};
