//! Quaternion algebra, the sphere of imaginary units, and circular sets.
//!
//! A quaternion is written q = w + xi + yj + zk. Conjugation classes
//! {λ⁻¹qλ : λ ≠ 0} are determined by the pair (Re q, |Im q|); a
//! [`CircularPoint`] stores exactly that pair plus a multiplicity, and a
//! [`CircularSet`] is a deduplicated, ordered family of such points. This
//! canonical encoding is what makes spectra comparable by two reals instead
//! of by quaternion samples.

use crate::error::{Error, Result};
use std::ops::{Add, Mul, Neg, Sub};

/// Default absolute tolerance for similarity and circular-set comparisons.
pub const DEFAULT_TOL: f64 = 1e-9;

/// An element of the quaternion division algebra.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Quaternion {
    /// Real component.
    pub w: f64,
    /// Component along i.
    pub x: f64,
    /// Component along j.
    pub y: f64,
    /// Component along k.
    pub z: f64,
}

impl Quaternion {
    pub const fn new(w: f64, x: f64, y: f64, z: f64) -> Self {
        Self { w, x, y, z }
    }

    pub const fn zero() -> Self {
        Self::new(0.0, 0.0, 0.0, 0.0)
    }

    pub const fn one() -> Self {
        Self::new(1.0, 0.0, 0.0, 0.0)
    }

    pub const fn i() -> Self {
        Self::new(0.0, 1.0, 0.0, 0.0)
    }

    pub const fn j() -> Self {
        Self::new(0.0, 0.0, 1.0, 0.0)
    }

    pub const fn k() -> Self {
        Self::new(0.0, 0.0, 0.0, 1.0)
    }

    /// Embeds a real number.
    pub const fn real(w: f64) -> Self {
        Self::new(w, 0.0, 0.0, 0.0)
    }

    pub const fn from_array(a: [f64; 4]) -> Self {
        Self::new(a[0], a[1], a[2], a[3])
    }

    pub const fn to_array(self) -> [f64; 4] {
        [self.w, self.x, self.y, self.z]
    }

    /// Real part Re q.
    pub fn re(&self) -> f64 {
        self.w
    }

    /// Imaginary part as a quaternion (w stripped).
    pub fn im(&self) -> Quaternion {
        Quaternion::new(0.0, self.x, self.y, self.z)
    }

    /// |Im q|, the modulus of the imaginary part.
    pub fn im_norm(&self) -> f64 {
        (self.x * self.x + self.y * self.y + self.z * self.z).sqrt()
    }

    /// Conjugate q̄ = w − xi − yj − zk.
    pub fn conj(&self) -> Quaternion {
        Quaternion::new(self.w, -self.x, -self.y, -self.z)
    }

    pub fn norm_sqr(&self) -> f64 {
        self.w * self.w + self.x * self.x + self.y * self.y + self.z * self.z
    }

    /// |q| = √(q q̄).
    pub fn norm(&self) -> f64 {
        self.norm_sqr().sqrt()
    }

    /// q⁻¹ = q̄ / |q|²; the zero quaternion has no inverse.
    pub fn inverse(&self) -> Result<Quaternion> {
        let n2 = self.norm_sqr();
        if n2 == 0.0 {
            return Err(Error::ZeroDivision);
        }
        Ok(self.conj().scale(1.0 / n2))
    }

    /// Multiplies every component by a real scalar.
    pub fn scale(&self, s: f64) -> Quaternion {
        Quaternion::new(self.w * s, self.x * s, self.y * s, self.z * s)
    }

    pub fn is_zero(&self) -> bool {
        self.norm_sqr() == 0.0
    }

    /// Euclidean 4-space dot product; {1, ι, ȷ, κ} frames are orthonormal
    /// for it, which is what the slice coordinate extraction relies on.
    pub fn dot(&self, other: &Quaternion) -> f64 {
        self.w * other.w + self.x * other.x + self.y * other.y + self.z * other.z
    }

    /// Membership of p and q in the same conjugation class:
    /// |Re p − Re q| ≤ tol and ||Im p| − |Im q|| ≤ tol.
    pub fn is_similar(&self, other: &Quaternion, tol: f64) -> bool {
        (self.re() - other.re()).abs() <= tol && (self.im_norm() - other.im_norm()).abs() <= tol
    }
}

impl Add for Quaternion {
    type Output = Quaternion;
    fn add(self, rhs: Quaternion) -> Quaternion {
        Quaternion::new(
            self.w + rhs.w,
            self.x + rhs.x,
            self.y + rhs.y,
            self.z + rhs.z,
        )
    }
}

impl Sub for Quaternion {
    type Output = Quaternion;
    fn sub(self, rhs: Quaternion) -> Quaternion {
        Quaternion::new(
            self.w - rhs.w,
            self.x - rhs.x,
            self.y - rhs.y,
            self.z - rhs.z,
        )
    }
}

impl Neg for Quaternion {
    type Output = Quaternion;
    fn neg(self) -> Quaternion {
        self.scale(-1.0)
    }
}

/// Hamilton product. Noncommutative; |pq| = |p||q|.
impl Mul for Quaternion {
    type Output = Quaternion;
    fn mul(self, rhs: Quaternion) -> Quaternion {
        let (a0, a1, a2, a3) = (self.w, self.x, self.y, self.z);
        let (b0, b1, b2, b3) = (rhs.w, rhs.x, rhs.y, rhs.z);
        Quaternion::new(
            a0 * b0 - a1 * b1 - a2 * b2 - a3 * b3,
            a0 * b1 + a1 * b0 + a2 * b3 - a3 * b2,
            a0 * b2 - a1 * b3 + a2 * b0 + a3 * b1,
            a0 * b3 + a1 * b2 - a2 * b1 + a3 * b0,
        )
    }
}

/// A point of the sphere 𝕊 = {q : q² = −1} of imaginary units.
///
/// Stored exactly normalized: the constructor snaps the real part to zero and
/// rescales, rejecting inputs that are off the sphere beyond tolerance.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ImaginaryUnit(Quaternion);

impl ImaginaryUnit {
    /// Validates (within `tol`) and normalizes a candidate unit imaginary.
    pub fn new(q: Quaternion, tol: f64) -> Result<Self> {
        let norm = q.norm();
        if q.re().abs() > tol || (norm - 1.0).abs() > tol {
            return Err(Error::InvalidImaginaryUnit { re: q.re(), norm });
        }
        let im = q.im();
        let im_norm = im.norm();
        if im_norm == 0.0 {
            return Err(Error::InvalidImaginaryUnit { re: q.re(), norm });
        }
        Ok(Self(im.scale(1.0 / im_norm)))
    }

    pub fn i() -> Self {
        Self(Quaternion::i())
    }

    pub fn j() -> Self {
        Self(Quaternion::j())
    }

    pub fn k() -> Self {
        Self(Quaternion::k())
    }

    /// The underlying quaternion ι (unit, purely imaginary).
    pub fn quaternion(&self) -> Quaternion {
        self.0
    }

    /// A unit imaginary orthogonal to this one, produced by one
    /// Gram–Schmidt step on {i, j, k}.
    pub fn orthogonal_unit(&self) -> ImaginaryUnit {
        for cand in [Quaternion::i(), Quaternion::j(), Quaternion::k()] {
            let proj = self.0.scale(cand.dot(&self.0));
            let v = cand - proj;
            let n = v.norm();
            if n > 0.5 {
                return ImaginaryUnit(v.scale(1.0 / n));
            }
        }
        // The projections of i, j, k onto a plane cannot all be short.
        unreachable!("no orthogonal imaginary unit found")
    }
}

/// Orthonormal imaginary frame (ι, ȷ, κ) with ȷ ⊥ ι and κ = ιȷ.
///
/// Fixes the slice C_ι = span{1, ι} and the complementary directions used to
/// split quaternions as α + βȷ with α, β ∈ C_ι.
#[derive(Debug, Clone, Copy)]
pub struct SliceFrame {
    pub iota: Quaternion,
    pub jay: Quaternion,
    pub kay: Quaternion,
}

impl SliceFrame {
    pub fn new(iota: &ImaginaryUnit) -> Self {
        let i = iota.quaternion();
        let j = iota.orthogonal_unit().quaternion();
        let k = i * j;
        Self {
            iota: i,
            jay: j,
            kay: k,
        }
    }

    /// Coordinates (a0, a1, a2, a3) of q in the orthonormal basis
    /// {1, ι, ȷ, κ}, so that q = a0 + a1 ι + a2 ȷ + a3 κ.
    pub fn coordinates(&self, q: &Quaternion) -> [f64; 4] {
        [q.w, q.dot(&self.iota), q.dot(&self.jay), q.dot(&self.kay)]
    }

    /// Rebuilds a quaternion from frame coordinates.
    pub fn assemble(&self, a: [f64; 4]) -> Quaternion {
        Quaternion::real(a[0]) + self.iota.scale(a[1]) + self.jay.scale(a[2]) + self.kay.scale(a[3])
    }

    /// Embeds a complex number α = re + im·i as re + im·ι ∈ C_ι.
    pub fn embed_complex(&self, re: f64, im: f64) -> Quaternion {
        Quaternion::real(re) + self.iota.scale(im)
    }

    /// The C_ι coordinates of q, plus the residual |ȷ,κ components|.
    pub fn slice_coordinates(&self, q: &Quaternion) -> (f64, f64, f64) {
        let a = self.coordinates(q);
        (a[0], a[1], (a[2] * a[2] + a[3] * a[3]).sqrt())
    }
}

/// Which half of the slice C_ι a class representative should land in.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Half {
    Upper,
    Lower,
}

/// One conjugation class {re + u·im : u ∈ 𝕊}, with multiplicity.
///
/// im = 0 encodes the real singleton class.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CircularPoint {
    pub re: f64,
    pub im: f64,
    pub mult: usize,
}

impl CircularPoint {
    /// Canonical class of a quaternion: (Re q, |Im q|), with |Im q| ≤ tol
    /// snapped to exactly zero so real classes print as real.
    pub fn from_quaternion(q: &Quaternion, tol: f64) -> Self {
        let im = q.im_norm();
        Self {
            re: q.re(),
            im: if im <= tol { 0.0 } else { im },
            mult: 1,
        }
    }

    /// Modulus |q| of any member of the class.
    pub fn modulus(&self) -> f64 {
        (self.re * self.re + self.im * self.im).sqrt()
    }

    /// The representative re ± ι·im of the class inside C_ι.
    pub fn representative(&self, iota: &ImaginaryUnit, half: Half) -> Quaternion {
        let sign = match half {
            Half::Upper => 1.0,
            Half::Lower => -1.0,
        };
        Quaternion::real(self.re) + iota.quaternion().scale(sign * self.im)
    }

    fn close_to(&self, other: &CircularPoint, tol: f64) -> bool {
        (self.re - other.re).abs() <= tol && (self.im - other.im).abs() <= tol
    }
}

/// A finite union of conjugation classes, ordered lexicographically by
/// (re, im) and deduplicated within tolerance.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct CircularSet {
    points: Vec<CircularPoint>,
}

impl CircularSet {
    pub fn points(&self) -> &[CircularPoint] {
        &self.points
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Number of classes (not counting multiplicity).
    pub fn len(&self) -> usize {
        self.points.len()
    }

    /// Sum of multiplicities.
    pub fn total_multiplicity(&self) -> usize {
        self.points.iter().map(|p| p.mult).sum()
    }

    /// Largest modulus over the classes; 0 for the empty set.
    pub fn max_modulus(&self) -> f64 {
        self.points.iter().map(|p| p.modulus()).fold(0.0, f64::max)
    }

    /// Smallest modulus over the classes; 0 for the empty set.
    pub fn min_modulus(&self) -> f64 {
        if self.points.is_empty() {
            return 0.0;
        }
        self.points
            .iter()
            .map(|p| p.modulus())
            .fold(f64::INFINITY, f64::min)
    }

    /// Greedy matching distance: the worst max-coordinate deviation over a
    /// one-to-one matching of equal-multiplicity points, or None when the
    /// class counts or multiplicities cannot match. Matching (rather than
    /// positional comparison) tolerates order flips from coordinate jitter.
    pub fn matching_distance(&self, other: &CircularSet) -> Option<f64> {
        if self.points.len() != other.points.len() {
            return None;
        }
        let mut used = vec![false; other.points.len()];
        let mut worst: f64 = 0.0;
        for p in &self.points {
            let mut best: Option<(usize, f64)> = None;
            for (k, q) in other.points.iter().enumerate() {
                if used[k] || p.mult != q.mult {
                    continue;
                }
                let d = (p.re - q.re).abs().max((p.im - q.im).abs());
                if best.is_none_or(|(_, bd)| d < bd) {
                    best = Some((k, d));
                }
            }
            let (k, d) = best?;
            used[k] = true;
            worst = worst.max(d);
        }
        Some(worst)
    }

    /// Set equality up to `tol` on both coordinates, multiplicities exact.
    pub fn approx_eq(&self, other: &CircularSet, tol: f64) -> bool {
        self.matching_distance(other).is_some_and(|d| d <= tol)
    }

    /// The subset of classes with modulus ≥ threshold.
    pub fn above_modulus(&self, threshold: f64) -> CircularSet {
        CircularSet {
            points: self
                .points
                .iter()
                .copied()
                .filter(|p| p.modulus() >= threshold)
                .collect(),
        }
    }

    /// Drops the zero class (|q| ≤ tol), for "∖ {0}" comparisons.
    pub fn without_zero(&self, tol: f64) -> CircularSet {
        CircularSet {
            points: self
                .points
                .iter()
                .copied()
                .filter(|p| p.modulus() > tol)
                .collect(),
        }
    }
}

/// The unit quaternion μ with μ⁻¹ v̂ μ = ι for a unit imaginary axis v̂:
/// μ = 1 when v̂ = ι, μ = ȷ when v̂ = −ι, and μ = (v̂ + ι)/|v̂ + ι| otherwise
/// (unit imaginaries p, q satisfy p(p + q) = (p + q)q).
pub fn rotation_to_axis(axis: &Quaternion, iota: &ImaginaryUnit) -> Quaternion {
    let iq = iota.quaternion();
    if (*axis - iq).norm() <= 1e-12 {
        return Quaternion::one();
    }
    if (*axis + iq).norm() <= 1e-12 {
        return iota.orthogonal_unit().quaternion();
    }
    let raw = *axis + iq;
    raw.scale(1.0 / raw.norm())
}

/// Circularization of a finite quaternion family: each q maps to its class
/// (Re q, |Im q|), classes within `tol` merge with multiplicities summed.
pub fn circularize(points: &[Quaternion], tol: f64) -> CircularSet {
    let classes: Vec<CircularPoint> = points
        .iter()
        .map(|q| CircularPoint::from_quaternion(q, tol))
        .collect();
    merge_points(classes, tol)
}

/// Merges an already-classified family (multiplicities respected).
pub fn merge_points(mut classes: Vec<CircularPoint>, tol: f64) -> CircularSet {
    classes.sort_by(|a, b| {
        (a.re, a.im)
            .partial_cmp(&(b.re, b.im))
            .expect("NaN in circular point")
    });
    let mut merged: Vec<CircularPoint> = Vec::with_capacity(classes.len());
    for c in classes {
        match merged.last_mut() {
            Some(last) if last.close_to(&c, tol) => last.mult += c.mult,
            _ => merged.push(c),
        }
    }
    CircularSet { points: merged }
}
