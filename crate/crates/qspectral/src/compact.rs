//! Desk-scale stand-ins for infinite-dimensional compact normal operators.
//!
//! A model is a finite-rank normal head plus a parameterized eigenvalue
//! tail λ_n ∈ C_ι whose moduli decrease to zero. Truncating at level N
//! yields the block-diagonal matrix diag(head, λ_1, …, λ_N); the operator
//! it approximates differs from it by the tail norm sup_{n>N} |λ_n|, so
//! truncation sweeps witness the compact-operator laws: the norm equals the
//! largest retained eigenvalue modulus, the smallest retained modulus
//! decays to zero (0 enters the spectrum in the limit), and eigensphere
//! multiplicities stay fixed once revealed.

use crate::error::{Error, Result};
use crate::operator::QMatrix;
use crate::quaternion::{CircularSet, ImaginaryUnit, Quaternion, DEFAULT_TOL};
use crate::spectral::point_spectrum;

/// Default cap on truncation levels, keeping χ eigensolves fast.
pub const MAX_TRUNCATION: usize = 2000;

/// Hard cap on tail enumeration in [`CompactModel::lambda_eps`].
const MAX_LAMBDA_EPS: usize = 1_000_000;

/// Named family of eigenvalue tails.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum TailFamily {
    /// λ_n = c / n.
    Harmonic,
    /// λ_n = c · rⁿ with |r| < 1.
    Geometric { ratio: f64 },
}

/// The tail rule n ↦ λ_n = (c_re + c_im ι)·f(n), moduli non-increasing.
#[derive(Debug, Clone)]
pub struct TailRule {
    pub family: TailFamily,
    pub c_re: f64,
    pub c_im: f64,
    pub slice: ImaginaryUnit,
}

impl TailRule {
    pub fn new(family: TailFamily, c_re: f64, c_im: f64, slice: ImaginaryUnit) -> Result<Self> {
        if let TailFamily::Geometric { ratio } = family {
            if ratio.is_nan() || ratio.abs() >= 1.0 {
                return Err(Error::InvalidParameter(format!(
                    "geometric tail needs |r| < 1, got {ratio}"
                )));
            }
        }
        if !c_re.is_finite() || !c_im.is_finite() {
            return Err(Error::InvalidParameter(
                "non-finite tail coefficient".into(),
            ));
        }
        if c_re == 0.0 && c_im == 0.0 {
            return Err(Error::InvalidParameter("zero tail coefficient".into()));
        }
        Ok(Self {
            family,
            c_re,
            c_im,
            slice,
        })
    }

    fn coefficient(&self) -> Quaternion {
        Quaternion::real(self.c_re) + self.slice.quaternion().scale(self.c_im)
    }

    /// λ_n for n ≥ 1, before any rotation.
    pub fn lambda(&self, n: usize) -> Quaternion {
        let c = self.coefficient();
        match self.family {
            TailFamily::Harmonic => c.scale(1.0 / n as f64),
            TailFamily::Geometric { ratio } => c.scale(ratio.powi(n as i32)),
        }
    }

    /// |λ_n|.
    pub fn modulus(&self, n: usize) -> f64 {
        self.lambda(n).norm()
    }
}

/// Finite-rank head plus vanishing tail, truncated at level N.
#[derive(Debug, Clone)]
pub struct CompactModel {
    head: Option<QMatrix>,
    tail: Option<TailRule>,
    truncation: usize,
    rotation_seed: Option<u64>,
}

/// splitmix64 step, the per-index source of rotation units.
fn splitmix64(state: &mut u64) -> u64 {
    *state = state.wrapping_add(0x9e3779b97f4a7c15);
    let mut z = *state;
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
    z ^ (z >> 31)
}

fn unit_from_bits(bits: [u64; 4]) -> Quaternion {
    let f = |b: u64| (b >> 11) as f64 / (1u64 << 53) as f64 * 2.0 - 1.0;
    let q = Quaternion::new(f(bits[0]), f(bits[1]), f(bits[2]), f(bits[3]));
    let n = q.norm();
    if n < 1e-3 {
        Quaternion::one()
    } else {
        q.scale(1.0 / n)
    }
}

impl CompactModel {
    /// Builds and validates a model. The head, when present, must be square
    /// and normal; at least one of head and tail must be present; the
    /// truncation level is clamped to [1, 2000].
    pub fn new(
        head: Option<QMatrix>,
        tail: Option<TailRule>,
        truncation: usize,
        rotation_seed: Option<u64>,
    ) -> Result<Self> {
        if head.is_none() && tail.is_none() {
            return Err(Error::InvalidParameter(
                "model needs a head or a tail".into(),
            ));
        }
        if truncation == 0 {
            return Err(Error::InvalidParameter(
                "truncation level must be ≥ 1".into(),
            ));
        }
        if truncation > MAX_TRUNCATION {
            return Err(Error::InvalidParameter(format!(
                "truncation level {truncation} exceeds the cap {MAX_TRUNCATION}"
            )));
        }
        if let Some(h) = &head {
            let n = h.require_square()?;
            let class = h.classify(DEFAULT_TOL)?;
            if !class.normal {
                return Err(Error::NotNormal {
                    defect: DEFAULT_TOL * n as f64,
                });
            }
        }
        Ok(Self {
            head,
            tail,
            truncation,
            rotation_seed,
        })
    }

    pub fn head(&self) -> Option<&QMatrix> {
        self.head.as_ref()
    }

    pub fn tail(&self) -> Option<&TailRule> {
        self.tail.as_ref()
    }

    pub fn truncation(&self) -> usize {
        self.truncation
    }

    pub fn rotation_seed(&self) -> Option<u64> {
        self.rotation_seed
    }

    /// Same model truncated at a different level.
    pub fn with_truncation(&self, truncation: usize) -> Result<CompactModel> {
        CompactModel::new(
            self.head.clone(),
            self.tail.clone(),
            truncation,
            self.rotation_seed,
        )
    }

    /// The n-th tail eigenvalue, rotated across its eigensphere when the
    /// model carries a rotation seed. Rotation preserves (Re, |Im|).
    pub fn tail_lambda(&self, n: usize) -> Option<Quaternion> {
        let rule = self.tail.as_ref()?;
        let lambda = rule.lambda(n);
        match self.rotation_seed {
            None => Some(lambda),
            Some(seed) => {
                let mut state = seed ^ (n as u64).wrapping_mul(0xd1342543de82ef95);
                let bits = [
                    splitmix64(&mut state),
                    splitmix64(&mut state),
                    splitmix64(&mut state),
                    splitmix64(&mut state),
                ];
                let mu = unit_from_bits(bits);
                Some(mu.conj() * lambda * mu)
            }
        }
    }

    /// Block-diagonal truncation diag(head, λ_1, …, λ_N); normal by
    /// construction.
    pub fn truncate(&self) -> Result<QMatrix> {
        let head_dim = self.head.as_ref().map_or(0, |h| h.rows());
        let tail_len = if self.tail.is_some() {
            self.truncation
        } else {
            0
        };
        let n = head_dim + tail_len;
        if n == 0 {
            return Err(Error::InvalidParameter("empty truncation".into()));
        }
        let mut out = QMatrix::zeros(n, n);
        if let Some(h) = &self.head {
            for r in 0..head_dim {
                for c in 0..head_dim {
                    out.set(r, c, h.get(r, c));
                }
            }
        }
        for m in 1..=tail_len {
            let lambda = self.tail_lambda(m).expect("tail present");
            out.set(head_dim + m - 1, head_dim + m - 1, lambda);
        }
        Ok(out)
    }

    /// sup of |λ_n| beyond the truncation level (0 without a tail).
    pub fn tail_norm(&self) -> f64 {
        self.tail
            .as_ref()
            .map_or(0.0, |rule| rule.modulus(self.truncation + 1))
    }

    /// The finite set Λ_ε: exactly the model eigenvalues with |λ| ≥ ε.
    ///
    /// Head eigenvalues enter as upper slice representatives with their
    /// multiplicities; the tail is enumerated until its moduli drop below ε.
    pub fn lambda_eps(&self, eps: f64) -> Result<Vec<Quaternion>> {
        if !eps.is_finite() || eps <= 0.0 {
            return Err(Error::InvalidParameter(format!(
                "ε must be positive, got {eps}"
            )));
        }
        let mut out = Vec::new();
        if let Some(h) = &self.head {
            let iota = self.tail.as_ref().map_or(ImaginaryUnit::i(), |r| r.slice);
            let spectrum = point_spectrum(h, &iota, DEFAULT_TOL)?;
            for p in spectrum.points.points() {
                if p.modulus() >= eps {
                    let rep = p.representative(&iota, crate::quaternion::Half::Upper);
                    for _ in 0..p.mult {
                        out.push(rep);
                    }
                }
            }
        }
        if self.tail.is_some() {
            let mut n = 1usize;
            loop {
                let lambda = self.tail_lambda(n).expect("tail present");
                if lambda.norm() < eps {
                    break;
                }
                out.push(lambda);
                n += 1;
                if n > MAX_LAMBDA_EPS {
                    return Err(Error::InvalidParameter(format!(
                        "ε = {eps} retains more than {MAX_LAMBDA_EPS} tail eigenvalues"
                    )));
                }
            }
        }
        Ok(out)
    }
}

/// Spectral summary of one truncation level.
#[derive(Debug, Clone)]
pub struct TruncationReport {
    pub level: usize,
    /// sup |λ_n| over the discarded tail.
    pub tail_norm: f64,
    pub spectrum: CircularSet,
    /// Smallest retained eigenvalue modulus.
    pub min_modulus: f64,
    /// Largest retained eigenvalue modulus.
    pub max_modulus: f64,
    /// Operator norm of the truncated matrix.
    pub norm: f64,
}

/// Outcome of a truncation sweep with the compact-spectral laws checked.
#[derive(Debug, Clone)]
pub struct CompactLawReport {
    pub reports: Vec<TruncationReport>,
    /// max over levels of | ‖T_N‖ − max|λ| |.
    pub norm_law_residual: f64,
    pub norm_law_pass: bool,
    /// min_modulus must not increase under refinement.
    pub min_modulus_monotone: bool,
    /// Classes fully revealed at a level keep their multiplicity later.
    pub multiplicity_stable: bool,
    pub pass: bool,
}

/// Sweeps the model over increasing truncation levels and checks, per
/// level, that the operator norm equals the largest retained eigenvalue
/// modulus within 1e-10, that the smallest retained modulus is
/// non-increasing, and that eigensphere multiplicities above the revealed
/// threshold stay constant across refinements.
pub fn verify_compact_laws(model: &CompactModel, levels: &[usize]) -> Result<CompactLawReport> {
    if levels.is_empty() {
        return Err(Error::InvalidParameter("empty level list".into()));
    }
    if levels.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::InvalidParameter(
            "levels must be strictly increasing".into(),
        ));
    }

    let mut reports = Vec::with_capacity(levels.len());
    for &level in levels {
        let m = model.with_truncation(level)?;
        let t = m.truncate()?;
        let iota = model.tail().map_or(ImaginaryUnit::i(), |r| r.slice);
        let spectrum = point_spectrum(&t, &iota, DEFAULT_TOL)?;
        reports.push(TruncationReport {
            level,
            tail_norm: m.tail_norm(),
            min_modulus: spectrum.points.min_modulus(),
            max_modulus: spectrum.points.max_modulus(),
            norm: t.operator_norm(),
            spectrum: spectrum.points,
        });
    }

    let norm_law_residual = reports
        .iter()
        .map(|r| (r.norm - r.max_modulus).abs())
        .fold(0.0, f64::max);
    let norm_law_pass = norm_law_residual <= 1e-10;
    let min_modulus_monotone = reports
        .windows(2)
        .all(|w| w[1].min_modulus <= w[0].min_modulus + 1e-12);

    // a class with modulus above the tail norm of an earlier level is fully
    // revealed there: later levels must reproduce its multiplicity
    let mut multiplicity_stable = true;
    for w in reports.windows(2) {
        let (earlier, later) = (&w[0], &w[1]);
        for p in earlier.spectrum.points() {
            if p.modulus() <= earlier.tail_norm + 1e-12 {
                continue;
            }
            let matched = later.spectrum.points().iter().any(|q| {
                (q.re - p.re).abs() <= 1e-9 && (q.im - p.im).abs() <= 1e-9 && q.mult == p.mult
            });
            if !matched {
                multiplicity_stable = false;
            }
        }
    }

    let pass = norm_law_pass && min_modulus_monotone && multiplicity_stable;
    Ok(CompactLawReport {
        reports,
        norm_law_residual,
        norm_law_pass,
        min_modulus_monotone,
        multiplicity_stable,
        pass,
    })
}
