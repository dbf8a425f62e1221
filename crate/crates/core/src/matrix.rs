//! 2×2 matrices, their symmetric/skew-symmetric rank classification, and
//! the predicted operator-norm exponents attached to each class.
//!
//! The classification keys on the ranks of `EA + (EA)ᵀ` (with `E` the
//! rotation by π/2) and `A + Aᵀ`, cross-checked against the eigenvalue
//! structure of `A`.

use crate::dense::{sym_extreme_eigenvalue, MatrixD};
use crate::error::Error;
use crate::Result;
use serde::Serialize;
use std::fmt;

/// Relative singular-value cutoff for numeric ranks.
pub const RANK_REL_TOL: f64 = 1e-8;
/// Absolute floor below which a matrix counts as zero.
pub const ZERO_ABS_FLOOR: f64 = 1e-14;
/// Discriminant threshold for detecting a repeated real eigenvalue,
/// scaled by (1 + ‖A‖²).
pub const DISCRIMINANT_TOL: f64 = 1e-10;
/// Orthogonality tolerance for conjugation inputs.
pub const ORTHO_TOL: f64 = 1e-10;

/// Real 2×2 matrix with named entries.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Matrix2 {
    pub a11: f64,
    pub a12: f64,
    pub a21: f64,
    pub a22: f64,
}

impl Matrix2 {
    pub fn new(a11: f64, a12: f64, a21: f64, a22: f64) -> Self {
        Matrix2 { a11, a12, a21, a22 }
    }

    /// Rotation by π/2 counterclockwise.
    pub fn e() -> Self {
        Matrix2::new(0.0, -1.0, 1.0, 0.0)
    }

    pub fn identity() -> Self {
        Matrix2::new(1.0, 0.0, 0.0, 1.0)
    }

    pub fn zero() -> Self {
        Matrix2::new(0.0, 0.0, 0.0, 0.0)
    }

    /// Unipotent shear [[1, c], [0, 1]].
    pub fn shear(c: f64) -> Self {
        Matrix2::new(1.0, c, 0.0, 1.0)
    }

    /// Nilpotent [[0, c], [0, 0]].
    pub fn nilpotent(c: f64) -> Self {
        Matrix2::new(0.0, c, 0.0, 0.0)
    }

    /// Off-diagonal symmetric [[0, c], [c, 0]].
    pub fn sym_off(c: f64) -> Self {
        Matrix2::new(0.0, c, c, 0.0)
    }

    /// Rotation by angle θ.
    pub fn rotation(theta: f64) -> Self {
        let (s, c) = theta.sin_cos();
        Matrix2::new(c, -s, s, c)
    }

    pub fn transpose(&self) -> Self {
        Matrix2::new(self.a11, self.a21, self.a12, self.a22)
    }

    pub fn scale(&self, c: f64) -> Self {
        Matrix2::new(c * self.a11, c * self.a12, c * self.a21, c * self.a22)
    }

    pub fn add(&self, other: &Matrix2) -> Self {
        Matrix2::new(
            self.a11 + other.a11,
            self.a12 + other.a12,
            self.a21 + other.a21,
            self.a22 + other.a22,
        )
    }

    pub fn mul(&self, other: &Matrix2) -> Self {
        Matrix2::new(
            self.a11 * other.a11 + self.a12 * other.a21,
            self.a11 * other.a12 + self.a12 * other.a22,
            self.a21 * other.a11 + self.a22 * other.a21,
            self.a21 * other.a12 + self.a22 * other.a22,
        )
    }

    /// Matrix-vector product A·v.
    pub fn apply(&self, v: [f64; 2]) -> [f64; 2] {
        [
            self.a11 * v[0] + self.a12 * v[1],
            self.a21 * v[0] + self.a22 * v[1],
        ]
    }

    pub fn det(&self) -> f64 {
        self.a11 * self.a22 - self.a12 * self.a21
    }

    pub fn trace(&self) -> f64 {
        self.a11 + self.a22
    }

    pub fn frobenius(&self) -> f64 {
        (self.a11 * self.a11 + self.a12 * self.a12 + self.a21 * self.a21 + self.a22 * self.a22)
            .sqrt()
    }

    pub fn max_abs(&self) -> f64 {
        self.a11
            .abs()
            .max(self.a12.abs())
            .max(self.a21.abs())
            .max(self.a22.abs())
    }

    pub fn is_finite(&self) -> bool {
        self.a11.is_finite() && self.a12.is_finite() && self.a21.is_finite() && self.a22.is_finite()
    }

    /// Singular values, largest first (closed form).
    pub fn singular_values(&self) -> [f64; 2] {
        let f = self.a11 * self.a11
            + self.a12 * self.a12
            + self.a21 * self.a21
            + self.a22 * self.a22;
        let d = self.det().abs();
        let gap = (f * f - 4.0 * d * d).max(0.0).sqrt();
        let s1 = ((f + gap) / 2.0).sqrt();
        let s2 = ((f - gap) / 2.0).max(0.0).sqrt();
        [s1, s2]
    }

    /// Parse "a11 a12 a21 a22" (whitespace or comma separated).
    pub fn parse_entries(text: &str) -> Result<Self> {
        let parts: Vec<&str> = text
            .split(|c: char| c.is_whitespace() || c == ',')
            .filter(|s| !s.is_empty())
            .collect();
        if parts.len() != 4 {
            return Err(Error::invalid(format!(
                "expected 4 matrix entries, found {}",
                parts.len()
            )));
        }
        let mut vals = [0.0f64; 4];
        for (i, p) in parts.iter().enumerate() {
            vals[i] = p
                .parse()
                .map_err(|_| Error::invalid(format!("bad matrix entry {p:?}")))?;
        }
        let m = Matrix2::new(vals[0], vals[1], vals[2], vals[3]);
        if !m.is_finite() {
            return Err(Error::NonFiniteMatrix);
        }
        Ok(m)
    }

    /// Parse a named preset: `E`, `I`, `Ic:<c>`, `NIL:<c>`, `SYM:<c>`,
    /// or raw entries.
    pub fn parse_preset(text: &str) -> Result<Self> {
        let t = text.trim();
        match t {
            "E" => return Ok(Matrix2::e()),
            "I" => return Ok(Matrix2::identity()),
            _ => {}
        }
        if let Some(rest) = t.strip_prefix("Ic:") {
            let c: f64 = rest
                .parse()
                .map_err(|_| Error::invalid(format!("bad shear parameter {rest:?}")))?;
            if c == 0.0 || !c.is_finite() {
                return Err(Error::invalid("Ic:<c> requires nonzero finite c"));
            }
            return Ok(Matrix2::shear(c));
        }
        if let Some(rest) = t.strip_prefix("NIL:") {
            let c: f64 = rest
                .parse()
                .map_err(|_| Error::invalid(format!("bad nilpotent parameter {rest:?}")))?;
            if c == 0.0 || !c.is_finite() {
                return Err(Error::invalid("NIL:<c> requires nonzero finite c"));
            }
            return Ok(Matrix2::nilpotent(c));
        }
        if let Some(rest) = t.strip_prefix("SYM:") {
            let c: f64 = rest
                .parse()
                .map_err(|_| Error::invalid(format!("bad symmetric parameter {rest:?}")))?;
            if c == 0.0 || !c.is_finite() {
                return Err(Error::invalid("SYM:<c> requires nonzero finite c"));
            }
            return Ok(Matrix2::sym_off(c));
        }
        Matrix2::parse_entries(t)
    }
}

impl fmt::Display for Matrix2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[[{}, {}], [{}, {}]]",
            self.a11, self.a12, self.a21, self.a22
        )
    }
}

/// EA + (EA)ᵀ = [[-2·a21, a11-a22], [a11-a22, 2·a12]].
pub fn skew_symmetric_part(a: &Matrix2) -> Matrix2 {
    Matrix2::new(
        -2.0 * a.a21,
        a.a11 - a.a22,
        a.a11 - a.a22,
        2.0 * a.a12,
    )
}

/// A + Aᵀ.
pub fn symmetric_part(a: &Matrix2) -> Matrix2 {
    a.add(&a.transpose())
}

/// Count of singular values exceeding `tol` × (largest singular value);
/// zero when the matrix is zero within the absolute floor.
pub fn numeric_rank(m: &Matrix2, tol: f64) -> usize {
    let sv = m.singular_values();
    if sv[0] < ZERO_ABS_FLOOR {
        return 0;
    }
    sv.iter().filter(|&&s| s > tol * sv[0]).count()
}

/// One eigenvalue as a complex number.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Eigenvalue {
    pub re: f64,
    pub im: f64,
}

impl Eigenvalue {
    pub fn is_real(&self) -> bool {
        self.im == 0.0
    }
}

/// Eigenvalue structure of a 2×2 matrix.
#[derive(Debug, Clone, Serialize)]
pub struct EigenAnalysis {
    /// Both roots of the characteristic polynomial.
    pub values: [Eigenvalue; 2],
    /// Distinct eigenvalues with algebraic multiplicity and eigenspace
    /// dimension (dimension computed only for real eigenvalues).
    pub spectrum: Vec<(Eigenvalue, usize, usize)>,
    /// True when the discriminant is zero within tolerance.
    pub repeated: bool,
}

/// Roots of det(A - λI) = 0 via the quadratic formula, with eigenspace
/// dimensions from the rank of A - λI for repeated real roots.
pub fn eigen_analysis(a: &Matrix2) -> EigenAnalysis {
    let tr = a.trace();
    let det = a.det();
    let disc = tr * tr - 4.0 * det;
    let scale = 1.0 + a.frobenius() * a.frobenius();
    if disc.abs() < DISCRIMINANT_TOL * scale {
        // Repeated real eigenvalue λ = tr/2.
        let lambda = tr / 2.0;
        let shifted = Matrix2::new(a.a11 - lambda, a.a12, a.a21, a.a22 - lambda);
        let geo = 2 - numeric_rank(&shifted, RANK_REL_TOL);
        let ev = Eigenvalue { re: lambda, im: 0.0 };
        EigenAnalysis {
            values: [ev, ev],
            spectrum: vec![(ev, 2, geo)],
            repeated: true,
        }
    } else if disc > 0.0 {
        let s = disc.sqrt();
        let l1 = Eigenvalue { re: (tr + s) / 2.0, im: 0.0 };
        let l2 = Eigenvalue { re: (tr - s) / 2.0, im: 0.0 };
        EigenAnalysis {
            values: [l1, l2],
            spectrum: vec![(l1, 1, 1), (l2, 1, 1)],
            repeated: false,
        }
    } else {
        let s = (-disc).sqrt();
        let l1 = Eigenvalue { re: tr / 2.0, im: s / 2.0 };
        let l2 = Eigenvalue { re: tr / 2.0, im: -s / 2.0 };
        EigenAnalysis {
            values: [l1, l2],
            // Complex eigenspaces are one-dimensional over ℂ.
            spectrum: vec![(l1, 1, 1), (l2, 1, 1)],
            repeated: false,
        }
    }
}

/// Canonical classes keyed by (rank of EA+(EA)ᵀ, rank of A).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum CanonicalClass {
    /// rank(EA+(EA)ᵀ) = 2: distinct eigenvalues.
    SkewRank2,
    /// rank(EA+(EA)ᵀ) = 1, rank(A) = 2: orthogonally similar to a multiple
    /// of the unipotent shear [[1, c], [0, 1]].
    SkewRank1Full,
    /// rank(EA+(EA)ᵀ) = 1, rank(A) = 1: orthogonally similar to a multiple
    /// of [[0, c], [0, 0]].
    SkewRank1Nilpotent,
    /// rank(EA+(EA)ᵀ) = 0: a nonzero multiple of the identity.
    ScalarMultiple,
    /// The zero matrix.
    Zero,
}

impl CanonicalClass {
    pub fn name(&self) -> &'static str {
        match self {
            CanonicalClass::SkewRank2 => "skew-rank-2",
            CanonicalClass::SkewRank1Full => "skew-rank-1-invertible",
            CanonicalClass::SkewRank1Nilpotent => "skew-rank-1-nilpotent",
            CanonicalClass::ScalarMultiple => "scalar-multiple",
            CanonicalClass::Zero => "zero",
        }
    }
}

impl fmt::Display for CanonicalClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Exact rational exponent.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Exponent {
    pub num: i32,
    pub den: i32,
}

impl Exponent {
    pub const ZERO: Exponent = Exponent { num: 0, den: 1 };
    pub const SIXTH: Exponent = Exponent { num: 1, den: 6 };
    pub const QUARTER: Exponent = Exponent { num: 1, den: 4 };
    pub const HALF: Exponent = Exponent { num: 1, den: 2 };

    pub fn as_f64(&self) -> f64 {
        self.num as f64 / self.den as f64
    }
}

impl fmt::Display for Exponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.num == 0 {
            write!(f, "0")
        } else {
            write!(f, "{}/{}", self.num, self.den)
        }
    }
}

/// Full classification record for one matrix.
#[derive(Debug, Clone, Serialize)]
pub struct RankProfile {
    pub rank: usize,
    pub rank_sym: usize,
    pub rank_skw: usize,
    pub eigenvalues: [Eigenvalue; 2],
    /// (eigenvalue, algebraic multiplicity, eigenspace dimension).
    pub eigenspace_dims: Vec<(Eigenvalue, usize, usize)>,
    pub canonical_class: CanonicalClass,
    /// Predicted growth exponent of the annulus maximal norm in 1/δ.
    pub annulus_exponent: Exponent,
    /// Predicted growth exponent of the tube (Nikodym) maximal norm.
    pub nikodym_exponent: Exponent,
}

fn annulus_exponent_for(class: CanonicalClass) -> Exponent {
    match class {
        CanonicalClass::SkewRank2 => Exponent::ZERO,
        CanonicalClass::SkewRank1Full => Exponent::SIXTH,
        CanonicalClass::SkewRank1Nilpotent => Exponent::QUARTER,
        CanonicalClass::ScalarMultiple => Exponent::HALF,
        // Flat case reduces to planar averages with logarithmic growth.
        CanonicalClass::Zero => Exponent::ZERO,
    }
}

fn nikodym_exponent_for(rank_sym: usize, class: CanonicalClass) -> Exponent {
    if class == CanonicalClass::Zero {
        return Exponent::ZERO;
    }
    match rank_sym {
        2 => Exponent::ZERO,
        1 => Exponent::SIXTH,
        _ => Exponent::QUARTER,
    }
}

/// Classify `A` by numeric ranks, cross-checked against its eigenvalue
/// structure. Classification is scale-invariant: the matrix is normalized
/// by its largest entry first.
pub fn classify(a: &Matrix2, tol: f64) -> Result<RankProfile> {
    if !a.is_finite() {
        return Err(Error::NonFiniteMatrix);
    }
    let m = a.max_abs();
    if m < ZERO_ABS_FLOOR {
        let ev = Eigenvalue { re: 0.0, im: 0.0 };
        return Ok(RankProfile {
            rank: 0,
            rank_sym: 0,
            rank_skw: 0,
            eigenvalues: [ev, ev],
            eigenspace_dims: vec![(ev, 2, 2)],
            canonical_class: CanonicalClass::Zero,
            annulus_exponent: Exponent::ZERO,
            nikodym_exponent: Exponent::ZERO,
        });
    }
    // Normalize scale out: exponents depend only on rank data.
    let an = a.scale(1.0 / m);
    let rank = numeric_rank(&an, tol);
    let rank_skw = numeric_rank(&skew_symmetric_part(&an), tol);
    let rank_sym = numeric_rank(&symmetric_part(&an), tol);

    let rank_class = match (rank_skw, rank) {
        (2, _) => CanonicalClass::SkewRank2,
        (1, 2) => CanonicalClass::SkewRank1Full,
        (1, 1) => CanonicalClass::SkewRank1Nilpotent,
        (0, _) => CanonicalClass::ScalarMultiple,
        _ => {
            return Err(Error::Degenerate(format!(
                "unclassifiable rank pattern rank_skw={rank_skw} rank={rank}"
            )))
        }
    };

    let eig = eigen_analysis(&an);
    let eigen_class = if !eig.repeated {
        CanonicalClass::SkewRank2
    } else {
        let (ev, _, geo) = eig.spectrum[0];
        if ev.re.abs() > tol {
            if geo == 1 {
                CanonicalClass::SkewRank1Full
            } else {
                CanonicalClass::ScalarMultiple
            }
        } else if geo == 1 {
            CanonicalClass::SkewRank1Nilpotent
        } else {
            CanonicalClass::Zero
        }
    };

    if rank_class != eigen_class {
        return Err(Error::InconsistentClassification {
            rank_path: rank_class.name(),
            eigen_path: eigen_class.name(),
        });
    }

    // Report eigenvalues of the original (unnormalized) matrix.
    let eig_orig = eigen_analysis(a);
    Ok(RankProfile {
        rank,
        rank_sym,
        rank_skw,
        eigenvalues: eig_orig.values,
        eigenspace_dims: eig_orig.spectrum,
        canonical_class: rank_class,
        annulus_exponent: annulus_exponent_for(rank_class),
        nikodym_exponent: nikodym_exponent_for(rank_sym, rank_class),
    })
}

/// QᵀAQ after verifying QᵀQ = I within `ORTHO_TOL`.
pub fn orthogonal_conjugate(a: &Matrix2, q: &Matrix2) -> Result<Matrix2> {
    let qtq = q.transpose().mul(q);
    let dev = (qtq.a11 - 1.0)
        .abs()
        .max(qtq.a12.abs())
        .max(qtq.a21.abs())
        .max((qtq.a22 - 1.0).abs());
    if dev > ORTHO_TOL {
        return Err(Error::NonOrthogonal {
            deviation: dev,
            tol: ORTHO_TOL,
        });
    }
    Ok(q.transpose().mul(a).mul(q))
}

/// Eigendecomposition of a symmetric 2×2 matrix: returns (c1, c2, Q) with
/// QᵀMQ = diag(c1, c2) and Q orthogonal (columns are eigenvectors).
pub fn sym_eigen_2x2(m: &Matrix2) -> (f64, f64, Matrix2) {
    let a = m.a11;
    let b = 0.5 * (m.a12 + m.a21);
    let c = m.a22;
    if b.abs() < 1e-300 {
        return (a, c, Matrix2::identity());
    }
    let tr = a + c;
    let gap = ((a - c) * (a - c) + 4.0 * b * b).sqrt();
    let l1 = (tr + gap) / 2.0;
    let l2 = (tr - gap) / 2.0;
    // Eigenvector for l1: (b, l1 - a) unless degenerate.
    let (vx, vy) = if (l1 - a).abs() > (l1 - c).abs() {
        (b, l1 - a)
    } else {
        (l1 - c, b)
    };
    let n = (vx * vx + vy * vy).sqrt();
    let (vx, vy) = (vx / n, vy / n);
    (l1, l2, Matrix2::new(vx, -vy, vy, vx))
}

/// Minimum over sampled s ∈ [s_lo, s_hi] of the smallest singular value of
/// Aᵀ - sI. Strictly positive exactly when A has no real eigenvalue in the
/// window (up to the sampling resolution; σ_min is 1-Lipschitz in s).
pub fn complex_eigen_gap(a: &MatrixD, s_lo: f64, s_hi: f64, samples: usize) -> f64 {
    assert!(samples >= 2 && s_hi > s_lo && s_lo > 0.0);
    let n = a.n();
    let at = a.transpose();
    let mut gap = f64::INFINITY;
    for k in 0..samples {
        let s = s_lo + (s_hi - s_lo) * k as f64 / (samples - 1) as f64;
        let mut shifted = at.clone();
        for i in 0..n {
            let v = shifted.get(i, i) - s;
            shifted.set(i, i, v);
        }
        // σ_min² = smallest eigenvalue of MMᵀ.
        let mmt = shifted.mul_transpose();
        let lmin = sym_extreme_eigenvalue(&mmt, false).max(0.0);
        gap = gap.min(lmin.sqrt());
    }
    gap
}

/// Default sampling window and resolution for [`complex_eigen_gap`],
/// covering the dilation-to-radius ratios that occur on the amplitude
/// support.
pub fn complex_eigen_gap_default(a: &MatrixD) -> f64 {
    complex_eigen_gap(a, 0.4, 2.5, 512)
}
