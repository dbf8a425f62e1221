//! Discretized annulus and tube averages along tilted planes, and their
//! maximal functions over dilations/rotations.
//!
//! The base average reads |f| at `(x - ty, x₃ - ⟨A(x), ty⟩)` over annulus
//! quadrature nodes `y`; the tube version rotates a 1×δ tube instead of
//! dilating an annulus.

use crate::grid::{Grid3, ScalarField3};
use crate::matrix::{orthogonal_conjugate, Matrix2};
use crate::sampler::{AnnulusSpec, TubeSpec};
use crate::Result;
use rayon::prelude::*;

/// Plane assignment x ↦ span{(y, ⟨A(x), y⟩)} through each base point.
#[derive(Debug, Clone, Copy)]
pub struct VariablePlaneMap {
    pub a: Matrix2,
}

impl VariablePlaneMap {
    pub fn new(a: Matrix2) -> Self {
        VariablePlaneMap { a }
    }

    /// Vertical shift ⟨A(x), y⟩ of the plane over displacement y.
    pub fn shift(&self, x: [f64; 2], y: [f64; 2]) -> f64 {
        let ax = self.a.apply(x);
        ax[0] * y[0] + ax[1] * y[1]
    }
}

/// Sorted positive dilation values.
#[derive(Debug, Clone)]
pub struct DilationSet {
    pub values: Vec<f64>,
}

impl DilationSet {
    /// Geometric spacing, default window [1/2, 2] with 64 samples.
    pub fn geometric(count: usize, t_min: f64, t_max: f64) -> Self {
        assert!(count >= 1 && t_min > 0.0 && t_max >= t_min);
        let values = if count == 1 {
            vec![t_min]
        } else {
            (0..count)
                .map(|i| t_min * (t_max / t_min).powf(i as f64 / (count - 1) as f64))
                .collect()
        };
        DilationSet { values }
    }

    pub fn default_window() -> Self {
        DilationSet::geometric(64, 0.5, 2.0)
    }
}

/// Rotation angles in [0, 2π).
#[derive(Debug, Clone)]
pub struct RotationSet {
    pub values: Vec<f64>,
}

impl RotationSet {
    pub fn uniform(count: usize) -> Self {
        assert!(count >= 1);
        RotationSet {
            values: (0..count)
                .map(|i| std::f64::consts::TAU * i as f64 / count as f64)
                .collect(),
        }
    }
}

/// Mean of |f| over the dilated annulus on the tilted plane at (x, x₃).
pub fn annulus_average(
    f: &ScalarField3,
    a: &Matrix2,
    nodes: &[([f64; 2], f64)],
    area: f64,
    t: f64,
    x: [f64; 2],
    x3: f64,
) -> f64 {
    debug_assert!(t > 0.0);
    let ax = a.apply(x);
    let mut acc = 0.0;
    for (y, w) in nodes {
        let ty = [t * y[0], t * y[1]];
        let shift = ax[0] * ty[0] + ax[1] * ty[1];
        acc += w * f.sample([x[0] - ty[0], x[1] - ty[1], x3 - shift]).abs();
    }
    acc / area
}

/// Mean of |f| over the rotated tube on the tilted plane at (x, x₃).
pub fn nikodym_average(
    f: &ScalarField3,
    a: &Matrix2,
    spec: &TubeSpec,
    theta: f64,
    x: [f64; 2],
    x3: f64,
) -> f64 {
    let ax = a.apply(x);
    let mut acc = 0.0;
    for (y, w) in spec.nodes(theta) {
        let shift = ax[0] * y[0] + ax[1] * y[1];
        acc += w * f.sample([x[0] - y[0], x[1] - y[1], x3 - shift]).abs();
    }
    acc / spec.area()
}

/// Pointwise sup over the dilation set, evaluated on `eval_grid`.
pub fn annulus_maximal(
    f: &ScalarField3,
    a: &Matrix2,
    spec: &AnnulusSpec,
    dilations: &DilationSet,
    eval_grid: Grid3,
) -> ScalarField3 {
    let nodes = spec.nodes();
    let area = spec.area();
    let n = eval_grid.len();
    let ny = eval_grid.points[1];
    let nz = eval_grid.points[2];
    let values: Vec<f64> = (0..n)
        .into_par_iter()
        .map(|idx| {
            let i = idx / (ny * nz);
            let j = (idx / nz) % ny;
            let k = idx % nz;
            let x = [eval_grid.coord(0, i), eval_grid.coord(1, j)];
            let x3 = eval_grid.coord(2, k);
            dilations
                .values
                .iter()
                .map(|&t| annulus_average(f, a, &nodes, area, t, x, x3))
                .fold(0.0f64, f64::max)
        })
        .collect();
    ScalarField3 {
        grid: eval_grid,
        values,
    }
}

/// Pointwise sup over the rotation set, evaluated on `eval_grid`.
pub fn nikodym_maximal(
    f: &ScalarField3,
    a: &Matrix2,
    spec: &TubeSpec,
    rotations: &RotationSet,
    eval_grid: Grid3,
) -> ScalarField3 {
    let n = eval_grid.len();
    let ny = eval_grid.points[1];
    let nz = eval_grid.points[2];
    let values: Vec<f64> = (0..n)
        .into_par_iter()
        .map(|idx| {
            let i = idx / (ny * nz);
            let j = (idx / nz) % ny;
            let k = idx % nz;
            let x = [eval_grid.coord(0, i), eval_grid.coord(1, j)];
            let x3 = eval_grid.coord(2, k);
            rotations
                .values
                .iter()
                .map(|&theta| nikodym_average(f, a, spec, theta, x, x3))
                .fold(0.0f64, f64::max)
        })
        .collect();
    ScalarField3 {
        grid: eval_grid,
        values,
    }
}

/// Change of variables x → Qx: returns f̃(x, x₃) = f(Qx, x₃) resampled on
/// the same grid together with à = QᵀAQ, so averages of f at (Qx, x₃)
/// match averages of f̃ at (x, x₃) up to interpolation error.
pub fn conjugation_transport(
    f: &ScalarField3,
    a: &Matrix2,
    q: &Matrix2,
) -> Result<(ScalarField3, Matrix2)> {
    let a_tilde = orthogonal_conjugate(a, q)?;
    let g = f.grid;
    let q = *q;
    let values: Vec<f64> = (0..g.len())
        .map(|idx| {
            let nz = g.points[2];
            let ny = g.points[1];
            let i = idx / (ny * nz);
            let j = (idx / nz) % ny;
            let k = idx % nz;
            let x = [g.coord(0, i), g.coord(1, j)];
            let qx = q.apply(x);
            f.sample([qx[0], qx[1], g.coord(2, k)])
        })
        .collect();
    Ok((ScalarField3 { grid: g, values }, a_tilde))
}

/// Planar annulus average of one z-slice: the flat-case (A = 0) baseline,
/// computed through an independent 2-D bilinear path with the same
/// quadrature nodes.
pub fn euclidean_annulus_average(
    f: &ScalarField3,
    iz: usize,
    nodes: &[([f64; 2], f64)],
    area: f64,
    t: f64,
    x: [f64; 2],
) -> f64 {
    let mut acc = 0.0;
    for (y, w) in nodes {
        acc += w * f.sample_in_plane(iz, x[0] - t * y[0], x[1] - t * y[1]).abs();
    }
    acc / area
}

/// Third-slot maps of the class-reduced averages: after the shear
/// substitution f(x, x₃) = g(x, x₃ - q(x)) that straightens each canonical
/// matrix, the annulus average of f becomes an average of g with one of
/// these vertical displacements.
#[derive(Debug, Clone, Copy)]
pub enum ReducedShift {
    /// A = s·[[1, c], [0, 1]] with shear q(x) = s|x|²/2:
    /// displacement s·t²|y|²/2 + s·c·x₂·t·y₁.
    ShearFull { s: f64, c: f64 },
    /// A = [[0, c], [0, 0]] (no shear): displacement c·x₂·t·y₁.
    Nilpotent { c: f64 },
    /// A = s·I with shear q(x) = s|x|²/2: displacement s·t²|y|²/2.
    Scalar { s: f64 },
}

impl ReducedShift {
    pub fn displacement(&self, x2: f64, t: f64, y: [f64; 2]) -> f64 {
        let y_sq = y[0] * y[0] + y[1] * y[1];
        match *self {
            ReducedShift::ShearFull { s, c } => {
                s * t * t * y_sq / 2.0 + s * c * x2 * t * y[0]
            }
            ReducedShift::Nilpotent { c } => c * x2 * t * y[0],
            ReducedShift::Scalar { s } => s * t * t * y_sq / 2.0,
        }
    }

    /// The shear q(x) = s|x|²/2 applied to the input field (zero for the
    /// nilpotent class).
    pub fn shear_coefficient(&self) -> f64 {
        match *self {
            ReducedShift::ShearFull { s, .. } => s,
            ReducedShift::Nilpotent { .. } => 0.0,
            ReducedShift::Scalar { s } => s,
        }
    }

    /// Dilation solving the vanishing of the displacement's mean value at
    /// (x₂, x₃): the explicit choice that makes the average large.
    /// Returns `None` when no positive dilation exists.
    pub fn explicit_dilation(&self, x2: f64, x3: f64) -> Option<f64> {
        match *self {
            ReducedShift::ShearFull { s, c } => {
                // s t²/2 + s c x₂ t = x₃.
                let disc = s * s * c * c * x2 * x2 + 2.0 * s * x3;
                if disc < 0.0 || s == 0.0 {
                    return None;
                }
                let t = (-s * c * x2 + disc.sqrt()) / s;
                (t > 0.0).then_some(t)
            }
            ReducedShift::Nilpotent { c } => {
                let denom = c * x2;
                if denom == 0.0 {
                    return None;
                }
                let t = x3 / denom;
                (t > 0.0).then_some(t)
            }
            ReducedShift::Scalar { s } => {
                let v = 2.0 * x3 / s;
                (v > 0.0).then(|| v.sqrt())
            }
        }
    }
}

/// Average of g over the annulus with the reduced vertical displacement:
/// (1/|S_δ|) Σ w·|g(x - ty, x₃ - displacement)|.
pub fn reduced_witness_average(
    g: &ScalarField3,
    shift: &ReducedShift,
    nodes: &[([f64; 2], f64)],
    area: f64,
    t: f64,
    x: [f64; 2],
    x3: f64,
) -> f64 {
    let mut acc = 0.0;
    for (y, w) in nodes {
        let d = shift.displacement(x[1], t, *y);
        acc += w
            * g.sample([x[0] - t * y[0], x[1] - t * y[1], x3 - d])
                .abs();
    }
    acc / area
}
