//! Quadrature node sets for the thin annulus and the 1×δ tube, plus the
//! explicit product fields used as lower-bound inputs.

use crate::bump::psi;
use crate::error::Error;
use crate::grid::{Grid3, ScalarField3};
use crate::matrix::CanonicalClass;
use crate::Result;
use std::f64::consts::{PI, TAU};

/// Width-δ annulus of unit radius with a polar product rule.
#[derive(Debug, Clone, Copy)]
pub struct AnnulusSpec {
    pub radius: f64,
    pub delta: f64,
    pub radial: usize,
    pub angular: usize,
}

impl AnnulusSpec {
    /// Default quadrature: 4 radial nodes and max(256, ⌈8π/δ⌉) angular
    /// nodes, oversampling any structure at angular scale δ^(1/3) or finer.
    pub fn with_defaults(delta: f64) -> Result<Self> {
        AnnulusSpec::new(delta, 4, ((8.0 * PI / delta).ceil() as usize).max(256))
    }

    pub fn new(delta: f64, radial: usize, angular: usize) -> Result<Self> {
        if !(delta > 0.0 && delta < 1.0) {
            return Err(Error::invalid("annulus width must lie in (0, 1)"));
        }
        let min_angular = (4.0 * PI / delta).ceil() as usize;
        if angular < min_angular {
            return Err(Error::invalid(format!(
                "annulus at width {delta:e} needs at least {min_angular} angular samples"
            )));
        }
        if radial == 0 {
            return Err(Error::invalid("need at least one radial sample"));
        }
        Ok(AnnulusSpec {
            radius: 1.0,
            delta,
            radial,
            angular,
        })
    }

    /// Exact area 2π·radius·δ.
    pub fn area(&self) -> f64 {
        TAU * self.radius * self.delta
    }

    /// Midpoint-in-radius × uniform-in-angle product nodes with r-Jacobian
    /// weights. Weights sum to the annulus area exactly.
    pub fn nodes(&self) -> Vec<([f64; 2], f64)> {
        let mut out = Vec::with_capacity(self.radial * self.angular);
        let dr = self.delta / self.radial as f64;
        let dtheta = TAU / self.angular as f64;
        for ir in 0..self.radial {
            let r = self.radius - self.delta / 2.0 + (ir as f64 + 0.5) * dr;
            let w = r * dr * dtheta;
            for ia in 0..self.angular {
                let theta = ia as f64 * dtheta;
                out.push(([r * theta.cos(), r * theta.sin()], w));
            }
        }
        out
    }
}

/// Unit-length, width-δ tube centered at the origin, axis along x₁.
#[derive(Debug, Clone, Copy)]
pub struct TubeSpec {
    pub delta: f64,
    pub along: usize,
    pub across: usize,
}

impl TubeSpec {
    pub fn new(delta: f64, along: usize, across: usize) -> Result<Self> {
        if !(delta > 0.0 && delta < 1.0) {
            return Err(Error::invalid("tube width must lie in (0, 1)"));
        }
        if along < 2 || across == 0 {
            return Err(Error::invalid("tube needs at least 2×1 samples"));
        }
        Ok(TubeSpec {
            delta,
            along,
            across,
        })
    }

    pub fn with_defaults(delta: f64) -> Result<Self> {
        TubeSpec::new(delta, 128, 4)
    }

    /// Exact area 1·δ.
    pub fn area(&self) -> f64 {
        self.delta
    }

    /// Midpoint product nodes of the tube rotated by θ; weights sum to δ.
    pub fn nodes(&self, theta: f64) -> Vec<([f64; 2], f64)> {
        let (sin_t, cos_t) = theta.sin_cos();
        let ds = 1.0 / self.along as f64;
        let dw = self.delta / self.across as f64;
        let w = ds * dw;
        let mut out = Vec::with_capacity(self.along * self.across);
        for i in 0..self.along {
            let s = -0.5 + (i as f64 + 0.5) * ds;
            for j in 0..self.across {
                let q = -self.delta / 2.0 + (j as f64 + 0.5) * dw;
                // R_θ (s, q) with columns e(θ), Ee(θ).
                out.push(([s * cos_t - q * sin_t, s * sin_t + q * cos_t], w));
            }
        }
        out
    }
}

/// Per-axis half-widths of the explicit lower-bound input for a class:
/// the field is ψ(u₁/w₁)ψ(u₂/w₂)ψ(u₃/w₃).
pub fn witness_widths(class: CanonicalClass, delta: f64) -> Result<[f64; 3]> {
    match class {
        CanonicalClass::SkewRank1Full => Ok([1.0, 10.0 * delta.cbrt(), 10.0 * delta]),
        CanonicalClass::SkewRank1Nilpotent => {
            Ok([1.0, 10.0 * delta.sqrt(), 10.0 * delta.powf(1.5)])
        }
        CanonicalClass::ScalarMultiple => Ok([10.0, 10.0, 100.0 * delta]),
        other => Err(Error::UnsupportedClass(other.name())),
    }
}

/// Grid sized for the class witness at width δ: extents cover each support
/// with a small margin and each axis resolves its own width.
pub fn witness_grid(class: CanonicalClass, delta: f64, points_per_width: usize) -> Result<Grid3> {
    let w = witness_widths(class, delta)?;
    let margin = 1.05;
    let mut pts = [0usize; 3];
    for ax in 0..3 {
        // 2w spans the support; resolve it with `points_per_width` cells.
        let h = 2.0 * w[ax] / points_per_width as f64;
        pts[ax] = Grid3::points_for_spacing(w[ax] * margin, h);
    }
    Grid3::new([w[0] * margin, w[1] * margin, w[2] * margin], pts)
}

/// Sample the class witness ψ(u₁/w₁)ψ(u₂/w₂)ψ(u₃/w₃) on `grid`.
///
/// Fails when any axis spacing exceeds a quarter of the narrowest support
/// width on that axis.
pub fn witness_field(class: CanonicalClass, delta: f64, grid: Grid3) -> Result<ScalarField3> {
    let w = witness_widths(class, delta)?;
    for ax in 0..3 {
        let required = 2.0 * w[ax] / 4.0;
        if grid.spacing(ax) > required {
            return Err(Error::Resolution {
                axis: ax,
                spacing: grid.spacing(ax),
                required,
            });
        }
    }
    Ok(ScalarField3::from_fn(grid, |x, y, z| {
        psi(x / w[0]) * psi(y / w[1]) * psi(z / w[2])
    }))
}

/// Closed-form L² norm of the witness profile via 1-D quadrature of ψ²
/// (the profile is a tensor product, so the norm factors).
pub fn witness_l2_exact(class: CanonicalClass, delta: f64) -> Result<f64> {
    let w = witness_widths(class, delta)?;
    let n = 20_000;
    let mut psi_sq = 0.0;
    for i in 0..n {
        let u = -1.0 + 2.0 * (i as f64 + 0.5) / n as f64;
        psi_sq += psi(u) * psi(u) * (2.0 / n as f64);
    }
    Ok((psi_sq.powi(3) * w[0] * w[1] * w[2]).sqrt())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn annulus_weight_sum_and_support() {
        let delta = 1.0 / 16.0;
        let spec = AnnulusSpec::new(delta, 4, 256).unwrap();
        let nodes = spec.nodes();
        assert_eq!(nodes.len(), 1024);
        let total: f64 = nodes.iter().map(|(_, w)| w).sum();
        assert!((total - TAU * delta).abs() < 1e-12 * total);
        for (p, _) in &nodes {
            let r = (p[0] * p[0] + p[1] * p[1]).sqrt();
            assert!(r >= 1.0 - delta / 2.0 - 1e-12 && r <= 1.0 + delta / 2.0 + 1e-12);
        }
    }

    #[test]
    fn annulus_odd_integrand_vanishes() {
        let spec = AnnulusSpec::with_defaults(1.0 / 8.0).unwrap();
        let s: f64 = spec.nodes().iter().map(|(p, w)| w * p[0]).sum();
        assert!(s.abs() < 1e-10);
    }

    #[test]
    fn annulus_area_scaling_over_sweep() {
        for j in 2..=6 {
            let delta = 2f64.powi(-j);
            let spec = AnnulusSpec::with_defaults(delta).unwrap();
            let total: f64 = spec.nodes().iter().map(|(_, w)| w).sum();
            assert!((total - spec.area()).abs() < 1e-6 * spec.area());
        }
    }

    #[test]
    fn tube_nodes() {
        let delta = 1.0 / 16.0;
        let spec = TubeSpec::new(delta, 64, 4).unwrap();
        let total: f64 = spec.nodes(0.0).iter().map(|(_, w)| w).sum();
        assert!((total - delta).abs() < 1e-14);
        for (p, _) in spec.nodes(0.0) {
            assert!(p[0].abs() < 0.5 && p[1].abs() < delta / 2.0 + 1e-15);
        }
        // Rotation by π/2 maps nodes through the quarter-turn matrix.
        let straight = spec.nodes(0.0);
        let turned = spec.nodes(std::f64::consts::FRAC_PI_2);
        for ((p, _), (q, _)) in straight.iter().zip(turned.iter()) {
            assert!((q[0] + p[1]).abs() < 1e-12);
            assert!((q[1] - p[0]).abs() < 1e-12);
        }
    }

    #[test]
    fn witness_field_basics() {
        let delta = 1.0 / 16.0;
        for class in [
            CanonicalClass::SkewRank1Full,
            CanonicalClass::SkewRank1Nilpotent,
            CanonicalClass::ScalarMultiple,
        ] {
            let grid = witness_grid(class, delta, 16).unwrap();
            let f = witness_field(class, delta, grid).unwrap();
            // Value 1 at the origin.
            assert!((f.sample([0.0, 0.0, 0.0]) - 1.0).abs() < 1e-12);
            f.validate().unwrap();
        }
    }

    #[test]
    fn witness_l2_bounds() {
        // ∫|g|² = (∫ψ²)³·w₁w₂w₃ is pinched between the flat-region mass
        // and the support volume: C·δ^{4/3} with C ∈ [100, 800] for the
        // invertible shear class, C·δ² for the nilpotent class.
        let delta = 1.0 / 16.0;
        let full = witness_l2_exact(CanonicalClass::SkewRank1Full, delta).unwrap();
        let full_sq_scaled = full * full / (delta.cbrt() * delta);
        assert!(
            (100.0..=800.0).contains(&full_sq_scaled),
            "norm² / δ^(4/3) = {full_sq_scaled}"
        );
        let nil = witness_l2_exact(CanonicalClass::SkewRank1Nilpotent, delta).unwrap();
        let nil_sq_scaled = nil * nil / (delta.sqrt() * delta.powf(1.5));
        assert!((100.0..=800.0).contains(&nil_sq_scaled));
        // Grid norm agrees with the factored quadrature.
        let grid = witness_grid(CanonicalClass::SkewRank1Full, delta, 24).unwrap();
        let f = witness_field(CanonicalClass::SkewRank1Full, delta, grid).unwrap();
        let gnorm = f.l2_norm();
        assert!(
            (gnorm - full).abs() < 0.02 * full,
            "grid {gnorm} vs exact {full}"
        );
    }

    #[test]
    fn witness_resolution_guard() {
        let delta = 1.0 / 1024.0;
        let coarse = Grid3::cube(1.0, 16).unwrap();
        let err = witness_field(CanonicalClass::SkewRank1Full, delta, coarse);
        assert!(err.is_err());
    }
}
