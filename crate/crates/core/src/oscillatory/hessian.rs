//! Mixed second derivatives of the phase Φ(x, t, ξ) = ⟨x, Aξ⟩ + t|x + ξ|
//! in closed form, and the fold-singularity check on the degenerate set of
//! the x–ξ block.
//!
//! With b = x + ξ and B = |b|, the 3×2 array of mixed derivatives
//! ∂²Φ/∂(x₁,x₂,t)∂(ξ₁,ξ₂) is
//!
//! ```text
//! [ a11 + t b₂²/B³     a12 - t b₁b₂/B³ ]
//! [ a21 - t b₁b₂/B³    a22 + t b₁²/B³  ]
//! [ b₁/B               b₂/B            ]
//! ```
//!
//! and the three 2×2 minors have the closed forms checked below against
//! finite differences.

use crate::error::Error;
use crate::matrix::{symmetric_part, Matrix2};
use crate::Result;

/// Mixed-derivative array and its three 2×2 determinants.
#[derive(Debug, Clone)]
pub struct MixedHessian {
    /// Rows: x₁, x₂, t; columns: ξ₁, ξ₂.
    pub rows: [[f64; 2]; 3],
    /// det of the (x₁,x₂) block: det(A) + (t/B³)·⟨(A+Aᵀ)/2·b, b⟩.
    pub det_xx: f64,
    /// det of the (x₁,t) block: (1/B)(a11·b₂ - a12·b₁ + t·b₂/B).
    pub det_x1t: f64,
    /// det of the (x₂,t) block: (1/B)(a21·b₂ - a22·b₁ - t·b₁/B).
    pub det_x2t: f64,
}

/// Closed-form mixed Hessian at displacement b = x + ξ and time t.
pub fn mixed_hessian(a: &Matrix2, b: [f64; 2], t: f64) -> Result<MixedHessian> {
    let bn2 = b[0] * b[0] + b[1] * b[1];
    if bn2 <= 0.0 {
        return Err(Error::Degenerate("mixed Hessian undefined at b = 0".into()));
    }
    let bn = bn2.sqrt();
    let b3 = bn * bn2;
    let rows = [
        [a.a11 + t * b[1] * b[1] / b3, a.a12 - t * b[0] * b[1] / b3],
        [a.a21 - t * b[0] * b[1] / b3, a.a22 + t * b[0] * b[0] / b3],
        [b[0] / bn, b[1] / bn],
    ];
    let s = symmetric_part(a).scale(0.5);
    let sb = s.apply(b);
    let det_xx = a.det() + t * (sb[0] * b[0] + sb[1] * b[1]) / b3;
    let det_x1t = (a.a11 * b[1] - a.a12 * b[0] + t * b[1] / bn) / bn;
    let det_x2t = (a.a21 * b[1] - a.a22 * b[0] - t * b[0] / bn) / bn;
    Ok(MixedHessian {
        rows,
        det_xx,
        det_x1t,
        det_x2t,
    })
}

/// Gradient in b of det_xx (equal for the x- and ξ-sides since the
/// determinant depends on b = x + ξ only):
/// ∂ᵢ det = t·[2B²(Sb)ᵢ - 3bᵢ⟨Sb, b⟩]/B⁵ with S = (A+Aᵀ)/2.
pub fn grad_det_xx(a: &Matrix2, b: [f64; 2], t: f64) -> Result<[f64; 2]> {
    let bn2 = b[0] * b[0] + b[1] * b[1];
    if bn2 <= 0.0 {
        return Err(Error::Degenerate("gradient undefined at b = 0".into()));
    }
    let b5 = bn2 * bn2 * bn2.sqrt();
    let s = symmetric_part(a).scale(0.5);
    let sb = s.apply(b);
    let q = sb[0] * b[0] + sb[1] * b[1];
    Ok([
        t * (2.0 * bn2 * sb[0] - 3.0 * b[0] * q) / b5,
        t * (2.0 * bn2 * sb[1] - 3.0 * b[1] * q) / b5,
    ])
}

/// Classification of a configuration by the x–ξ block of the mixed Hessian.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FoldKind {
    /// Smallest singular value above tolerance: no degeneracy.
    NonDegenerate,
    /// Rank-one degeneracy with both transversal derivatives nonzero.
    TwoSidedFold,
    /// Rank-one degeneracy but at least one transversal derivative
    /// vanishes.
    OneSidedOrWorse,
    /// Both singular values below tolerance.
    DegenerateBeyondFold,
}

/// Fold-check outcome at (A, b, t).
#[derive(Debug, Clone)]
pub struct FoldReport {
    pub kind: FoldKind,
    pub det_xx: f64,
    /// Singular values of the x–ξ block, largest first.
    pub sigma: [f64; 2],
    /// Unit right/left kernel vectors (sign gauge: first nonzero component
    /// positive). Present only for rank-one degeneracies.
    pub kernel_right: Option<[f64; 2]>,
    pub kernel_left: Option<[f64; 2]>,
    /// Directional derivatives of det_xx along the kernel vectors scaled
    /// to unit first component (the transversality quantities).
    pub transversal_right: Option<f64>,
    pub transversal_left: Option<f64>,
}

fn unit_perp(v: [f64; 2]) -> [f64; 2] {
    let n = (v[0] * v[0] + v[1] * v[1]).sqrt();
    [-v[1] / n, v[0] / n]
}

fn gauge_first_positive(v: [f64; 2]) -> [f64; 2] {
    let lead = if v[0].abs() > 1e-12 { v[0] } else { v[1] };
    if lead < 0.0 {
        [-v[0], -v[1]]
    } else {
        v
    }
}

/// Scale a unit vector to |first component| = 1 when possible; this is the
/// normalization under which the transversal derivatives are reported.
fn first_component_normalized(v: [f64; 2]) -> [f64; 2] {
    if v[0].abs() > 1e-6 {
        [v[0] / v[0].abs(), v[1] / v[0].abs()]
    } else {
        v
    }
}

/// Detect a fold of the x–ξ mixed-Hessian block at (A, b, t).
///
/// When the block drops rank (σ_min < tol), the right/left kernel
/// directions are computed and det_xx is differentiated along them; a
/// two-sided fold needs both derivatives bounded away from zero.
pub fn fold_check(a: &Matrix2, b: [f64; 2], t: f64, tol: f64) -> Result<FoldReport> {
    let mh = mixed_hessian(a, b, t)?;
    let m = Matrix2::new(mh.rows[0][0], mh.rows[0][1], mh.rows[1][0], mh.rows[1][1]);
    let sv = m.singular_values();
    if sv[1] >= tol {
        return Ok(FoldReport {
            kind: FoldKind::NonDegenerate,
            det_xx: mh.det_xx,
            sigma: sv,
            kernel_right: None,
            kernel_left: None,
            transversal_right: None,
            transversal_left: None,
        });
    }
    if sv[0] < tol {
        return Ok(FoldReport {
            kind: FoldKind::DegenerateBeyondFold,
            det_xx: mh.det_xx,
            sigma: sv,
            kernel_right: None,
            kernel_left: None,
            transversal_right: None,
            transversal_left: None,
        });
    }
    // Rank one: the right kernel is orthogonal to the dominant row, the
    // left kernel orthogonal to the dominant column.
    let rows = [[m.a11, m.a12], [m.a21, m.a22]];
    let cols = [[m.a11, m.a21], [m.a12, m.a22]];
    let row = if rows[0][0] * rows[0][0] + rows[0][1] * rows[0][1]
        >= rows[1][0] * rows[1][0] + rows[1][1] * rows[1][1]
    {
        rows[0]
    } else {
        rows[1]
    };
    let col = if cols[0][0] * cols[0][0] + cols[0][1] * cols[0][1]
        >= cols[1][0] * cols[1][0] + cols[1][1] * cols[1][1]
    {
        cols[0]
    } else {
        cols[1]
    };
    let v = gauge_first_positive(unit_perp(row));
    let u = gauge_first_positive(unit_perp(col));
    let grad = grad_det_xx(a, b, t)?;
    let va = first_component_normalized(v);
    let ua = first_component_normalized(u);
    let dv = va[0] * grad[0] + va[1] * grad[1];
    let du = ua[0] * grad[0] + ua[1] * grad[1];
    let floor = 1e-8 * (1.0 + grad[0].abs() + grad[1].abs());
    let kind = if dv.abs() > floor && du.abs() > floor {
        FoldKind::TwoSidedFold
    } else {
        FoldKind::OneSidedOrWorse
    };
    Ok(FoldReport {
        kind,
        det_xx: mh.det_xx,
        sigma: sv,
        kernel_right: Some(v),
        kernel_left: Some(u),
        transversal_right: Some(dv),
        transversal_left: Some(du),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::SplitRng;

    /// Φ(x, t, ξ) = ⟨x, Aξ⟩ + t|x + ξ| evaluated directly.
    fn phase(a: &Matrix2, x: [f64; 2], t: f64, xi: [f64; 2]) -> f64 {
        let axi = a.apply(xi);
        let b = [x[0] + xi[0], x[1] + xi[1]];
        x[0] * axi[0] + x[1] * axi[1] + t * (b[0] * b[0] + b[1] * b[1]).sqrt()
    }

    /// Central finite-difference mixed second derivative ∂²Φ/∂p∂ξⱼ where p
    /// is x₁, x₂ or t.
    fn fd_mixed(a: &Matrix2, b: [f64; 2], t: f64, p: usize, j: usize) -> f64 {
        // Evaluate at x = b/2, ξ = b/2 so that x + ξ = b.
        let h = 1e-5;
        let x0 = [b[0] / 2.0, b[1] / 2.0];
        let xi0 = [b[0] / 2.0, b[1] / 2.0];
        let eval = |dp: f64, dj: f64| {
            let mut x = x0;
            let mut t1 = t;
            match p {
                0 => x[0] += dp,
                1 => x[1] += dp,
                _ => t1 += dp,
            }
            let mut xi = xi0;
            xi[j] += dj;
            phase(a, x, t1, xi)
        };
        (eval(h, h) - eval(h, -h) - eval(-h, h) + eval(-h, -h)) / (4.0 * h * h)
    }

    #[test]
    fn closed_forms_match_finite_differences() {
        let mut rng = SplitRng::new(17, "hessian-fd", 0);
        for _ in 0..100 {
            let a = Matrix2::new(
                rng.next_signed(),
                rng.next_signed(),
                rng.next_signed(),
                rng.next_signed(),
            );
            let ang = rng.next_f64() * std::f64::consts::TAU;
            let r = 0.5 + 1.5 * rng.next_f64();
            let b = [r * ang.cos(), r * ang.sin()];
            let t = 0.5 + 1.5 * rng.next_f64();
            let mh = mixed_hessian(&a, b, t).unwrap();
            for p in 0..3 {
                for j in 0..2 {
                    let fd = fd_mixed(&a, b, t, p, j);
                    let cf = mh.rows[p][j];
                    assert!(
                        (fd - cf).abs() <= 1e-6 * (1.0 + cf.abs()),
                        "entry ({p},{j}): fd {fd} vs closed {cf}"
                    );
                }
            }
            // Determinants of the assembled rows agree with the closed forms.
            let det2 = |r1: [f64; 2], r2: [f64; 2]| r1[0] * r2[1] - r1[1] * r2[0];
            assert!((det2(mh.rows[0], mh.rows[1]) - mh.det_xx).abs() < 1e-10);
            assert!((det2(mh.rows[0], mh.rows[2]) - mh.det_x1t).abs() < 1e-10);
            assert!((det2(mh.rows[1], mh.rows[2]) - mh.det_x2t).abs() < 1e-10);
        }
    }

    #[test]
    fn quarter_turn_has_unit_determinant() {
        let e = Matrix2::e();
        let mut rng = SplitRng::new(19, "unit-det", 0);
        for _ in 0..50 {
            let b = [rng.next_signed() * 2.0, rng.next_signed() * 2.0];
            if b[0] * b[0] + b[1] * b[1] < 0.01 {
                continue;
            }
            let t = 3.0 * rng.next_signed();
            let mh = mixed_hessian(&e, b, t).unwrap();
            assert!((mh.det_xx - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn off_diagonal_symmetric_degenerates_simultaneously() {
        // A = [[0,c],[c,0]] at |b₁| = |b₂| = 1, t = √2·c·sign(b₂/b₁): all
        // three minors vanish.
        for &c in &[0.5, 1.0, -2.0] {
            let a = Matrix2::sym_off(c);
            for &b in &[[1.0, 1.0], [1.0, -1.0], [-1.0, 1.0], [-1.0, -1.0]] {
                let sign = (b[1] / b[0]).signum();
                let t = 2f64.sqrt() * c * sign;
                let mh = mixed_hessian(&a, b, t).unwrap();
                assert!(mh.det_xx.abs() < 1e-10, "det_xx {}", mh.det_xx);
                assert!(mh.det_x1t.abs() < 1e-10, "det_x1t {}", mh.det_x1t);
                assert!(mh.det_x2t.abs() < 1e-10, "det_x2t {}", mh.det_x2t);
            }
        }
    }

    #[test]
    fn grad_det_matches_finite_differences() {
        let mut rng = SplitRng::new(29, "grad-fd", 0);
        let h = 1e-5;
        for _ in 0..100 {
            let a = Matrix2::new(
                rng.next_signed(),
                rng.next_signed(),
                rng.next_signed(),
                rng.next_signed(),
            );
            let ang = rng.next_f64() * std::f64::consts::TAU;
            let r = 0.5 + 1.5 * rng.next_f64();
            let b = [r * ang.cos(), r * ang.sin()];
            let t = 0.5 + 1.5 * rng.next_f64();
            let g = grad_det_xx(&a, b, t).unwrap();
            for i in 0..2 {
                let mut bp = b;
                bp[i] += h;
                let mut bm = b;
                bm[i] -= h;
                let fd = (mixed_hessian(&a, bp, t).unwrap().det_xx
                    - mixed_hessian(&a, bm, t).unwrap().det_xx)
                    / (2.0 * h);
                assert!(
                    (fd - g[i]).abs() <= 1e-6 * (1.0 + g[i].abs()),
                    "component {i}: fd {fd} vs closed {}",
                    g[i]
                );
            }
        }
    }

    #[test]
    fn shear_fold_point() {
        // A = [[1,c],[0,1]], b = (0,1), t = -1: block [[0,c],[0,1]] with
        // kernels (1,0) and (-1,c)/|(-1,c)|; transversal derivatives
        // c·t·b₂³/B⁵ and -2c·t·b₂³/B⁵.
        for &c in &[0.5, 1.0, 2.0] {
            let a = Matrix2::shear(c);
            let b = [0.0, 1.0];
            let t = -1.0;
            let rep = fold_check(&a, b, t, 1e-6).unwrap();
            assert_eq!(rep.kind, FoldKind::TwoSidedFold);
            let v = rep.kernel_right.unwrap();
            assert!((v[0].abs() - 1.0).abs() < 1e-3 && v[1].abs() < 1e-3);
            let u = rep.kernel_left.unwrap();
            let n = (1.0 + c * c).sqrt();
            assert!((u[0].abs() - 1.0 / n).abs() < 1e-3);
            assert!((u[1].abs() - c / n).abs() < 1e-3);
            let dv = rep.transversal_right.unwrap();
            let du = rep.transversal_left.unwrap();
            let expect_v = c * t; // c·t·b₂³/B⁵ at b=(0,1)
            let expect_u = -2.0 * c * t;
            assert!((dv.abs() - expect_v.abs()).abs() < 0.05 * expect_v.abs());
            assert!((du.abs() - expect_u.abs()).abs() < 0.05 * expect_u.abs());
        }
    }

    #[test]
    fn quarter_turn_never_folds() {
        let e = Matrix2::e();
        let mut rng = SplitRng::new(37, "no-fold", 0);
        for _ in 0..100 {
            let ang = rng.next_f64() * std::f64::consts::TAU;
            let r = 0.5 + 1.5 * rng.next_f64();
            let b = [r * ang.cos(), r * ang.sin()];
            let t = 3.0 * rng.next_signed();
            let rep = fold_check(&e, b, t, 1e-6).unwrap();
            assert_eq!(rep.kind, FoldKind::NonDegenerate);
        }
    }
}
