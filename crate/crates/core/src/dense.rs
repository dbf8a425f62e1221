//! Small dense linear algebra: square matrices, Householder
//! tridiagonalization, and Sturm-bisection extreme eigenvalues of symmetric
//! matrices. Used for the d×d eigenvalue-gap probe and as the independent
//! decomposition oracle against which power iteration is checked.

use num_complex::Complex64;

/// Row-major square matrix.
#[derive(Debug, Clone)]
pub struct MatrixD {
    n: usize,
    data: Vec<f64>,
}

impl MatrixD {
    pub fn zeros(n: usize) -> Self {
        MatrixD {
            n,
            data: vec![0.0; n * n],
        }
    }

    pub fn from_rows(rows: &[Vec<f64>]) -> Self {
        let n = rows.len();
        let mut m = MatrixD::zeros(n);
        for (i, r) in rows.iter().enumerate() {
            assert_eq!(r.len(), n);
            m.data[i * n..(i + 1) * n].copy_from_slice(r);
        }
        m
    }

    pub fn from_matrix2(a: &crate::matrix::Matrix2) -> Self {
        MatrixD::from_rows(&[vec![a.a11, a.a12], vec![a.a21, a.a22]])
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: f64) {
        self.data[i * self.n + j] = v;
    }

    pub fn transpose(&self) -> Self {
        let mut t = MatrixD::zeros(self.n);
        for i in 0..self.n {
            for j in 0..self.n {
                t.set(j, i, self.get(i, j));
            }
        }
        t
    }

    /// M Mᵀ (symmetric).
    pub fn mul_transpose(&self) -> Self {
        let n = self.n;
        let mut out = MatrixD::zeros(n);
        for i in 0..n {
            for j in i..n {
                let mut s = 0.0;
                for k in 0..n {
                    s += self.get(i, k) * self.get(j, k);
                }
                out.set(i, j, s);
                out.set(j, i, s);
            }
        }
        out
    }
}

/// Householder reduction of a symmetric matrix to tridiagonal form.
/// Returns (diagonal, subdiagonal).
fn tridiagonalize(sym: &MatrixD) -> (Vec<f64>, Vec<f64>) {
    let n = sym.n;
    let mut a = sym.data.clone();
    let at = |a: &Vec<f64>, i: usize, j: usize| a[i * n + j];
    let mut diag = vec![0.0; n];
    let mut off = vec![0.0; n.saturating_sub(1)];

    for k in 0..n.saturating_sub(2) {
        // Zero out column k below row k+1.
        let mut alpha2 = 0.0;
        for i in (k + 1)..n {
            let v = at(&a, i, k);
            alpha2 += v * v;
        }
        let mut alpha = alpha2.sqrt();
        if alpha < 1e-300 {
            continue;
        }
        if at(&a, k + 1, k) > 0.0 {
            alpha = -alpha;
        }
        // Householder vector v = x - alpha e1, applied as P = I - 2vvᵀ/(vᵀv).
        let mut v = vec![0.0; n];
        v[k + 1] = at(&a, k + 1, k) - alpha;
        for i in (k + 2)..n {
            v[i] = at(&a, i, k);
        }
        let vtv: f64 = v.iter().map(|x| x * x).sum();
        if vtv < 1e-300 {
            continue;
        }
        let beta = 2.0 / vtv;
        // w = beta * A v ; K = beta/2 * vᵀ A v ; A <- A - v wᵀ - w vᵀ + 2K v vᵀ
        let mut w = vec![0.0; n];
        for i in 0..n {
            let mut s = 0.0;
            for j in (k + 1)..n {
                s += at(&a, i, j) * v[j];
            }
            w[i] = beta * s;
        }
        let kfac: f64 = 0.5 * beta * v.iter().zip(w.iter()).map(|(x, y)| x * y).sum::<f64>();
        for i in 0..n {
            w[i] -= kfac * v[i];
        }
        for i in 0..n {
            for j in 0..n {
                a[i * n + j] -= v[i] * w[j] + w[i] * v[j];
            }
        }
    }
    for i in 0..n {
        diag[i] = at(&a, i, i);
    }
    for i in 0..n - 1 {
        off[i] = at(&a, i + 1, i);
    }
    (diag, off)
}

/// Number of eigenvalues of the tridiagonal matrix strictly less than x
/// (Sturm sequence count).
fn sturm_count(diag: &[f64], off: &[f64], x: f64) -> usize {
    let n = diag.len();
    let mut count = 0usize;
    let mut d = diag[0] - x;
    if d < 0.0 {
        count += 1;
    }
    for i in 1..n {
        let o = off[i - 1];
        let denom = if d.abs() < 1e-300 {
            1e-300f64.copysign(if d == 0.0 { 1.0 } else { d })
        } else {
            d
        };
        d = (diag[i] - x) - o * o / denom;
        if d < 0.0 {
            count += 1;
        }
    }
    count
}

/// Largest (or smallest) eigenvalue of a symmetric matrix via Householder
/// tridiagonalization and Sturm bisection. Deterministic; accurate to
/// ~1e-13 relative on the Gershgorin scale.
pub fn sym_extreme_eigenvalue(sym: &MatrixD, largest: bool) -> f64 {
    let n = sym.n;
    assert!(n >= 1);
    if n == 1 {
        return sym.get(0, 0);
    }
    let (diag, off) = tridiagonalize(sym);
    // Gershgorin bounds.
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    for i in 0..n {
        let mut r = 0.0;
        if i > 0 {
            r += off[i - 1].abs();
        }
        if i + 1 < n {
            r += off[i].abs();
        }
        lo = lo.min(diag[i] - r);
        hi = hi.max(diag[i] + r);
    }
    let scale = (hi - lo).max(1e-300);
    let (mut a, mut b) = (lo - 1e-12 * scale, hi + 1e-12 * scale);
    let target = if largest { n - 1 } else { 0 };
    for _ in 0..200 {
        let mid = 0.5 * (a + b);
        if sturm_count(&diag, &off, mid) > target {
            b = mid;
        } else {
            a = mid;
        }
        if b - a <= 1e-14 * scale {
            break;
        }
    }
    0.5 * (a + b)
}

/// Largest eigenvalue of a Hermitian matrix (row-major, n×n) via the real
/// symmetric embedding [[Re, -Im], [Im, Re]], whose spectrum doubles the
/// Hermitian one.
pub fn hermitian_lambda_max(h: &[Complex64], n: usize) -> f64 {
    assert_eq!(h.len(), n * n);
    let mut m = MatrixD::zeros(2 * n);
    for i in 0..n {
        for j in 0..n {
            let z = h[i * n + j];
            m.set(i, j, z.re);
            m.set(i, n + j, -z.im);
            m.set(n + i, j, z.im);
            m.set(n + i, n + j, z.re);
        }
    }
    sym_extreme_eigenvalue(&m, true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::SplitRng;

    #[test]
    fn extreme_eigenvalues_of_known_matrices() {
        // diag(3, -1, 0.5)
        let m = MatrixD::from_rows(&[
            vec![3.0, 0.0, 0.0],
            vec![0.0, -1.0, 0.0],
            vec![0.0, 0.0, 0.5],
        ]);
        assert!((sym_extreme_eigenvalue(&m, true) - 3.0).abs() < 1e-12);
        assert!((sym_extreme_eigenvalue(&m, false) + 1.0).abs() < 1e-12);

        // [[2, 1], [1, 2]] has eigenvalues 1 and 3.
        let m = MatrixD::from_rows(&[vec![2.0, 1.0], vec![1.0, 2.0]]);
        assert!((sym_extreme_eigenvalue(&m, true) - 3.0).abs() < 1e-12);
        assert!((sym_extreme_eigenvalue(&m, false) - 1.0).abs() < 1e-12);
    }

    #[test]
    fn agrees_with_power_iteration_on_random_spd() {
        let mut rng = SplitRng::new(3, "dense-check", 0);
        let n = 24;
        let mut b = MatrixD::zeros(n);
        for i in 0..n {
            for j in 0..n {
                b.set(i, j, rng.next_signed());
            }
        }
        let g = b.mul_transpose();
        let lmax = sym_extreme_eigenvalue(&g, true);
        // Plain power iteration oracle.
        let mut v = vec![1.0; n];
        let mut lam = 0.0;
        for _ in 0..2000 {
            let mut w = vec![0.0; n];
            for i in 0..n {
                for j in 0..n {
                    w[i] += g.get(i, j) * v[j];
                }
            }
            let norm = w.iter().map(|x| x * x).sum::<f64>().sqrt();
            for x in w.iter_mut() {
                *x /= norm;
            }
            lam = norm;
            v = w;
        }
        assert!(
            (lmax - lam).abs() < 1e-6 * lam.abs().max(1.0),
            "bisection {lmax} vs power {lam}"
        );
    }

    #[test]
    fn hermitian_embedding() {
        // [[2, i], [-i, 2]] has eigenvalues 1 and 3.
        let h = vec![
            Complex64::new(2.0, 0.0),
            Complex64::new(0.0, 1.0),
            Complex64::new(0.0, -1.0),
            Complex64::new(2.0, 0.0),
        ];
        assert!((hermitian_lambda_max(&h, 2) - 3.0).abs() < 1e-12);
    }
}
