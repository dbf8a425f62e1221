//! Smooth radial cutoffs shared by every quadrature, amplitude, and
//! lower-bound construction in the crate.
//!
//! `psi` is 1 on |u| ≤ 1/2 and 0 on |u| ≥ 1; `chi(u) = psi(u/2) - psi(u)`
//! is an annular cutoff on 1/2 ≤ |u| ≤ 2 whose dyadic dilates telescope
//! to a partition of unity.

/// Radial bump profile: 1 for r ≤ 1/2, 0 for r ≥ 1.
///
/// The transition is the normalized exp(-1/(1-s²)) bump pushed through the
/// affine map s = 2r - 1, so the flat region is exactly r ≤ 1/2.
pub fn psi(r: f64) -> f64 {
    let r = r.abs();
    if r <= 0.5 {
        1.0
    } else if r >= 1.0 {
        0.0
    } else {
        let s = 2.0 * r - 1.0;
        (1.0 - 1.0 / (1.0 - s * s)).exp()
    }
}

/// Annular cutoff, supported on 1/2 ≤ r ≤ 2 with chi(1) = 1.
pub fn chi(r: f64) -> f64 {
    let r = r.abs();
    psi(r / 2.0) - psi(r)
}

/// `psi` of the Euclidean norm of a 2-vector.
pub fn psi2(u: [f64; 2]) -> f64 {
    psi((u[0] * u[0] + u[1] * u[1]).sqrt())
}

/// `chi` of the Euclidean norm of a 2-vector.
pub fn chi2(u: [f64; 2]) -> f64 {
    chi((u[0] * u[0] + u[1] * u[1]).sqrt())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn psi_flat_and_support() {
        assert_eq!(psi(0.0), 1.0);
        assert_eq!(psi(0.49), 1.0);
        assert_eq!(psi(0.5), 1.0);
        assert_eq!(psi(1.0), 0.0);
        assert_eq!(psi(1.5), 0.0);
        assert_eq!(psi(-0.3), 1.0);
    }

    #[test]
    fn psi_transition_value() {
        // Independent evaluation of the normalized bump at r = 3/4:
        // g(s) = exp(-1/(1-s^2)), value g(1/2)/g(0) = exp(1 - 4/3).
        let expected = (1.0f64 - 4.0 / 3.0).exp();
        assert!((psi(0.75) - expected).abs() < 1e-15);
        assert!(psi(0.75) > 0.0 && psi(0.75) < 1.0);
    }

    #[test]
    fn psi_monotone_on_transition() {
        let mut prev = psi(0.5);
        for k in 1..=100 {
            let r = 0.5 + 0.005 * k as f64;
            let v = psi(r);
            assert!(v <= prev + 1e-15, "psi not monotone at r={r}");
            prev = v;
        }
    }

    #[test]
    fn chi_values() {
        assert_eq!(chi(1.0), 1.0); // psi(1/2)=1, psi(1)=0
        assert_eq!(chi(3.0), 0.0);
        assert_eq!(chi(0.25), 0.0);
        assert!(chi(0.7) > 0.0);
        assert!(chi(1.8) > 0.0);
    }

    #[test]
    fn dyadic_partition_of_unity() {
        // sum over j of chi(2^j u) telescopes to psi(2^-J-1 u) - psi(2^J u).
        for &u in &[1.1e-3, 5e-3, 0.03, 0.7, 1.0, 13.0, 900.0] {
            let mut sum = 0.0;
            for j in -10..=10 {
                sum += chi(2f64.powi(j) * u);
            }
            assert!((sum - 1.0).abs() < 1e-8, "partition fails at u={u}: {sum}");
        }
    }

    #[test]
    fn psi_is_c1_numerically() {
        // Central differences with steps h and h/2 agree at first order.
        let mut state = 0x9e3779b97f4a7c15u64;
        let mut rand01 = move || {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            (state >> 11) as f64 / (1u64 << 53) as f64
        };
        let h = 1e-5;
        for _ in 0..100 {
            let r = 0.4 + 0.7 * rand01();
            let d1 = (psi(r + h) - psi(r - h)) / (2.0 * h);
            let d2 = (psi(r + h / 2.0) - psi(r - h / 2.0)) / h;
            assert!(
                (d1 - d2).abs() <= 20.0 * h + 1e-12,
                "derivative estimates diverge at r={r}: {d1} vs {d2}"
            );
        }
    }
}
