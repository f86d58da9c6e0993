//! Generalized Laguerre polynomials and the radial eigenfunction
//! polynomials `P_{k,m}`.
//!
//! Two independent evaluation routes are kept on purpose:
//!
//! * the explicit finite sums (normative definitions), and
//! * the three-term recurrence / binomial-scaled Laguerre route,
//!
//! and the test suite pins them against each other. `P_{k,m}` is the
//! monic-at-zero variant `L^nu_m / C(m+nu, m)` that appears in the radial
//! part of the eigenfunctions.

use crate::error::{Error, Result};
use crate::specfun::gamma::{ln_binom_shifted, ln_gamma_unchecked};

/// Generalized Laguerre polynomial `L^alpha_m(t)` by the explicit sum
/// `sum_n (-1)^n C(m+alpha, m-n) t^n / n!`.
///
/// Terms are built by exact running ratios
/// `term_{n+1} = term_n * (-t)(m-n) / ((n+1)(alpha+n+1))` and summed with
/// Kahan compensation, keeping the alternating cancellation at the
/// intrinsic floor. Reference route for the fast recurrence below.
pub fn laguerre_sum(alpha: f64, m: u32, t: f64) -> f64 {
    debug_assert!(alpha > -1.0);
    // term_0 = C(m + alpha, m)
    let mut term = 1.0;
    for j in 1..=m {
        term *= (alpha + j as f64) / j as f64;
    }
    let mut sum = 0.0;
    let mut comp = 0.0;
    for n in 0..=m {
        let y = term - comp;
        let s = sum + y;
        comp = (s - sum) - y;
        sum = s;
        if n < m {
            term *= -t * (m - n) as f64 / ((n as f64 + 1.0) * (alpha + n as f64 + 1.0));
        }
    }
    sum
}

/// Generalized Laguerre polynomial `L^alpha_m(t)` via the stable
/// three-term recurrence
/// `(n+1) L_{n+1} = (2n+1+alpha-t) L_n - (n+alpha) L_{n-1}`.
pub fn laguerre(alpha: f64, m: u32, t: f64) -> f64 {
    debug_assert!(alpha > -1.0);
    match m {
        0 => 1.0,
        1 => 1.0 + alpha - t,
        _ => {
            let mut lm1 = 1.0;
            let mut l = 1.0 + alpha - t;
            for n in 1..m {
                let n = n as f64;
                let next = ((2.0 * n + 1.0 + alpha - t) * l - (n + alpha) * lm1) / (n + 1.0);
                lm1 = l;
                l = next;
            }
            l
        }
    }
}

/// Coefficients of `P_{k,m}` as a polynomial in `rho`:
/// `P_{k,m}(rho) = sum_n (-m)_n / (1+|k+alpha|)_n * rho^n / n!`.
///
/// The running-ratio form keeps each coefficient exact to a few ulp.
pub fn pkm_coeffs(k: i32, m: u32, alpha: f64) -> Vec<f64> {
    let nu = (k as f64 + alpha).abs();
    let mut coeffs = Vec::with_capacity(m as usize + 1);
    let mut c = 1.0;
    coeffs.push(c);
    for n in 0..m {
        let n = n as f64;
        // c_{n+1} = c_n * (-m + n) / ((1 + nu + n)(n + 1))
        c *= (n - m as f64) / ((1.0 + nu + n) * (n + 1.0));
        coeffs.push(c);
    }
    coeffs
}

pub(crate) fn horner(coeffs: &[f64], x: f64) -> f64 {
    coeffs.iter().rev().fold(0.0, |acc, c| acc * x + c)
}

/// Derivative coefficients of a polynomial given by `coeffs`.
pub(crate) fn poly_deriv(coeffs: &[f64]) -> Vec<f64> {
    coeffs
        .iter()
        .enumerate()
        .skip(1)
        .map(|(n, c)| n as f64 * c)
        .collect()
}

/// `P_{k,m}(rho)` by the explicit hypergeometric-style sum.
pub fn pkm(k: i32, m: u32, alpha: f64, rho: f64) -> f64 {
    horner(&pkm_coeffs(k, m, alpha), rho)
}

/// `P_{k,m}(rho)` through the Laguerre identity
/// `P_{k,m} = C(m+|k+alpha|, m)^{-1} L^{|k+alpha|}_m`.
pub fn pkm_via_laguerre(k: i32, m: u32, alpha: f64, rho: f64) -> f64 {
    let nu = (k as f64 + alpha).abs();
    (-ln_binom_shifted(nu, m)).exp() * laguerre(nu, m, rho)
}

/// Relative disagreement between the two `P_{k,m}` routes, used by the
/// verification suites.
pub fn pkm_route_disagreement(k: i32, m: u32, alpha: f64, rho: f64) -> f64 {
    let a = pkm(k, m, alpha, rho);
    let b = pkm_via_laguerre(k, m, alpha, rho);
    let scale = a.abs().max(b.abs()).max(f64::MIN_POSITIVE);
    (a - b).abs() / scale
}

/// Orthogonality defect of the generalized Laguerre family under the
/// weight `t^alpha e^-t`, normalized by the diagonal value
/// `Gamma(n+alpha+1)/n!`. Quadrature is a generalized Gauss-Laguerre rule,
/// exact for the polynomial integrand.
pub fn laguerre_orthogonality_defect(alpha: f64, m: u32, n: u32, quad_nodes: usize) -> Result<f64> {
    if alpha <= -1.0 {
        return Err(Error::domain(format!(
            "Laguerre weight needs alpha > -1, got {alpha}"
        )));
    }
    let rule = crate::specfun::quad::gauss_laguerre(quad_nodes, alpha);
    let integral = rule.integrate(|t| laguerre(alpha, m, t) * laguerre(alpha, n, t));
    let diag =
        (ln_gamma_unchecked(n as f64 + alpha + 1.0) - ln_gamma_unchecked(n as f64 + 1.0)).exp();
    let expected = if m == n { diag } else { 0.0 };
    Ok((integral - expected).abs() / diag)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::specfun::gamma::pochhammer;
    use approx::assert_relative_eq;
    use proptest::prelude::*;

    #[test]
    fn degree_zero_is_one() {
        assert_eq!(laguerre(0.7, 0, 3.2), 1.0);
        assert_eq!(laguerre_sum(0.7, 0, 3.2), 1.0);
        assert_eq!(pkm(3, 0, 0.4, 2.2), 1.0);
        assert_relative_eq!(pkm_via_laguerre(3, 0, 0.4, 2.2), 1.0, max_relative = 1e-14);
    }

    #[test]
    fn degree_one_closed_forms() {
        // L^0_1(t) = 1 - t, L^1_1(t) = 2 - t
        assert_relative_eq!(laguerre(0.0, 1, 0.3), 0.7, max_relative = 1e-14);
        assert_relative_eq!(laguerre(1.0, 1, 0.5), 1.5, max_relative = 1e-14);
        assert_relative_eq!(laguerre_sum(0.0, 1, 0.3), 0.7, max_relative = 1e-13);
        assert_relative_eq!(laguerre_sum(1.0, 1, 0.5), 1.5, max_relative = 1e-13);
    }

    #[test]
    fn recurrence_matches_explicit_sum() {
        // agreement normalized by the polynomial's O(1) scale; right at a
        // zero crossing the value itself is no usable yardstick in f64
        for &alpha in &[0.3, 0.5, 1.7] {
            for m in 0..=20u32 {
                for &t in &[0.1, 0.5, 1.0, 2.0] {
                    let a = laguerre(alpha, m, t);
                    let b = laguerre_sum(alpha, m, t);
                    let scale = a.abs().max(b.abs()).max(1.0);
                    assert!(
                        (a - b).abs() / scale < 1e-12,
                        "alpha={alpha} m={m} t={t}: {a} vs {b}"
                    );
                }
            }
        }
    }

    #[test]
    fn pkm_two_term_example() {
        // P_{0,1}(rho) = 1 - rho/(1 + 0.5), at rho = 1: 1/3
        assert_relative_eq!(pkm(0, 1, 0.5, 1.0), 1.0 / 3.0, max_relative = 1e-14);
    }

    #[test]
    fn pkm_routes_agree() {
        // eleven distinct evaluation points below the first Laguerre zero:
        // there both routes are well-conditioned (|P| stays O(1)), and
        // agreement at deg+1 distinct points pins the polynomial identity
        let rhos: Vec<f64> = (1..=11).map(|j| 0.004 * j as f64).collect();
        for &alpha in &[0.3, 0.5] {
            for k in -5..=5 {
                for m in 0..=10u32 {
                    for &rho in &rhos {
                        let d = pkm_route_disagreement(k, m, alpha, rho);
                        assert!(d < 1e-12, "k={k} m={m} alpha={alpha} rho={rho}: {d:e}");
                    }
                }
            }
        }
    }

    #[test]
    fn pkm_routes_agree_at_large_argument_scale_metric() {
        // away from the small-rho zone the comparison is normalized by the
        // polynomial's O(1) scale (the value itself may sit on a zero)
        for &alpha in &[0.3, 0.5] {
            for k in -5..=5 {
                for m in 0..=10u32 {
                    for &rho in &[0.5, 1.0, 2.5] {
                        let a = pkm(k, m, alpha, rho);
                        let b = pkm_via_laguerre(k, m, alpha, rho);
                        let scale = a.abs().max(b.abs()).max(1.0);
                        assert!(
                            (a - b).abs() / scale < 1e-12,
                            "k={k} m={m} alpha={alpha} rho={rho}"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn pkm_cross_check_example() {
        let d = pkm_route_disagreement(2, 3, 0.3, 0.7);
        assert!(d < 1e-13);
    }

    #[test]
    fn explicit_pochhammer_form_matches_coeffs() {
        // spot-check the coefficient recursion against raw Pochhammer ratios
        let (k, m, alpha) = (1, 4u32, 0.3);
        let nu = (k as f64 + alpha).abs();
        let coeffs = pkm_coeffs(k, m, alpha);
        let mut fact = 1.0;
        for n in 0..=m {
            if n > 0 {
                fact *= n as f64;
            }
            let direct = pochhammer(-(m as f64), n) / pochhammer(1.0 + nu, n) / fact;
            assert_relative_eq!(coeffs[n as usize], direct, max_relative = 1e-13);
        }
    }

    #[test]
    fn orthogonality_grid() {
        for &alpha in &[0.3, 0.5, 1.7] {
            for m in 0..=8u32 {
                for n in 0..=8u32 {
                    let defect = laguerre_orthogonality_defect(alpha, m, n, 64).unwrap();
                    assert!(defect < 1e-8, "alpha={alpha} m={m} n={n}: defect {defect:e}");
                }
            }
        }
    }

    proptest! {
        #[test]
        fn recurrence_vs_sum_random(alpha in -0.9..3.0f64, m in 0u32..15, t in 0.0..4.0f64) {
            let a = laguerre(alpha, m, t);
            let b = laguerre_sum(alpha, m, t);
            let scale = a.abs().max(b.abs()).max(1.0);
            prop_assert!((a - b).abs() / scale < 1e-11);
        }
    }
}
