//! Spectral data of the operator `H = (i grad - A)^2` on the plane, where
//! `A` superposes an Aharonov-Bohm flux `alpha` at the origin with a
//! homogeneous field of strength `b0`:
//!
//! ```text
//! A(x) = (b0 |x| / 2 + alpha / |x|) (-x2/|x|, x1/|x|)
//! ```
//!
//! For non-integer flux the spectrum is pure point:
//!
//! * eigenvalues `lambda_{k,m} = (2m + 1 + |k+alpha| + k + alpha) b0`,
//! * eigenfunctions `V_{k,m} = r^|k+alpha| e^{-b0 r^2/4} P_{k,m}(b0 r^2/2) e^{i k theta}`,
//!
//! with `P_{k,m}` the degree-m polynomials from [`crate::specfun`]. The
//! levels with `k + alpha < 0` all collapse onto `(2m+1) b0`: the residual
//! Landau levels, which keep their infinite degeneracy even with the flux
//! switched on. Everything here is an immutable value computation, safe
//! for unrestricted concurrent use.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::specfun::{
    horner, ln_binom_shifted, ln_gamma_unchecked, pkm_coeffs, poly_deriv,
};

/// Tolerance below which a flux counts as integer (and is rejected).
pub const INTEGER_FLUX_TOL: f64 = 1e-12;

/// Distance from `alpha` to the nearest integer.
pub fn flux_distance(alpha: f64) -> f64 {
    (alpha - alpha.round()).abs()
}

/// Physical configuration: flux `alpha` (non-integer), field strength
/// `b0 > 0`, and the cached flux distance `mu = dist(alpha, Z)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MagneticParams {
    alpha: f64,
    b0: f64,
    mu: f64,
}

impl MagneticParams {
    pub fn new(alpha: f64, b0: f64) -> Result<Self> {
        if !alpha.is_finite() {
            return Err(Error::domain(format!("flux must be finite, got {alpha}")));
        }
        let mu = flux_distance(alpha);
        if mu <= INTEGER_FLUX_TOL {
            return Err(Error::IntegerFlux {
                alpha,
                tol: INTEGER_FLUX_TOL,
            });
        }
        if !(b0 > 0.0) || !b0.is_finite() {
            return Err(Error::domain(format!(
                "field strength must be positive, got {b0}"
            )));
        }
        Ok(Self { alpha, b0, mu })
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn b0(&self) -> f64 {
        self.b0
    }

    /// `dist(alpha, Z)`, in `(0, 1/2]`. Also the largest admissible weight
    /// exponent in the decay estimates.
    pub fn mu(&self) -> f64 {
        self.mu
    }

    /// `|k + alpha|`, the effective angular order of mode `k`.
    pub fn nu(&self, k: i32) -> f64 {
        (k as f64 + self.alpha).abs()
    }
}

/// Spectral mode label: angular index `k`, radial index `m >= 0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ModeIndex {
    pub k: i32,
    pub m: u32,
}

impl ModeIndex {
    pub fn new(k: i32, m: u32) -> Self {
        Self { k, m }
    }
}

/// Point of the plane in polar coordinates; `r >= 0`, any angle.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PolarPoint {
    pub r: f64,
    pub theta: f64,
}

impl PolarPoint {
    pub fn new(r: f64, theta: f64) -> Result<Self> {
        if !(r >= 0.0) || !r.is_finite() {
            return Err(Error::domain(format!("radius must be >= 0, got {r}")));
        }
        if !theta.is_finite() {
            return Err(Error::domain(format!("angle must be finite, got {theta}")));
        }
        Ok(Self { r, theta })
    }

    pub fn from_cartesian(x: [f64; 2]) -> Self {
        Self {
            r: x[0].hypot(x[1]),
            theta: x[1].atan2(x[0]),
        }
    }

    pub fn to_cartesian(&self) -> [f64; 2] {
        [self.r * self.theta.cos(), self.r * self.theta.sin()]
    }
}

/// Eigenvalue `lambda_{k,m} = (2m + 1 + |k+alpha| + k + alpha) b0`; always
/// positive.
pub fn eigenvalue(params: &MagneticParams, mode: ModeIndex) -> f64 {
    let shift = params.nu(mode.k) + (mode.k as f64 + params.alpha);
    (2.0 * mode.m as f64 + 1.0 + shift) * params.b0
}

/// Number of index pairs sharing the level `lambda`, scanning the angular
/// index over `j in [-k_window, k_window]`: counts `j` with
/// `(lambda - (j+alpha) b0) / (2 b0) - (|j+alpha| + 1)/2` a nonnegative
/// integer (tolerance 1e-9; eigenvalues are exact linear expressions, so
/// honest matches land within machine noise).
///
/// For levels off the residual Landau family the count is stable once the
/// window exceeds `lambda/b0 + |alpha| + 1`. On the Landau family
/// (`lambda/b0` an odd integer) every `j` with `j + alpha < 0` matches and
/// the count grows with the window — the degeneracy is genuinely infinite
/// and the returned value is the window count.
pub fn multiplicity(params: &MagneticParams, lambda: f64, k_window: i32) -> usize {
    const MEMBER_TOL: f64 = 1e-9;
    let mut count = 0;
    for j in -k_window..=k_window {
        let ja = j as f64 + params.alpha;
        let m_candidate = (lambda - ja * params.b0) / (2.0 * params.b0) - (ja.abs() + 1.0) / 2.0;
        if m_candidate > -MEMBER_TOL && (m_candidate - m_candidate.round()).abs() < MEMBER_TOL {
            count += 1;
        }
    }
    count
}

/// Radial profile `r^nu e^{-b0 r^2/4} P_{k,m}(b0 r^2/2)` of the mode.
pub fn radial_profile(params: &MagneticParams, mode: ModeIndex, r: f64) -> f64 {
    let nu = params.nu(mode.k);
    if r == 0.0 {
        // nu > 0 always (non-integer flux)
        return 0.0;
    }
    let u = params.b0 * r * r / 2.0;
    let coeffs = pkm_coeffs(mode.k, mode.m, params.alpha);
    (nu * r.ln() - params.b0 * r * r / 4.0).exp() * horner(&coeffs, u)
}

/// Eigenfunction `V_{k,m}` at a polar point.
pub fn eigenfunction(params: &MagneticParams, mode: ModeIndex, p: PolarPoint) -> Complex64 {
    let radial = radial_profile(params, mode, p.r);
    radial * Complex64::from_polar(1.0, mode.k as f64 * p.theta)
}

/// `ln ||V_{k,m}||^2 = ln[ pi (2/b0)^{1+nu} Gamma(1+nu) C(m+nu, m)^{-1} ]`.
pub fn ln_norm_squared(params: &MagneticParams, mode: ModeIndex) -> f64 {
    let nu = params.nu(mode.k);
    std::f64::consts::PI.ln() + (1.0 + nu) * (2.0 / params.b0).ln()
        + ln_gamma_unchecked(1.0 + nu)
        - ln_binom_shifted(nu, mode.m)
}

/// Squared L^2 norm of the (un-normalized) eigenfunction.
pub fn norm_squared(params: &MagneticParams, mode: ModeIndex) -> f64 {
    ln_norm_squared(params, mode).exp()
}

/// Independent quadrature route for the squared norm:
/// `2 pi int_0^inf |radial|^2 r dr`, mapped by `u = b0 r^2 / 2` onto the
/// generalized Gauss-Laguerre weight `u^nu e^-u`.
pub fn norm_squared_quadrature(params: &MagneticParams, mode: ModeIndex, nodes: usize) -> f64 {
    let nu = params.nu(mode.k);
    let coeffs = pkm_coeffs(mode.k, mode.m, params.alpha);
    let rule = crate::specfun::quad::gauss_laguerre(nodes, nu);
    let integral = rule.integrate(|u| {
        let p = horner(&coeffs, u);
        p * p
    });
    // (2/b0)^(1+nu) * pi * integral
    std::f64::consts::PI * ((1.0 + nu) * (2.0 / params.b0).ln()).exp() * integral
}

/// Pointwise residual `|(H_radial f)(r) - lambda f(r)|` of the radial
/// eigen-equation
///
/// ```text
/// -(f'' + f'/r) + [ (k+alpha)^2 / r^2 + b0^2 r^2 / 4 ] f + (k+alpha) b0 f = lambda f
/// ```
///
/// evaluated with closed-form derivatives of the profile (a polynomial
/// times `r^nu e^{-b0 r^2/4}`), so no discretization error enters.
pub fn eigen_residual(params: &MagneticParams, mode: ModeIndex, r: f64) -> Result<f64> {
    if !(r > 0.0) {
        return Err(Error::domain(format!(
            "eigen_residual needs r > 0, got {r}"
        )));
    }
    let b0 = params.b0;
    let nu = params.nu(mode.k);
    let ka = mode.k as f64 + params.alpha;
    let u = b0 * r * r / 2.0;

    let q_coeffs = pkm_coeffs(mode.k, mode.m, params.alpha);
    let dq_coeffs = poly_deriv(&q_coeffs);
    let ddq_coeffs = poly_deriv(&dq_coeffs);
    let q = horner(&q_coeffs, u);
    let dq = horner(&dq_coeffs, u);
    let ddq = horner(&ddq_coeffs, u);

    let env = (nu * r.ln() - b0 * r * r / 4.0).exp(); // r^nu e^{-b0 r^2/4}
    let f = env * q;

    // with E = e^{-b0 r^2/4}: f' = E * a(r), a = nu r^(nu-1) q - (b0/2) r^(nu+1) q + b0 r^(nu+1) q'
    let r_pow = |p: f64| (nu + p) * r.ln();
    let pw = |p: f64| (r_pow(p) - b0 * r * r / 4.0).exp(); // r^(nu+p) e^{-b0 r^2/4}
    let fp = nu * pw(-1.0) * q - 0.5 * b0 * pw(1.0) * q + b0 * pw(1.0) * dq;
    // a' includes the chain factor u' = b0 r on every q-derivative
    let a_prime = nu * (nu - 1.0) * pw(-2.0) * q + nu * b0 * pw(0.0) * dq
        - 0.5 * b0 * (nu + 1.0) * pw(0.0) * q
        - 0.5 * b0 * b0 * pw(2.0) * dq
        + b0 * (nu + 1.0) * pw(0.0) * dq
        + b0 * b0 * pw(2.0) * ddq;
    let fpp = a_prime - 0.5 * b0 * r * fp;

    let potential = ka * ka / (r * r) + b0 * b0 * r * r / 4.0 + ka * b0;
    let lambda = eigenvalue(params, mode);
    let h_f = -(fpp + fp / r) + potential * f;
    Ok((h_f - lambda * f).abs())
}

/// Relative residual of the eigen-equation, normalized by `lambda |f(r)|`.
pub fn eigen_residual_relative(params: &MagneticParams, mode: ModeIndex, r: f64) -> Result<f64> {
    let res = eigen_residual(params, mode, r)?;
    let f = radial_profile(params, mode, r).abs();
    let lambda = eigenvalue(params, mode);
    Ok(res / (lambda * f).max(f64::MIN_POSITIVE))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use proptest::prelude::*;

    fn params(alpha: f64, b0: f64) -> MagneticParams {
        MagneticParams::new(alpha, b0).unwrap()
    }

    #[test]
    fn flux_distance_examples() {
        assert_eq!(flux_distance(0.5), 0.5);
        assert_relative_eq!(flux_distance(1.3), 0.3, max_relative = 1e-14);
        assert_eq!(flux_distance(-0.25), 0.25);
        assert_eq!(flux_distance(3.0), 0.0);
    }

    #[test]
    fn integer_flux_rejected() {
        assert!(MagneticParams::new(2.0, 1.0).is_err());
        assert!(MagneticParams::new(1.0 + 5e-13, 1.0).is_err());
        assert!(MagneticParams::new(0.5, 0.0).is_err());
        assert!(MagneticParams::new(0.5, -1.0).is_err());
        assert!(MagneticParams::new(0.5, 1.0).is_ok());
    }

    #[test]
    fn eigenvalue_formula_cases() {
        assert_eq!(eigenvalue(&params(0.5, 1.0), ModeIndex::new(0, 0)), 2.0);
        assert_eq!(eigenvalue(&params(0.5, 1.0), ModeIndex::new(-1, 0)), 1.0);
        assert_eq!(eigenvalue(&params(0.5, 3.0), ModeIndex::new(1, 2)), 24.0);
    }

    #[test]
    fn eigenvalues_positive_and_stepped() {
        let p = params(0.3, 2.0);
        for k in -6..=6 {
            for m in 0..6u32 {
                let lam = eigenvalue(&p, ModeIndex::new(k, m));
                assert!(lam > 0.0);
                let next = eigenvalue(&p, ModeIndex::new(k, m + 1));
                assert_relative_eq!(next - lam, 2.0 * p.b0(), max_relative = 1e-13);
            }
        }
        // exact increment for dyadic flux
        let p = params(0.5, 1.0);
        let a = eigenvalue(&p, ModeIndex::new(2, 3));
        let b = eigenvalue(&p, ModeIndex::new(2, 4));
        assert_eq!(b - a, 2.0);
    }

    /// Brute-force count of pairs (j, m) with matching eigenvalue.
    fn brute_multiplicity(p: &MagneticParams, lambda: f64) -> usize {
        let mut count = 0;
        for j in -50..=50 {
            for m in 0..=50u32 {
                if (eigenvalue(p, ModeIndex::new(j, m)) - lambda).abs() < 1e-9 {
                    count += 1;
                }
            }
        }
        count
    }

    #[test]
    fn multiplicity_matches_brute_force() {
        let p = params(0.5, 1.0);
        let lam = eigenvalue(&p, ModeIndex::new(0, 0)); // 2.0
        assert_eq!(multiplicity(&p, lam, 50), brute_multiplicity(&p, lam));
        assert_eq!(multiplicity(&p, lam, 50), 1);

        // a non-Landau level with several members: lambda = 6 at alpha=0.5
        // (k+alpha>0 family: 2(m+k)+2 = 6 -> m+k = 2 -> 3 pairs)
        let lam = eigenvalue(&p, ModeIndex::new(2, 0));
        assert_eq!(lam, 6.0);
        assert_eq!(multiplicity(&p, lam, 50), brute_multiplicity(&p, lam));
        assert_eq!(multiplicity(&p, lam, 50), 3);
    }

    #[test]
    fn multiplicity_of_non_eigenvalue_is_zero() {
        let p = params(0.5, 1.0);
        assert_eq!(multiplicity(&p, 0.37, 50), 0);
        assert_eq!(brute_multiplicity(&p, 0.37), 0);
    }

    #[test]
    fn multiplicity_window_count_on_landau_family() {
        // lambda = b0: every j with j + alpha < 0 matches; count grows
        // with the window, reflecting the infinite physical degeneracy
        let p = params(0.5, 1.0);
        assert_eq!(multiplicity(&p, 1.0, 10), 10);
        assert_eq!(multiplicity(&p, 1.0, 20), 20);
    }

    #[test]
    fn eigenfunction_at_origin_and_modulus() {
        let p = params(0.5, 2.0);
        let mode = ModeIndex::new(0, 0);
        let origin = PolarPoint::new(0.0, 0.3).unwrap();
        assert_eq!(eigenfunction(&p, mode, origin), Complex64::new(0.0, 0.0));

        let v = eigenfunction(&p, mode, PolarPoint::new(1.0, 0.0).unwrap());
        assert_relative_eq!(v.re, (-0.5f64).exp(), max_relative = 1e-13);
        assert!(v.im.abs() < 1e-15);

        // modulus independent of theta
        let m2 = ModeIndex::new(3, 1);
        let a = eigenfunction(&p, m2, PolarPoint::new(1.3, 0.2).unwrap()).norm();
        let b = eigenfunction(&p, m2, PolarPoint::new(1.3, 2.9).unwrap()).norm();
        assert_relative_eq!(a, b, max_relative = 1e-13);
    }

    #[test]
    fn norm_squared_ground_mode() {
        // alpha=0.5, b0=2, k=0, m=0: pi * Gamma(1.5)
        let p = params(0.5, 2.0);
        let n = norm_squared(&p, ModeIndex::new(0, 0));
        let exact = std::f64::consts::PI * std::f64::consts::PI.sqrt() / 2.0;
        assert_relative_eq!(n, exact, max_relative = 1e-13);
        assert_relative_eq!(n, 2.7842, max_relative = 1e-4);
    }

    #[test]
    fn norm_squared_formula_vs_quadrature() {
        for &(alpha, b0) in &[(0.5, 2.0), (0.3, 1.0)] {
            let p = params(alpha, b0);
            for k in -5..=5 {
                for m in 0..=5u32 {
                    let mode = ModeIndex::new(k, m);
                    let f = norm_squared(&p, mode);
                    let q = norm_squared_quadrature(&p, mode, 128);
                    assert_relative_eq!(f, q, max_relative = 1e-8);
                }
            }
        }
    }

    #[test]
    fn eigen_residual_representative_modes() {
        let cases = [
            (0.5, 1.0, 0, 0),
            (0.3, 2.0, -2, 1),
            (0.5, 1.0, 3, 2),
            (0.3, 1.0, -1, 4),
            (0.7, 0.5, 2, 3),
            (0.5, 2.0, -4, 0),
            (0.3, 2.0, 1, 5),
            (0.5, 1.0, -3, 3),
        ];
        for &(alpha, b0, k, m) in &cases {
            let p = params(alpha, b0);
            let mode = ModeIndex::new(k, m);
            for i in 0..15 {
                let r = 0.2 + (3.0 - 0.2) * i as f64 / 14.0;
                let rel = eigen_residual_relative(&p, mode, r).unwrap();
                assert!(
                    rel < 1e-8,
                    "alpha={alpha} b0={b0} k={k} m={m} r={r}: rel residual {rel:e}"
                );
            }
        }
    }

    #[test]
    fn eigen_residual_rejects_nonpositive_radius() {
        let p = params(0.5, 1.0);
        assert!(eigen_residual(&p, ModeIndex::new(0, 0), 0.0).is_err());
        assert!(eigen_residual(&p, ModeIndex::new(0, 0), -1.0).is_err());
    }

    #[test]
    fn eigenfunction_orthogonality_by_generic_quadrature() {
        // plain polar quadrature, deliberately ignorant of the Laguerre
        // structure: Gauss-Legendre radially, trapezoid in the angle
        let p = params(0.3, 1.0);
        let rule = crate::specfun::quad::gauss_legendre(200);
        let (radii, rw) = rule.scaled(0.0, 12.0);
        let n_theta = 32;

        let modes: Vec<ModeIndex> = (-3..=3)
            .flat_map(|k| (0..=3u32).map(move |m| ModeIndex::new(k, m)))
            .collect();
        for a in &modes {
            for b in &modes {
                if a == b {
                    continue;
                }
                // angular integral of e^{i(ka-kb)theta} over the uniform grid
                // vanishes identically unless ka = kb
                let mut acc = Complex64::new(0.0, 0.0);
                if a.k == b.k {
                    for (r, w) in radii.iter().zip(&rw) {
                        acc += Complex64::from(
                            2.0 * std::f64::consts::PI
                                * w
                                * r
                                * radial_profile(&p, *a, *r)
                                * radial_profile(&p, *b, *r),
                        );
                    }
                } else {
                    for (r, w) in radii.iter().zip(&rw) {
                        let va = radial_profile(&p, *a, *r);
                        let vb = radial_profile(&p, *b, *r);
                        let mut ang = Complex64::new(0.0, 0.0);
                        for j in 0..n_theta {
                            let th = 2.0 * std::f64::consts::PI * j as f64 / n_theta as f64;
                            ang += Complex64::from_polar(1.0, (a.k - b.k) as f64 * th);
                        }
                        acc += w * r * va * vb * ang * (2.0 * std::f64::consts::PI
                            / n_theta as f64);
                    }
                }
                let scale = (norm_squared(&p, *a) * norm_squared(&p, *b)).sqrt();
                assert!(
                    acc.norm() < 1e-8 * scale,
                    "modes {a:?} {b:?}: overlap {} vs scale {scale}",
                    acc.norm()
                );
            }
        }
    }

    proptest! {
        #[test]
        fn flux_distance_range_and_symmetry(alpha in -25.0..25.0f64) {
            let mu = flux_distance(alpha);
            prop_assert!((0.0..=0.5).contains(&mu));
            prop_assert!((flux_distance(-alpha) - mu).abs() < 1e-12);
            prop_assert!((flux_distance(alpha + 1.0) - mu).abs() < 1e-9);
        }

        #[test]
        fn eigenvalue_always_positive(alpha in -3.0..3.0f64, k in -30i32..30, m in 0u32..40) {
            prop_assume!(flux_distance(alpha) > 1e-6);
            let p = params(alpha, 1.7);
            prop_assert!(eigenvalue(&p, ModeIndex::new(k, m)) > 0.0);
        }
    }
}
