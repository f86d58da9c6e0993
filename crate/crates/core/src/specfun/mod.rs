//! Special functions built from scratch: log-Gamma and Pochhammer symbols,
//! generalized Laguerre polynomials, the radial polynomials `P_{k,m}`,
//! Gauss quadrature rules, and modified Bessel functions of complex
//! argument.
//!
//! All operations are pure and reentrant; the only shared state is the
//! read-only quadrature-rule cache.

mod bessel;
mod gamma;
mod laguerre;
pub mod quad;

pub use bessel::{
    bessel_bound, bessel_i_complex, bessel_i_complex_with_nodes, bessel_i_imag, bessel_i_real,
    bessel_i_real_ln, bessel_j_ladder, bessel_j_real, DEFAULT_QUAD_NODES,
};
pub(crate) use bessel::bessel_bound_ln;
pub use gamma::{binom_shifted, gamma, ln_binom_shifted, ln_gamma, pochhammer};
pub(crate) use gamma::ln_gamma_unchecked;
pub use laguerre::{
    laguerre, laguerre_orthogonality_defect, laguerre_sum, pkm, pkm_coeffs, pkm_route_disagreement,
    pkm_via_laguerre,
};
pub(crate) use laguerre::{horner, poly_deriv};
