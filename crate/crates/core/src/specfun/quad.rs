//! Gauss quadrature rules (Golub-Welsch construction).
//!
//! Nodes and weights come from the symmetric tridiagonal Jacobi matrix of
//! the orthogonal-polynomial recurrence; eigenvalues are the nodes and the
//! squared first eigenvector components give the weights. Rules are cached
//! process-wide because the kernel and norm checks rebuild the same sizes
//! over and over.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use crate::specfun::gamma::ln_gamma_unchecked;

/// Gauss-Legendre rule on [-1, 1].
#[derive(Debug, Clone)]
pub struct GaussLegendre {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

impl GaussLegendre {
    pub fn new(n: usize) -> Self {
        assert!(n >= 1, "quadrature rule needs at least one node");
        if n == 1 {
            return Self {
                nodes: vec![0.0],
                weights: vec![2.0],
            };
        }
        // Jacobi matrix: zero diagonal, off-diagonal b_k = k / sqrt(4k^2 - 1)
        let off: Vec<f64> = (1..n)
            .map(|k| {
                let k = k as f64;
                k / (4.0 * k * k - 1.0).sqrt()
            })
            .collect();
        let (nodes, weights) = golub_welsch(&vec![0.0; n], &off, 2.0);
        Self { nodes, weights }
    }

    /// Integrate `f` over [a, b].
    pub fn integrate<F: Fn(f64) -> f64>(&self, a: f64, b: f64, f: F) -> f64 {
        let half = 0.5 * (b - a);
        let mid = 0.5 * (a + b);
        let mut acc = 0.0;
        for (x, w) in self.nodes.iter().zip(&self.weights) {
            acc += w * f(mid + half * x);
        }
        acc * half
    }

    /// Scaled nodes/weights on [a, b].
    pub fn scaled(&self, a: f64, b: f64) -> (Vec<f64>, Vec<f64>) {
        let half = 0.5 * (b - a);
        let mid = 0.5 * (a + b);
        (
            self.nodes.iter().map(|x| mid + half * x).collect(),
            self.weights.iter().map(|w| w * half).collect(),
        )
    }
}

/// Generalized Gauss-Laguerre rule for the weight `u^alpha e^-u` on [0, inf).
#[derive(Debug, Clone)]
pub struct GaussLaguerre {
    pub alpha: f64,
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

impl GaussLaguerre {
    pub fn new(n: usize, alpha: f64) -> Self {
        assert!(n >= 1, "quadrature rule needs at least one node");
        assert!(alpha > -1.0, "Laguerre weight needs alpha > -1");
        let diag: Vec<f64> = (0..n).map(|i| 2.0 * i as f64 + 1.0 + alpha).collect();
        let off: Vec<f64> = (1..n)
            .map(|i| {
                let i = i as f64;
                (i * (i + alpha)).sqrt()
            })
            .collect();
        // total mass int_0^inf u^alpha e^-u du = Gamma(alpha + 1)
        let mu0 = ln_gamma_unchecked(alpha + 1.0).exp();
        let (nodes, weights) = golub_welsch(&diag, &off, mu0);
        Self {
            alpha,
            nodes,
            weights,
        }
    }

    /// Approximates `int_0^inf u^alpha e^-u f(u) du`.
    pub fn integrate<F: Fn(f64) -> f64>(&self, f: F) -> f64 {
        self.nodes
            .iter()
            .zip(&self.weights)
            .map(|(x, w)| w * f(*x))
            .sum()
    }
}

/// Nodes and weights from a Jacobi matrix: implicit-shift tridiagonal QL
/// (EISPACK `imtql2`), accumulating only the first row of the eigenvector
/// product, whose squared entries times the weight-function mass give the
/// quadrature weights.
/// Gauss rule for the symmetric Jacobi (Gegenbauer) weight
/// `(1 - x^2)^a` on [-1, 1], `a > -1`.
///
/// Treats the algebraic endpoint factor of the Bessel integral
/// representation exactly; a plain Legendre rule only converges
/// algebraically there for non-integer `2a`.
#[derive(Debug, Clone)]
pub struct GaussGegenbauer {
    pub a: f64,
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

impl GaussGegenbauer {
    pub fn new(n: usize, a: f64) -> Self {
        assert!(n >= 1, "quadrature rule needs at least one node");
        assert!(a > -1.0, "Gegenbauer weight needs a > -1");
        let diag = vec![0.0; n];
        let off: Vec<f64> = (1..n)
            .map(|k| {
                if k == 1 {
                    // the (1+2a) factor cancels; the raw quotient is 0/0 at a = -1/2
                    (1.0 / (3.0 + 2.0 * a)).sqrt()
                } else {
                    let k = k as f64;
                    (k * (k + 2.0 * a)
                        / ((2.0 * k + 2.0 * a - 1.0) * (2.0 * k + 2.0 * a + 1.0)))
                        .sqrt()
                }
            })
            .collect();
        // mass: int_-1^1 (1-x^2)^a dx = sqrt(pi) Gamma(a+1) / Gamma(a+3/2)
        let mu0 = (0.5 * std::f64::consts::PI.ln() + ln_gamma_unchecked(a + 1.0)
            - ln_gamma_unchecked(a + 1.5))
        .exp();
        let (nodes, weights) = golub_welsch(&diag, &off, mu0);
        Self { a, nodes, weights }
    }

    /// Approximates `int_-1^1 (1-x^2)^a f(x) dx`.
    pub fn integrate<F: Fn(f64) -> f64>(&self, f: F) -> f64 {
        self.nodes
            .iter()
            .zip(&self.weights)
            .map(|(x, w)| w * f(*x))
            .sum()
    }
}

fn golub_welsch(diag: &[f64], off: &[f64], mu0: f64) -> (Vec<f64>, Vec<f64>) {
    let n = diag.len();
    let mut d = diag.to_vec();
    let mut e = vec![0.0; n];
    e[..n - 1].copy_from_slice(off);
    let mut z = vec![0.0; n];
    z[0] = 1.0;

    for l in 0..n {
        let mut iter = 0;
        loop {
            let mut m = l;
            while m + 1 < n {
                let dd = d[m].abs() + d[m + 1].abs();
                if e[m].abs() <= f64::EPSILON * dd {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            iter += 1;
            assert!(iter < 60, "tridiagonal QL failed to converge");

            let mut g = (d[l + 1] - d[l]) / (2.0 * e[l]);
            let mut r = g.hypot(1.0);
            g = d[m] - d[l] + e[l] / (g + r.abs().copysign(g));
            let (mut s, mut c) = (1.0_f64, 1.0_f64);
            let mut p = 0.0_f64;
            let mut underflow = false;
            for i in (l..m).rev() {
                let mut f = s * e[i];
                let b = c * e[i];
                r = f.hypot(g);
                e[i + 1] = r;
                if r == 0.0 {
                    d[i + 1] -= p;
                    e[m] = 0.0;
                    underflow = i > l;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - p;
                r = (d[i] - g) * s + 2.0 * c * b;
                p = s * r;
                d[i + 1] = g + p;
                g = c * r - b;
                f = z[i + 1];
                z[i + 1] = s * z[i] + c * f;
                z[i] = c * z[i] - s * f;
            }
            if underflow {
                continue;
            }
            d[l] -= p;
            e[l] = g;
            e[m] = 0.0;
        }
    }

    let mut pairs: Vec<(f64, f64)> = d
        .iter()
        .zip(&z)
        .map(|(&node, &z0)| (node, mu0 * z0 * z0))
        .collect();
    pairs.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap());
    pairs.into_iter().unzip()
}

type LegendreCache = Mutex<HashMap<usize, Arc<GaussLegendre>>>;
type LaguerreCache = Mutex<HashMap<(usize, u64), Arc<GaussLaguerre>>>;
type GegenbauerCache = Mutex<HashMap<(usize, u64), Arc<GaussGegenbauer>>>;

static LEGENDRE_CACHE: OnceLock<LegendreCache> = OnceLock::new();
static LAGUERRE_CACHE: OnceLock<LaguerreCache> = OnceLock::new();
static GEGENBAUER_CACHE: OnceLock<GegenbauerCache> = OnceLock::new();

pub fn gauss_legendre(n: usize) -> Arc<GaussLegendre> {
    let cache = LEGENDRE_CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    let mut map = cache.lock().unwrap();
    map.entry(n)
        .or_insert_with(|| Arc::new(GaussLegendre::new(n)))
        .clone()
}

pub fn gauss_laguerre(n: usize, alpha: f64) -> Arc<GaussLaguerre> {
    let cache = LAGUERRE_CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    let mut map = cache.lock().unwrap();
    map.entry((n, alpha.to_bits()))
        .or_insert_with(|| Arc::new(GaussLaguerre::new(n, alpha)))
        .clone()
}

pub fn gauss_gegenbauer(n: usize, a: f64) -> Arc<GaussGegenbauer> {
    let cache = GEGENBAUER_CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    let mut map = cache.lock().unwrap();
    map.entry((n, a.to_bits()))
        .or_insert_with(|| Arc::new(GaussGegenbauer::new(n, a)))
        .clone()
}
