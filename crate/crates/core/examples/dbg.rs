use abflow::specfun::quad::{GaussLaguerre, GaussLegendre};
fn main() {
    for &alpha in &[0.0f64, 0.3, 0.5, 1.7, 5.5] {
        let r = GaussLaguerre::new(32, alpha);
        for k in 0..5u32 {
            let m: f64 = r.nodes.iter().zip(&r.weights).map(|(x, w)| w * x.powi(k as i32)).sum();
            let exact = abflow::specfun::gamma(alpha + 1.0 + k as f64).unwrap();
            assert!(((m - exact) / exact).abs() < 1e-12, "alpha={alpha} k={k}: {:e}", ((m-exact)/exact).abs());
        }
    }
    let gl = GaussLegendre::new(200);
    let v = gl.integrate(0.0, 1.0, |x| (-x).exp());
    let exact = 1.0 - (-1.0f64).exp();
    assert!(((v - exact) / exact).abs() < 1e-14);
    println!("all quadrature sanity checks passed");
}
