//! On sl(2) the metrics are the Eguchi-Hanson family. Print the frame
//! diagonal, the ODE residual and the comparison in the radial coordinate.
//!
//! ```bash
//! cargo run --release --example eguchi_hanson -- 1.0
//! ```

use orbit_hk::sl2geom::{bolt_limit, eh_metric_components, eh_r_components, eh_standard_form_check, eh_w, ode_residual};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let c: f64 = std::env::args().nth(1).map_or(Ok(1.0), |s| s.parse())?;

    let f = eh_metric_components(1.0, c)?;
    println!("X = E, c = {c}: eta = {}, rho' = {:.6}", f.eta, f.rho1);
    println!("  g on (d/d eta, xi_s1, xi_s2, xi_s3): {:.6?}", f.diagonal());
    println!("  expected (1/(4 eta^2 rho'), eta rho', eta rho', 1/rho'): {:.6?}", f.expected_diagonal());
    println!("  largest off-diagonal entry: {:.1e}", f.max_off_diagonal());

    let o = ode_residual(f.eta, c)?;
    println!("  ODE residual {:.1e}, first integral {:.1e}", o.residual, o.first_integral);

    let r0 = (16.0 * c).powf(0.25);
    println!("\n{:>8} {:>10} {:>42} {:>10}", "r", "W", "(g_rr, g_11, g_22, g_33)", "mismatch");
    for k in 1..=6 {
        let r = r0 + 0.5 * k as f64;
        let g = eh_r_components(r, c)?;
        println!("{r:>8.3} {:>10.6} {:>42} {:>10.1e}", eh_w(r, c), format!("{g:.4?}"), eh_standard_form_check(r, c)?);
    }
    if c > 0.0 {
        let b = bolt_limit(c, 1e-3)?;
        println!("\nnear the bolt r = {:.4}: W = {:.2e}, g(xi_s3, xi_s3) = {:.2e}, g(xi_s1, xi_s1) = {:.4}", b.r, b.w, b.sigma3, b.sigma1);
    }
    Ok(())
}
