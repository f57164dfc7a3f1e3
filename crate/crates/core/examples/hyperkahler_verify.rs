//! Check J^2 = -1, the quaternion relations, g-invariance and
//! omega_J + i omega_K = omega_c at one point of the minimal orbit.
//!
//! ```bash
//! cargo run --release --example hyperkahler_verify -- E6 0
//! cargo run --release --example hyperkahler_verify -- A2 6   # J^2 != -1
//! ```

use orbit_hk::chevalley::LieAlgebra;
use orbit_hk::hyperkahler::{lambda_squared, verify_quaternionic, PotentialFamily};
use orbit_hk::orbit::OrbitPoint;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut args = std::env::args().skip(1);
    let ty = args.next().unwrap_or_else(|| "A2".into()).parse()?;
    let c: f64 = args.next().map_or(Ok(0.0), |s| s.parse())?;
    let alg = LieAlgebra::of_type(ty)?;
    let x = OrbitPoint::minimal(&alg, 1.0)?;
    let pot = PotentialFamily::for_algebra(&alg, c)?;
    println!("{ty}: lambda^2 = {}, eta = {}, c = {c}", lambda_squared(&alg), x.eta());

    let rep = verify_quaternionic(&x, &pot, 200, 42)?;
    for ch in &rep.checks.checks {
        println!("  {:<36} {:>10.2e}  {}", ch.name, ch.max_residual, if ch.pass { "ok" } else { "FAIL" });
    }
    println!("min Gram eigenvalue of g: {:.6}", rep.min_gram_eigenvalue);
    println!("hyperKähler at this point: {}", rep.all_pass());
    Ok(())
}
