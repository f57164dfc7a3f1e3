//! Away from sl(2) only c = 0 gives J^2 = -1: on the directions e_gamma with
//! theta - gamma a root, J^2 = -(1 + c / (lambda^2 eta)).
//!
//! ```bash
//! cargo run --release --example uniqueness
//! ```

use orbit_hk::chevalley::LieAlgebra;
use orbit_hk::hyperkahler::{lambda_squared, uniqueness_deviation, verify_quaternionic, PotentialFamily};
use orbit_hk::orbit::OrbitPoint;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    println!("{:<4} {:>5} {:>6} {:>14} {:>14}", "type", "c", "eta", "|J^2 xi + xi|", "c/(l^2 eta)");
    for label in ["A2", "B3", "G2", "F4"] {
        let alg = LieAlgebra::of_type(label.parse()?)?;
        let l2 = lambda_squared(&alg) as f64;
        for c in [0.0, 1.0, 10.0] {
            for eta in [1.0, 2.0] {
                let x = OrbitPoint::minimal_with_eta(&alg, eta)?;
                let dev = uniqueness_deviation(&x, c)?;
                println!("{label:<4} {c:>5} {eta:>6} {dev:>14.10} {:>14.10}", c / (l2 * eta));
            }
        }
    }

    // sl(2) keeps the whole family
    let a1 = LieAlgebra::of_type("A1".parse()?)?;
    let x = OrbitPoint::minimal(&a1, 1.0)?;
    for c in [1.0, 10.0] {
        let rep = verify_quaternionic(&x, &PotentialFamily::for_algebra(&a1, c)?, 50, 1)?;
        println!("A1, c = {c}: J^2 = -1 holds: {}", rep.checks.get("j_squared_operator").unwrap().pass);
    }
    Ok(())
}
