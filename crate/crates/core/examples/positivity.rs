//! rho' > max(0, -eta rho'') decides whether g is positive definite; compare
//! with the smallest eigenvalue of the Gram matrix.
//!
//! ```bash
//! cargo run --release --example positivity
//! ```

use orbit_hk::chevalley::LieAlgebra;
use orbit_hk::hyperkahler::{positivity_condition, real_operators, ExplicitPotential, HkStructure, Potential, PotentialFamily};
use orbit_hk::linalg::min_symmetric_eigenvalue;
use orbit_hk::orbit::{tangent_space, OrbitPoint};

fn report(name: &str, pot: &dyn Potential, alg: &LieAlgebra, eta: f64) -> Result<(), Box<dyn std::error::Error>> {
    let x = OrbitPoint::minimal_with_eta(alg, eta)?;
    let ts = tangent_space(&x)?;
    let hk = HkStructure::new(&x, pot)?;
    let gram_min = min_symmetric_eigenvalue(&real_operators(&hk, &ts).gram);
    println!("{name:<22} eta = {eta:<5} condition {:<5}  min Gram eigenvalue {gram_min:+.4}", positivity_condition(pot, eta));
    Ok(())
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let alg = LieAlgebra::of_type("A2".parse()?)?;
    for eta in [0.1, 1.0, 10.0] {
        report("family, c = 0", &PotentialFamily::for_algebra(&alg, 0.0)?, &alg, eta)?;
        report("family, c = 5", &PotentialFamily::for_algebra(&alg, 5.0)?, &alg, eta)?;
        let bad = ExplicitPotential { d1: |e| 1.0 / (e * e), d2: |e| -2.0 / (e * e * e) };
        report("rho' = 1/eta^2", &bad, &alg, eta)?;
    }
    Ok(())
}
