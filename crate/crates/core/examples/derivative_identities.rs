//! d eta, dI d eta and d eta ^ I d eta against their closed forms, with the
//! derivatives taken exactly (the functions are real quadratic in X), and the
//! Kähler form assembled from them.
//!
//! ```bash
//! cargo run --release --example derivative_identities -- F4
//! ```

use orbit_hk::chevalley::LieAlgebra;
use orbit_hk::hyperkahler::{derivative_residuals, kahler_assembly_residual, PotentialFamily};
use orbit_hk::orbit::OrbitPoint;
use orbit_hk::sampling::{random_element, stream_rng};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let ty = std::env::args().nth(1).unwrap_or_else(|| "G2".into()).parse()?;
    let alg = LieAlgebra::of_type(ty)?;
    let x = OrbitPoint::minimal(&alg, 0.8)?;
    let pot = PotentialFamily::for_algebra(&alg, 1.0)?;
    let mut rng = stream_rng(42, 0);
    let mut worst = [0.0f64; 4];
    for _ in 0..1000 {
        let a = random_element(alg.dim(), &mut rng);
        let b = random_element(alg.dim(), &mut rng);
        let r = derivative_residuals(&x, &a, &b);
        let k = kahler_assembly_residual(&x, &pot, &a, &b)?;
        for (w, v) in worst.iter_mut().zip([r.d_eta, r.d_i_d_eta, r.wedge, k]) {
            *w = w.max(v);
        }
    }
    println!("{ty}, 1000 random pairs, largest residuals:");
    for (name, v) in ["d eta", "dI d eta", "d eta ^ I d eta", "omega_I assembled"].iter().zip(worst) {
        println!("  {name:<20} {v:.2e}");
    }
    Ok(())
}
