//! The minimal orbit through t e_theta: eta, tangent space, cohomogeneity and
//! the complex symplectic form.
//!
//! ```bash
//! cargo run --release --example minimal_orbit -- B3 0.5
//! ```

use num_complex::Complex64;
use orbit_hk::chevalley::LieAlgebra;
use orbit_hk::orbit::{cohomogeneity, tangent_space, theta_nilpotency_exact, OrbitPoint};
use orbit_hk::sampling::{random_element, stream_rng};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut args = std::env::args().skip(1);
    let ty = args.next().unwrap_or_else(|| "A2".into()).parse()?;
    let t: f64 = args.next().map_or(Ok(1.0), |s| s.parse())?;
    let alg = LieAlgebra::of_type(ty)?;

    let (cube_zero, rank_sq) = theta_nilpotency_exact(&alg);
    println!("ad(e_theta)^3 = 0: {cube_zero}, rank ad(e_theta)^2 = {rank_sq}");

    let x = OrbitPoint::minimal(&alg, t)?;
    println!("eta(t e_theta) = {} (t^2 lambda^2 with lambda^2 = {})", x.eta(), x.eta() / (t * t));

    let ts = tangent_space(&x)?;
    println!("tangent space: complex dim {}, real dim {}, rank gap {:.1e}", ts.complex_dim(), ts.real_dim(), ts.rank_info.gap());

    let coh = cohomogeneity(&x)?;
    println!(
        "compact group orbit: real dim {} of {}, cohomogeneity {}",
        coh.group_orbit_real_dim, coh.tangent_real_dim, coh.cohomogeneity
    );

    let mut rng = stream_rng(7, 0);
    let a = random_element(alg.dim(), &mut rng);
    let b = random_element(alg.dim(), &mut rng);
    let w: Complex64 = x.omega_c(&a, &b)?;
    let w2 = x.omega_c_via_field(&a, &b)?;
    println!("omega_c(xi_A, xi_B) = {w:.6}  (via -<xi_A, B>: {w2:.6})");
    Ok(())
}
