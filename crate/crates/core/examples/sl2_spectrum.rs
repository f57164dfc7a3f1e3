//! Decompose an algebra under an sl(2)-triple and decide minimality; also the
//! exact S^k matrices.
//!
//! ```bash
//! cargo run --release --example sl2_spectrum -- A2
//! ```

use orbit_hk::chevalley::LieAlgebra;
use orbit_hk::orbit::{minimality_signature, sl2_spectrum, Sl2Triple};
use orbit_hk::sl2geom::sk_matrices;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let ty = std::env::args().nth(1).unwrap_or_else(|| "A2".into()).parse()?;
    let alg = LieAlgebra::of_type(ty)?;
    for (name, triple) in [("theta", Sl2Triple::theta(&alg)), ("principal", Sl2Triple::principal(&alg))] {
        let s = sl2_spectrum(&alg, &triple)?;
        println!("{ty}, {name} triple: S^k multiplicities {:?}, minimal: {}", s.multiplicities(), s.minimal);
        for (k, d) in &s.ef_diagonals {
            let rounded: Vec<i64> = d.iter().map(|x| x.round() as i64).collect();
            println!("   ad_E ad_F on S^{k}: {rounded:?}");
        }
        println!("   ad_H eigenvalues in [-2, 2]: {:?}", minimality_signature(&alg, &triple));
    }

    let s4 = sk_matrices(4);
    println!("\nS^4: phi_E, phi_H, phi_F");
    for m in [&s4.phi_e, &s4.phi_h, &s4.phi_f] {
        for row in m {
            println!("  {row:?}");
        }
        println!();
    }
    for k in 0..=12 {
        let f = sk_matrices(k).facts();
        println!("k = {k:>2}: exact relations hold: {}, phi_E phi_F = {:?}", f.all_hold(), f.ef_diagonal);
    }
    Ok(())
}
