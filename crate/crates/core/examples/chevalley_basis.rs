//! Build a Chevalley basis, look at a few structure constants, run the exact
//! checks and round-trip the structure-constant cache.
//!
//! ```bash
//! cargo run --release --example chevalley_basis -- G2
//! ```

use orbit_hk::chevalley::{cache_path, LieAlgebra};
use orbit_hk::rootsystem::SimpleType;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let ty: SimpleType = std::env::args().nth(1).unwrap_or_else(|| "G2".into()).parse()?;
    let alg = LieAlgebra::of_type(ty)?;
    let rs = alg.root_system();
    println!("{ty}: dim {}, rank {}", alg.dim(), alg.rank());

    // [e_a, e_b] = N(a, b) e_{a+b} between positive roots
    println!("N(a, b) for positive a, b with a + b a root:");
    for (i, j, k, c) in alg.structure_constants() {
        if let (Some(a), Some(b), Some(s)) = (alg.basis_root(i), alg.basis_root(j), alg.basis_root(k)) {
            let positive = |r: &[i64]| r.iter().all(|&x| x >= 0);
            if i < j && positive(&a) && positive(&b) && positive(&s) {
                let (p, _) = rs.root_string(&a, &b)?;
                println!("  N({a:?}, {b:?}) = {c:>2}   (p + 1 = {})", p + 1);
            }
        }
    }

    let checks = alg.verify(42);
    for c in &checks.checks {
        println!("  {:<32} {}", c.name, if c.pass { "ok" } else { "FAIL" });
    }

    let dir = std::env::temp_dir().join("orbit-hk-example-cache");
    std::fs::create_dir_all(&dir)?;
    alg.write_cache(&cache_path(&dir, ty))?;
    let (again, warnings) = LieAlgebra::load_or_build(ty, Some(&dir))?;
    println!("cache {}: reloaded identical = {}, warnings = {warnings:?}", cache_path(&dir, ty).display(), again.structure_constants() == alg.structure_constants());
    Ok(())
}
