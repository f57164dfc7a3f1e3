//! Root systems of every simple type from their Cartan matrices.
//!
//! ```bash
//! cargo run --example root_systems
//! cargo run --example root_systems -- F4
//! ```

use orbit_hk::rootsystem::{RootSystem, SimpleType};

fn show(ty: SimpleType) {
    let rs = RootSystem::from_type(ty);
    let theta = rs.highest_root_index();
    println!(
        "{ty:>3}: {:>3} positive roots, dim {:>3}, highest root {:?} (height {})",
        rs.num_positive(),
        rs.rank() + 2 * rs.num_positive(),
        rs.root(theta),
        rs.height(theta)
    );
}

fn main() {
    if let Some(label) = std::env::args().nth(1) {
        let ty: SimpleType = label.parse().unwrap_or_else(|e| panic!("{e}"));
        let rs = RootSystem::from_type(ty);
        println!("Cartan matrix of {ty}:");
        for row in rs.cartan_matrix() {
            println!("  {row:?}");
        }
        println!("squared lengths of simple roots: {:?}", rs.simple_norms());
        for (i, r) in rs.positive_roots().iter().enumerate() {
            println!("  {i:>3}  {r:?}");
        }
        return;
    }
    for label in ["A1", "A2", "A4", "B3", "C3", "D4", "D5", "G2", "F4", "E6", "E7", "E8"] {
        show(label.parse().unwrap());
    }
}
