//! lambda^2 = kappa(e_theta, f_theta) for the simple types, next to the listed values.
//!
//! ```bash
//! cargo run --release --example lambda_table
//! ```

use orbit_hk::chevalley::LieAlgebra;
use orbit_hk::cli::{lambda_row, lambda_table_types};

fn main() {
    println!("{:<4} {:>8} {:>8} {:>12} {:>10}  match", "type", "lambda^2", "listed", "matrix-size", "rank-index");
    let show = |v: Option<i64>| v.map_or("-".to_string(), |x| x.to_string());
    for ty in lambda_table_types() {
        let alg = LieAlgebra::of_type(ty).expect("builds");
        let row = lambda_row(&alg);
        println!(
            "{:<4} {:>8} {:>8} {:>12} {:>10}  {}",
            row.algebra,
            row.computed,
            show(row.published),
            show(row.published_matrix_size),
            show(row.published_rank_index),
            if row.matches { "yes" } else { "NO" }
        );
    }
}
