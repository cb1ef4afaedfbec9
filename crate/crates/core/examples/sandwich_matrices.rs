//! Sandwich matrices of regular J-classes and one-sided invertibility over
//! the rational group algebra.
//!
//! Run with: cargo run --example sandwich_matrices

use monoid_rep::fixtures;
use monoid_rep::green::green_data;
use monoid_rep::structure::{left_invertible, right_invertible, sandwich_matrix};

fn main() {
    for (name, m) in [("RZ2I", fixtures::rz2i()), ("FLRB2", fixtures::flrb2())] {
        println!("== {name}");
        let gd = green_data(&m);
        for (jc, e) in gd.regular_j_representatives() {
            let p = sandwich_matrix(&m, &gd, e).unwrap();
            println!(
                "J{jc} at idempotent {e}: {} L-classes x {} R-classes over G of order {}",
                p.rows.len(),
                p.cols.len(),
                p.group.order()
            );
            for row in &p.entries {
                let cells: Vec<String> = row
                    .iter()
                    .map(|x| match x {
                        Some(g) => format!("{g}"),
                        None => "0".into(),
                    })
                    .collect();
                println!("    [{}]", cells.join(" "));
            }
            println!(
                "    right invertible: {}, left invertible: {}",
                right_invertible(&p, &m),
                left_invertible(&p, &m)
            );
        }
        println!();
    }
}
