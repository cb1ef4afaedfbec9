//! Fountain / ER / block-group classification of the named fixtures.
//!
//! Run with: cargo run --example classify_fixtures

use monoid_rep::fixtures;
use monoid_rep::quiver::Analysis;

fn main() {
    println!(
        "{:<6} {:>5}  {:^3} {:^3} {:^3} {:^3} {:^3} {:^3} {:^3}",
        "name", "order", "rF", "lF", "F", "ER", "EL", "BG", "ap"
    );
    for (name, m) in fixtures::all_fixtures() {
        let an = Analysis::new(m).unwrap();
        let c = &an.cr;
        let b = |x: bool| if x { "y" } else { "." };
        println!(
            "{:<6} {:>5}  {:^3} {:^3} {:^3} {:^3} {:^3} {:^3} {:^3}",
            name,
            an.m.order(),
            b(c.right_fountain),
            b(c.left_fountain),
            b(c.fountain),
            b(c.is_er),
            b(c.is_el),
            b(c.is_block_group),
            b(c.is_aperiodic),
        );
        for (flag, witness) in &c.witnesses {
            println!("         {flag}: {witness}");
        }
    }
}
