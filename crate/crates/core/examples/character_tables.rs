//! Character tables of maximal subgroups, computed mod p and lifted to
//! exact root-of-unity expansions.
//!
//! Run with: cargo run --example character_tables

use monoid_rep::fixtures;
use monoid_rep::green::{green_data, maximal_subgroup};
use monoid_rep::grouprep::character_table;

fn main() {
    for (name, m) in [("C3", fixtures::c3()), ("S3", fixtures::s3())] {
        let gd = green_data(&m);
        let g = maximal_subgroup(&m, &gd, m.identity()).unwrap();
        let t = character_table(&g, 64).unwrap();
        println!(
            "== {name}: order {}, exponent {}, {} classes, working prime {}",
            g.order(),
            t.exponent,
            t.classes.len(),
            t.prime
        );
        print!("{:<6}", "");
        for c in &t.classes {
            print!("{:>14}", format!("K{}(x{})", c.rep, c.members.len()));
        }
        println!();
        for row in &t.rows {
            print!("{:<6}", row.label);
            for v in &row.values {
                print!("{:>14}", format!("{}", v.to_exact(t.exponent as u32)));
            }
            println!();
        }
        println!();
    }
}
