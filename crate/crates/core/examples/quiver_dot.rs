//! Quivers of monoid algebras in GraphViz DOT form.
//!
//! Run with: cargo run --example quiver_dot

use monoid_rep::fixtures;
use monoid_rep::quiver::{quiver, Analysis, QuiverMode};
use monoid_rep::report::quiver_dot;

fn main() {
    for (name, m, mode) in [
        (
            "FLRB2 (free left regular band)",
            fixtures::flrb2(),
            QuiverMode::Auto,
        ),
        (
            "N2C2 (null square times C2)",
            fixtures::n2c2(),
            QuiverMode::GeneralEr,
        ),
    ] {
        let an = Analysis::new(m).unwrap();
        let q = quiver(&an, mode).unwrap();
        println!("// {name}: mode {}, {} arrows", q.mode, q.total_arrows());
        print!("{}", quiver_dot(&q));
        println!();
    }
}
