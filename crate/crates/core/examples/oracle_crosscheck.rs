//! The two independent quiver routes on a fresh random corpus: the
//! counting formula against trace-form radical linear algebra.
//!
//! Run with: cargo run --release --example oracle_crosscheck

use monoid_rep::corpus::{self, CorpusConfig};
use monoid_rep::oracle::quiver_bruteforce;
use monoid_rep::quiver::{quiver, Analysis, QuiverMode};

fn main() {
    let cfg = CorpusConfig {
        seed: 2024,
        size_cap: 80,
        ..CorpusConfig::default()
    };
    let entries = corpus::aperiodic_er(&cfg, 25);
    println!(
        "checking {} aperiodic ER monoids (seed {})",
        entries.len(),
        cfg.seed
    );
    let mut arrows = 0usize;
    for e in &entries {
        let an = Analysis::new(e.monoid.clone()).unwrap();
        let q = quiver(&an, QuiverMode::AperiodicEr).unwrap();
        let bf = quiver_bruteforce(&e.monoid).unwrap();
        assert_eq!(q.arrows, bf.arrows, "{} disagrees", e.name);
        arrows += q.total_arrows();
        println!(
            "  {:<18} order {:>3}, {} vertices, {} arrows: agree",
            e.name,
            e.monoid.order(),
            q.vertices.len(),
            q.total_arrows()
        );
    }
    println!("all agree; {arrows} arrows verified");
}
