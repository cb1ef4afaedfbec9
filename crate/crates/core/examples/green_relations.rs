//! Green's relations of a transformation monoid, printed as an eggbox
//! summary: one block per J-class with its R- and L-class structure.
//!
//! Run with: cargo run --example green_relations

use monoid_rep::green::{green_data, maximal_subgroup};
use monoid_rep::monoid_core::{FiniteMonoid, GeneratorMap};
use std::collections::HashSet;

fn main() {
    // the monoid generated by a cycle and a collapse on four points
    let gens = vec![
        GeneratorMap::total(vec![1, 2, 3, 0]),
        GeneratorMap::total(vec![0, 0, 2, 3]),
    ];
    let m = FiniteMonoid::from_generators(4, &gens, 10_000).unwrap();
    println!("order: {}", m.order());

    let gd = green_data(&m);
    println!(
        "classes: {} R, {} L, {} J; {} idempotents",
        gd.r_classes.len(),
        gd.l_classes.len(),
        gd.j_classes.len(),
        gd.idempotents.len()
    );

    for (jc, class) in gd.j_classes.iter().enumerate() {
        let n_r: HashSet<usize> = class.iter().map(|&x| gd.r_class_of[x]).collect();
        let n_l: HashSet<usize> = class.iter().map(|&x| gd.l_class_of[x]).collect();
        let tag = if gd.regular_j[jc] { "regular" } else { "null" };
        print!(
            "J{jc}: {} elements, {} R x {} L ({tag})",
            class.len(),
            n_r.len(),
            n_l.len()
        );
        if gd.regular_j[jc] {
            let e = *gd
                .idempotents
                .iter()
                .find(|&&e| gd.j_class_of[e] == jc)
                .unwrap();
            let g = maximal_subgroup(&m, &gd, e).unwrap();
            print!(", maximal subgroup of order {}", g.order());
        }
        println!();
    }

    // words for a few elements
    if let Some(words) = m.gen_words() {
        println!("\nshortest words (a = cycle, b = collapse):");
        for x in m.elements().take(8) {
            let w: String = words[x]
                .iter()
                .map(|&g| if g == 0 { 'a' } else { 'b' })
                .collect();
            println!(
                "  element {x}: \"{}\"",
                if w.is_empty() { "1".into() } else { w }
            );
        }
    }
}
