//! Explicit projective indecomposable modules: the tensor quotient of the
//! tilde-class bimodule against each degree-one irreducible.
//!
//! Run with: cargo run --example projective_modules

use monoid_rep::fixtures;
use monoid_rep::green::maximal_subgroup;
use monoid_rep::grouprep::character_table;
use monoid_rep::modules::{injective_envelope, projective_indecomposable, GroupModule};
use monoid_rep::oracle::module_tests;
use monoid_rep::quiver::Analysis;

fn main() {
    let an = Analysis::new(fixtures::n2c2()).unwrap();
    let m = &an.m;
    println!("monoid N2 x C2, order {}", m.order());

    for (jc, e) in an.gd.regular_j_representatives() {
        let g = maximal_subgroup(m, &an.gd, e).unwrap();
        let table = character_table(&g, 2 * g.order() as u64 * m.order() as u64).unwrap();
        for ri in 0..table.rows.len() {
            let v = GroupModule::from_character_row(g.clone(), &table, ri).unwrap();
            let p = projective_indecomposable(m, &an.gd, &an.tp, &an.cr, e, &v).unwrap();
            let t = module_tests(m, &p).unwrap();
            println!(
                "P(J{jc}, {}): dim {}, top dim {}, socle dim {}, basis {:?}",
                v.label, p.dim, t.top_dim, t.socle_dim, p.basis_labels
            );
        }
    }

    // the trivial simple of N2 has a 2-dimensional injective envelope
    let n2 = fixtures::n2();
    let an = Analysis::new(n2).unwrap();
    let g = maximal_subgroup(&an.m, &an.gd, an.m.identity()).unwrap();
    let v = GroupModule::trivial(g);
    let env = injective_envelope(&an.m, an.m.identity(), &v).unwrap();
    let t = module_tests(&an.m, &env).unwrap();
    println!(
        "\nN2 injective envelope of the trivial simple: dim {}, socle dim {}",
        env.dim, t.socle_dim
    );
}
