//! Tilde-classes, the right-stabilizer characterization, and the
//! translation bijections between tilde-classes of J-equivalent
//! idempotents.
//!
//! Run with: cargo run --example tilde_translations

use monoid_rep::fixtures;
use monoid_rep::fountain::{right_stabilizer_check, tilde_translation};
use monoid_rep::green::inverse_pair;
use monoid_rep::quiver::Analysis;

fn main() {
    let an = Analysis::new(fixtures::n2c2()).unwrap();
    println!("N2 x C2: tilde-L classes {:?}", an.tp.tilde_l_classes);
    for x in an.m.elements() {
        let (has, witness) = right_stabilizer_check(&an.m, x);
        println!(
            "  element {x}: stabilizer route says idempotent witness {:?} (has = {has})",
            witness
        );
    }

    // translation between the tilde-classes of the two right zeros of RZ2I
    let an = Analysis::new(fixtures::rz2i()).unwrap();
    let (e, f) = (fixtures::RZ2I_E, fixtures::RZ2I_F);
    let (x, y) = inverse_pair(&an.m, &an.gd, e, f).unwrap();
    let t = tilde_translation(&an.m, &an.gd, &an.tp, e, f, x, y).unwrap();
    println!(
        "\nRZ2I: inverse pair ({x}, {y}) translates tilde-L({e}) = {:?} to tilde-L({f}) = {:?}: {:?}",
        t.source, t.target, t.forward
    );
}
