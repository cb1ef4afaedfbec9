//! Transition monoid of a complete DFA and its classification.
//!
//! The automaton below recognizes words over {a, b} whose last letter is b;
//! its transition monoid is the three-element monoid {1, a, b} with
//! xa = a, xb = b (a right-zero pair with adjoined identity), the smallest
//! monoid that is right Fountain but not in ER.
//!
//! Run with: cargo run --example dfa_transition_monoid

use monoid_rep::io::{parse_input, InputFormat};
use monoid_rep::quiver::{quiver, Analysis, QuiverMode};

fn main() {
    let dfa = "\
states 2 symbols a b
initial 0
accepting 1
0 a 0
1 a 0
0 b 1
1 b 1
";
    let m = parse_input(dfa, InputFormat::Dfa, 1000).unwrap();
    println!("transition monoid order: {}", m.order());

    let an = Analysis::new(m).unwrap();
    println!("right Fountain: {}", an.cr.right_fountain);
    println!("in ER:          {}", an.cr.is_er);
    for (flag, witness) in &an.cr.witnesses {
        println!("  {flag}: {witness}");
    }

    // no quiver formula applies outside ER; the error names the witness
    match quiver(&an, QuiverMode::Auto) {
        Ok(q) => println!("quiver: {} arrows", q.total_arrows()),
        Err(e) => println!("quiver: {e}"),
    }

    // a second machine whose transition monoid is a group
    let cyclic = "states 3 symbols r\n0 r 1\n1 r 2\n2 r 0\n";
    let m = parse_input(cyclic, InputFormat::Dfa, 1000).unwrap();
    let an = Analysis::new(m).unwrap();
    let q = quiver(&an, QuiverMode::Auto).unwrap();
    println!(
        "\ncyclic rotation DFA: order {}, aperiodic = {}, quiver arrows = {}",
        an.m.order(),
        an.cr.is_aperiodic,
        q.total_arrows()
    );
}
