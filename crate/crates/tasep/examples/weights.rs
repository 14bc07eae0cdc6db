//! Weights of binary sequences: W(A) counts the sequences dominated by A,
//! and obeys the removal/split recursion used everywhere else in the crate.
//!
//! Run with `cargo run --example weights`.

use tasep::seq::BinarySequence;

fn main() -> tasep::Result<()> {
    for text in ["1010", "0101", "10100", "1011010"] {
        let a: BinarySequence = text.parse()?;
        println!("W({a}) = {}", a.weight());
    }

    // the dominated set itself, for a small example
    let a: BinarySequence = "1010".parse()?;
    let dominated = a.enumerate_dominated()?;
    println!("\nsequences dominated by {a}:");
    for b in &dominated {
        println!("  {b}");
    }
    assert_eq!(a.weight(), (dominated.len() as u32).into());

    // recursion: drop a terminal 0, drop an initial 1, or split at a 01
    let a: BinarySequence = "1011010".parse()?;
    let terms = a.weight_identity_terms()?;
    println!("\nW({a}) = {} decomposes as", a.weight());
    if let Some(x) = &terms.drop_last_zero {
        println!("  W({x}) = {}   (terminal 0 removed)", x.weight());
    }
    if let Some(y) = &terms.drop_first_one {
        println!("  W({y}) = {}   (initial 1 removed)", y.weight());
    }
    for (x, y) in &terms.splits {
        println!(
            "  W({x})·W({y}) = {}·{} (split at a 01)",
            x.weight(),
            y.weight()
        );
    }
    assert_eq!(terms.total(), a.weight());

    // every nonempty sequence balances inflow against outflow
    println!("\nflow balance for {a}:");
    for b in a.transitions_in() {
        println!("  in  from {b} (weight {})", b.weight());
    }
    for c in a.transitions_out() {
        println!("  out to   {c}");
    }
    assert!(a.flow_balanced());
    Ok(())
}
