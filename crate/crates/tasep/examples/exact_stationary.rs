//! Three independent routes to the stationary distribution of the cycle —
//! the product-of-weights formula, an exact generator solve, and the
//! collapsing pushforward — agree rational-for-rational.
//!
//! Run with `cargo run --example exact_stationary`.

use tasep::collapse::CycleState;
use tasep::stationary::{
    binary_segments, collapse_pushforward, formula_distribution, formula_probability,
    generator_stationary_three_type, mass, preimage_count,
};

fn main() -> tasep::Result<()> {
    let (n, a, b) = (5, 2, 1);
    let formula = formula_distribution(n, a, b)?;
    let generator = generator_stationary_three_type(n, a, b)?;
    let pushforward = collapse_pushforward(n, a, b)?;
    assert_eq!(formula, generator);
    assert_eq!(formula, pushforward);
    println!("N = {n}, a = {a}, b = {b}: all three computations agree\n");
    for (state, p) in &formula.entries {
        println!("  P({state}) = {p}");
    }
    println!("  total = {}", formula.total());

    // the formula reaches far beyond what the solver could enumerate:
    // a single state on the 15-cycle
    let x: CycleState = "*10**10100*0101".parse()?;
    let segments = binary_segments(&x)?;
    println!("\nstate {x}");
    println!("  segments: {segments:?}");
    println!("  mass = {}", mass(&x)?);
    println!("  collapse preimages = {}", preimage_count(&x));
    println!("  P = {}", formula_probability(&x)?);
    Ok(())
}
