//! Two stochastic cross-checks of the exact law: occupancy of the
//! uniformized jump chain, and collapsing uniformly random pairs. Both are
//! fully reproducible from their seeds.
//!
//! Run with `cargo run --release --example monte_carlo`.

use tasep::collapse::CycleState;
use tasep::montecarlo::{sample_collapsed_uniform, simulate_chain, Tally};
use tasep::stationary::{enumerate_three_type_states, formula_distribution, CardState};

fn main() -> tasep::Result<()> {
    let (n, a, b) = (6, 2, 2);
    let exact = formula_distribution(n, a, b)?;

    let initial = enumerate_three_type_states(n, a, b)?[0].to_cards();
    println!("chain occupancy vs exact law (N = {n}, a = {a}, b = {b}):");
    for steps in [10_000u64, 100_000, 1_000_000] {
        let tally = simulate_chain(&initial, steps, 20_260_825);
        let mut symbols = Tally::default();
        for (key, &count) in &tally.counts {
            let cards: CardState = key.parse()?;
            let word = CycleState::from_cards(&cards)?.to_string();
            *symbols.counts.entry(word).or_insert(0) += count;
            symbols.total += count;
        }
        println!(
            "  {steps:>9} steps: TV = {:.4}",
            symbols.total_variation(&exact)
        );
    }

    println!("\ncollapsed uniform pairs vs exact law:");
    for samples in [1_000u64, 10_000, 100_000] {
        let tally = sample_collapsed_uniform(n, a, b, samples, 20_260_825)?;
        println!(
            "  {samples:>9} samples: TV = {:.4}",
            tally.total_variation(&exact)
        );
    }
    Ok(())
}
