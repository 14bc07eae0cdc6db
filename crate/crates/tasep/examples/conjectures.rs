//! More than three particle classes: the exact solver evaluates the open
//! conjectures (shape of the least likely states, product formula for the
//! minimum, integrality) and shows why naive repeated collapsing fails.
//!
//! Run with `cargo run --example conjectures`.

use tasep::stationary::{
    check_conjectures, compositions_up_to, generator_stationary, naive_multitype_candidates,
};

fn main() -> tasep::Result<()> {
    println!("composition        states  min prob        shape  product  integral");
    for n in 2..=6usize {
        for composition in compositions_up_to(n, 4) {
            if composition.iter().filter(|&&c| c > 0).count() < 2 {
                continue;
            }
            let report = check_conjectures(&composition)?;
            let flag = |b: bool| if b { "yes" } else { "NO " };
            println!(
                "{:<18} {:>6}  {:<14} {:>5}  {:>7}  {:>8}",
                format!("{composition:?}"),
                report.state_count,
                report.min_probability.to_string(),
                flag(report.least_likely_are_reversed_speed_order),
                flag(report.minimum_product_matches()),
                flag(report.all_integer_multiples),
            );
        }
    }

    // four distinct classes on a 4-cycle: the smallest case separating the
    // true law from every obvious collapsing generalization
    let exact = generator_stationary(&[1, 1, 1, 1])?;
    println!("\nN = 4, all classes distinct:");
    println!("  P(1324) = {}", exact.get("1324").unwrap());
    println!("  P(1423) = {}", exact.get("1423").unwrap());
    assert_ne!(exact.get("1324"), exact.get("1423"));

    for candidate in naive_multitype_candidates(&[1, 1, 1, 1])? {
        let matches = candidate.distribution == exact;
        println!("  candidate '{}': matches exact law = {matches}", candidate.name);
        assert!(!matches);
    }
    Ok(())
}
