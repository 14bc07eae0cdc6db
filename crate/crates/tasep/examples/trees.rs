//! The bijection between binary trees and dominated sequence pairs: every
//! tree T maps to (f(T), g(T)) with f(T) dominating g(T), and decode
//! inverts the map. The number of trees with f(T) = A is exactly W(A).
//!
//! Run with `cargo run --example trees`.

use std::collections::BTreeMap;

use tasep::seq::BinarySequence;
use tasep::tree::{decode, enumerate_trees};

fn main() -> tasep::Result<()> {
    for edges in 0..=4 {
        println!("trees with {edges} edges: {}", enumerate_trees(edges)?.len());
    }

    println!("\nall trees with 3 edges:");
    for t in enumerate_trees(3)? {
        println!("  {t}  f = {:4}  g = {}", t.f_encode().to_string(), t.g_encode());
    }

    // decoding recovers the tree from the pair
    let a: BinarySequence = "10".parse()?;
    let b: BinarySequence = "01".parse()?;
    let t = decode(&a, &b)?;
    println!("\ndecode({a}, {b}) = {t}");
    assert_eq!(t.f_encode(), a);
    assert_eq!(t.g_encode(), b);

    // counting trees by their f-encoding recovers the weights
    let mut counts: BTreeMap<String, u64> = BTreeMap::new();
    for t in enumerate_trees(4)? {
        *counts.entry(t.f_encode().to_string()).or_insert(0) += 1;
    }
    println!("\ntrees per 4-edge encoding (equals the weight):");
    for (key, count) in counts {
        let a: BinarySequence = key.parse()?;
        assert_eq!(a.weight(), count.into());
        println!("  {key}: {count}");
    }
    Ok(())
}
