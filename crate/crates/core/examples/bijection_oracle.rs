//! Cross-checks the codec against brute-force enumeration of small trees.

use cfgrank::oracle::{all_trees, bijection_check};
use cfgrank::{encode, Grammar};

const ENGLISH: &str = include_str!("../grammars/english.cfg");

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let g = Grammar::parse(ENGLISH)?.validate()?;

    for t in all_trees(&g, "S", 8)? {
        println!("{:>4}  {}", encode(&g, &t)?, t);
    }

    let report = bijection_check(&g, "S", 12, 10_000)?;
    println!(
        "{} trees of at most 12 nodes, indices 0..={}: {}",
        report.trees_checked,
        report.indices_checked - 1,
        if report.is_clean() { "bijective".to_string() } else { format!("{} witnesses", report.witnesses.len()) }
    );
    Ok(())
}
