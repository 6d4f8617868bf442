//! The subtree-reusing decoder next to the plain one. Where they differ, the
//! LZ decoder has copied an earlier finished subtree.

use cfgrank::{diff_report, lz_decode, tree_to_sexpr, Grammar, LzCodec, Natural};

const ENGLISH: &str = include_str!("../grammars/english.cfg");

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let g = Grammar::parse(ENGLISH)?.validate()?;

    println!("{:>4}  {:<24} plain", "n", "lz");
    for row in diff_report(&g, "S", &Natural::from(40u32))? {
        println!("{:>4}  {:<24} {}", row.index, row.lz_yield, row.plain_yield);
    }

    let t = lz_decode(&g, "S", &Natural::from(5u32))?;
    println!("\n5 -> {}", tree_to_sexpr(&t));

    // A stricter eligibility rule reuses fewer subtrees.
    let strict = LzCodec::new(&g).with_eligibility(|t| t.node_count() >= 8);
    let rows = strict.diff_report("S", &Natural::from(1000u32))?;
    let default = diff_report(&g, "S", &Natural::from(1000u32))?;
    println!("differences below 1000: default {}, strict {}", default.len(), rows.len());
    Ok(())
}
