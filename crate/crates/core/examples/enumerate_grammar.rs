//! Lists the first trees of a small English grammar, or of a grammar file
//! given on the command line.
//!
//!     cargo run --example enumerate_grammar -- grammars/logic.cfg 20

use cfgrank::{tree_to_sexpr, Codec, Grammar, Natural};

const ENGLISH: &str = include_str!("../grammars/english.cfg");

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut args = std::env::args().skip(1);
    let text = match args.next() {
        Some(path) => std::fs::read_to_string(path)?,
        None => ENGLISH.to_string(),
    };
    let count: u32 = args.next().map_or(Ok(15), |s| s.parse())?;

    let g = Grammar::parse(&text)?.validate()?;
    let codec = Codec::new(&g);
    for item in codec.enumerate(g.start_name(), Natural::from(0u32), Natural::from(count))? {
        let (i, t) = item?;
        println!("{i:>4}  {:<16} {}", t.yield_string(" "), tree_to_sexpr(&t));
    }
    Ok(())
}
