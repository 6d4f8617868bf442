//! Propositional formulas as numbers and back.

use cfgrank::{decode, encode, sexpr_to_tree, Grammar, Natural};

const LOGIC: &str = include_str!("../grammars/logic.cfg");

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let g = Grammar::parse(LOGIC)?.validate()?;

    // Parentheses are terminals here, so they are quoted in the s-expression.
    let formula = r#"(F "(" (F (Atom p)) => (F ~ (F ~ (F (Atom p)))) ")")"#;
    let t = sexpr_to_tree(&g, formula)?;
    let n = encode(&g, &t)?;
    println!("{}  has number {n}", t.yield_string(" "));

    for i in [0u64, 1, 2, 3, 10, 100, 1000, 123_456_789] {
        let t = decode(&g, "F", &Natural::from(i))?;
        println!("{i:>10}  {}", t.yield_string(" "));
    }

    // Conjoin a formula with itself a few times; the number grows doubly
    // exponentially with the nesting.
    let mut f = formula.to_string();
    for _ in 0..4 {
        f = format!(r#"(F "(" {f} & {f} ")")"#);
    }
    let t = sexpr_to_tree(&g, &f)?;
    let n = encode(&g, &t)?;
    println!("{} symbols -> {} digits", t.yield_len(), n.to_string().len());
    assert_eq!(decode(&g, "F", &n)?, t);

    // Not every large index is practical: `Atom -> Atom '` peels only 3 off
    // per level, so some indices name astronomically deep trees.
    let big: Natural = "31415926535897932384626433832795028841971".parse()?;
    match decode(&g, "F", &big) {
        Ok(t) => println!("{big} = {}", t.yield_string(" ")),
        Err(e) => println!("{big}: {e}"),
    }
    Ok(())
}
