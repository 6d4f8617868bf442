//! Checks a few grammars against the conditions the codec needs.

use cfgrank::Grammar;

fn main() {
    let cases = [
        ("binary trees", "S -> S S | x"),
        ("finite", "S -> a | b"),
        ("no way out", "S -> A b | c\nA -> A S | S"),
        ("unproductive", "S -> S T | x\nT -> T x"),
        ("unreachable junk", "S -> S S | x\nJ -> J"),
    ];
    for (name, src) in cases {
        let g = Grammar::parse(src).expect("syntax");
        let report = g.report();
        println!("{name}: {}", if report.is_valid() { "valid" } else { "invalid" });
        for v in &report.violations {
            println!("  {v}");
        }
        for u in report.unreachable() {
            println!("  {} unreachable, ignored", u);
        }
    }

    match Grammar::parse("S -> a\n<eps> -> b") {
        Ok(_) => unreachable!(),
        Err(e) => println!("syntax error: {e}"),
    }
}
