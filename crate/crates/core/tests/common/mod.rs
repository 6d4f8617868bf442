#![allow(dead_code)]

use cfgrank::{Grammar, ValidGrammar};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const ENGLISH: &str = include_str!("../../grammars/english.cfg");
pub const BINARY: &str = include_str!("../../grammars/binary.cfg");
pub const LOGIC: &str = include_str!("../../grammars/logic.cfg");

pub const YIELDS_GOLDEN: &str = include_str!("../golden/english_yields.tsv");
pub const LZ_DIFF_GOLDEN: &str = include_str!("../golden/english_lz_diff.tsv");

pub fn valid(src: &str) -> ValidGrammar {
    Grammar::parse(src).unwrap().validate().unwrap()
}

pub fn english() -> ValidGrammar {
    valid(ENGLISH)
}

pub fn binary() -> ValidGrammar {
    valid(BINARY)
}

pub fn grammar_path(name: &str) -> String {
    format!("{}/grammars/{name}", env!("CARGO_MANIFEST_DIR"))
}

/// `(index, yield)` rows.
pub fn yields_golden() -> Vec<(u64, String)> {
    YIELDS_GOLDEN
        .lines()
        .map(|l| {
            let (i, y) = l.split_once('\t').unwrap();
            (i.parse().unwrap(), y.to_string())
        })
        .collect()
}

/// `(index, lz yield, plain yield)` rows.
pub fn lz_diff_golden() -> Vec<(u64, String, String)> {
    LZ_DIFF_GOLDEN
        .lines()
        .map(|l| {
            let f: Vec<&str> = l.split('\t').collect();
            (f[0].parse().unwrap(), f[1].to_string(), f[2].to_string())
        })
        .collect()
}

/// Source text of a random valid grammar over nonterminals `A B C`.
///
/// Every nonterminal rule carries at least two nonterminals, so tree size
/// grows roughly logarithmically in the index.
pub fn random_grammar_source(seed: u64) -> String {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let nts = ["A", "B", "C"];
    let terms = ["a", "b", "c"];
    let mut lines = Vec::new();
    for nt in nts {
        let mut alts: Vec<Vec<&str>> = Vec::new();
        for _ in 0..rng.gen_range(0..=2) {
            let len = rng.gen_range(1..=2);
            alts.push((0..len).map(|_| *terms.choose(&mut rng).unwrap()).collect());
        }
        for _ in 0..rng.gen_range(1..=3) {
            let mut rhs: Vec<&str> = (0..rng.gen_range(2..=3)).map(|_| *nts.choose(&mut rng).unwrap()).collect();
            if rng.gen_bool(0.5) {
                let at = rng.gen_range(0..=rhs.len());
                rhs.insert(at, terms.choose(&mut rng).unwrap());
            }
            alts.push(rhs);
        }
        alts.shuffle(&mut rng);
        alts.dedup();
        let alts: Vec<String> = alts.iter().map(|a| a.join(" ")).collect();
        lines.push(format!("{nt} -> {}", alts.join(" | ")));
    }
    lines.join("\n")
}

/// First seed from 0 whose grammar parses, validates, and reaches all three nonterminals.
pub fn random_grammar() -> (u64, ValidGrammar) {
    for seed in 0.. {
        let Ok(g) = Grammar::parse(&random_grammar_source(seed)) else { continue };
        if g.report().unreachable().next().is_some() {
            continue;
        }
        if let Ok(v) = g.validate() {
            return (seed, v);
        }
    }
    unreachable!()
}
