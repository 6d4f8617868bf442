//! Context-free grammars: the rule table, its text format, and validation.
//!
//! Grammar files are line oriented:
//!
//! ```text
//! # comment to end of line
//! S  -> NP VP
//! NP -> n | d n | d AP n | NP PP
//! AP -> a | a AP
//! ```
//!
//! Nonterminals are exactly the tokens that appear on some left-hand side and
//! the first left-hand side is the start symbol. Several lines may share a
//! left-hand side; their alternatives are appended in order. `<eps>` stands
//! for an empty alternative.
//!
//! After parsing, each nonterminal's rules are stably partitioned so that
//! terminal rules (no nonterminal on the right) come first. Rule indices used
//! by the codecs always refer to this normalized order.

mod sexpr;
mod tree;
mod validate;

use std::collections::HashMap;
use std::fmt;
use std::ops::Deref;
use std::sync::Arc;

use thiserror::Error;

pub use sexpr::{sexpr_to_tree, tree_to_sexpr, SexprError};
pub use tree::{json_to_tree, tree_to_json, Child, DerivationTree, TreeError};
pub use validate::{Check, NonterminalStatus, ValidationError, ValidationReport, Violation};

/// Token spelling the empty alternative.
pub const EPSILON: &str = "<eps>";

/// An interned grammar token.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Symbol(Arc<str>);

impl Symbol {
    pub fn new(s: &str) -> Self {
        Symbol(Arc::from(s))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl Deref for Symbol {
    type Target = str;
    fn deref(&self) -> &str {
        &self.0
    }
}

impl std::borrow::Borrow<str> for Symbol {
    fn borrow(&self) -> &str {
        &self.0
    }
}

impl fmt::Debug for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(&*self.0, f)
    }
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl From<&str> for Symbol {
    fn from(s: &str) -> Self {
        Symbol::new(s)
    }
}

/// Dense index of a nonterminal within its grammar.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NtId(pub usize);

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum RhsSymbol {
    Terminal(Symbol),
    Nonterminal(NtId),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rule {
    pub lhs: NtId,
    pub rhs: Vec<RhsSymbol>,
}

impl Rule {
    pub fn is_terminal(&self) -> bool {
        self.nonterminal_count() == 0
    }

    pub fn nonterminal_count(&self) -> usize {
        self.nonterminals().count()
    }

    pub fn nonterminals(&self) -> impl Iterator<Item = NtId> + '_ {
        self.rhs.iter().filter_map(|s| match s {
            RhsSymbol::Nonterminal(id) => Some(*id),
            RhsSymbol::Terminal(_) => None,
        })
    }
}

/// All rules of one nonterminal, terminal rules first.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RuleSet {
    name: Symbol,
    rules: Vec<Rule>,
    terminal_count: usize,
}

impl RuleSet {
    pub fn name(&self) -> &Symbol {
        &self.name
    }

    pub fn rules(&self) -> &[Rule] {
        &self.rules
    }

    /// `|T_v|`
    pub fn terminal_count(&self) -> usize {
        self.terminal_count
    }

    /// `|N_v|`
    pub fn nonterminal_rule_count(&self) -> usize {
        self.rules.len() - self.terminal_count
    }

    pub fn terminal_rules(&self) -> &[Rule] {
        &self.rules[..self.terminal_count]
    }

    pub fn nonterminal_rules(&self) -> &[Rule] {
        &self.rules[self.terminal_count..]
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub message: String,
}

/// A parsed, normalized, but not yet validated grammar.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Grammar {
    start: NtId,
    sets: Vec<RuleSet>,
    ids: HashMap<Symbol, NtId>,
}

impl Grammar {
    pub fn parse(text: &str) -> Result<Grammar, ParseError> {
        parse_grammar(text)
    }

    pub fn start(&self) -> NtId {
        self.start
    }

    pub fn start_name(&self) -> &Symbol {
        self.name(self.start)
    }

    pub fn nonterminal_count(&self) -> usize {
        self.sets.len()
    }

    pub fn nonterminals(&self) -> impl Iterator<Item = NtId> {
        (0..self.sets.len()).map(NtId)
    }

    pub fn id(&self, name: &str) -> Option<NtId> {
        self.ids.get(name).copied()
    }

    pub fn name(&self, id: NtId) -> &Symbol {
        &self.sets[id.0].name
    }

    pub fn rule_set(&self, id: NtId) -> &RuleSet {
        &self.sets[id.0]
    }

    pub fn rules(&self, id: NtId) -> &[Rule] {
        &self.sets[id.0].rules
    }

    /// Index (in normalized order) of the rule of `node.nt` whose right-hand
    /// side matches the node's children.
    pub fn rule_index_of(&self, node: &DerivationTree) -> Result<usize, TreeError> {
        let id = self.id(node.nt()).ok_or_else(|| TreeError::UnknownNonterminal(node.nt().clone()))?;
        self.rules(id)
            .iter()
            .position(|rule| self.rule_matches(rule, node.children()))
            .ok_or_else(|| TreeError::NoMatchingRule { nt: node.nt().clone(), children: node.child_labels() })
    }

    fn rule_matches(&self, rule: &Rule, children: &[Child]) -> bool {
        rule.rhs.len() == children.len()
            && rule.rhs.iter().zip(children).all(|(sym, child)| match (sym, child) {
                (RhsSymbol::Terminal(t), Child::Leaf(leaf)) => t == leaf,
                (RhsSymbol::Nonterminal(id), Child::Node(sub)) => self.name(*id) == sub.nt(),
                _ => false,
            })
    }

    /// Checks that every node of `tree` applies a rule of this grammar.
    pub fn check_tree(&self, tree: &DerivationTree) -> Result<(), TreeError> {
        let mut stack = vec![tree];
        while let Some(node) = stack.pop() {
            self.rule_index_of(node)?;
            stack.extend(node.subtrees());
        }
        Ok(())
    }

    pub fn report(&self) -> ValidationReport {
        validate::check(self)
    }

    /// Checks productivity and the infinite-language and zero-termination
    /// requirements for every nonterminal reachable from the start symbol.
    pub fn validate(self) -> Result<ValidGrammar, ValidationError> {
        let report = self.report();
        if report.is_valid() {
            Ok(ValidGrammar(self))
        } else {
            Err(ValidationError { violations: report.violations })
        }
    }

    fn write_rhs(&self, f: &mut fmt::Formatter<'_>, rule: &Rule) -> fmt::Result {
        if rule.rhs.is_empty() {
            return f.write_str(EPSILON);
        }
        for (i, sym) in rule.rhs.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            match sym {
                RhsSymbol::Terminal(t) => f.write_str(t)?,
                RhsSymbol::Nonterminal(id) => f.write_str(self.name(*id))?,
            }
        }
        Ok(())
    }
}

/// Prints the normalized rule table in the grammar file format.
impl fmt::Display for Grammar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        // Start symbol first so reparsing keeps it.
        let order = std::iter::once(self.start).chain(self.nonterminals().filter(|&id| id != self.start));
        for id in order {
            write!(f, "{} ->", self.name(id))?;
            for (i, rule) in self.rules(id).iter().enumerate() {
                f.write_str(if i == 0 { " " } else { " | " })?;
                self.write_rhs(f, rule)?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

/// A grammar that passed [`Grammar::validate`]. Only these can be decoded.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValidGrammar(Grammar);

impl ValidGrammar {
    pub fn grammar(&self) -> &Grammar {
        &self.0
    }

    pub fn into_inner(self) -> Grammar {
        self.0
    }
}

impl Deref for ValidGrammar {
    type Target = Grammar;
    fn deref(&self) -> &Grammar {
        &self.0
    }
}

impl std::str::FromStr for Grammar {
    type Err = ParseError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_grammar(s)
    }
}

pub fn parse_grammar(text: &str) -> Result<Grammar, ParseError> {
    struct Line<'a> {
        number: usize,
        lhs: &'a str,
        alternatives: Vec<Vec<&'a str>>,
    }

    let err = |line: usize, message: String| ParseError { line, message };

    let mut lines = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let number = i + 1;
        let content = raw.split('#').next().unwrap_or("");
        let tokens: Vec<&str> = content.split_whitespace().collect();
        if tokens.is_empty() {
            continue;
        }
        let arrow = tokens
            .iter()
            .position(|t| *t == "->")
            .ok_or_else(|| err(number, "expected `LHS -> alternatives`".into()))?;
        if arrow != 1 {
            return Err(err(number, "left-hand side must be exactly one token".into()));
        }
        let lhs = tokens[0];
        if lhs == "|" || lhs == EPSILON {
            return Err(err(number, format!("`{lhs}` cannot be a left-hand side")));
        }
        let mut alternatives = vec![Vec::new()];
        for &tok in &tokens[2..] {
            match tok {
                "->" => return Err(err(number, "`->` may appear only once per line".into())),
                "|" => alternatives.push(Vec::new()),
                _ => alternatives.last_mut().expect("non-empty").push(tok),
            }
        }
        for alt in &mut alternatives {
            if alt.is_empty() {
                return Err(err(number, format!("empty alternative (write `{EPSILON}`)")));
            }
            if alt.contains(&EPSILON) {
                if alt.len() > 1 {
                    return Err(err(number, format!("`{EPSILON}` must stand alone")));
                }
                alt.clear();
            }
        }
        lines.push(Line { number, lhs, alternatives });
    }

    if lines.is_empty() {
        return Err(err(0, "grammar has no rules".into()));
    }

    let mut ids: HashMap<Symbol, NtId> = HashMap::new();
    let mut names = Vec::new();
    for line in &lines {
        if !ids.contains_key(line.lhs) {
            let sym = Symbol::new(line.lhs);
            ids.insert(sym.clone(), NtId(names.len()));
            names.push(sym);
        }
    }

    let mut raw_rules: Vec<Vec<Rule>> = vec![Vec::new(); names.len()];
    for line in &lines {
        let lhs = ids[line.lhs];
        for alt in &line.alternatives {
            let rhs: Vec<RhsSymbol> = alt
                .iter()
                .map(|tok| match ids.get(*tok) {
                    Some(&id) => RhsSymbol::Nonterminal(id),
                    None => RhsSymbol::Terminal(Symbol::new(tok)),
                })
                .collect();
            let rule = Rule { lhs, rhs };
            if raw_rules[lhs.0].contains(&rule) {
                return Err(err(line.number, format!("duplicate rule `{} -> {}`", line.lhs, display_alt(alt))));
            }
            raw_rules[lhs.0].push(rule);
        }
    }

    let sets = names
        .into_iter()
        .zip(raw_rules)
        .map(|(name, rules)| {
            let (mut terminal, nonterminal): (Vec<Rule>, Vec<Rule>) = rules.into_iter().partition(Rule::is_terminal);
            let terminal_count = terminal.len();
            terminal.extend(nonterminal);
            RuleSet { name, rules: terminal, terminal_count }
        })
        .collect();

    Ok(Grammar { start: NtId(0), sets, ids })
}

fn display_alt(alt: &[&str]) -> String {
    if alt.is_empty() {
        EPSILON.to_string()
    } else {
        alt.join(" ")
    }
}
