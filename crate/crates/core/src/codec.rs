//! A bijection between naturals and the derivation trees of a
//! validated grammar.
//!
//! To decode `n` at nonterminal `v`: when `n < |T_v|` the answer is terminal
//! rule `n`. Otherwise `n - |T_v|` is read as an [`IntegerizedStack`]. A mod
//! `|N_v|` pop picks the nonterminal rule, and the rest of the stack is split
//! into one index per nonterminal on that rule's right-hand side. Encoding
//! runs the same steps backwards.

use num_bigint::BigUint;
use num_traits::ToPrimitive;
use thiserror::Error;

use crate::deep;
use crate::grammar::{Child, DerivationTree, NtId, RhsSymbol, Symbol, TreeError, ValidGrammar};
use crate::intstack::{IntegerizedStack, StackError};
use crate::numerics::Natural;

/// Default cap on rule expansions per decoded tree.
pub const DEFAULT_BUDGET: u64 = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DecodeError {
    #[error("`{0}` is not a nonterminal of the grammar")]
    UnknownNonterminal(String),
    #[error("decode exceeded its budget of {0} expansions")]
    BudgetExceeded(u64),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EncodeError {
    #[error(transparent)]
    Tree(#[from] TreeError),
    #[error(transparent)]
    Stack(#[from] StackError),
}

/// Counters collected while decoding one tree.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct DecodeStats {
    /// Recursive expansion calls, one per nonterminal node produced.
    pub calls: u64,
}

/// Decoder/encoder bound to one grammar.
///
/// A chain rule with a single nonterminal alternative, like `AP -> a AP`,
/// only lowers the index by `|T_v|` per level, so tree depth can be linear
/// in the index. The budget caps the work; the recursion itself grows its
/// stack as needed.
#[derive(Debug, Clone)]
pub struct Codec<'g> {
    grammar: &'g ValidGrammar,
    budget: Option<u64>,
}

impl<'g> Codec<'g> {
    pub fn new(grammar: &'g ValidGrammar) -> Self {
        Codec { grammar, budget: Some(DEFAULT_BUDGET) }
    }

    /// `None` disables the expansion budget.
    pub fn with_budget(mut self, budget: Option<u64>) -> Self {
        self.budget = budget;
        self
    }

    pub fn grammar(&self) -> &'g ValidGrammar {
        self.grammar
    }

    pub fn decode(&self, v: &str, n: &Natural) -> Result<DerivationTree, DecodeError> {
        self.decode_with_stats(v, n).map(|(t, _)| t)
    }

    pub fn decode_with_stats(&self, v: &str, n: &Natural) -> Result<(DerivationTree, DecodeStats), DecodeError> {
        let id = self.grammar.id(v).ok_or_else(|| DecodeError::UnknownNonterminal(v.to_string()))?;
        let mut stats = DecodeStats::default();
        let tree = self.expand(id, n.clone(), &mut stats)?;
        Ok((tree, stats))
    }

    fn expand(&self, id: NtId, n: Natural, stats: &mut DecodeStats) -> Result<DerivationTree, DecodeError> {
        deep(|| self.expand_here(id, n, stats))
    }

    fn expand_here(&self, id: NtId, n: Natural, stats: &mut DecodeStats) -> Result<DerivationTree, DecodeError> {
        stats.calls += 1;
        if let Some(budget) = self.budget {
            if stats.calls > budget {
                return Err(DecodeError::BudgetExceeded(budget));
            }
        }
        let g = self.grammar;
        let set = g.rule_set(id);
        let name = set.name().clone();

        let terminals = set.terminal_count();
        if let Some(j) = small_index(&n, terminals) {
            return Ok(terminal_tree(name, &set.rules()[j].rhs));
        }

        let mut stack = IntegerizedStack::new(n - terminals);
        let which = stack
            .modpop(&BigUint::from(set.nonterminal_rule_count()))
            .expect("validated nonterminal has nonterminal rules");
        let rule = &set.nonterminal_rules()[to_index(&which)];
        let mut indices =
            stack.split(rule.nonterminal_count()).expect("nonterminal rule has a nonterminal").into_iter();

        let mut children = Vec::with_capacity(rule.rhs.len());
        for sym in &rule.rhs {
            children.push(match sym {
                RhsSymbol::Terminal(t) => Child::Leaf(t.clone()),
                RhsSymbol::Nonterminal(child) => {
                    let idx = indices.next().expect("one index per nonterminal");
                    Child::Node(self.expand(*child, idx, stats)?)
                }
            });
        }
        Ok(DerivationTree::new(name, children))
    }

    /// Inverse of [`decode`](Self::decode) for trees rooted at any nonterminal.
    pub fn encode(&self, t: &DerivationTree) -> Result<Natural, EncodeError> {
        deep(|| self.encode_here(t))
    }

    fn encode_here(&self, t: &DerivationTree) -> Result<Natural, EncodeError> {
        let g = self.grammar;
        let j = g.rule_index_of(t)?;
        let set = g.rule_set(g.id(t.nt()).expect("rule_index_of checked the label"));
        let terminals = set.terminal_count();
        if j < terminals {
            return Ok(Natural::from(j));
        }
        let parts = t.subtrees().map(|sub| self.encode(sub)).collect::<Result<Vec<_>, _>>()?;
        let mut stack = IntegerizedStack::new(IntegerizedStack::join(&parts)?);
        stack.modpush(&BigUint::from(set.nonterminal_rule_count()), &BigUint::from(j - terminals))?;
        Ok(stack.into_value() + terminals)
    }

    /// Lazily decodes indices `from, from + 1, ...` (`count` of them).
    pub fn enumerate(&self, v: &str, from: Natural, count: Natural) -> Result<Enumerate<'_, 'g>, DecodeError> {
        if self.grammar.id(v).is_none() {
            return Err(DecodeError::UnknownNonterminal(v.to_string()));
        }
        let end = &from + count;
        Ok(Enumerate { codec: self, nt: v.to_string(), next: from, end })
    }
}

/// Iterator returned by [`Codec::enumerate`]. Holds only the next index.
pub struct Enumerate<'c, 'g> {
    codec: &'c Codec<'g>,
    nt: String,
    next: Natural,
    end: Natural,
}

impl Iterator for Enumerate<'_, '_> {
    type Item = Result<(Natural, DerivationTree), DecodeError>;

    fn next(&mut self) -> Option<Self::Item> {
        if self.next >= self.end {
            return None;
        }
        let n = self.next.clone();
        self.next += 1u32;
        Some(self.codec.decode(&self.nt, &n).map(|t| (n, t)))
    }
}

/// Decodes with the default budget.
pub fn decode(g: &ValidGrammar, v: &str, n: &Natural) -> Result<DerivationTree, DecodeError> {
    Codec::new(g).decode(v, n)
}

pub fn encode(g: &ValidGrammar, t: &DerivationTree) -> Result<Natural, EncodeError> {
    Codec::new(g).encode(t)
}

/// `Some(n)` when `n < bound`.
pub(crate) fn small_index(n: &Natural, bound: usize) -> Option<usize> {
    n.to_usize().filter(|&i| i < bound)
}

pub(crate) fn to_index(n: &Natural) -> usize {
    n.to_usize().expect("rule choice fits in usize")
}

pub(crate) fn terminal_tree(name: Symbol, rhs: &[RhsSymbol]) -> DerivationTree {
    let children = rhs
        .iter()
        .map(|s| match s {
            RhsSymbol::Terminal(t) => Child::Leaf(t.clone()),
            RhsSymbol::Nonterminal(_) => unreachable!("terminal rule"),
        })
        .collect();
    DerivationTree::new(name, children)
}
