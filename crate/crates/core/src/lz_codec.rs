//! Decoding with back-references to complete subtrees.
//!
//! While a tree is being built, every complete subtree already attached to it
//! is a potential target. At a nonterminal `v`, the eligible targets labeled
//! `v` take indices `0..L`; the remaining indices shift down by `L` and
//! decode as in the plain codec. The mapping is total but not injective, so there
//! is no encoder.
//!
//! Targets are collected in preorder over the outermost tree under
//! construction, skipping structural duplicates. A node is attached to its
//! parent only once it is finished, so the visible part of that tree is the
//! outermost node's finished children; finished children of a deeper node
//! that is still open are not visible yet. A subtree is eligible by
//! default when it has at least three descendants (nonterminal nodes and
//! terminal leaves below its root), so `(NP d n)` is too small while
//! `(NP d (AP a) n)` qualifies.

use num_bigint::BigUint;

use crate::codec::{small_index, terminal_tree, to_index, DecodeError, DecodeStats, DEFAULT_BUDGET};
use crate::deep;
use crate::grammar::{Child, DerivationTree, NtId, RhsSymbol, Symbol, ValidGrammar};
use crate::intstack::IntegerizedStack;
use crate::numerics::Natural;

/// Decides whether a complete subtree may be referenced.
pub type Eligibility = dyn Fn(&DerivationTree) -> bool + Send + Sync;

/// Minimum number of descendants for a subtree to be referenced by default.
pub const MIN_TARGET_DESCENDANTS: usize = 3;

/// At least [`MIN_TARGET_DESCENDANTS`] nodes below the root, counting leaves.
pub fn default_eligibility(t: &DerivationTree) -> bool {
    let descendants = t.node_count() - 1;
    descendants >= MIN_TARGET_DESCENDANTS
}

#[derive(Debug, Clone, PartialEq, Eq)]
struct Frame {
    nt: Symbol,
    children: Vec<Child>,
}

/// The partially built outermost tree.
///
/// Frame `i + 1` is the in-progress child of frame `i`, not yet attached.
/// Everything in a frame's `children` is complete.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct BuildCursor {
    frames: Vec<Frame>,
}

impl BuildCursor {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn is_empty(&self) -> bool {
        self.frames.is_empty()
    }

    /// Starts an incomplete node as the next child of the innermost open node.
    pub fn open(&mut self, nt: Symbol) {
        self.frames.push(Frame { nt, children: Vec::new() });
    }

    /// Appends a complete child to the innermost open node.
    pub fn push_child(&mut self, child: Child) {
        self.frames.last_mut().expect("push_child needs an open node").children.push(child);
    }

    /// Marks the innermost open node complete and returns it.
    pub fn close(&mut self) -> DerivationTree {
        let f = self.frames.pop().expect("close needs an open node");
        DerivationTree::new(f.nt, f.children)
    }

    /// Subtrees reachable from the outermost node, in preorder.
    pub fn complete_subtrees(&self) -> impl Iterator<Item = &DerivationTree> {
        self.frames
            .first()
            .into_iter()
            .flat_map(|f| f.children.iter())
            .filter_map(|c| match c {
                Child::Node(t) => Some(t),
                Child::Leaf(_) => None,
            })
            .flat_map(DerivationTree::preorder)
    }

    /// Distinct complete subtrees labeled `v` that pass `eligible`, in first-seen order.
    pub fn lz_targets(&self, v: &str, eligible: &Eligibility) -> Vec<&DerivationTree> {
        let mut out: Vec<&DerivationTree> = Vec::new();
        for t in self.complete_subtrees() {
            if t.nt().as_str() == v && !out.contains(&t) && eligible(t) {
                out.push(t);
            }
        }
        out
    }
}

pub struct LzCodec<'g> {
    grammar: &'g ValidGrammar,
    budget: Option<u64>,
    eligible: Box<Eligibility>,
}

impl<'g> LzCodec<'g> {
    pub fn new(grammar: &'g ValidGrammar) -> Self {
        LzCodec { grammar, budget: Some(DEFAULT_BUDGET), eligible: Box::new(default_eligibility) }
    }

    pub fn with_budget(mut self, budget: Option<u64>) -> Self {
        self.budget = budget;
        self
    }

    pub fn with_eligibility<F>(mut self, f: F) -> Self
    where
        F: Fn(&DerivationTree) -> bool + Send + Sync + 'static,
    {
        self.eligible = Box::new(f);
        self
    }

    pub fn decode(&self, v: &str, n: &Natural) -> Result<DerivationTree, DecodeError> {
        self.decode_with_stats(v, n).map(|(t, _)| t)
    }

    pub fn decode_with_stats(&self, v: &str, n: &Natural) -> Result<(DerivationTree, DecodeStats), DecodeError> {
        let id = self.grammar.id(v).ok_or_else(|| DecodeError::UnknownNonterminal(v.to_string()))?;
        let mut stats = DecodeStats::default();
        let mut cursor = BuildCursor::new();
        let tree = self.expand(id, n.clone(), &mut cursor, &mut stats)?;
        Ok((tree, stats))
    }

    fn expand(
        &self,
        id: NtId,
        n: Natural,
        cursor: &mut BuildCursor,
        stats: &mut DecodeStats,
    ) -> Result<DerivationTree, DecodeError> {
        deep(|| self.expand_here(id, n, cursor, stats))
    }

    fn expand_here(
        &self,
        id: NtId,
        n: Natural,
        cursor: &mut BuildCursor,
        stats: &mut DecodeStats,
    ) -> Result<DerivationTree, DecodeError> {
        stats.calls += 1;
        if let Some(budget) = self.budget {
            if stats.calls > budget {
                return Err(DecodeError::BudgetExceeded(budget));
            }
        }
        let set = self.grammar.rule_set(id);
        let name = set.name().clone();

        let targets = cursor.lz_targets(&name, &*self.eligible);
        if let Some(i) = small_index(&n, targets.len()) {
            return Ok(targets[i].clone());
        }
        let n = n - targets.len();

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

        cursor.open(name);
        for sym in &rule.rhs {
            let child = match sym {
                RhsSymbol::Terminal(t) => Child::Leaf(t.clone()),
                RhsSymbol::Nonterminal(child) => {
                    let idx = indices.next().expect("one index per nonterminal");
                    match self.expand(*child, idx, cursor, stats) {
                        Ok(t) => Child::Node(t),
                        Err(e) => {
                            cursor.close();
                            return Err(e);
                        }
                    }
                }
            };
            cursor.push_child(child);
        }
        Ok(cursor.close())
    }

    /// Indices in `0..upto` where this decoder and the plain codec disagree on the yield.
    pub fn diff_report(&self, v: &str, upto: &Natural) -> Result<Vec<DiffRow>, DecodeError> {
        let plain = crate::codec::Codec::new(self.grammar).with_budget(self.budget);
        let mut rows = Vec::new();
        let mut i = Natural::default();
        while &i < upto {
            let b = self.decode(v, &i)?.yield_string("");
            let a = plain.decode(v, &i)?.yield_string("");
            if a != b {
                rows.push(DiffRow { index: i.clone(), lz_yield: b, plain_yield: a });
            }
            i += 1u32;
        }
        Ok(rows)
    }
}

/// One index where the two decoders produce different yields.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiffRow {
    pub index: Natural,
    pub lz_yield: String,
    pub plain_yield: String,
}

pub fn lz_decode(g: &ValidGrammar, v: &str, n: &Natural) -> Result<DerivationTree, DecodeError> {
    LzCodec::new(g).decode(v, n)
}

pub fn diff_report(g: &ValidGrammar, v: &str, upto: &Natural) -> Result<Vec<DiffRow>, DecodeError> {
    LzCodec::new(g).diff_report(v, upto)
}
