//! Brute-force enumeration of small derivation trees, used as ground truth
//! for the codecs.
//!
//! [`all_trees`] expands the leftmost unexpanded nonterminal of every partial
//! derivation, breadth first, pruning anything over the node bound. It only
//! reads the grammar's rule table and never calls into a codec.
//!
//! Node count is nonterminal nodes plus terminal leaves.

use std::collections::{HashSet, VecDeque};
use std::fmt;

use thiserror::Error;

use crate::codec::Codec;
use crate::grammar::{Child, DerivationTree, Grammar, NtId, RhsSymbol, ValidGrammar};
use crate::numerics::Natural;

/// Default cap on partial derivations explored by [`all_trees`].
pub const DEFAULT_ORACLE_BUDGET: usize = 5_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("`{0}` is not a nonterminal of the grammar")]
    UnknownNonterminal(String),
    #[error("oracle explored more than {0} partial derivations")]
    BudgetExceeded(usize),
}

struct Partial {
    /// Rule indices in preorder.
    choices: Vec<(NtId, usize)>,
    /// Unexpanded nonterminals; the leftmost is last.
    pending: Vec<NtId>,
    nodes: usize,
}

pub fn all_trees(g: &ValidGrammar, v: &str, max_nodes: usize) -> Result<Vec<DerivationTree>, OracleError> {
    all_trees_with_budget(g, v, max_nodes, DEFAULT_ORACLE_BUDGET)
}

pub fn all_trees_with_budget(
    g: &ValidGrammar,
    v: &str,
    max_nodes: usize,
    budget: usize,
) -> Result<Vec<DerivationTree>, OracleError> {
    let root = g.id(v).ok_or_else(|| OracleError::UnknownNonterminal(v.to_string()))?;
    let mut done: Vec<(usize, Vec<usize>, DerivationTree)> = Vec::new();
    if max_nodes == 0 {
        return Ok(Vec::new());
    }
    let mut queue = VecDeque::from([Partial { choices: Vec::new(), pending: vec![root], nodes: 1 }]);
    let mut explored = 0usize;

    while let Some(mut p) = queue.pop_front() {
        explored += 1;
        if explored > budget {
            return Err(OracleError::BudgetExceeded(budget));
        }
        let Some(u) = p.pending.pop() else {
            let tree = build(g, &mut p.choices.iter().copied());
            let key = p.choices.iter().map(|&(_, j)| j).collect();
            done.push((p.nodes, key, tree));
            continue;
        };
        for (j, rule) in g.rules(u).iter().enumerate() {
            let nodes = p.nodes + rule.rhs.len();
            if nodes > max_nodes {
                continue;
            }
            let mut choices = p.choices.clone();
            choices.push((u, j));
            let mut pending = p.pending.clone();
            pending.extend(rule.nonterminals().collect::<Vec<_>>().into_iter().rev());
            queue.push_back(Partial { choices, pending, nodes });
        }
    }

    done.sort_by(|a, b| (a.0, &a.1).cmp(&(b.0, &b.1)));
    Ok(done.into_iter().map(|(_, _, t)| t).collect())
}

fn build(g: &Grammar, choices: &mut impl Iterator<Item = (NtId, usize)>) -> DerivationTree {
    let (id, j) = choices.next().expect("choice per node");
    let rule = &g.rules(id)[j];
    let children = rule
        .rhs
        .iter()
        .map(|s| match s {
            RhsSymbol::Terminal(t) => Child::Leaf(t.clone()),
            RhsSymbol::Nonterminal(_) => Child::Node(build(g, choices)),
        })
        .collect();
    DerivationTree::new(g.name(id).clone(), children)
}

/// A decoder/encoder pair that [`bijection_check`] can audit.
pub trait TreeCodec {
    fn decode_tree(&self, v: &str, n: &Natural) -> Result<DerivationTree, String>;
    fn encode_tree(&self, t: &DerivationTree) -> Result<Natural, String>;
}

impl TreeCodec for Codec<'_> {
    fn decode_tree(&self, v: &str, n: &Natural) -> Result<DerivationTree, String> {
        self.decode(v, n).map_err(|e| e.to_string())
    }

    fn encode_tree(&self, t: &DerivationTree) -> Result<Natural, String> {
        self.encode(t).map_err(|e| e.to_string())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Witness {
    /// `decode(encode(tree))` is not `tree`.
    TreeRoundtrip { tree: DerivationTree, detail: String },
    /// `encode(decode(index))` is not `index`.
    IndexRoundtrip { index: Natural, detail: String },
    /// An oracle tree that no index in range decodes to.
    Unreached { tree: DerivationTree },
    /// A small decoded tree the oracle does not know.
    OutsideOracle { index: Natural, tree: DerivationTree },
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Witness::TreeRoundtrip { tree, detail } => write!(f, "tree {tree}: {detail}"),
            Witness::IndexRoundtrip { index, detail } => write!(f, "index {index}: {detail}"),
            Witness::Unreached { tree } => write!(f, "tree {tree} never decoded"),
            Witness::OutsideOracle { index, tree } => {
                write!(f, "index {index} decoded to {tree}, unknown to the oracle")
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BijectionReport {
    pub trees_checked: usize,
    pub indices_checked: u64,
    pub witnesses: Vec<Witness>,
}

impl BijectionReport {
    pub fn is_clean(&self) -> bool {
        self.witnesses.is_empty()
    }
}

/// Cross-checks the plain codec against the oracle. See [`bijection_check_with`].
pub fn bijection_check(
    g: &ValidGrammar,
    v: &str,
    max_nodes: usize,
    max_index: u64,
) -> Result<BijectionReport, OracleError> {
    bijection_check_with(&Codec::new(g), g, v, max_nodes, max_index)
}

/// Checks that
/// (a) every oracle tree of at most `max_nodes` nodes survives encode then decode,
/// (b) every index `0..=max_index` survives decode then encode, and
/// (c) among those indices, the decoded trees within the node bound are
///     exactly the oracle's trees.
pub fn bijection_check_with(
    codec: &impl TreeCodec,
    g: &ValidGrammar,
    v: &str,
    max_nodes: usize,
    max_index: u64,
) -> Result<BijectionReport, OracleError> {
    let trees = all_trees(g, v, max_nodes)?;
    let mut witnesses = Vec::new();

    for t in &trees {
        let back = codec.encode_tree(t).and_then(|n| codec.decode_tree(v, &n).map(|d| (n, d)));
        match back {
            Ok((_, ref d)) if d == t => {}
            Ok((n, d)) => witnesses.push(Witness::TreeRoundtrip {
                tree: t.clone(),
                detail: format!("encoded to {n}, which decodes to {d}"),
            }),
            Err(e) => witnesses.push(Witness::TreeRoundtrip { tree: t.clone(), detail: e }),
        }
    }

    let oracle: HashSet<&DerivationTree> = trees.iter().collect();
    let mut reached: HashSet<&DerivationTree> = HashSet::new();
    for i in 0..=max_index {
        let n = Natural::from(i);
        let d = match codec.decode_tree(v, &n) {
            Ok(d) => d,
            Err(e) => {
                witnesses.push(Witness::IndexRoundtrip { index: n, detail: e });
                continue;
            }
        };
        match codec.encode_tree(&d) {
            Ok(m) if m == n => {}
            Ok(m) => witnesses.push(Witness::IndexRoundtrip {
                index: n.clone(),
                detail: format!("decodes to {d}, which encodes to {m}"),
            }),
            Err(e) => witnesses.push(Witness::IndexRoundtrip { index: n.clone(), detail: e }),
        }
        if d.node_count() <= max_nodes {
            match oracle.get(&d) {
                Some(&t) => {
                    reached.insert(t);
                }
                None => witnesses.push(Witness::OutsideOracle { index: n, tree: d }),
            }
        }
    }
    for t in &trees {
        if !reached.contains(t) {
            witnesses.push(Witness::Unreached { tree: t.clone() });
        }
    }

    Ok(BijectionReport { trees_checked: trees.len(), indices_checked: max_index + 1, witnesses })
}
