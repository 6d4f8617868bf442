use std::fmt;

use std::hash::{Hash, Hasher};

use serde::ser::{Serialize, SerializeMap, Serializer};
use serde_json::Value;
use thiserror::Error;

use super::{Grammar, Symbol};
use crate::deep;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TreeError {
    #[error("`{0}` is not a nonterminal of the grammar")]
    UnknownNonterminal(Symbol),
    #[error("tree not generated by grammar: no rule {nt} -> {}", fmt_labels(.children))]
    NoMatchingRule { nt: Symbol, children: Vec<Symbol> },
    #[error("malformed JSON tree: {0}")]
    Json(String),
}

fn fmt_labels(labels: &[Symbol]) -> String {
    if labels.is_empty() {
        super::EPSILON.to_string()
    } else {
        labels.iter().map(Symbol::as_str).collect::<Vec<_>>().join(" ")
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Child {
    Leaf(Symbol),
    Node(DerivationTree),
}

/// A node labeled by a nonterminal with an ordered list of children.
///
/// `Clone`, `Eq`, `Hash`, `Debug` and `Drop` recurse through [`deep`], so
/// arbitrarily deep trees are safe to copy, compare and free.
pub struct DerivationTree {
    nt: Symbol,
    children: Vec<Child>,
}

impl Clone for DerivationTree {
    fn clone(&self) -> Self {
        deep(|| DerivationTree { nt: self.nt.clone(), children: self.children.clone() })
    }
}

impl PartialEq for DerivationTree {
    fn eq(&self, other: &Self) -> bool {
        deep(|| self.nt == other.nt && self.children == other.children)
    }
}

impl Eq for DerivationTree {}

impl Hash for DerivationTree {
    fn hash<H: Hasher>(&self, state: &mut H) {
        deep(|| {
            self.nt.hash(state);
            self.children.hash(state);
        })
    }
}

impl fmt::Debug for DerivationTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        deep(|| f.debug_struct("DerivationTree").field("nt", &self.nt).field("children", &self.children).finish())
    }
}

impl Drop for DerivationTree {
    fn drop(&mut self) {
        if self.children.iter().any(|c| matches!(c, Child::Node(_))) {
            let children = std::mem::take(&mut self.children);
            deep(move || drop(children));
        }
    }
}

impl DerivationTree {
    pub fn new(nt: Symbol, children: Vec<Child>) -> Self {
        DerivationTree { nt, children }
    }

    pub fn nt(&self) -> &Symbol {
        &self.nt
    }

    pub fn children(&self) -> &[Child] {
        &self.children
    }

    pub fn subtrees(&self) -> impl Iterator<Item = &DerivationTree> {
        self.children.iter().filter_map(|c| match c {
            Child::Node(t) => Some(t),
            Child::Leaf(_) => None,
        })
    }

    /// Labels of the children: terminal tokens and child nonterminals.
    pub fn child_labels(&self) -> Vec<Symbol> {
        self.children
            .iter()
            .map(|c| match c {
                Child::Leaf(s) => s.clone(),
                Child::Node(t) => t.nt.clone(),
            })
            .collect()
    }

    /// Preorder walk over this node and all nonterminal descendants.
    pub fn preorder(&self) -> Preorder<'_> {
        Preorder { stack: vec![self] }
    }

    /// Terminal leaves, left to right.
    pub fn leaves(&self) -> Vec<&Symbol> {
        let mut out = Vec::new();
        self.collect_leaves(&mut out);
        out
    }

    fn collect_leaves<'a>(&'a self, out: &mut Vec<&'a Symbol>) {
        deep(|| {
            for c in &self.children {
                match c {
                    Child::Leaf(s) => out.push(s),
                    Child::Node(t) => t.collect_leaves(out),
                }
            }
        })
    }

    pub fn yield_len(&self) -> usize {
        self.preorder().map(|t| t.children.iter().filter(|c| matches!(c, Child::Leaf(_))).count()).sum()
    }

    pub fn yield_string(&self, separator: &str) -> String {
        self.leaves().iter().map(|s| s.as_str()).collect::<Vec<_>>().join(separator)
    }

    /// Nonterminal nodes plus terminal leaves.
    pub fn node_count(&self) -> usize {
        self.preorder().map(|t| 1 + t.children.iter().filter(|c| matches!(c, Child::Leaf(_))).count()).sum()
    }

    pub fn nonterminal_count(&self) -> usize {
        self.preorder().count()
    }
}

pub struct Preorder<'a> {
    stack: Vec<&'a DerivationTree>,
}

impl<'a> Iterator for Preorder<'a> {
    type Item = &'a DerivationTree;

    fn next(&mut self) -> Option<Self::Item> {
        let node = self.stack.pop()?;
        let start = self.stack.len();
        self.stack.extend(node.subtrees());
        self.stack[start..].reverse();
        Some(node)
    }
}

/// S-expression form, e.g. `(S (NP n) (VP v))`.
impl fmt::Display for DerivationTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&super::tree_to_sexpr(self))
    }
}

/// Serializes as `{"nt": "S", "children": [{"nt": "NP", "children": ["n"]}, ...]}`,
/// with terminals as bare strings.
impl Serialize for DerivationTree {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        deep(|| {
            let mut map = serializer.serialize_map(Some(2))?;
            map.serialize_entry("nt", self.nt.as_str())?;
            map.serialize_entry("children", &self.children)?;
            map.end()
        })
    }
}

impl Serialize for Child {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        match self {
            Child::Leaf(s) => serializer.serialize_str(s),
            Child::Node(t) => t.serialize(serializer),
        }
    }
}

/// The JSON form as a [`Value`]. Use `serde_json::to_writer` on the tree
/// itself to stream very deep trees.
pub fn tree_to_json(t: &DerivationTree) -> Value {
    serde_json::to_value(t).expect("trees always serialize")
}

/// Reads the JSON form back, checking every node against `g`.
pub fn json_to_tree(g: &Grammar, v: &Value) -> Result<DerivationTree, TreeError> {
    let tree = json_node(v)?;
    g.check_tree(&tree)?;
    Ok(tree)
}

fn json_node(v: &Value) -> Result<DerivationTree, TreeError> {
    deep(|| json_node_here(v))
}

fn json_node_here(v: &Value) -> Result<DerivationTree, TreeError> {
    let bad = |m: &str| TreeError::Json(m.to_string());
    let obj = v.as_object().ok_or_else(|| bad("node must be an object"))?;
    let nt = obj.get("nt").and_then(Value::as_str).ok_or_else(|| bad("node needs a string `nt`"))?;
    let children = obj
        .get("children")
        .and_then(Value::as_array)
        .ok_or_else(|| bad("node needs a `children` array"))?
        .iter()
        .map(|c| match c {
            Value::String(s) => Ok(Child::Leaf(Symbol::new(s))),
            other => json_node(other).map(Child::Node),
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(DerivationTree::new(Symbol::new(nt), children))
}
