//! S-expression serialization of derivation trees.
//!
//! A node prints as `(NT child ...)`, a terminal leaf as a bare atom. Atoms
//! that would not survive re-reading (parentheses, quotes, backslashes) are
//! written as double-quoted strings with backslash escapes.

use thiserror::Error;

use super::{Child, DerivationTree, Grammar, Symbol, TreeError};
use crate::deep;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SexprError {
    #[error("malformed s-expression at byte {offset}: {message}")]
    Syntax { offset: usize, message: String },
    #[error(transparent)]
    Tree(#[from] TreeError),
}

pub fn tree_to_sexpr(t: &DerivationTree) -> String {
    let mut out = String::new();
    write_node(t, &mut out);
    out
}

fn write_node(t: &DerivationTree, out: &mut String) {
    deep(|| {
        out.push('(');
        write_atom(t.nt(), out);
        for c in t.children() {
            out.push(' ');
            match c {
                Child::Leaf(s) => write_atom(s, out),
                Child::Node(sub) => write_node(sub, out),
            }
        }
        out.push(')');
    })
}

fn write_atom(s: &str, out: &mut String) {
    let plain = !s.is_empty() && !s.chars().any(|c| c.is_whitespace() || matches!(c, '(' | ')' | '"' | '\\'));
    if plain {
        out.push_str(s);
        return;
    }
    out.push('"');
    for c in s.chars() {
        if matches!(c, '"' | '\\') {
            out.push('\\');
        }
        out.push(c);
    }
    out.push('"');
}

/// Parses `text` and checks every node against a rule of `g`.
pub fn sexpr_to_tree(g: &Grammar, text: &str) -> Result<DerivationTree, SexprError> {
    let mut p = Parser { src: text, pos: 0 };
    p.skip_ws();
    let tree = p.node()?;
    p.skip_ws();
    if p.pos != text.len() {
        return Err(p.error("trailing input after tree"));
    }
    g.check_tree(&tree)?;
    Ok(tree)
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

impl Parser<'_> {
    fn error(&self, message: &str) -> SexprError {
        SexprError::Syntax { offset: self.pos, message: message.to_string() }
    }

    fn peek(&self) -> Option<char> {
        self.src[self.pos..].chars().next()
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek()?;
        self.pos += c.len_utf8();
        Some(c)
    }

    fn skip_ws(&mut self) {
        while self.peek().is_some_and(char::is_whitespace) {
            self.bump();
        }
    }

    fn node(&mut self) -> Result<DerivationTree, SexprError> {
        deep(|| self.node_here())
    }

    fn node_here(&mut self) -> Result<DerivationTree, SexprError> {
        if self.peek() != Some('(') {
            return Err(self.error("expected `(`"));
        }
        self.bump();
        self.skip_ws();
        if self.peek() == Some('(') {
            return Err(self.error("node label must be an atom"));
        }
        let nt = self.atom()?;
        let mut children = Vec::new();
        loop {
            self.skip_ws();
            match self.peek() {
                Some(')') => {
                    self.bump();
                    return Ok(DerivationTree::new(nt, children));
                }
                Some('(') => children.push(Child::Node(self.node()?)),
                Some(_) => children.push(Child::Leaf(self.atom()?)),
                None => return Err(self.error("unclosed `(`")),
            }
        }
    }

    fn atom(&mut self) -> Result<Symbol, SexprError> {
        match self.peek() {
            None => Err(self.error("expected atom")),
            Some(')') => Err(self.error("expected atom, found `)`")),
            Some('"') => {
                self.bump();
                let mut s = String::new();
                loop {
                    match self.bump() {
                        None => return Err(self.error("unterminated string")),
                        Some('"') => break,
                        Some('\\') => match self.bump() {
                            Some(c) => s.push(c),
                            None => return Err(self.error("dangling escape")),
                        },
                        Some(c) => s.push(c),
                    }
                }
                Ok(Symbol::new(&s))
            }
            Some(_) => {
                let start = self.pos;
                while let Some(c) = self.peek() {
                    if c.is_whitespace() || matches!(c, '(' | ')') {
                        break;
                    }
                    if c == '"' {
                        return Err(self.error("quote inside atom"));
                    }
                    self.bump();
                }
                Ok(Symbol::new(&self.src[start..self.pos]))
            }
        }
    }
}
