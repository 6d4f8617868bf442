use std::fmt;

use thiserror::Error;

use super::{Grammar, NtId, Symbol};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Check {
    /// The nonterminal derives at least one finite tree.
    Productivity,
    /// The nonterminal derives infinitely many trees.
    InfiniteLanguage,
    /// Always taking rule 0 from this nonterminal reaches an all-terminal tree.
    ZeroTermination,
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Check::Productivity => "unproductive: derives no finite tree",
            Check::InfiniteLanguage => "finite language: derives only finitely many trees",
            Check::ZeroTermination => "zero expansion does not terminate: rule 0 never reaches terminals",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub nonterminal: Symbol,
    pub check: Check,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.nonterminal, self.check)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("invalid grammar: {}", .violations.iter().map(ToString::to_string).collect::<Vec<_>>().join("; "))]
pub struct ValidationError {
    pub violations: Vec<Violation>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NonterminalStatus {
    pub name: Symbol,
    pub reachable: bool,
    pub productive: bool,
    pub infinite: bool,
    pub zero_terminates: bool,
}

impl NonterminalStatus {
    pub fn is_ok(&self) -> bool {
        self.productive && self.infinite && self.zero_terminates
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValidationReport {
    pub statuses: Vec<NonterminalStatus>,
    /// Failures on nonterminals reachable from the start symbol.
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn unreachable(&self) -> impl Iterator<Item = &Symbol> {
        self.statuses.iter().filter(|s| !s.reachable).map(|s| &s.name)
    }
}

pub(super) fn check(g: &Grammar) -> ValidationReport {
    let n = g.nonterminal_count();
    let reachable = reachable_from(g, g.start());
    let productive = productive(g);

    // Edges of rules whose right-hand sides are fully productive.
    let mut succ: Vec<Vec<usize>> = vec![Vec::new(); n];
    for u in g.nonterminals() {
        for rule in g.rules(u) {
            if rule.nonterminals().all(|w| productive[w.0]) {
                succ[u.0].extend(rule.nonterminals().map(|w| w.0));
            }
        }
    }
    for s in &mut succ {
        s.sort_unstable();
        s.dedup();
    }
    let closure: Vec<Vec<bool>> = (0..n).map(|u| successors_closure(&succ, u)).collect();
    let cyclic: Vec<bool> = (0..n).map(|u| productive[u] && closure[u][u]).collect();
    let infinite: Vec<bool> =
        (0..n).map(|v| productive[v] && (cyclic[v] || (0..n).any(|u| closure[v][u] && cyclic[u]))).collect();

    let zero = zero_terminating(g);

    let statuses: Vec<NonterminalStatus> = g
        .nonterminals()
        .map(|id| NonterminalStatus {
            name: g.name(id).clone(),
            reachable: reachable[id.0],
            productive: productive[id.0],
            infinite: infinite[id.0],
            zero_terminates: zero[id.0],
        })
        .collect();

    let mut violations = Vec::new();
    for st in statuses.iter().filter(|s| s.reachable) {
        let failed = [
            (st.productive, Check::Productivity),
            (st.infinite, Check::InfiniteLanguage),
            (st.zero_terminates, Check::ZeroTermination),
        ];
        for (ok, check) in failed {
            if !ok {
                violations.push(Violation { nonterminal: st.name.clone(), check });
            }
        }
    }
    ValidationReport { statuses, violations }
}

fn reachable_from(g: &Grammar, start: NtId) -> Vec<bool> {
    let mut seen = vec![false; g.nonterminal_count()];
    let mut stack = vec![start];
    seen[start.0] = true;
    while let Some(u) = stack.pop() {
        for w in g.rules(u).iter().flat_map(|r| r.nonterminals()) {
            if !seen[w.0] {
                seen[w.0] = true;
                stack.push(w);
            }
        }
    }
    seen
}

/// Least fixpoint: `v` is productive if some rule has only productive nonterminals.
fn productive(g: &Grammar) -> Vec<bool> {
    let mut prod = vec![false; g.nonterminal_count()];
    loop {
        let mut changed = false;
        for v in g.nonterminals() {
            if !prod[v.0] && g.rules(v).iter().any(|r| r.nonterminals().all(|w| prod[w.0])) {
                prod[v.0] = true;
                changed = true;
            }
        }
        if !changed {
            return prod;
        }
    }
}

/// Least fixpoint of `Z(v) = |T_v| >= 1 or Z holds for every nonterminal of N_v[0]`.
fn zero_terminating(g: &Grammar) -> Vec<bool> {
    let mut z = vec![false; g.nonterminal_count()];
    loop {
        let mut changed = false;
        for v in g.nonterminals() {
            if z[v.0] {
                continue;
            }
            let set = g.rule_set(v);
            let ok = set.terminal_count() > 0
                || set.nonterminal_rules().first().is_some_and(|r| r.nonterminals().all(|w| z[w.0]));
            if ok {
                z[v.0] = true;
                changed = true;
            }
        }
        if !changed {
            return z;
        }
    }
}

/// Nodes reachable from `u` by one or more edges.
fn successors_closure(succ: &[Vec<usize>], u: usize) -> Vec<bool> {
    let mut seen = vec![false; succ.len()];
    let mut stack: Vec<usize> = succ[u].clone();
    while let Some(w) = stack.pop() {
        if !seen[w] {
            seen[w] = true;
            stack.extend(&succ[w]);
        }
    }
    seen
}
