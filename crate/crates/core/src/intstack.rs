//! A stack of naturals stored in a single natural.
//!
//! `pop` unpairs the value with Rosenberg-Strong: for `(x, y) = rs_unpair(value)`
//! it returns `y` and keeps `x`. Popping an empty (zero) stack yields zero and
//! leaves it at zero, so any natural can be read as an infinite stack.

use num_traits::Zero;
use thiserror::Error;

use crate::numerics::{mod_pair, mod_unpair, rs_pair, rs_unpair, Natural, PairingError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StackError {
    #[error(transparent)]
    Pairing(#[from] PairingError),
    #[error("split needs at least one part")]
    EmptySplit,
    #[error("cannot join an empty list")]
    EmptyJoin,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct IntegerizedStack {
    value: Natural,
}

impl IntegerizedStack {
    pub fn new(value: Natural) -> Self {
        IntegerizedStack { value }
    }

    pub fn value(&self) -> &Natural {
        &self.value
    }

    pub fn into_value(self) -> Natural {
        self.value
    }

    pub fn pop(&mut self) -> Natural {
        let (rest, top) = rs_unpair(&self.value);
        self.value = rest;
        top
    }

    /// Inverse of [`pop`](Self::pop).
    pub fn push(&mut self, a: &Natural) {
        self.value = rs_pair(&self.value, a);
    }

    /// Pops `value mod k`, leaving `floor(value / k)`.
    pub fn modpop(&mut self, k: &Natural) -> Result<Natural, StackError> {
        let (digit, rest) = mod_unpair(k, &self.value)?;
        self.value = rest;
        Ok(digit)
    }

    /// Inverse of [`modpop`](Self::modpop); requires `a < k`.
    pub fn modpush(&mut self, k: &Natural, a: &Natural) -> Result<(), StackError> {
        self.value = mod_pair(k, a, &self.value)?;
        Ok(())
    }

    /// Reads the value as exactly `n` integers: `n - 1` pops followed by
    /// whatever remains. The stack is empty afterwards.
    pub fn split(&mut self, n: usize) -> Result<Vec<Natural>, StackError> {
        if n == 0 {
            return Err(StackError::EmptySplit);
        }
        let mut out = Vec::with_capacity(n);
        for _ in 1..n {
            out.push(self.pop());
        }
        out.push(std::mem::take(&mut self.value));
        Ok(out)
    }

    /// Builds the value that [`split`](Self::split) breaks into `parts`.
    pub fn join(parts: &[Natural]) -> Result<Natural, StackError> {
        let (last, init) = parts.split_last().ok_or(StackError::EmptyJoin)?;
        let mut stack = IntegerizedStack::new(last.clone());
        for part in init.iter().rev() {
            stack.push(part);
        }
        Ok(stack.value)
    }

    pub fn is_empty(&self) -> bool {
        self.value.is_zero()
    }
}
