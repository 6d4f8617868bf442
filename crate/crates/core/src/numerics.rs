//! Exact pairing functions over arbitrary-precision naturals.
//!
//! Three pairings live here:
//!
//! * Cantor's quadratic pairing, kept for completeness;
//! * the Rosenberg-Strong pairing, which backs [`IntegerizedStack`];
//! * the modular pairing `M_k`, which selects one of `k` choices plus a remainder.
//!
//! The binary-tree codec [`phi_decode`] / [`phi_encode`] recursively unpairs
//! `n - 1` with Rosenberg-Strong until it reaches zero.
//!
//! Only Rosenberg-Strong is used by the tree codecs: it satisfies
//! `rs_pair(x, y) >= max(x, y)`, which is what makes recursive decoding
//! terminate. Cantor's pairing is not used there.
//!
//! [`IntegerizedStack`]: crate::intstack::IntegerizedStack

use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, Zero};
use thiserror::Error;

/// Arbitrary-precision non-negative integer.
pub type Natural = BigUint;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PairingError {
    #[error("modulus must be at least 1")]
    ZeroModulus,
    #[error("digit {digit} is out of range for modulus {modulus}")]
    DigitOutOfRange { digit: Natural, modulus: Natural },
}

/// Floor square root: the unique `s` with `s² <= z < (s+1)²`.
pub fn isqrt(z: &Natural) -> Natural {
    z.sqrt()
}

/// `C(x, y) = (x+y)(x+y+1)/2 + y`.
pub fn cantor_pair(x: &Natural, y: &Natural) -> Natural {
    let s = x + y;
    let tri = (&s * (&s + 1u32)) >> 1u32;
    tri + y
}

/// Inverse of [`cantor_pair`], via `w = floor((sqrt(8z + 1) - 1) / 2)`.
pub fn cantor_unpair(z: &Natural) -> (Natural, Natural) {
    let w = (isqrt(&((z << 3u32) + 1u32)) - 1u32) >> 1u32;
    let tri = (&w * (&w + 1u32)) >> 1u32;
    let y = z - &tri;
    let x = &w - &y;
    (x, y)
}

/// Rosenberg-Strong pairing, `max(x,y)² + max(x,y) + x - y`.
pub fn rs_pair(x: &Natural, y: &Natural) -> Natural {
    let m = if x >= y { x } else { y };
    // x - y may be negative, so add x before subtracting y.
    m * m + m + x - y
}

/// Inverse of [`rs_pair`] with `m = isqrt(z)`:
/// `(z - m², m)` when `z - m² < m`, else `(m, m² + 2m - z)`.
pub fn rs_unpair(z: &Natural) -> (Natural, Natural) {
    let m = isqrt(z);
    let sq = &m * &m;
    let d = z - &sq;
    if d < m {
        (d, m)
    } else {
        let y = sq + (&m << 1u32) - z;
        (m, y)
    }
}

/// `M_k(x, y) = x + k·y` for `x < k`.
pub fn mod_pair(k: &Natural, x: &Natural, y: &Natural) -> Result<Natural, PairingError> {
    if k.is_zero() {
        return Err(PairingError::ZeroModulus);
    }
    if x >= k {
        return Err(PairingError::DigitOutOfRange { digit: x.clone(), modulus: k.clone() });
    }
    Ok(x + k * y)
}

/// `M_k⁻¹(z) = (z mod k, floor(z / k))`.
pub fn mod_unpair(k: &Natural, z: &Natural) -> Result<(Natural, Natural), PairingError> {
    if k.is_zero() {
        return Err(PairingError::ZeroModulus);
    }
    if k.is_one() {
        return Ok((Natural::zero(), z.clone()));
    }
    let (q, r) = num_integer::Integer::div_rem(z, k);
    Ok((r, q))
}

/// Full binary tree shape decoded by [`phi_decode`].
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum BinaryTree {
    Leaf,
    Node(Box<BinaryTree>, Box<BinaryTree>),
}

impl BinaryTree {
    pub fn node(left: BinaryTree, right: BinaryTree) -> Self {
        BinaryTree::Node(Box::new(left), Box::new(right))
    }

    pub fn internal_nodes(&self) -> usize {
        match self {
            BinaryTree::Leaf => 0,
            BinaryTree::Node(l, r) => 1 + l.internal_nodes() + r.internal_nodes(),
        }
    }
}

/// Writes leaves as `•` and internal nodes as `<left,right>`.
impl fmt::Display for BinaryTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BinaryTree::Leaf => f.write_str("•"),
            BinaryTree::Node(l, r) => write!(f, "<{l},{r}>"),
        }
    }
}

/// `φ(0) = Leaf`, `φ(R(x,y) + 1) = <φ(x), φ(y)>`.
pub fn phi_decode(n: &Natural) -> BinaryTree {
    if n.is_zero() {
        return BinaryTree::Leaf;
    }
    let (x, y) = rs_unpair(&(n - 1u32));
    BinaryTree::node(phi_decode(&x), phi_decode(&y))
}

/// Inverse of [`phi_decode`].
pub fn phi_encode(t: &BinaryTree) -> Natural {
    match t {
        BinaryTree::Leaf => Natural::zero(),
        BinaryTree::Node(l, r) => rs_pair(&phi_encode(l), &phi_encode(r)) + 1u32,
    }
}
