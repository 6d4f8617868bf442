//! Numbering the derivation trees of a context-free grammar.
//!
//! [`codec`] maps every natural number to a distinct derivation tree of a
//! validated grammar and back, using the Rosenberg-Strong pairing function
//! and a modular pairing packed into an [`IntegerizedStack`]. [`lz_codec`]
//! is a variant whose indices may point back at complete subtrees built
//! earlier in the same tree.
//!
//! ```
//! use cfgrank::{Codec, Grammar, Natural};
//!
//! let g = Grammar::parse("S -> S S | x").unwrap().validate().unwrap();
//! let codec = Codec::new(&g);
//! let t = codec.decode("S", &Natural::from(4u32)).unwrap();
//! assert_eq!(t.to_string(), "(S (S x) (S (S x) (S x)))");
//! assert_eq!(codec.encode(&t).unwrap(), Natural::from(4u32));
//! ```
//!
//! Tree depth can grow linearly with the index (a rule like `AP -> a AP`
//! only lowers it by a constant per level). Everything that walks a tree
//! recursively grows its stack on the heap when it runs low, so depth is
//! bounded by memory rather than by the thread's stack.

pub mod cli;
pub mod codec;
pub mod grammar;
pub mod intstack;
pub mod lz_codec;
pub mod numerics;
pub mod oracle;

pub use codec::{decode, encode, Codec, DecodeError, DecodeStats, EncodeError};
pub use grammar::{
    sexpr_to_tree, tree_to_json, tree_to_sexpr, Child, DerivationTree, Grammar, ParseError, Symbol, ValidGrammar,
    ValidationError,
};
pub use intstack::IntegerizedStack;
pub use lz_codec::{diff_report, lz_decode, DiffRow, LzCodec};
pub use numerics::{BinaryTree, Natural};

/// Runs `f`, first moving to a fresh heap-allocated stack segment if less
/// than the red zone remains.
pub(crate) fn deep<R>(f: impl FnOnce() -> R) -> R {
    const RED_ZONE: usize = 256 << 10;
    const SEGMENT: usize = 8 << 20;
    stacker::maybe_grow(RED_ZONE, SEGMENT, f)
}
