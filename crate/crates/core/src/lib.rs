//! Exact computations with rooted trivalent trees and their quotients.
//!
//! The crate covers the groups of Lie trees `Lie(S)`, their group-decorated
//! versions, the Jacobi-tree quotients `A^T_n`, free Lie algebra bases, the
//! sign-twisted tree/word isomorphism and the symbolic bookkeeping of
//! embedding-calculus tower layers. All arithmetic is over arbitrary
//! precision integers.

pub mod error;
pub mod exactla;
pub mod expr;
pub mod freelie;
pub mod gropes;
pub mod group;
pub mod relations;
pub mod sum;
pub mod towers;
pub mod tree;

pub use error::{Error, Result};
pub use group::{GroupElement, GroupModel};
pub use sum::{DecoratedTreeSum, FormalSum, TreeSum};
pub use tree::{DecoratedTree, LeafLabel, Tree};
