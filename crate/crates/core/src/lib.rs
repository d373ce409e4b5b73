//! A desk-scale calculus of hereditarily finite sets extended with
//! finitely-presented non-well-founded sets.
//!
//! Sets are stored as rooted membership graphs inside a [`SetSystem`];
//! cycles encode the non-well-founded sets built by the `inf`/`semi`/`quasi`
//! constructors. Systems are kept canonical at all times: extensionally
//! equal nodes are interned to a single id, and member lists that match a
//! constructor's one-step unrolling are folded back onto the cyclic node.
//!
//! On top of the representation the crate provides ordinal ranks in two
//! hierarchies, membership dimension, well-foundedness classification, the
//! three set-of-generated-sets functors, and stage-wise audits (power-set
//! spectrum, closure checks, regularity and self-membership diagnostics).

pub mod audit;
pub mod equality;
pub mod error;
pub mod functors;
pub mod igs;
pub mod ordinal;
pub mod rank;
pub mod system;

pub use error::{Error, Result};
pub use ordinal::{Dimension, OrdKind, Ordinal};
pub use system::{Item, NodeId, SetSystem};
