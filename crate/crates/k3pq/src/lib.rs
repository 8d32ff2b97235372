//! Exact classification of product-quotient surfaces `(C1 x C2)/G` with `G`
//! cyclic of order `p` or `2p`, whose minimal model is a K3 surface.
//!
//! The crate is organised as a pipeline:
//! [`arith`] supplies exact arithmetic, [`curves`] describes and enumerates
//! cyclic covers of the projective line, [`surfaces`] pairs them and computes
//! numerical invariants, [`minimal`] contracts the resolution to its minimal
//! model and computes the fixed locus of the induced automorphism, and
//! [`tables`] checks everything against the reference tables.

pub mod arith;
pub mod curves;
pub mod error;
pub mod minimal;
pub mod records;
pub mod surfaces;
pub mod tables;

pub use error::{Error, Result};
