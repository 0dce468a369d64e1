//! Exact polyhedral and Hodge-theoretic toolkit for Clarke mirror pairs,
//! branched double covers of toric varieties and their Landau–Ginzburg models.

pub mod error;
pub mod fan;
pub mod fixtures;
pub mod hodge;
pub mod io;
pub mod lattice;
pub mod mirrorledger;
pub mod nefclarke;
pub mod orbifold;
pub mod polytope;
pub mod verify;

pub use error::{Error, Result};
