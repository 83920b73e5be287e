//! Exact character tables, p-blocks, defect groups and p-rationality levels of
//! finite groups given by permutation generators.

pub mod arith;
pub mod blocks;
pub mod chartab;
pub mod cyclo;
mod dixon;
pub mod error;
pub mod gf;
pub mod perm;
pub mod rat;
pub mod verify;
pub mod weil;

pub use blocks::Block;
pub use chartab::{Character, CharacterTable};
pub use cyclo::Cyclotomic;
pub use error::{Error, Result};
pub use perm::{ConjClass, Group, Permutation};
pub use rat::Rat;
