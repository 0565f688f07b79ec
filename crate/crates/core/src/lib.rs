//! Computational tools for finite semigroups, regular languages and
//! the pro-group and pro-V metrics they induce on words.

pub mod closure;
pub mod error;
pub mod freegroup;
pub mod kappa;
pub mod language;
pub mod metric;
pub mod semigroup;
pub mod symbolic;

pub use error::{Error, Result};
pub use freegroup::{GroupAutomaton, GroupWord, SignedLetter};
pub use kappa::{KappaTerm, Pseudoidentity, PseudovarietyDef};
pub use language::{Alphabet, Dfa, Morphism, Regex};
pub use semigroup::{Element, FiniteSemigroup};
pub use symbolic::{SoficShift, Substitution};
