//! κ-terms, pseudoidentities and pseudovariety membership in finite semigroups.

mod parse;
mod pseudovariety;
mod term;

pub use parse::{parse_pseudoidentities, parse_pseudoidentity, parse_term};
pub use pseudovariety::{
    lookup, member, registry, registry_with_experimental, FailedIdentity, Membership,
    PseudovarietyDef,
};
pub use term::{eval_term, satisfies, Assignment, KappaTerm, Pseudoidentity, Satisfaction};
