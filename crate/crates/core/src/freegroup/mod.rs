//! The free group on letters: reduced words, subgroup graphs and rational
//! subsets.

mod automaton;
mod stallings;
mod word;

pub use automaton::{
    rational_intersection_nonempty, rational_intersection_witness, rational_membership,
    GroupAutomaton, Label,
};
pub use stallings::{is_folded, stallings_graph, subgroup_contains};
pub use word::{reduce, GroupWord, SignedLetter};
