//! Regular languages: expressions, automata and syntactic semigroups.

mod automaton;
mod regex;
mod syntactic;

pub use automaton::{to_minimal_dfa, Dfa, Nfa};
pub use regex::{parse_regex, Alphabet, Regex};
pub use syntactic::{
    recognizes, syntactic_of_minimal_dfa, syntactic_semigroup, transition_semigroup,
    transition_semigroup_with_words, Morphism, Syntactic,
};
