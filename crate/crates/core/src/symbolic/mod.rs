//! Substitutions, sofic shifts and their entropy.

mod sofic;
mod substitution;

pub use sofic::{
    complexity_probe, entropy, factorial_trim, is_irreducible, is_irreducible_by_definition,
    sofic_from_regex, spectral_radius, ComplexityProbe, SoficShift,
};
pub use substitution::{is_primitive, primitivity_exponent, substitution_blocks, Substitution};
