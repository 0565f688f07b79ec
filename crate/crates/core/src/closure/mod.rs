//! Pro-group closure of regular languages, separation by group languages,
//! the group kernel of a finite monoid and pointlike sets.

mod kernel;
mod pointlike;
mod progroup;

pub use kernel::{
    canonical_generators, kernel_g, kernel_via_closure, malcev_membership, weak_inverse_pairs,
    KernelResult, KernelStep,
};
pub use pointlike::{g_pointlike, inevitable_loop, inevitable_two_vertex, Pointlike};
pub use progroup::{
    find_group_certificate, language_image, pro_g_closure, separable_by_group_language,
    small_groups, ClosureResult, SeparationCertificate,
};
