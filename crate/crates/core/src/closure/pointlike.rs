use std::collections::BTreeSet;

use serde::Serialize;

use super::kernel::{cayley_dfa, kernel_g, preimage_regex};
use super::progroup::pro_g_closure;
use crate::error::{Error, Result};
use crate::freegroup::{rational_intersection_witness, GroupWord};
use crate::language::Morphism;
use crate::semigroup::{Element, FiniteSemigroup};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Pointlike {
    pub pointlike: bool,
    /// A group element lying in the closure of every preimage.
    #[serde(serialize_with = "serialize_word")]
    pub witness: Option<GroupWord>,
}

fn serialize_word<S: serde::Serializer>(
    w: &Option<GroupWord>,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    match w {
        Some(w) => s.serialize_some(&w.to_string()),
        None => s.serialize_none(),
    }
}

/// Whether `x` is pointlike with respect to finite groups: the pro-group
/// closures of the preimages `φ⁻¹(x)` for `x ∈ X` have a common point.
pub fn g_pointlike(phi: &Morphism, x: &BTreeSet<Element>) -> Result<Pointlike> {
    if x.is_empty() {
        return Err(Error::Domain("the subset must be nonempty".into()));
    }
    if let Some(&bad) = x.iter().find(|&&e| e >= phi.codomain.order()) {
        return Err(Error::Domain(format!("element {bad} out of range")));
    }
    let cayley = cayley_dfa(phi)?;
    let closures: Vec<_> = x
        .iter()
        .map(|&e| pro_g_closure(&preimage_regex(&cayley, e)).automaton)
        .collect();
    let witness = rational_intersection_witness(&closures);
    Ok(Pointlike {
        pointlike: witness.is_some(),
        witness,
    })
}

/// The one-loop equation `xy = x` with constraint `ξ`: inevitable with
/// respect to groups exactly when `ξ(y)` lies in the kernel. The constraint
/// on `x` plays no role.
pub fn inevitable_loop(m: &FiniteSemigroup, xi_y: Element) -> Result<bool> {
    if xi_y >= m.order() {
        return Err(Error::Domain(format!("element {xi_y} out of range")));
    }
    Ok(kernel_g(m)?.kernel.contains(&xi_y))
}

/// The two-vertex system with `ξ(x) = 1`: inevitable exactly when the
/// constraint values of the remaining variables form a pointlike set.
pub fn inevitable_two_vertex(
    phi: &Morphism,
    xi_x: Element,
    others: &BTreeSet<Element>,
) -> Result<Pointlike> {
    let one = phi
        .codomain
        .identity()
        .ok_or_else(|| Error::Domain("a monoid is required".into()))?;
    if xi_x != one {
        return Err(Error::Unsupported(
            "only the case where x is constrained to the identity is decided".into(),
        ));
    }
    g_pointlike(phi, others)
}
